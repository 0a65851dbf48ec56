#ifndef WSAN_INVARIANTS_HPP
#define WSAN_INVARIANTS_HPP

#include <string>
#include <vector>

#include "wsan/state.hpp"

namespace wsan {

struct Violation {
    std::string invariant;  // stable identifier, e.g. "M0.inv4"
    std::string witness;    // tuple that falsifies the predicate

    friend bool operator==(const Violation&, const Violation&) = default;
};

using InvariantReport = std::vector<Violation>;

namespace detail {

inline std::string pair_witness(const WsanState& s, NodeId a, NodeId b) {
    return "(" + s.universe->name(a) + "," + s.universe->name(b) + ")";
}

inline std::string triple_witness(const WsanState& s, const Triple& t) {
    return "(" + s.universe->name(t.first) + "," + s.universe->name(t.second) + "," +
           s.universe->name(t.via) + ")";
}

inline void check_m0(const WsanState& s, InvariantReport& report) {
    const NodeUniverse& u = *s.universe;
    if (s.status.size() != u.size()) {
        report.push_back({"M0.inv1", "status map not total"});
    }
    for (const auto& [a, b] : s.anet) {
        if (!u.is_actor(a) || !u.is_actor(b)) {
            report.push_back({"M0.inv2", pair_witness(s, a, b)});
            break;
        }
    }
    for (NodeId n : s.failed_node_neigh) {
        if (!u.is_actor(n)) {
            report.push_back({"M0.inv3", u.name(n)});
            break;
        }
    }
    for (const auto& [a, b] : s.anet) {
        if (a == b) {
            report.push_back({"M0.inv4", pair_witness(s, a, b)});
            break;
        }
    }
    for (const auto& [a, b] : s.anet) {
        if (!s.anet.contains(b, a)) {
            report.push_back({"M0.inv5", pair_witness(s, a, b)});
            break;
        }
    }
    for (const auto& [a, b] : s.anet) {
        if (!s.ok(a) || !s.ok(b)) {
            report.push_back({"M0.inv6", pair_witness(s, a, b)});
            break;
        }
    }
    for (NodeId n : s.failed_node_neigh) {
        if (!s.ok(n)) {
            report.push_back({"M0.inv7", u.name(n)});
            break;
        }
    }
}

inline void check_m1(const WsanState& s, InvariantReport& report) {
    const NodeUniverse& u = *s.universe;
    for (const auto& t : s.lnet) {
        if (!u.is_actor(t.first) || !u.is_actor(t.second)) {
            report.push_back({"M1.inv1", triple_witness(s, t)});
            break;
        }
    }
    for (const auto& t : s.lnet) {
        if (t.first == t.second) {
            report.push_back({"M1.inv2", triple_witness(s, t)});
            break;
        }
    }
}

inline void check_m2(const WsanState& s, InvariantReport& report) {
    const NodeUniverse& u = *s.universe;
    for (const auto& [a, b] : s.snet) {
        if (!u.is_sensor(a) || !u.is_sensor(b)) {
            report.push_back({"M2.inv1", pair_witness(s, a, b)});
            break;
        }
    }
    for (const auto& [a, b] : s.sanet) {
        if (a.value >= u.size() || b.value >= u.size()) {
            report.push_back({"M2.inv2", pair_witness(s, a, b)});
            break;
        }
    }
    for (const auto& [a, b] : s.snet) {
        if (s.anet.contains(a, b)) {
            report.push_back({"M2.inv3", pair_witness(s, a, b)});
            break;
        }
    }
    for (const auto& [a, b] : s.anet) {
        if (s.sanet.contains(a, b)) {
            report.push_back({"M2.inv4", pair_witness(s, a, b)});
            break;
        }
    }
    for (const auto& [a, b] : s.snet) {
        if (s.sanet.contains(a, b)) {
            report.push_back({"M2.inv5", pair_witness(s, a, b)});
            break;
        }
    }
    for (const auto& [a, b] : s.snet) {
        if (!s.snet.contains(b, a)) {
            report.push_back({"M2.inv6", pair_witness(s, a, b)});
            break;
        }
    }
    for (const auto& [a, b] : s.sanet) {
        if (!s.sanet.contains(b, a)) {
            report.push_back({"M2.inv7", pair_witness(s, a, b)});
            break;
        }
    }
    for (const auto& [a, b] : s.snet) {
        if (a == b) {
            report.push_back({"M2.inv8", pair_witness(s, a, b)});
            break;
        }
    }
    for (const auto& [a, b] : s.sanet) {
        if (a == b) {
            report.push_back({"M2.inv9", pair_witness(s, a, b)});
            break;
        }
    }
    for (const auto& [a, b] : s.sanet) {
        const bool actor_sensor = u.is_actor(a) && u.is_sensor(b);
        const bool sensor_actor = u.is_sensor(a) && u.is_actor(b);
        if (!actor_sensor && !sensor_actor) {
            report.push_back({"M2.inv10", pair_witness(s, a, b)});
            break;
        }
    }
    for (const auto& [a, b] : s.snet) {
        if (!s.ok(a) || !s.ok(b)) {
            report.push_back({"M2.inv11", pair_witness(s, a, b)});
            break;
        }
    }
    for (const auto& [a, b] : s.sanet) {
        if (!s.ok(a) || !s.ok(b)) {
            report.push_back({"M2.inv12", pair_witness(s, a, b)});
            break;
        }
    }

    // inv13 couples mutual sensor-via routes to SANET and closure(SNET).
    // The closure is only computed when a sensor-via triple exists at all.
    bool any_sensor_via = false;
    for (const auto& t : s.lnet) {
        if (u.is_sensor(t.via)) {
            any_sensor_via = true;
            break;
        }
    }
    if (any_sensor_via) {
        const BinRel snet_closure = closure(s.snet);
        for (const auto& t : s.lnet) {
            if (!u.is_sensor(t.via)) continue;
            const NodeId n = t.first;
            const NodeId k = t.second;
            const NodeId x = t.via;
            for (NodeId y : s.lnet.vias(k, n)) {
                if (!u.is_sensor(y)) continue;
                if (!s.sanet.contains(n, x) || !s.sanet.contains(k, y) ||
                    !snet_closure.contains(x, y)) {
                    report.push_back({"M2.inv13",
                                      triple_witness(s, t) + "+" +
                                          triple_witness(s, Triple{k, n, y})});
                    return;
                }
            }
        }
    }
}

}  // namespace detail

/**
 * Evaluate the invariant suite for the state's level (M0 checks I0, M1
 * adds I1, M2 adds I2) and report every violated invariant identifier
 * with a falsifying witness. Reporting is deterministic: witnesses come
 * from canonical iteration order, one per invariant.
 */
inline InvariantReport check_invariants(const WsanState& s) {
    InvariantReport report;
    detail::check_m0(s, report);
    if (s.level >= Level::M1) detail::check_m1(s, report);
    if (s.level >= Level::M2) detail::check_m2(s, report);
    return report;
}

}  // namespace wsan

#endif  // WSAN_INVARIANTS_HPP
