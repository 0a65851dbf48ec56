#ifndef WSAN_MACHINE_M2_HPP
#define WSAN_MACHINE_M2_HPP

#include "wsan/machine_m1.hpp"

namespace wsan {

/**
 * Second refinement: sensor-sensor (snet) and actor-sensor (sanet) links
 * provide the backup infrastructure, and the recovery event picks its
 * replacement routes deterministically through connected sensors.
 *
 * Sensors never fail in-model; AddSensorNode, a mirror of AddNode, is
 * the only way a sensor reaches ok status and so the only way sensor
 * links can start forming.
 */
namespace m2 {

using m0::GuardResult;

// -- AddSensorNode -------------------------------------------------------

inline GuardResult add_sensor_node_guard(const WsanState& s, NodeId n) {
    if (!s.failed(n)) return "grd1";
    if (!s.failed_node_neigh.empty()) return "grd2";
    if (!s.universe->is_sensor(n)) return "grd3";
    return std::nullopt;
}

inline WsanState add_sensor_node_apply(const WsanState& s, NodeId n) {
    WsanState next = s;
    next.status[n.value] = NodeStatus::Ok;
    return next;
}

// -- AddSLink --------------------------------------------------------------
// No failed_node_neigh guard: sensor links may form during actor recovery.

inline GuardResult add_slink_guard(const WsanState& s, NodeId n, NodeId m) {
    if (!s.ok(n) || !s.ok(m)) return "grd1";
    if (s.snet.contains(n, m)) return "grd2";
    if (n == m) return "grd3";
    if (!s.universe->is_sensor(n) || !s.universe->is_sensor(m)) return "grd4";
    return std::nullopt;
}

inline WsanState add_slink_apply(const WsanState& s, NodeId n, NodeId m) {
    WsanState next = s;
    next.snet = symmetric_insert(s.snet, n, m);
    return next;
}

// -- AddSALink ---------------------------------------------------------------

inline GuardResult add_salink_guard(const WsanState& s, NodeId n, NodeId m) {
    if (!s.ok(n) || !s.ok(m)) return "grd1";
    const NodeUniverse& u = *s.universe;
    const bool mixed = (u.is_actor(n) && u.is_sensor(m)) || (u.is_sensor(n) && u.is_actor(m));
    if (!mixed) return "grd2";
    if (s.sanet.contains(n, m)) return "grd3";
    if (n == m) return "grd4";
    return std::nullopt;
}

inline WsanState add_salink_apply(const WsanState& s, NodeId n, NodeId m) {
    WsanState next = s;
    next.sanet = symmetric_insert(s.sanet, n, m);
    return next;
}

// -- RemoveNode (refined) -------------------------------------------------------
//
// Beyond the M1 pruning, sensor-mediated routes touching the failed node
// go as well, in both directions. Pruning only the (·,n,sensor) rows
// would leave the failed node's own (n,·,sensor) rows behind, and a
// later recovery of n could then complete a mutual sensor-via pair whose
// sanet link no longer exists.

inline WsanState remove_node_apply(const WsanState& s, NodeId n) {
    WsanState next = m0::remove_node_apply(s, n);
    const std::set<NodeId> anet_dom = rel_domain(s.anet);
    const std::set<NodeId> snet_dom = rel_domain(s.snet);
    TriRel kept;
    for (const auto& t : s.lnet) {
        const bool own_row = t.first == n && anet_dom.count(t.second) && anet_dom.count(t.via);
        const bool one_hop_to_n = anet_dom.count(t.first) && t.second == n && t.via == n;
        const bool sensor_route_to_n =
            anet_dom.count(t.first) && t.second == n && snet_dom.count(t.via);
        const bool sensor_route_from_n =
            t.first == n && anet_dom.count(t.second) && snet_dom.count(t.via);
        if (!own_row && !one_hop_to_n && !sensor_route_to_n && !sensor_route_from_n) {
            kept.insert(t);
        }
    }
    next.lnet = kept;
    next.sanet = domain_range_subtract(s.sanet, n);
    return next;
}

// -- FaultDetRec (refined) ---------------------------------------------------

struct RecWitness {
    NodeId m, x, y;
};

inline GuardResult fault_det_rec_guard(const WsanState& s, NodeId n, NodeId k, NodeId m,
                                       NodeId x, NodeId y, const BinRel& anet_closure,
                                       const BinRel& snet_closure,
                                       const MachineOptions& opt = {}) {
    if (auto failing = m1::fault_det_rec_guard(s, n, k, m, anet_closure, opt)) return failing;
    if (!s.sanet.contains(n, x) || !s.sanet.contains(k, y)) return "grd4";
    if (!snet_closure.contains(x, y)) return "grd5";
    if (!s.universe->is_actor(m)) return "grd6";
    if (s.lnet.pair_in_domain_excluding(n, k, m)) return "grd7";
    return std::nullopt;
}

/// Least (x,y) sensor pair under NodeId order completing the guards for a
/// given stale route m, if one exists.
inline std::optional<RecWitness> find_rec_witness_for(const WsanState& s, NodeId n, NodeId k,
                                                      NodeId m, const BinRel& anet_closure,
                                                      const BinRel& snet_closure,
                                                      const MachineOptions& opt = {}) {
    const bool guards_up_to_sensors =
        !m1::fault_det_rec_guard(s, n, k, m, anet_closure, opt) &&
        s.universe->is_actor(m) && !s.lnet.pair_in_domain_excluding(n, k, m);
    if (!guards_up_to_sensors) return std::nullopt;
    for (NodeId x : image(s.sanet, n)) {
        for (NodeId y : image(s.sanet, k)) {
            if (snet_closure.contains(x, y)) return RecWitness{m, x, y};
        }
    }
    return std::nullopt;
}

inline std::optional<RecWitness> find_rec_witness(const WsanState& s, NodeId n, NodeId k,
                                                  const BinRel& anet_closure,
                                                  const BinRel& snet_closure,
                                                  const MachineOptions& opt = {}) {
    for (NodeId m : s.lnet.vias(n, k)) {
        if (auto w = find_rec_witness_for(s, n, k, m, anet_closure, snet_closure, opt)) {
            return w;
        }
    }
    return std::nullopt;
}

inline WsanState fault_det_rec_apply(const WsanState& s, NodeId n, NodeId k, NodeId m,
                                     NodeId x, NodeId y) {
    WsanState next = m0::fault_det_rec_apply(s, n, k);
    TriRel lnet = m1::erase_all(s.lnet, m1::expired_routes(s, n, k, m));
    for (NodeId a : image(s.anet, k)) {
        lnet.insert(a, n, k);
        lnet.insert(n, a, k);
    }
    for (NodeId a : image(s.anet, n)) {
        lnet.insert(a, k, n);
        lnet.insert(k, a, n);
    }
    lnet.insert(n, k, x);
    lnet.insert(k, n, y);
    next.lnet = lnet;
    return next;
}

inline GuardResult fault_det_rec_fallback_guard(const WsanState& s, NodeId n, NodeId k,
                                                const BinRel& anet_closure,
                                                const BinRel& snet_closure,
                                                const MachineOptions& opt = {}) {
    if (auto failing = m0::fault_det_rec_guard(s, n, k, anet_closure, opt)) return failing;
    if (find_rec_witness(s, n, k, anet_closure, snet_closure, opt)) return "grd_fallback";
    return std::nullopt;
}

/// Direct recovery without sensor witnesses. When a stale route exists
/// (only its sensor side is missing), the update mirrors the one-level-
/// down localized step for the least such route, so the direct form
/// still projects onto an exact abstract step.
inline WsanState fault_det_rec_fallback_apply(const WsanState& s, NodeId n, NodeId k) {
    for (NodeId m : s.lnet.vias(n, k)) {
        if (m1::stale_route_guard(s, n, k, m)) {
            return m1::fault_det_rec_apply(s, n, k, m);
        }
    }
    return m1::fault_det_rec_fallback_apply(s, n, k);
}

// -- FaultDetRec2 (refined) -----------------------------------------------------

inline GuardResult fault_det_rec2_guard(const WsanState& s, NodeId n, NodeId k, NodeId m,
                                        const BinRel& anet_closure) {
    if (auto failing = m1::fault_det_rec2_guard(s, n, k, m, anet_closure)) return failing;
    if (!s.lnet.pair_in_domain_excluding(n, k, m)) return "grd6";
    return std::nullopt;
}

inline bool has_rec2_witness(const WsanState& s, NodeId n, NodeId k) {
    for (NodeId m : s.lnet.vias(n, k)) {
        if (m1::stale_route_guard(s, n, k, m) && s.lnet.pair_in_domain_excluding(n, k, m)) {
            return true;
        }
    }
    return false;
}

inline GuardResult fault_det_rec2_fallback_guard(const WsanState& s, NodeId n, NodeId k,
                                                 const BinRel& anet_closure) {
    if (auto failing = m0::fault_det_rec2_guard(s, n, k, anet_closure)) return failing;
    if (has_rec2_witness(s, n, k)) return "grd_fallback";
    return std::nullopt;
}

inline WsanState fault_det_rec2_fallback_apply(const WsanState& s, NodeId n, NodeId k) {
    for (NodeId m : s.lnet.vias(n, k)) {
        if (m1::stale_route_guard(s, n, k, m)) {
            return m1::fault_det_rec2_apply(s, n, k, m);
        }
    }
    return m1::fault_det_rec2_fallback_apply(s, n);
}

// -- enumeration -----------------------------------------------------------------

inline void enumerate_sensor_links(const WsanState& s, std::vector<EventInstance>& out) {
    const auto sensors = s.universe->sensors();
    for (NodeId n : sensors) {
        for (NodeId m : sensors) {
            if (!add_slink_guard(s, n, m)) out.push_back({EventName::AddSLink, {n, m}});
        }
    }
    for (NodeId n : s.universe->nodes()) {
        for (NodeId m : s.universe->nodes()) {
            if (!add_salink_guard(s, n, m)) out.push_back({EventName::AddSALink, {n, m}});
        }
    }
}

inline void enumerate_recovery(const WsanState& s, const MachineOptions& opt,
                               std::vector<EventInstance>& out) {
    const BinRel anet_closure = closure(s.anet);
    const BinRel snet_closure = closure(s.snet);
    for (NodeId n : s.failed_node_neigh) {
        for (NodeId k : s.failed_node_neigh) {
            bool localized_rec = false;
            for (NodeId m : s.lnet.vias(n, k)) {
                if (auto w = find_rec_witness_for(s, n, k, m, anet_closure, snet_closure,
                                                  opt)) {
                    out.push_back({EventName::FaultDetRec, {n, k, w->m, w->x, w->y}});
                    localized_rec = true;
                }
            }
            if (!localized_rec &&
                !fault_det_rec_fallback_guard(s, n, k, anet_closure, snet_closure, opt)) {
                out.push_back({EventName::FaultDetRec, {n, k}});
            }
            for (NodeId m : s.lnet.vias(n, k)) {
                if (!fault_det_rec2_guard(s, n, k, m, anet_closure)) {
                    out.push_back({EventName::FaultDetRec2, {n, k, m}});
                }
            }
            if (!fault_det_rec2_fallback_guard(s, n, k, anet_closure)) {
                out.push_back({EventName::FaultDetRec2, {n, k}});
            }
        }
    }
}

inline std::vector<EventInstance> enabled_events(const WsanState& s,
                                                 const MachineOptions& opt = {}) {
    std::vector<EventInstance> out;
    if (s.failed_node_neigh.empty()) {
        const auto actors = s.universe->actors();
        for (NodeId n : actors) {
            if (!m0::add_node_guard(s, n)) out.push_back({EventName::AddNode, {n}});
            if (!m0::remove_node_guard(s, n)) out.push_back({EventName::RemoveNode, {n}});
            for (NodeId m : actors) {
                if (!m0::add_link_guard(s, n, m)) out.push_back({EventName::AddLink, {n, m}});
                for (NodeId k : actors) {
                    if (!m1::add_2hop_guard(s, n, m, k)) {
                        out.push_back({EventName::AddlNet2hopLink, {n, m, k}});
                    }
                }
            }
        }
        for (NodeId n : s.universe->sensors()) {
            if (!add_sensor_node_guard(s, n)) out.push_back({EventName::AddSensorNode, {n}});
        }
    } else {
        enumerate_recovery(s, opt, out);
    }
    enumerate_sensor_links(s, out);
    return out;
}

}  // namespace m2
}  // namespace wsan

#endif  // WSAN_MACHINE_M2_HPP
