#ifndef WSAN_MACHINE_M0_HPP
#define WSAN_MACHINE_M0_HPP

#include <optional>

#include "wsan/events.hpp"
#include "wsan/invariants.hpp"

namespace wsan {

/**
 * Initial model: actors only, recovery with global knowledge through
 * closure(anet). All action right-hand sides read the pre-state
 * (simultaneous substitution); RemoveNode depends on that to snapshot the
 * failed node's neighborhood before the links vanish.
 */
namespace m0 {

using GuardResult = std::optional<const char*>;  // failing guard id, or none

inline WsanState initial_state(UniversePtr universe, Level level) {
    WsanState s;
    s.universe = std::move(universe);
    s.status.assign(s.universe->size(), NodeStatus::Fail);
    s.level = level;
    return s;
}

// -- AddNode ------------------------------------------------------------

inline GuardResult add_node_guard(const WsanState& s, NodeId n) {
    if (!s.failed(n)) return "grd1";
    if (!s.failed_node_neigh.empty()) return "grd2";
    if (!s.universe->is_actor(n)) return "grd3";
    return std::nullopt;
}

inline WsanState add_node_apply(const WsanState& s, NodeId n) {
    WsanState next = s;
    next.status[n.value] = NodeStatus::Ok;
    return next;
}

// -- AddLink ------------------------------------------------------------

inline GuardResult add_link_guard(const WsanState& s, NodeId n, NodeId m) {
    if (!s.ok(n) || !s.ok(m)) return "grd1";
    if (s.anet.contains(n, m)) return "grd2";
    if (n == m) return "grd3";
    if (!s.universe->is_actor(n) || !s.universe->is_actor(m)) return "grd4";
    if (!s.failed_node_neigh.empty()) return "grd5";
    return std::nullopt;
}

inline WsanState add_link_apply(const WsanState& s, NodeId n, NodeId m) {
    WsanState next = s;
    next.anet = symmetric_insert(s.anet, n, m);
    return next;
}

// -- RemoveNode ----------------------------------------------------------

inline GuardResult remove_node_guard(const WsanState& s, NodeId n) {
    if (!s.ok(n)) return "grd1";
    if (!s.universe->is_actor(n)) return "grd2";
    if (!s.failed_node_neigh.empty()) return "grd3";
    return std::nullopt;
}

inline WsanState remove_node_apply(const WsanState& s, NodeId n) {
    WsanState next = s;
    next.status[n.value] = NodeStatus::Fail;
    next.anet = domain_range_subtract(s.anet, n);
    next.failed_node_neigh = image(s.anet, n);
    return next;
}

// -- FaultDetRec ----------------------------------------------------------
//
// grd_neq is a soundness repair: with the transitive (non-reflexive)
// closure, the printed guards would let an isolated member of
// failed_node_neigh link to itself and break irreflexivity.

inline GuardResult fault_det_rec_guard(const WsanState& s, NodeId n, NodeId k,
                                       const BinRel& anet_closure,
                                       const MachineOptions& opt = {}) {
    if (!s.failed_node_neigh.count(n) || !s.failed_node_neigh.count(k)) return "grd1";
    if (!opt.drop_closure_guard && anet_closure.contains(n, k)) return "grd2";
    if (n == k) return "grd_neq";
    return std::nullopt;
}

inline WsanState fault_det_rec_apply(const WsanState& s, NodeId n, NodeId k) {
    WsanState next = s;
    next.anet = symmetric_insert(s.anet, n, k);
    next.failed_node_neigh.erase(n);
    return next;
}

// -- FaultDetRec2 ---------------------------------------------------------
//
// The n = k case is how the last neighbor leaves the recovery set; it is
// restricted to a singleton failed_node_neigh (grd_last) because dropping
// a member without connecting it while others remain would leave the
// partitions separated.

inline GuardResult fault_det_rec2_guard(const WsanState& s, NodeId n, NodeId k,
                                        const BinRel& anet_closure) {
    if (!s.failed_node_neigh.count(n) || !s.failed_node_neigh.count(k)) return "grd1";
    if (n == k) {
        if (s.failed_node_neigh.size() != 1) return "grd_last";
        return std::nullopt;
    }
    if (!anet_closure.contains(n, k)) return "grd2";
    return std::nullopt;
}

inline WsanState fault_det_rec2_apply(const WsanState& s, NodeId n) {
    WsanState next = s;
    next.failed_node_neigh.erase(n);
    return next;
}

// -- enumeration -----------------------------------------------------------

inline void enumerate_recovery(const WsanState& s, const MachineOptions& opt,
                               std::vector<EventInstance>& out) {
    const BinRel anet_closure = closure(s.anet);
    for (NodeId n : s.failed_node_neigh) {
        for (NodeId k : s.failed_node_neigh) {
            if (!fault_det_rec_guard(s, n, k, anet_closure, opt)) {
                out.push_back({EventName::FaultDetRec, {n, k}});
            }
            if (!fault_det_rec2_guard(s, n, k, anet_closure)) {
                out.push_back({EventName::FaultDetRec2, {n, k}});
            }
        }
    }
}

inline std::vector<EventInstance> enabled_events(const WsanState& s,
                                                 const MachineOptions& opt = {}) {
    std::vector<EventInstance> out;
    if (s.failed_node_neigh.empty()) {
        for (NodeId n : s.universe->actors()) {
            if (!add_node_guard(s, n)) out.push_back({EventName::AddNode, {n}});
            if (!remove_node_guard(s, n)) out.push_back({EventName::RemoveNode, {n}});
            for (NodeId m : s.universe->actors()) {
                if (!add_link_guard(s, n, m)) out.push_back({EventName::AddLink, {n, m}});
            }
        }
    } else {
        enumerate_recovery(s, opt, out);
    }
    return out;
}

}  // namespace m0
}  // namespace wsan

#endif  // WSAN_MACHINE_M0_HPP
