#ifndef WSAN_MACHINE_M1_HPP
#define WSAN_MACHINE_M1_HPP

#include "wsan/machine_m0.hpp"

namespace wsan {

/**
 * First refinement: each actor knows its 1-hop and 2-hop neighborhood
 * through the ternary lnet relation. (n,m,m) reads "m is a 1-hop neighbor
 * of n"; (n,m,k) with k != m reads "m is a 2-hop neighbor of n via k".
 *
 * Recovery falls back to the direct two-parameter form when no stale
 * 2-hop record witnesses the localized guards; without that branch a
 * failure whose neighbors never learned about each other would strand the
 * recovery set and deadlock the machine.
 */
namespace m1 {

using m0::GuardResult;

// -- AddLink (extended) ----------------------------------------------------

inline WsanState add_link_apply(const WsanState& s, NodeId n, NodeId m) {
    WsanState next = m0::add_link_apply(s, n, m);
    next.lnet.insert(n, m, m);
    next.lnet.insert(m, n, n);
    return next;
}

// -- Addl_net2hopLink --------------------------------------------------------

inline GuardResult add_2hop_guard(const WsanState& s, NodeId n, NodeId m, NodeId k) {
    if (!s.ok(n) || !s.ok(m) || !s.ok(k)) return "grd1";
    if (!s.lnet.contains(m, k, k) || !s.lnet.contains(n, m, m) ||
        s.lnet.contains(n, k, m) || s.lnet.contains(k, n, m)) {
        return "grd2";
    }
    if (m == n || n == k || m == k) return "grd3";
    if (!s.failed_node_neigh.empty()) return "grd4";
    return std::nullopt;
}

inline WsanState add_2hop_apply(const WsanState& s, NodeId n, NodeId m, NodeId k) {
    WsanState next = s;
    next.lnet.insert(n, k, m);
    next.lnet.insert(k, n, m);
    return next;
}

// -- RemoveNode (extended) ---------------------------------------------------

inline WsanState remove_node_apply(const WsanState& s, NodeId n) {
    WsanState next = m0::remove_node_apply(s, n);
    const std::set<NodeId> dom = rel_domain(s.anet);
    TriRel kept;
    for (const auto& t : s.lnet) {
        const bool own_row = t.first == n && dom.count(t.second) && dom.count(t.via);
        const bool one_hop_to_n = dom.count(t.first) && t.second == n && t.via == n;
        if (!own_row && !one_hop_to_n) kept.insert(t);
    }
    next.lnet = kept;
    return next;
}

// -- FaultDetRec / FaultDetRec2 ----------------------------------------------

/// Localized witness guard shared by both recovery events:
/// (n,k,m) and (k,n,m) are stale 2-hop records and m is no 1-hop neighbor.
inline bool stale_route_guard(const WsanState& s, NodeId n, NodeId k, NodeId m) {
    return s.lnet.contains(n, k, m) && !s.lnet.contains(n, m, m) &&
           s.lnet.contains(k, n, m) && !s.lnet.contains(k, m, m);
}

inline bool has_stale_route(const WsanState& s, NodeId n, NodeId k) {
    for (NodeId m : s.lnet.vias(n, k)) {
        if (stale_route_guard(s, n, k, m)) return true;
    }
    return false;
}

inline GuardResult fault_det_rec_guard(const WsanState& s, NodeId n, NodeId k, NodeId m,
                                       const BinRel& anet_closure,
                                       const MachineOptions& opt = {}) {
    if (auto failing = m0::fault_det_rec_guard(s, n, k, anet_closure, opt)) return failing;
    if (!stale_route_guard(s, n, k, m)) return "grd3";
    return std::nullopt;
}

inline GuardResult fault_det_rec_fallback_guard(const WsanState& s, NodeId n, NodeId k,
                                                const BinRel& anet_closure,
                                                const MachineOptions& opt = {}) {
    if (auto failing = m0::fault_det_rec_guard(s, n, k, anet_closure, opt)) return failing;
    if (has_stale_route(s, n, k)) return "grd_fallback";
    return std::nullopt;
}

/// Records invalidated by recovering the pair (n,k) whose routes ran via m.
inline TriRel expired_routes(const WsanState& s, NodeId n, NodeId k, NodeId m) {
    TriRel expired;
    expired.insert(n, k, m);
    expired.insert(k, n, m);
    for (NodeId a : image(s.anet, n)) expired.insert(a, m, n);
    for (NodeId a : image(s.anet, k)) expired.insert(a, m, k);
    return expired;
}

inline TriRel erase_all(const TriRel& from, const TriRel& remove) {
    TriRel kept;
    for (const auto& t : from) {
        if (!remove.contains(t)) kept.insert(t);
    }
    return kept;
}

/// The full nondeterministic assignment set of the recovery event's lnet
/// update: any subset of this relation is an admissible post-value.
inline TriRel rec_update_set(const WsanState& s, NodeId n, NodeId k, NodeId m) {
    TriRel allowed = erase_all(s.lnet, expired_routes(s, n, k, m));
    for (NodeId a : image(s.anet, k)) {
        allowed.insert(a, n, k);
        allowed.insert(n, a, k);
    }
    for (NodeId a : image(s.anet, n)) {
        allowed.insert(a, k, n);
        allowed.insert(k, a, n);
    }
    for (NodeId v : s.universe->nodes()) {
        if (v == m) continue;
        allowed.insert(k, n, v);
        allowed.insert(n, k, v);
    }
    return allowed;
}

namespace detail {

inline NodeId pick_other_than(const NodeUniverse& u, NodeId excluded, std::mt19937_64& rng) {
    std::vector<NodeId> pool;
    for (NodeId v : u.nodes()) {
        if (v != excluded) pool.push_back(v);
    }
    return pool[rng() % pool.size()];
}

}  // namespace detail

inline WsanState fault_det_rec_apply(const WsanState& s, NodeId n, NodeId k, NodeId m,
                                     const LnetChoice& choice = {}) {
    WsanState next = m0::fault_det_rec_apply(s, n, k);
    switch (choice.mode) {
        case LnetChoice::Mode::DirectPair: {
            TriRel lnet = erase_all(s.lnet, expired_routes(s, n, k, m));
            lnet.insert(n, k, k);
            lnet.insert(k, n, n);
            next.lnet = lnet;
            break;
        }
        case LnetChoice::Mode::SeededPair: {
            TriRel lnet = erase_all(s.lnet, expired_routes(s, n, k, m));
            lnet.insert(n, k, detail::pick_other_than(*s.universe, m, *choice.rng));
            lnet.insert(k, n, detail::pick_other_than(*s.universe, m, *choice.rng));
            next.lnet = lnet;
            break;
        }
        case LnetChoice::Mode::SeededSubset: {
            TriRel lnet;
            for (const auto& t : rec_update_set(s, n, k, m)) {
                if ((*choice.rng)() % 2 == 0) lnet.insert(t);
            }
            next.lnet = lnet;
            break;
        }
    }
    return next;
}

inline WsanState fault_det_rec_fallback_apply(const WsanState& s, NodeId n, NodeId k) {
    WsanState next = m0::fault_det_rec_apply(s, n, k);
    next.lnet.insert(n, k, k);
    next.lnet.insert(k, n, n);
    return next;
}

inline GuardResult fault_det_rec2_guard(const WsanState& s, NodeId n, NodeId k, NodeId m,
                                        const BinRel& anet_closure) {
    if (auto failing = m0::fault_det_rec2_guard(s, n, k, anet_closure)) return failing;
    if (!stale_route_guard(s, n, k, m)) return "grd3";
    return std::nullopt;
}

inline GuardResult fault_det_rec2_fallback_guard(const WsanState& s, NodeId n, NodeId k,
                                                 const BinRel& anet_closure) {
    if (auto failing = m0::fault_det_rec2_guard(s, n, k, anet_closure)) return failing;
    if (has_stale_route(s, n, k)) return "grd_fallback";
    return std::nullopt;
}

inline WsanState fault_det_rec2_apply(const WsanState& s, NodeId n, NodeId k, NodeId m) {
    WsanState next = m0::fault_det_rec2_apply(s, n);
    next.lnet = erase_all(s.lnet, expired_routes(s, n, k, m));
    return next;
}

inline WsanState fault_det_rec2_fallback_apply(const WsanState& s, NodeId n) {
    return m0::fault_det_rec2_apply(s, n);
}

// -- enumeration --------------------------------------------------------------

inline void enumerate_recovery(const WsanState& s, const MachineOptions& opt,
                               std::vector<EventInstance>& out) {
    const BinRel anet_closure = closure(s.anet);
    for (NodeId n : s.failed_node_neigh) {
        for (NodeId k : s.failed_node_neigh) {
            for (NodeId m : s.lnet.vias(n, k)) {
                if (!fault_det_rec_guard(s, n, k, m, anet_closure, opt)) {
                    out.push_back({EventName::FaultDetRec, {n, k, m}});
                }
                if (!fault_det_rec2_guard(s, n, k, m, anet_closure)) {
                    out.push_back({EventName::FaultDetRec2, {n, k, m}});
                }
            }
            if (!fault_det_rec_fallback_guard(s, n, k, anet_closure, opt)) {
                out.push_back({EventName::FaultDetRec, {n, k}});
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
                    if (!add_2hop_guard(s, n, m, k)) {
                        out.push_back({EventName::AddlNet2hopLink, {n, m, k}});
                    }
                }
            }
        }
    } else {
        enumerate_recovery(s, opt, out);
    }
    return out;
}

}  // namespace m1
}  // namespace wsan

#endif  // WSAN_MACHINE_M1_HPP
