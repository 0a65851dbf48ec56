#ifndef WSAN_MACHINE_HPP
#define WSAN_MACHINE_HPP

#include "wsan/machine_m2.hpp"

namespace wsan {

inline WsanState initial_state(UniversePtr universe, Level level) {
    return m0::initial_state(std::move(universe), level);
}

/// All event instances whose guards hold at s, for the machine level of
/// s, in canonical (NodeId-sorted) enumeration order.
inline std::vector<EventInstance> enabled_events(const WsanState& s,
                                                 const MachineOptions& opt = {}) {
    switch (s.level) {
        case Level::M0: return m0::enabled_events(s, opt);
        case Level::M1: return m1::enabled_events(s, opt);
        case Level::M2: return m2::enabled_events(s, opt);
    }
    return {};
}

namespace detail {

inline void require_arity(const EventInstance& e, std::size_t arity) {
    if (e.params.size() != arity) {
        throw std::invalid_argument(std::string(to_string(e.name)) +
                                    ": wrong parameter count");
    }
}

inline bool arity_is(const EventInstance& e, std::size_t arity) {
    return e.params.size() == arity;
}

}  // namespace detail

/**
 * First failing guard identifier for the instance at s, or nullopt when
 * the instance is enabled. Unknown events, arity mismatches and foreign
 * node ids throw std::invalid_argument.
 */
inline std::optional<std::string> failing_guard(const WsanState& s, const EventInstance& e,
                                                const MachineOptions& opt = {}) {
    for (NodeId p : e.params) {
        if (p.value >= s.universe->size()) {
            throw std::invalid_argument(std::string(to_string(e.name)) +
                                        ": parameter outside the node universe");
        }
    }
    auto guard = [](m0::GuardResult r) -> std::optional<std::string> {
        if (r) return std::string(*r);
        return std::nullopt;
    };
    const auto& p = e.params;
    switch (e.name) {
        case EventName::AddNode:
            detail::require_arity(e, 1);
            return guard(m0::add_node_guard(s, p[0]));
        case EventName::AddLink:
            detail::require_arity(e, 2);
            return guard(m0::add_link_guard(s, p[0], p[1]));
        case EventName::RemoveNode:
            detail::require_arity(e, 1);
            return guard(m0::remove_node_guard(s, p[0]));
        case EventName::AddlNet2hopLink:
            if (s.level < Level::M1) break;
            detail::require_arity(e, 3);
            return guard(m1::add_2hop_guard(s, p[0], p[1], p[2]));
        case EventName::AddSensorNode:
            if (s.level < Level::M2) break;
            detail::require_arity(e, 1);
            return guard(m2::add_sensor_node_guard(s, p[0]));
        case EventName::AddSLink:
            if (s.level < Level::M2) break;
            detail::require_arity(e, 2);
            return guard(m2::add_slink_guard(s, p[0], p[1]));
        case EventName::AddSALink:
            if (s.level < Level::M2) break;
            detail::require_arity(e, 2);
            return guard(m2::add_salink_guard(s, p[0], p[1]));
        case EventName::FaultDetRec: {
            const BinRel anet_closure = closure(s.anet);
            if (s.level == Level::M0) {
                detail::require_arity(e, 2);
                return guard(m0::fault_det_rec_guard(s, p[0], p[1], anet_closure, opt));
            }
            if (s.level == Level::M1) {
                if (detail::arity_is(e, 3)) {
                    return guard(
                        m1::fault_det_rec_guard(s, p[0], p[1], p[2], anet_closure, opt));
                }
                detail::require_arity(e, 2);
                return guard(m1::fault_det_rec_fallback_guard(s, p[0], p[1], anet_closure, opt));
            }
            const BinRel snet_closure = closure(s.snet);
            if (detail::arity_is(e, 5)) {
                return guard(m2::fault_det_rec_guard(s, p[0], p[1], p[2], p[3], p[4],
                                                     anet_closure, snet_closure, opt));
            }
            detail::require_arity(e, 2);
            return guard(m2::fault_det_rec_fallback_guard(s, p[0], p[1], anet_closure,
                                                          snet_closure, opt));
        }
        case EventName::FaultDetRec2: {
            const BinRel anet_closure = closure(s.anet);
            if (s.level == Level::M0) {
                detail::require_arity(e, 2);
                return guard(m0::fault_det_rec2_guard(s, p[0], p[1], anet_closure));
            }
            if (detail::arity_is(e, 3)) {
                if (s.level == Level::M1) {
                    return guard(m1::fault_det_rec2_guard(s, p[0], p[1], p[2], anet_closure));
                }
                return guard(m2::fault_det_rec2_guard(s, p[0], p[1], p[2], anet_closure));
            }
            detail::require_arity(e, 2);
            if (s.level == Level::M1) {
                return guard(m1::fault_det_rec2_fallback_guard(s, p[0], p[1], anet_closure));
            }
            return guard(m2::fault_det_rec2_fallback_guard(s, p[0], p[1], anet_closure));
        }
        case EventName::Initialisation:
            break;
    }
    throw std::invalid_argument(std::string(to_string(e.name)) +
                                ": not an event of machine " + to_string(s.level));
}

inline bool is_enabled(const WsanState& s, const EventInstance& e,
                       const MachineOptions& opt = {}) {
    return !failing_guard(s, e, opt).has_value();
}

/**
 * Apply an enabled instance, returning the post-state. Guards are checked
 * first; applying a disabled instance is a programming error and throws.
 */
inline WsanState apply_event(const WsanState& s, const EventInstance& e,
                             const LnetChoice& choice = {},
                             const MachineOptions& opt = {}) {
    if (auto failing = failing_guard(s, e, opt)) {
        throw std::logic_error("event not enabled: " + describe(e, *s.universe) + " (" +
                               *failing + ")");
    }
    const auto& p = e.params;
    switch (e.name) {
        case EventName::AddNode:
            return m0::add_node_apply(s, p[0]);
        case EventName::AddLink:
            return s.level == Level::M0 ? m0::add_link_apply(s, p[0], p[1])
                                        : m1::add_link_apply(s, p[0], p[1]);
        case EventName::RemoveNode:
            switch (s.level) {
                case Level::M0: return m0::remove_node_apply(s, p[0]);
                case Level::M1: return m1::remove_node_apply(s, p[0]);
                case Level::M2: return m2::remove_node_apply(s, p[0]);
            }
            break;
        case EventName::AddlNet2hopLink:
            return m1::add_2hop_apply(s, p[0], p[1], p[2]);
        case EventName::AddSensorNode:
            return m2::add_sensor_node_apply(s, p[0]);
        case EventName::AddSLink:
            return m2::add_slink_apply(s, p[0], p[1]);
        case EventName::AddSALink:
            return m2::add_salink_apply(s, p[0], p[1]);
        case EventName::FaultDetRec:
            if (s.level == Level::M0) return m0::fault_det_rec_apply(s, p[0], p[1]);
            if (p.size() == 5) return m2::fault_det_rec_apply(s, p[0], p[1], p[2], p[3], p[4]);
            if (p.size() == 3) return m1::fault_det_rec_apply(s, p[0], p[1], p[2], choice);
            return s.level == Level::M1 ? m1::fault_det_rec_fallback_apply(s, p[0], p[1])
                                        : m2::fault_det_rec_fallback_apply(s, p[0], p[1]);
        case EventName::FaultDetRec2:
            if (s.level == Level::M0) return m0::fault_det_rec2_apply(s, p[0]);
            if (p.size() == 3) return m1::fault_det_rec2_apply(s, p[0], p[1], p[2]);
            return s.level == Level::M1 ? m1::fault_det_rec2_fallback_apply(s, p[0])
                                        : m2::fault_det_rec2_fallback_apply(s, p[0], p[1]);
        case EventName::Initialisation:
            break;
    }
    throw std::invalid_argument("cannot apply event");
}

}  // namespace wsan

#endif  // WSAN_MACHINE_HPP
