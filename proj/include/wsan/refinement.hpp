#ifndef WSAN_REFINEMENT_HPP
#define WSAN_REFINEMENT_HPP

#include "wsan/scheduler.hpp"

namespace wsan {

struct Verdict {
    bool pass{true};
    std::string detail;
};

inline Level below(Level level) {
    switch (level) {
        case Level::M1: return Level::M0;
        case Level::M2: return Level::M1;
        case Level::M0: break;
    }
    throw std::invalid_argument("m0 has no abstract counterpart");
}

/**
 * Abstract counterpart of a concrete event instance, if the event exists
 * one level down. Parameter projection is positional (concrete-only
 * parameters dropped); the two-parameter recovery form needs a witness
 * search because the abstract machine may satisfy its localized guard
 * with a route the concrete machine cannot use.
 */
inline std::optional<EventInstance> abstract_instance(const WsanState& concrete,
                                                      const EventInstance& e) {
    const Level target = below(concrete.level);
    switch (e.name) {
        case EventName::AddNode:
        case EventName::AddLink:
        case EventName::RemoveNode:
            return e;
        case EventName::AddlNet2hopLink:
            return target >= Level::M1 ? std::optional<EventInstance>(e) : std::nullopt;
        case EventName::AddSensorNode:
        case EventName::AddSLink:
        case EventName::AddSALink:
            return std::nullopt;  // new events refine stuttering
        case EventName::FaultDetRec:
        case EventName::FaultDetRec2: {
            const NodeId n = e.params.at(0);
            const NodeId k = e.params.at(1);
            if (target == Level::M0) return EventInstance{e.name, {n, k}};
            if (e.params.size() >= 3) {
                return EventInstance{e.name, {n, k, e.params[2]}};
            }
            // Direct form: prefer an enabled localized abstract instance.
            const WsanState projected = project(concrete, target);
            for (NodeId m : projected.lnet.vias(n, k)) {
                const EventInstance candidate{e.name, {n, k, m}};
                if (is_enabled(projected, candidate)) return candidate;
            }
            return EventInstance{e.name, {n, k}};
        }
        case EventName::Initialisation:
            break;
    }
    throw std::invalid_argument("no abstract mapping for event");
}

/**
 * Guard strengthening: a concrete instance enabled at `concrete` must
 * have its abstract counterpart enabled on the projected state. Events
 * without a counterpart pass vacuously.
 */
inline Verdict check_guard_strengthening(const WsanState& concrete, const EventInstance& e,
                                         const MachineOptions& concrete_opt = {}) {
    if (!is_enabled(concrete, e, concrete_opt)) {
        return {true, "concrete instance not enabled; nothing to check"};
    }
    const auto abstracted = abstract_instance(concrete, e);
    if (!abstracted) return {true, "new event, refines stuttering"};

    const WsanState projected = project(concrete, below(concrete.level));
    if (auto guard = failing_guard(projected, *abstracted)) {
        return {false, describe(e, *concrete.universe) + " enabled at " +
                           to_string(concrete.level) + " but abstract " +
                           describe(*abstracted, *concrete.universe) + " blocked by " +
                           *guard};
    }
    return {true, ""};
}

namespace detail {

inline std::optional<std::string> shared_variable_diff(const WsanState& via_concrete,
                                                       const WsanState& via_abstract) {
    if (via_concrete.status != via_abstract.status) return "status";
    if (!(via_concrete.anet == via_abstract.anet)) return "anet";
    if (via_concrete.failed_node_neigh != via_abstract.failed_node_neigh) {
        return "failed_node_neigh";
    }
    return std::nullopt;
}

inline bool subset_of(const TriRel& small, const TriRel& large) {
    for (const auto& t : small) {
        if (!large.contains(t)) return false;
    }
    return true;
}

}  // namespace detail

/**
 * Action consistency: applying the concrete instance and projecting must
 * agree with applying the abstract counterpart on the projected state,
 * for the variables both levels share. The localized-table result of the
 * refined recovery event is compared by membership in the abstract
 * event's nondeterministic assignment set instead of by equality.
 */
inline Verdict check_action_consistency(const WsanState& concrete, const EventInstance& e,
                                        const MachineOptions& concrete_opt = {}) {
    const auto abstracted = abstract_instance(concrete, e);
    if (!abstracted) return {true, "new event, refines stuttering"};

    const Level target = below(concrete.level);
    const WsanState projected_pre = project(concrete, target);
    if (auto guard = failing_guard(projected_pre, *abstracted)) {
        return {false, "abstract " + describe(*abstracted, *concrete.universe) +
                           " not applicable: " + *guard};
    }

    const WsanState via_concrete =
        project(apply_event(concrete, e, {}, concrete_opt), target);
    const WsanState via_abstract = apply_event(projected_pre, *abstracted);

    if (auto diff = detail::shared_variable_diff(via_concrete, via_abstract)) {
        return {false, describe(e, *concrete.universe) +
                           ": projection differs from abstract step on " + *diff};
    }

    if (target == Level::M0) return {true, ""};

    const bool nondeterministic_update = e.name == EventName::FaultDetRec &&
                                         concrete.level == Level::M2 &&
                                         e.params.size() == 5;
    if (nondeterministic_update) {
        const TriRel allowed = m1::rec_update_set(projected_pre, e.params[0], e.params[1],
                                                  e.params[2]);
        if (!detail::subset_of(via_concrete.lnet, allowed)) {
            return {false, describe(e, *concrete.universe) +
                               ": lnet result escapes the abstract assignment set"};
        }
        return {true, ""};
    }
    if (!(via_concrete.lnet == via_abstract.lnet)) {
        return {false, describe(e, *concrete.universe) +
                           ": projection differs from abstract step on lnet"};
    }
    return {true, ""};
}

struct RefinementFailure {
    std::string state_digest;
    std::string instance;
    std::string check;  // "guard-strengthening" | "action-consistency"
    std::string detail;
};

struct RefinementReport {
    Level concrete{Level::M1};
    std::size_t states{0};
    std::size_t instances{0};
    std::vector<RefinementFailure> failures;

    bool pass() const { return failures.empty(); }
};

/**
 * Run both checks over every reachable (state, enabled instance) pair of
 * the concrete machine up to `depth`. The fixture options apply to the
 * concrete machine only, so a deliberately weakened guard shows up as a
 * strengthening failure.
 */
inline RefinementReport refinement_sweep(UniversePtr universe, Level concrete,
                                         std::size_t depth,
                                         const ExploreOptions& opt = {}) {
    if (universe->size() > opt.node_guard && !opt.force) {
        throw ExplosionGuardError(universe->size(), opt.node_guard);
    }

    RefinementReport report;
    report.concrete = concrete;

    WsanState initial = initial_state(std::move(universe), concrete);
    std::unordered_set<std::string> visited;
    std::deque<std::pair<WsanState, std::size_t>> frontier;
    visited.insert(canonical_string(initial));
    frontier.emplace_back(std::move(initial), 0);

    auto note = [&report](const WsanState& s, const EventInstance& e, const char* check,
                          const Verdict& verdict) {
        if (!verdict.pass) {
            report.failures.push_back(
                {digest(s), describe(e, *s.universe), check, verdict.detail});
        }
    };

    while (!frontier.empty()) {
        auto [state, dist] = std::move(frontier.front());
        frontier.pop_front();
        ++report.states;

        for (const auto& e : enabled_events(state, opt.machine)) {
            ++report.instances;
            note(state, e, "guard-strengthening",
                 check_guard_strengthening(state, e, opt.machine));
            note(state, e, "action-consistency",
                 check_action_consistency(state, e, opt.machine));
            if (dist < depth) {
                WsanState next = apply_event(state, e, {}, opt.machine);
                if (visited.insert(canonical_string(next)).second) {
                    frontier.emplace_back(std::move(next), dist + 1);
                }
            }
        }
    }
    return report;
}

}  // namespace wsan

#endif  // WSAN_REFINEMENT_HPP
