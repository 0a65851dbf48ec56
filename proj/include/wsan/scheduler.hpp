#ifndef WSAN_SCHEDULER_HPP
#define WSAN_SCHEDULER_HPP

#include <deque>
#include <map>
#include <unordered_set>

#include "wsan/machine.hpp"

namespace wsan {

/// Operational reading of the always-enabled theorem: the scheduler's
/// enabled set for a reachable state is never empty.
inline bool check_thm1(const WsanState&, const std::vector<EventInstance>& enabled) {
    return !enabled.empty();
}

enum class StopCondition { StepsExhausted, RecoveryComplete };

struct ScheduleConfig {
    std::uint64_t seed{0};
    std::size_t max_steps{100};
    Level level{Level::M0};
    std::map<std::string, double> weights;  // per event name; unlisted names weigh 1
    StopCondition stop{StopCondition::StepsExhausted};
    LnetChoice::Mode lnet_mode{LnetChoice::Mode::DirectPair};
};

struct TraceStep {
    std::size_t index{0};
    EventInstance event;
    std::string digest;
    std::size_t variant{0};
    InvariantReport report;
};

struct Trace {
    std::vector<TraceStep> steps;
    std::uint64_t seed{0};
    Level level{Level::M0};
    bool deadlocked{false};
    bool violated{false};
};

struct DeadlockError : std::runtime_error {
    explicit DeadlockError(const std::string& digest)
        : std::runtime_error("no event enabled (deadlock) in state " + digest) {}
};

struct ScriptError : std::runtime_error {
    ScriptError(std::size_t index, const std::string& event, const std::string& guard)
        : std::runtime_error("script step " + std::to_string(index) + ": " + event +
                             " not enabled, failing guard " + guard),
          step_index(index),
          failing_guard(guard) {}

    std::size_t step_index;
    std::string failing_guard;
};

struct ExplosionGuardError : std::runtime_error {
    explicit ExplosionGuardError(std::size_t nodes, std::size_t guard)
        : std::runtime_error("universe of " + std::to_string(nodes) +
                             " nodes exceeds the exploration guard of " +
                             std::to_string(guard) + " (use force to override)") {}
};

namespace detail {

inline double uniform53(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

}  // namespace detail

/**
 * Seeded weighted choice among the enabled instances. Zero-weight events
 * are never chosen; sampling is hand-rolled on the raw mt19937_64 stream
 * so the same seed picks the same instance on any platform.
 */
inline EventInstance sample_instance(const std::vector<EventInstance>& enabled,
                                     const ScheduleConfig& cfg, std::mt19937_64& rng) {
    std::vector<double> cumulative;
    cumulative.reserve(enabled.size());
    double total = 0.0;
    for (const auto& e : enabled) {
        auto it = cfg.weights.find(to_string(e.name));
        total += it == cfg.weights.end() ? 1.0 : it->second;
        cumulative.push_back(total);
    }
    if (total <= 0.0) {
        throw std::invalid_argument("every enabled event has zero weight");
    }
    const double pick = detail::uniform53(rng) * total;
    for (std::size_t i = 0; i < enabled.size(); ++i) {
        if (pick < cumulative[i]) return enabled[i];
    }
    return enabled.back();
}

/// One scheduled transition: sample an enabled instance and apply it.
/// Deterministic given (state, config, rng state).
inline std::pair<WsanState, EventInstance> step(const WsanState& s, const ScheduleConfig& cfg,
                                                std::mt19937_64& rng,
                                                const MachineOptions& opt = {}) {
    const auto enabled = enabled_events(s, opt);
    if (enabled.empty()) throw DeadlockError(digest(s));
    const EventInstance choice = sample_instance(enabled, cfg, rng);
    LnetChoice lnet_choice{cfg.lnet_mode, &rng};
    return {apply_event(s, choice, lnet_choice, opt), choice};
}

namespace detail {

inline void record(Trace& trace, std::size_t index, EventInstance event, const WsanState& s) {
    trace.steps.push_back({index, std::move(event), digest(s), variant(s),
                           check_invariants(s)});
    if (!trace.steps.back().report.empty()) trace.violated = true;
}

}  // namespace detail

/**
 * Execute the optional script prefix, then run seeded free steps until
 * the stop condition. Invariants are checked after every step; the trace
 * aborts on the first violation with the witness recorded. A script step
 * whose guard fails raises ScriptError naming the guard.
 */
inline Trace run(UniversePtr universe, const ScheduleConfig& cfg,
                 const std::vector<EventInstance>& script = {},
                 const MachineOptions& opt = {}) {
    Trace trace;
    trace.seed = cfg.seed;
    trace.level = cfg.level;

    WsanState state = initial_state(std::move(universe), cfg.level);
    detail::record(trace, 0, {EventName::Initialisation, {}}, state);
    if (trace.violated) return trace;

    std::size_t index = 0;
    for (const auto& scripted : script) {
        if (auto guard = failing_guard(state, scripted, opt)) {
            throw ScriptError(index + 1, describe(scripted, *state.universe), *guard);
        }
        state = apply_event(state, scripted, {}, opt);
        detail::record(trace, ++index, scripted, state);
        if (trace.violated) return trace;
    }

    std::mt19937_64 rng(cfg.seed);
    for (std::size_t free_steps = 0; free_steps < cfg.max_steps; ++free_steps) {
        if (cfg.stop == StopCondition::RecoveryComplete && state.failed_node_neigh.empty()) {
            break;
        }
        const auto enabled = enabled_events(state, opt);
        if (!check_thm1(state, enabled)) {
            trace.deadlocked = true;
            break;
        }
        const EventInstance choice = sample_instance(enabled, cfg, rng);
        LnetChoice lnet_choice{cfg.lnet_mode, &rng};
        state = apply_event(state, choice, lnet_choice, opt);
        detail::record(trace, ++index, choice, state);
        if (trace.violated) break;
    }
    return trace;
}

struct ExploreOptions {
    std::size_t node_guard{6};
    bool force{false};
    MachineOptions machine;
};

struct ReachabilityReport {
    std::size_t state_count{0};
    std::size_t depth{0};
    std::vector<std::string> deadlock_digests;
    std::vector<std::pair<std::string, InvariantReport>> violations;

    bool clean() const { return deadlock_digests.empty() && violations.empty(); }
};

/**
 * Breadth-first enumeration of every state reachable within `depth`
 * steps, checking invariants and deadlock freedom in each. States are
 * deduplicated by canonical serialization. Refuses universes above the
 * explosion guard unless forced.
 */
inline ReachabilityReport explore(UniversePtr universe, Level level, std::size_t depth,
                                  const ExploreOptions& opt = {}) {
    if (universe->size() > opt.node_guard && !opt.force) {
        throw ExplosionGuardError(universe->size(), opt.node_guard);
    }

    ReachabilityReport report;
    report.depth = depth;

    WsanState initial = initial_state(std::move(universe), level);
    std::unordered_set<std::string> visited;
    std::deque<std::pair<WsanState, std::size_t>> frontier;
    visited.insert(canonical_string(initial));
    frontier.emplace_back(std::move(initial), 0);

    while (!frontier.empty()) {
        auto [state, dist] = std::move(frontier.front());
        frontier.pop_front();
        ++report.state_count;

        if (auto violations = check_invariants(state); !violations.empty()) {
            report.violations.emplace_back(digest(state), std::move(violations));
        }
        const auto enabled = enabled_events(state, opt.machine);
        if (!check_thm1(state, enabled)) {
            report.deadlock_digests.push_back(digest(state));
        }
        if (dist == depth) continue;
        for (const auto& e : enabled) {
            WsanState next = apply_event(state, e, {}, opt.machine);
            if (visited.insert(canonical_string(next)).second) {
                frontier.emplace_back(std::move(next), dist + 1);
            }
        }
    }
    return report;
}

/// Number of connected components among ok actors under closure(anet);
/// an isolated ok actor counts as its own component.
inline std::size_t ok_actor_partitions(const WsanState& s) {
    const BinRel reach = closure(s.anet);
    std::size_t count = 0;
    for (NodeId a : s.universe->actors()) {
        if (!s.ok(a)) continue;
        NodeId representative = a;
        for (NodeId b : s.universe->actors()) {
            if (b < representative && s.ok(b) && reach.contains(a, b)) representative = b;
        }
        if (representative == a) ++count;
    }
    return count;
}

}  // namespace wsan

#endif  // WSAN_SCHEDULER_HPP
