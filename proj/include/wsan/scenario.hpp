#ifndef WSAN_SCENARIO_HPP
#define WSAN_SCENARIO_HPP

#include <iostream>
#include <random>

#include <json.hpp>

#include "wsan/scheduler.hpp"

namespace wsan {

struct ScenarioParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * A scenario: a node universe, a scripted event prefix and run metadata.
 * Serialized as versioned JSON (see docs/formats.md).
 */
struct Scenario {
    std::string description;
    Level level{Level::M0};
    StopCondition stop{StopCondition::StepsExhausted};
    UniversePtr universe;
    std::vector<EventInstance> script;
};

inline const char* to_string(StopCondition stop) {
    return stop == StopCondition::RecoveryComplete ? "recovery-complete" : "steps-exhausted";
}

namespace detail {

inline StopCondition stop_from_string(const std::string& text) {
    if (text == "steps-exhausted") return StopCondition::StepsExhausted;
    if (text == "recovery-complete") return StopCondition::RecoveryComplete;
    throw ScenarioParseError("scenario field 'stop': unknown value '" + text + "'");
}

inline NodeKind kind_from_string(const std::string& text) {
    if (text == "actor") return NodeKind::Actor;
    if (text == "sensor") return NodeKind::Sensor;
    throw ScenarioParseError("scenario field 'universe.kind': unknown value '" + text + "'");
}

}  // namespace detail

inline Scenario parse_scenario(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw ScenarioParseError(std::string("scenario is not valid JSON: ") + err.what());
    }

    auto field = [&doc](const char* name) -> const nlohmann::json& {
        if (!doc.contains(name)) {
            throw ScenarioParseError(std::string("scenario field '") + name + "' is missing");
        }
        return doc.at(name);
    };

    Scenario scenario;
    if (field("version").get<int>() != 1) {
        throw ScenarioParseError("scenario field 'version': only version 1 is supported");
    }
    scenario.description = doc.value("description", std::string{});
    try {
        scenario.level = level_from_string(field("level").get<std::string>());
    } catch (const std::invalid_argument& err) {
        throw ScenarioParseError(std::string("scenario field 'level': ") + err.what());
    }
    if (doc.contains("stop")) {
        scenario.stop = detail::stop_from_string(doc.at("stop").get<std::string>());
    }

    std::vector<std::string> names;
    std::vector<NodeKind> kinds;
    for (const auto& entry : field("universe")) {
        if (!entry.contains("id") || !entry.contains("kind")) {
            throw ScenarioParseError("scenario field 'universe': entries need 'id' and 'kind'");
        }
        names.push_back(entry.at("id").get<std::string>());
        kinds.push_back(detail::kind_from_string(entry.at("kind").get<std::string>()));
    }
    try {
        scenario.universe = std::make_shared<NodeUniverse>(std::move(names), std::move(kinds));
    } catch (const std::invalid_argument& err) {
        throw ScenarioParseError(std::string("scenario field 'universe': ") + err.what());
    }

    for (const auto& entry : field("script")) {
        if (!entry.contains("event") || !entry.contains("params")) {
            throw ScenarioParseError("scenario field 'script': steps need 'event' and 'params'");
        }
        EventInstance instance;
        try {
            instance.name = event_from_string(entry.at("event").get<std::string>());
        } catch (const std::invalid_argument& err) {
            throw ScenarioParseError(std::string("scenario field 'script.event': ") +
                                     err.what());
        }
        for (const auto& param : entry.at("params")) {
            const auto id = param.get<std::string>();
            if (!scenario.universe->has_name(id)) {
                throw ScenarioParseError("scenario field 'script.params': unknown node id '" +
                                         id + "'");
            }
            instance.params.push_back(scenario.universe->id_of(id));
        }
        scenario.script.push_back(std::move(instance));
    }
    return scenario;
}

inline std::string emit_scenario(const Scenario& scenario) {
    nlohmann::ordered_json doc;
    doc["version"] = 1;
    doc["description"] = scenario.description;
    doc["level"] = to_string(scenario.level);
    doc["stop"] = to_string(scenario.stop);
    doc["universe"] = nlohmann::ordered_json::array();
    for (NodeId n : scenario.universe->nodes()) {
        doc["universe"].push_back({{"id", scenario.universe->name(n)},
                                   {"kind", to_string(scenario.universe->kind(n))}});
    }
    doc["script"] = nlohmann::ordered_json::array();
    for (const auto& e : scenario.script) {
        nlohmann::ordered_json params = nlohmann::ordered_json::array();
        for (NodeId p : e.params) params.push_back(scenario.universe->name(p));
        doc["script"].push_back({{"event", to_string(e.name)}, {"params", params}});
    }
    return doc.dump(2) + "\n";
}

/// One line-delimited JSON record per trace step.
inline std::string trace_record_json(const TraceStep& step, const NodeUniverse& universe) {
    nlohmann::ordered_json record;
    record["step"] = step.index;
    record["event"] = to_string(step.event.name);
    record["params"] = nlohmann::ordered_json::array();
    for (NodeId p : step.event.params) record["params"].push_back(universe.name(p));
    record["variant"] = step.variant;
    record["digest"] = step.digest;
    record["violations"] = nlohmann::ordered_json::array();
    for (const auto& v : step.report) {
        record["violations"].push_back(v.invariant + " " + v.witness);
    }
    return record.dump();
}

inline void write_trace(std::ostream& out, const Trace& trace, const NodeUniverse& universe) {
    for (const auto& step : trace.steps) {
        out << trace_record_json(step, universe) << '\n';
    }
}

// -- scenario generators ------------------------------------------------------

namespace detail {

inline EventInstance instance(EventName name, std::initializer_list<NodeId> params) {
    return {name, std::vector<NodeId>(params)};
}

inline void bring_up_actors(Scenario& s) {
    for (NodeId n : s.universe->actors()) {
        s.script.push_back(instance(EventName::AddNode, {n}));
    }
}

}  // namespace detail

/// Hub A1 linked to every other actor; removing the hub isolates them all.
inline Scenario gen_star(std::size_t actors) {
    if (actors < 2) throw std::invalid_argument("star topology needs at least 2 actors");
    Scenario s;
    s.description = "star: hub A1 linked to all actors, then the hub fails";
    s.stop = StopCondition::RecoveryComplete;
    s.universe = make_universe(actors, 0);
    detail::bring_up_actors(s);
    const NodeId hub{0};
    for (std::uint32_t i = 1; i < actors; ++i) {
        s.script.push_back(detail::instance(EventName::AddLink, {hub, NodeId{i}}));
    }
    s.script.push_back(detail::instance(EventName::RemoveNode, {hub}));
    return s;
}

/// Path A1-A2-...-An; removing the middle actor splits it in two.
inline Scenario gen_chain(std::size_t actors) {
    if (actors < 2) throw std::invalid_argument("chain topology needs at least 2 actors");
    Scenario s;
    s.description = "chain: path topology, then the middle actor fails";
    s.stop = StopCondition::RecoveryComplete;
    s.universe = make_universe(actors, 0);
    detail::bring_up_actors(s);
    for (std::uint32_t i = 0; i + 1 < actors; ++i) {
        s.script.push_back(detail::instance(EventName::AddLink, {NodeId{i}, NodeId{i + 1}}));
    }
    s.script.push_back(
        detail::instance(EventName::RemoveNode, {NodeId{static_cast<std::uint32_t>(actors / 2)}}));
    return s;
}

/// Random actor topology (plus sensor infrastructure when sensors > 0);
/// a linked actor fails at the end. Deterministic for a given seed.
inline Scenario gen_random(std::size_t actors, std::size_t sensors, std::uint64_t seed) {
    if (actors < 2) throw std::invalid_argument("random topology needs at least 2 actors");
    Scenario s;
    s.description = "random topology, seed " + std::to_string(seed);
    s.level = sensors > 0 ? Level::M2 : Level::M0;
    s.stop = StopCondition::RecoveryComplete;
    s.universe = make_universe(actors, sensors);
    detail::bring_up_actors(s);

    std::mt19937_64 rng(seed);
    const auto actor_ids = s.universe->actors();
    for (std::size_t i = 0; i < actor_ids.size(); ++i) {
        for (std::size_t j = i + 1; j < actor_ids.size(); ++j) {
            if (rng() % 100 < 40) {
                s.script.push_back(
                    detail::instance(EventName::AddLink, {actor_ids[i], actor_ids[j]}));
            }
        }
    }
    if (sensors > 0) {
        const auto sensor_ids = s.universe->sensors();
        for (NodeId n : sensor_ids) {
            s.script.push_back(detail::instance(EventName::AddSensorNode, {n}));
        }
        for (std::size_t i = 0; i + 1 < sensor_ids.size(); ++i) {
            s.script.push_back(
                detail::instance(EventName::AddSLink, {sensor_ids[i], sensor_ids[i + 1]}));
        }
        for (NodeId a : actor_ids) {
            const NodeId sensor = sensor_ids[rng() % sensor_ids.size()];
            s.script.push_back(detail::instance(EventName::AddSALink, {a, sensor}));
        }
    }
    const NodeId removed = actor_ids[rng() % actor_ids.size()];
    s.script.push_back(detail::instance(EventName::RemoveNode, {removed}));
    return s;
}

/**
 * The canonical 15-actor partition scenario: a cut-vertex actor A1 joins
 * three otherwise separate chains, so its failure creates exactly three
 * partitions. The partition count is re-verified against the closure at
 * generation time. The script uses only events shared by all three
 * machine levels, so the same file runs at m0, m1 and m2.
 */
inline Scenario gen_fig1() {
    Scenario s;
    s.description = "15 actors; cut-vertex A1 fails and creates three partitions";
    s.stop = StopCondition::RecoveryComplete;
    s.universe = make_universe(15, 0);
    detail::bring_up_actors(s);

    auto link = [&s](std::uint32_t a, std::uint32_t b) {
        s.script.push_back(detail::instance(EventName::AddLink, {NodeId{a - 1}, NodeId{b - 1}}));
    };
    link(1, 2);
    link(1, 6);
    link(1, 11);
    for (std::uint32_t i = 2; i < 5; ++i) link(i, i + 1);
    for (std::uint32_t i = 6; i < 10; ++i) link(i, i + 1);
    for (std::uint32_t i = 11; i < 15; ++i) link(i, i + 1);
    s.script.push_back(detail::instance(EventName::RemoveNode, {NodeId{0}}));

    // Sanity: replay the script and count partitions with the BFS oracle,
    // independently of the closure the simulator itself uses.
    WsanState state = initial_state(s.universe, s.level);
    for (const auto& e : s.script) state = apply_event(state, e);
    std::size_t partitions = 0;
    for (NodeId a : state.universe->actors()) {
        if (!state.ok(a)) continue;
        bool least_of_component = true;
        for (NodeId b : state.universe->actors()) {
            if (b < a && state.ok(b) && reachable_oracle(state.anet, a, b)) {
                least_of_component = false;
            }
        }
        if (least_of_component) ++partitions;
    }
    if (partitions != 3) {
        throw std::logic_error("fig1 generator: expected exactly 3 partitions");
    }
    return s;
}

}  // namespace wsan

#endif  // WSAN_SCENARIO_HPP
