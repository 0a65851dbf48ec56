#include <gtest/gtest.h>

#include <json.hpp>

#include "wsan/scenario.hpp"

using namespace wsan;

TEST(ScenarioFormat, EmitParseRoundTrip) {
    const Scenario original = gen_random(5, 2, 17);
    const std::string text = emit_scenario(original);
    const Scenario parsed = parse_scenario(text);
    EXPECT_EQ(emit_scenario(parsed), text);
    EXPECT_EQ(parsed.level, original.level);
    EXPECT_EQ(parsed.stop, original.stop);
    EXPECT_EQ(parsed.script, original.script);
    EXPECT_EQ(parsed.universe->size(), original.universe->size());
}

TEST(ScenarioFormat, RejectsUnknownNodeId) {
    const char* text = R"({
      "version": 1, "level": "m0",
      "universe": [{"id": "A1", "kind": "actor"}],
      "script": [{"event": "AddNode", "params": ["A9"]}]
    })";
    try {
        parse_scenario(text);
        FAIL() << "expected ScenarioParseError";
    } catch (const ScenarioParseError& err) {
        EXPECT_NE(std::string(err.what()).find("A9"), std::string::npos);
        EXPECT_NE(std::string(err.what()).find("script.params"), std::string::npos);
    }
}

TEST(ScenarioFormat, RejectsBadKindVersionLevelAndJson) {
    EXPECT_THROW(parse_scenario("{"), ScenarioParseError);
    EXPECT_THROW(parse_scenario(R"({"version": 2, "level": "m0", "universe": [], "script": []})"),
                 ScenarioParseError);
    EXPECT_THROW(
        parse_scenario(
            R"({"version": 1, "level": "m7", "universe": [{"id":"A1","kind":"actor"}], "script": []})"),
        ScenarioParseError);
    EXPECT_THROW(
        parse_scenario(
            R"({"version": 1, "level": "m0", "universe": [{"id":"X","kind":"router"}], "script": []})"),
        ScenarioParseError);
    EXPECT_THROW(
        parse_scenario(R"({"version": 1, "level": "m0", "universe": [], "script": []})"),
        ScenarioParseError);
}

TEST(ScenarioFormat, DuplicateNodeIdRejected) {
    EXPECT_THROW(parse_scenario(R"({
      "version": 1, "level": "m0",
      "universe": [{"id": "A1", "kind": "actor"}, {"id": "A1", "kind": "sensor"}],
      "script": []
    })"),
                 ScenarioParseError);
}

TEST(Generators, RandomIsDeterministicPerSeed) {
    EXPECT_EQ(emit_scenario(gen_random(6, 2, 7)), emit_scenario(gen_random(6, 2, 7)));
    EXPECT_NE(emit_scenario(gen_random(6, 2, 7)), emit_scenario(gen_random(6, 2, 8)));
}

TEST(Generators, StarLinksHubToAllActors) {
    const Scenario star = gen_star(4);
    std::size_t links = 0;
    for (const auto& e : star.script) {
        if (e.name == EventName::AddLink) {
            ++links;
            EXPECT_EQ(e.params[0], NodeId{0});
        }
    }
    EXPECT_EQ(links, 3u);
    EXPECT_EQ(star.script.back().name, EventName::RemoveNode);
}

TEST(Generators, Fig1CreatesExactlyThreePartitions) {
    const Scenario fig1 = gen_fig1();
    EXPECT_EQ(fig1.universe->actors().size(), 15u);

    WsanState s = initial_state(fig1.universe, Level::M0);
    for (const auto& e : fig1.script) s = apply_event(s, e);
    EXPECT_EQ(ok_actor_partitions(s), 3u);
    EXPECT_EQ(variant(s), 3u);  // A2, A6 and A11 lost their hub
}

TEST(Generators, Fig1RecoversToOneComponentAtEveryLevel) {
    const Scenario fig1 = gen_fig1();
    for (Level level : {Level::M0, Level::M1, Level::M2}) {
        ScheduleConfig cfg;
        cfg.seed = 5;
        cfg.level = level;
        cfg.stop = StopCondition::RecoveryComplete;
        const Trace trace = run(fig1.universe, cfg, fig1.script);
        EXPECT_FALSE(trace.violated);
        EXPECT_FALSE(trace.deadlocked);
        EXPECT_EQ(trace.steps.back().variant, 0u);
    }
}

TEST(TraceFormat, RecordsAreLineDelimitedJson) {
    const Scenario star = gen_star(3);
    ScheduleConfig cfg;
    cfg.level = star.level;
    cfg.stop = StopCondition::RecoveryComplete;
    const Trace trace = run(star.universe, cfg, star.script);

    std::ostringstream out;
    write_trace(out, trace, *star.universe);
    std::istringstream lines(out.str());
    std::string line;
    std::size_t count = 0;
    std::size_t last_step = 0;
    while (std::getline(lines, line)) {
        const auto record = nlohmann::json::parse(line);
        EXPECT_TRUE(record.contains("step"));
        EXPECT_TRUE(record.contains("event"));
        EXPECT_TRUE(record.contains("params"));
        EXPECT_TRUE(record.contains("variant"));
        EXPECT_TRUE(record.contains("digest"));
        EXPECT_TRUE(record.at("violations").empty());
        if (count > 0) {
            EXPECT_EQ(record.at("step").get<std::size_t>(), last_step + 1);
        }
        last_step = record.at("step").get<std::size_t>();
        ++count;
    }
    EXPECT_EQ(count, trace.steps.size());
}

TEST(TraceFormat, ReplayingATraceScriptReproducesDigests) {
    const Scenario star = gen_star(4);
    ScheduleConfig cfg;
    cfg.seed = 11;
    cfg.level = star.level;
    cfg.stop = StopCondition::RecoveryComplete;
    const Trace original = run(star.universe, cfg, star.script);

    std::vector<EventInstance> replay_script;
    for (std::size_t i = 1; i < original.steps.size(); ++i) {
        replay_script.push_back(original.steps[i].event);
    }
    ScheduleConfig replay_cfg;
    replay_cfg.level = star.level;
    replay_cfg.max_steps = 0;
    const Trace replayed = run(star.universe, replay_cfg, replay_script);
    ASSERT_EQ(replayed.steps.size(), original.steps.size());
    for (std::size_t i = 0; i < original.steps.size(); ++i) {
        EXPECT_EQ(replayed.steps[i].digest, original.steps[i].digest);
    }
}
