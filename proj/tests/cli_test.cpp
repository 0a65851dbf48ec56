#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

namespace fs = std::filesystem;

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

const char* cli_bin() {
    const char* bin = std::getenv("WSAN_CLI_BIN");
    return bin ? bin : "./tools/wsan";
}

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out = fs::temp_directory_path() / ("wsan_out_" + std::to_string(counter));
    const fs::path err = fs::temp_directory_path() / ("wsan_err_" + std::to_string(counter));
    ++counter;
    const std::string command = std::string(cli_bin()) + " " + args + " >" + out.string() +
                                " 2>" + err.string();
    const int raw = std::system(command.c_str());
    CliResult result{WEXITSTATUS(raw), read_file(out), read_file(err)};
    fs::remove(out);
    fs::remove(err);
    return result;
}

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / name; }

}  // namespace

TEST(CliGen, WritesValidScenarioForEveryKind) {
    for (const char* kind : {"fig1", "star", "chain", "random"}) {
        const auto result = run_cli(std::string("gen ") + kind);
        EXPECT_EQ(result.exit_code, 0) << kind << ": " << result.err;
        EXPECT_NE(result.out.find("\"version\": 1"), std::string::npos);
    }
    EXPECT_EQ(run_cli("gen moebius").exit_code, 1);
}

TEST(CliGen, DeterministicRandomScenario) {
    const auto first = run_cli("gen random --actors 5 --sensors 2 --seed 7");
    const auto second = run_cli("gen random --actors 5 --sensors 2 --seed 7");
    EXPECT_EQ(first.out, second.out);
}

TEST(CliRun, Fig1SucceedsAtEveryLevel) {
    const fs::path scenario = temp_file("fig1.json");
    ASSERT_EQ(run_cli("gen fig1 --scenario " + scenario.string()).exit_code, 0);
    for (const char* level : {"m0", "m1", "m2"}) {
        const auto result =
            run_cli("run --scenario " + scenario.string() + " --seed 3 --level " + level);
        EXPECT_EQ(result.exit_code, 0) << result.err;
        EXPECT_NE(result.err.find("final variant 0"), std::string::npos) << result.err;
    }
    fs::remove(scenario);
}

TEST(CliRun, TraceFilesAreByteIdenticalAcrossRuns) {
    const fs::path scenario = temp_file("star.json");
    const fs::path trace_a = temp_file("trace_a.jsonl");
    const fs::path trace_b = temp_file("trace_b.jsonl");
    ASSERT_EQ(run_cli("gen star --actors 6 --scenario " + scenario.string()).exit_code, 0);
    ASSERT_EQ(run_cli("run --scenario " + scenario.string() + " --seed 42 --trace-out " +
                      trace_a.string())
                  .exit_code,
              0);
    ASSERT_EQ(run_cli("run --scenario " + scenario.string() + " --seed 42 --trace-out " +
                      trace_b.string())
                  .exit_code,
              0);
    EXPECT_EQ(read_file(trace_a), read_file(trace_b));
    EXPECT_FALSE(read_file(trace_a).empty());
    fs::remove(scenario);
    fs::remove(trace_a);
    fs::remove(trace_b);
}

TEST(CliRun, ScriptGuardFailureExitsOneCitingGuard) {
    const fs::path scenario = temp_file("bad_guard.json");
    std::ofstream(scenario) << R"({
      "version": 1, "level": "m0",
      "universe": [{"id": "A1", "kind": "actor"}, {"id": "A2", "kind": "actor"}],
      "script": [
        {"event": "AddNode", "params": ["A1"]},
        {"event": "AddLink", "params": ["A1", "A1"]}
      ]
    })";
    const auto result = run_cli("run --scenario " + scenario.string());
    EXPECT_EQ(result.exit_code, 1);
    EXPECT_NE(result.err.find("grd3"), std::string::npos) << result.err;
    fs::remove(scenario);
}

TEST(CliRun, UnknownNodeIdExitsOne) {
    const fs::path scenario = temp_file("bad_node.json");
    std::ofstream(scenario) << R"({
      "version": 1, "level": "m0",
      "universe": [{"id": "A1", "kind": "actor"}],
      "script": [{"event": "AddNode", "params": ["A7"]}]
    })";
    const auto result = run_cli("run --scenario " + scenario.string());
    EXPECT_EQ(result.exit_code, 1);
    EXPECT_NE(result.err.find("A7"), std::string::npos);
    fs::remove(scenario);
}

TEST(CliRun, MissingScenarioFileExitsOne) {
    EXPECT_EQ(run_cli("run --scenario /nonexistent/path.json").exit_code, 1);
}

TEST(CliExplore, SmallUniverseIsCleanLargeNeedsForce) {
    const auto ok = run_cli("explore --level m0 --actors 3 --depth 4");
    EXPECT_EQ(ok.exit_code, 0) << ok.err;
    EXPECT_NE(ok.out.find("states="), std::string::npos);
    EXPECT_NE(ok.out.find("deadlocks=0"), std::string::npos);

    EXPECT_EQ(run_cli("explore --level m0 --actors 20 --depth 2").exit_code, 3);
    EXPECT_EQ(run_cli("explore --level m0 --actors 7 --depth 1 --force").exit_code, 0);
}

TEST(CliCheckRefinement, PassesByDefaultFailsWithFixture) {
    const auto ok = run_cli("check-refinement --actors 2 --sensors 1 --depth 5");
    EXPECT_EQ(ok.exit_code, 0) << ok.out << ok.err;
    EXPECT_NE(ok.out.find("m1 refines m0: PASS"), std::string::npos);
    EXPECT_NE(ok.out.find("m2 refines m1: PASS"), std::string::npos);

    const auto broken =
        run_cli("check-refinement --actors 3 --sensors 0 --depth 7 --machine-fixture weak-guard");
    EXPECT_EQ(broken.exit_code, 2);
    EXPECT_NE(broken.out.find("counterexample"), std::string::npos);

    EXPECT_EQ(run_cli("check-refinement --machine-fixture bogus").exit_code, 1);
}

TEST(CliRun, BundledScenariosWork) {
    const char* dir = std::getenv("WSAN_SCENARIO_DIR");
    ASSERT_NE(dir, nullptr);
    for (const char* name : {"fig1.json", "sensor_bridge.json", "random_sensors.json"}) {
        const fs::path bundled = fs::path(dir) / name;
        ASSERT_TRUE(fs::exists(bundled)) << bundled;
        const auto result = run_cli("run --scenario " + bundled.string() + " --seed 1");
        EXPECT_EQ(result.exit_code, 0) << name << ": " << result.err;
        EXPECT_NE(result.err.find("final variant 0"), std::string::npos) << name;
    }
}

TEST(CliRun, SensorBridgeRecoveryRoutesThroughSensors) {
    const char* dir = std::getenv("WSAN_SCENARIO_DIR");
    ASSERT_NE(dir, nullptr);
    const fs::path bundled = fs::path(dir) / "sensor_bridge.json";
    const auto result = run_cli("run --scenario " + bundled.string() + " --seed 1");
    ASSERT_EQ(result.exit_code, 0) << result.err;
    // The localized recovery fires with the sensor witnesses bound.
    EXPECT_NE(result.out.find(R"("event":"FaultDetRec","params":["A2","A3","A1","S1","S2"])"),
              std::string::npos)
        << result.out;
}
