// Command-line front end: scenario runs, bounded exploration, refinement
// sweeps and scenario generation. Exit codes are part of the contract:
// 0 success, 1 input error, 2 property violation, 3 explosion guard.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "wsan/refinement.hpp"
#include "wsan/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitViolation = 2;
constexpr int kExitGuard = 3;

bool log_enabled() {
    const char* level = std::getenv("WSAN_LOG");
    return level != nullptr && std::string(level) != "" && std::string(level) != "off";
}

void log_trace(const wsan::Trace& trace, const wsan::NodeUniverse& universe) {
    if (!log_enabled()) return;
    for (const auto& step : trace.steps) {
        std::cerr << "wsan: " << wsan::trace_record_json(step, universe) << '\n';
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int cmd_run(const std::string& scenario_path, std::uint64_t seed, std::size_t steps,
            const std::string& level_override, const std::string& trace_out) {
    wsan::Scenario scenario;
    try {
        scenario = wsan::parse_scenario(read_file(scenario_path));
        if (!level_override.empty()) scenario.level = wsan::level_from_string(level_override);
    } catch (const std::exception& err) {
        std::cerr << "wsan run: " << err.what() << '\n';
        return kExitInputError;
    }

    wsan::ScheduleConfig cfg;
    cfg.seed = seed;
    cfg.max_steps = steps;
    cfg.level = scenario.level;
    cfg.stop = scenario.stop;

    wsan::Trace trace;
    try {
        trace = wsan::run(scenario.universe, cfg, scenario.script);
    } catch (const wsan::ScriptError& err) {
        std::cerr << "wsan run: " << err.what() << '\n';
        return kExitInputError;
    } catch (const std::invalid_argument& err) {
        std::cerr << "wsan run: " << err.what() << '\n';
        return kExitInputError;
    }
    log_trace(trace, *scenario.universe);

    if (!trace_out.empty()) {
        std::ofstream out(trace_out);
        if (!out) {
            std::cerr << "wsan run: cannot write " << trace_out << '\n';
            return kExitInputError;
        }
        wsan::write_trace(out, trace, *scenario.universe);
    } else {
        wsan::write_trace(std::cout, trace, *scenario.universe);
    }

    if (trace.violated) {
        for (const auto& step : trace.steps) {
            for (const auto& v : step.report) {
                std::cerr << "wsan run: invariant " << v.invariant << " violated, witness "
                          << v.witness << '\n';
            }
        }
        return kExitViolation;
    }
    if (trace.deadlocked) {
        std::cerr << "wsan run: deadlock reached (THM1 violation)\n";
        return kExitViolation;
    }
    std::cerr << "wsan run: " << trace.steps.size() - 1 << " steps, final variant "
              << trace.steps.back().variant << '\n';
    return kExitOk;
}

int cmd_explore(const std::string& level_text, std::size_t actors, std::size_t sensors,
                std::size_t depth, bool force) {
    wsan::ReachabilityReport report;
    try {
        wsan::ExploreOptions opt;
        opt.force = force;
        report = wsan::explore(wsan::make_universe(actors, sensors),
                               wsan::level_from_string(level_text), depth, opt);
    } catch (const wsan::ExplosionGuardError& err) {
        std::cerr << "wsan explore: " << err.what() << '\n';
        return kExitGuard;
    } catch (const std::invalid_argument& err) {
        std::cerr << "wsan explore: " << err.what() << '\n';
        return kExitInputError;
    }
    std::cout << "states=" << report.state_count << " depth=" << report.depth
              << " deadlocks=" << report.deadlock_digests.size()
              << " violations=" << report.violations.size() << '\n';
    for (const auto& d : report.deadlock_digests) {
        std::cout << "deadlock state " << d << '\n';
    }
    for (const auto& [digest, violations] : report.violations) {
        for (const auto& v : violations) {
            std::cout << "violation " << v.invariant << " witness " << v.witness
                      << " state " << digest << '\n';
        }
    }
    return report.clean() ? kExitOk : kExitViolation;
}

int cmd_check_refinement(std::size_t actors, std::size_t sensors, std::size_t depth,
                         const std::string& fixture, bool force) {
    wsan::ExploreOptions opt;
    opt.force = force;
    if (!fixture.empty()) {
        if (fixture != "weak-guard") {
            std::cerr << "wsan check-refinement: unknown machine fixture '" << fixture
                      << "' (available: weak-guard)\n";
            return kExitInputError;
        }
        opt.machine.drop_closure_guard = true;
    }

    bool all_pass = true;
    for (wsan::Level concrete : {wsan::Level::M1, wsan::Level::M2}) {
        wsan::RefinementReport report;
        try {
            report = wsan::refinement_sweep(wsan::make_universe(actors, sensors), concrete,
                                            depth, opt);
        } catch (const wsan::ExplosionGuardError& err) {
            std::cerr << "wsan check-refinement: " << err.what() << '\n';
            return kExitGuard;
        }
        std::cout << to_string(concrete) << " refines " << to_string(below(concrete)) << ": "
                  << (report.pass() ? "PASS" : "FAIL") << " (states=" << report.states
                  << " instances=" << report.instances
                  << " failures=" << report.failures.size() << ")\n";
        if (!report.pass()) {
            const auto& f = report.failures.front();
            std::cout << "counterexample: state " << f.state_digest << " instance "
                      << f.instance << " check " << f.check << ": " << f.detail << '\n';
            all_pass = false;
        }
    }
    return all_pass ? kExitOk : kExitViolation;
}

int cmd_gen(const std::string& kind, std::size_t actors, std::size_t sensors,
            std::uint64_t seed, const std::string& out_path) {
    wsan::Scenario scenario;
    try {
        if (kind == "star") {
            scenario = wsan::gen_star(actors);
        } else if (kind == "chain") {
            scenario = wsan::gen_chain(actors);
        } else if (kind == "random") {
            scenario = wsan::gen_random(actors, sensors, seed);
        } else if (kind == "fig1") {
            scenario = wsan::gen_fig1();
        } else {
            std::cerr << "wsan gen: unknown kind '" << kind
                      << "' (available: random, star, chain, fig1)\n";
            return kExitInputError;
        }
    } catch (const std::exception& err) {
        std::cerr << "wsan gen: " << err.what() << '\n';
        return kExitInputError;
    }

    const std::string text = wsan::emit_scenario(scenario);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "wsan gen: cannot write " << out_path << '\n';
            return kExitInputError;
        }
        out << text;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Guarded-event simulator for actor-coordination recovery in "
                 "wireless sensor-actor networks"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::size_t steps = 100;
    std::size_t actors = 3;
    std::size_t sensors = 0;
    std::size_t depth = 6;
    std::string scenario_path;
    std::string trace_out;
    std::string level;
    std::string fixture;
    std::string gen_kind;
    bool force = false;

    auto* run = app.add_subcommand("run", "run a scenario and emit its trace");
    run->add_option("--scenario", scenario_path, "scenario file")->required();
    run->add_option("--seed", seed, "scheduler seed");
    run->add_option("--steps", steps, "maximum free-run steps after the script");
    run->add_option("--level", level, "override the scenario's machine level (m0|m1|m2)");
    run->add_option("--trace-out", trace_out, "trace output path (default: stdout)");

    auto* explore = app.add_subcommand("explore", "bounded exhaustive state exploration");
    explore->add_option("--level", level, "machine level (m0|m1|m2)")->required();
    explore->add_option("--actors", actors, "number of actors");
    explore->add_option("--sensors", sensors, "number of sensors");
    explore->add_option("--depth", depth, "exploration depth");
    explore->add_flag("--force", force, "override the explosion guard");

    auto* check = app.add_subcommand("check-refinement",
                                     "guard strengthening and action consistency sweep");
    check->add_option("--actors", actors, "number of actors");
    check->add_option("--sensors", sensors, "number of sensors");
    check->add_option("--depth", depth, "sweep depth");
    check->add_option("--machine-fixture", fixture, "deliberately broken machine variant");
    check->add_flag("--force", force, "override the explosion guard");

    auto* gen = app.add_subcommand("gen", "generate a scenario file");
    gen->add_option("kind", gen_kind, "random|star|chain|fig1")->required();
    gen->add_option("--actors", actors, "number of actors");
    gen->add_option("--sensors", sensors, "number of sensors");
    gen->add_option("--seed", seed, "generator seed");
    gen->add_option("--scenario", scenario_path, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    if (run->parsed()) return cmd_run(scenario_path, seed, steps, level, trace_out);
    if (explore->parsed()) return cmd_explore(level, actors, sensors, depth, force);
    if (check->parsed()) {
        const std::size_t check_sensors = check->count("--sensors") ? sensors : 2;
        return cmd_check_refinement(actors, check_sensors, depth, fixture, force);
    }
    if (gen->parsed()) return cmd_gen(gen_kind, actors, sensors, seed, scenario_path);
    return kExitInputError;
}
