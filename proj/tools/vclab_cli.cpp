// Command-line front end: run, walk, analyze, experiment.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "vclab/engine.hpp"
#include "vclab/error.hpp"
#include "vclab/experiments.hpp"
#include "vclab/trace.hpp"
#include "vclab/walks.hpp"

namespace {

struct RunArgs {
    std::string algo = "ea";
    std::string instance;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> max_iters;
    std::string init = "uniform";
    std::string trace_path;
    std::string shadow_trace_path;
    std::string null_policy = "count";
};

struct WalkArgs {
    std::string kind = "barrier";
    std::uint32_t d = 10;
    double p = 0.0;
    double q = 0.5;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 0;
    bool fast_forward = false;
};

struct ExperimentArgs {
    std::string config;
    std::optional<unsigned> workers;
    bool assert_checks = false;
    std::string csv_path;
    std::string raw_path;
};

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw vclab::ConfigError("cannot write '" + path + "'");
    return out;
}

int cmd_run(const RunArgs& a) {
    using namespace vclab;
    const Graph g = parse_instance(a.instance);
    RunOptions options;
    options.seed = a.seed;
    options.instance = a.instance;
    if (a.init != "uniform") {
        options.init = BitString::parse(a.init);
        if (options.init->size() != g.n()) throw InvalidParameter("--init length differs from the instance size");
    }
    if (a.null_policy == "resample") options.null_policy = NullPolicy::Resample;
    else if (a.null_policy != "count") throw InvalidParameter("--null-policy is count or resample");

    if (auto known = known_opt(g)) options.optimum = known;
    else if (g.n() <= kBruteForceLimit) options.optimum = brute_force_min_cover(g);
    options.stop.at_optimum = options.optimum.has_value();
    options.stop.max_iterations = a.max_iters;
    if (!options.stop.at_optimum && !a.max_iters)
        throw ConfigError("no optimum is known for this instance; pass --max-iters");

    std::vector<RunObserver*> observers;
    std::ofstream trace_out, shadow_out;
    std::optional<TraceWriter> trace;
    std::optional<ShadowTraceWriter> shadow;
    if (!a.trace_path.empty()) {
        trace_out = open_output(a.trace_path);
        observers.push_back(&trace.emplace(trace_out, a.instance));
    }
    if (!a.shadow_trace_path.empty()) {
        if (g.bipartite() == nullptr) throw UnsupportedInstance("--shadow-trace needs a bipartite:<L>x<R> instance");
        shadow_out = open_output(a.shadow_trace_path);
        observers.push_back(&shadow.emplace(shadow_out, g));
    }

    Rng rng(a.seed);
    const auto record = run(parse_algorithm(a.algo), g, options, rng, observers);
    std::cout << to_json(record).dump() << '\n';
    return 0;
}

int cmd_walk(const WalkArgs& a) {
    using namespace vclab;
    WalkSpec spec;
    if (a.kind == "barrier") spec = WalkSpec::barrier(a.d, a.q);
    else if (a.kind == "jump") spec = WalkSpec::jump(a.d, a.p, a.q);
    else throw InvalidParameter("--kind is barrier or jump");
    Rng rng(a.seed);
    const auto s = simulate_walk(spec, a.trials, rng, a.fast_forward ? WalkMode::FastForward : WalkMode::Explicit);
    const nlohmann::json out = {{"mean", s.mean},
                                {"variance", s.variance},
                                {"threshold", s.threshold},
                                {"frac_at_least_threshold", s.frac_at_least_threshold}};
    std::cout << out.dump() << '\n';
    return 0;
}

int cmd_analyze(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw vclab::ConfigError("cannot open trace '" + path + "'");
    std::cout << vclab::analyze_trace(vclab::read_trace(in));
    return 0;
}

int cmd_experiment(const ExperimentArgs& a) {
    using namespace vclab;
    auto config = load_config(a.config);
    if (a.workers) config.workers = *a.workers;
    if (!a.csv_path.empty()) config.csv_path = a.csv_path;
    if (!a.raw_path.empty()) config.raw_path = a.raw_path;
    const auto result = run_experiment(config);
    write_outputs(config, result);
    if (!config.csv_path) std::cout << rows_to_csv(result.rows);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    for (const auto& check : result.assertions)
        std::cerr << (check.passed ? "PASS " : "FAIL ") << check.name << ": " << check.detail << '\n';
    if (a.assert_checks && !result.all_assertions_pass()) return 2;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evolutionary vertex cover runtime lab"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "Run one optimizer and print its record as JSON");
    run->add_option("--algo", run_args.algo, "ea | balanced | rls")->check(CLI::IsMember({"ea", "balanced", "rls"}));
    run->add_option("--instance", run_args.instance, "path:<n> | bipartite:<L>x<R> | file:<path> | gnp:<n>:<p>:<seed>")
        ->required();
    run->add_option("--seed", run_args.seed, "RNG seed");
    run->add_option("--max-iters", run_args.max_iters, "iteration budget");
    run->add_option("--init", run_args.init, "initial bit string or 'uniform'");
    run->add_option("--trace", run_args.trace_path, "write the accepted-state trace here");
    run->add_option("--shadow-trace", run_args.shadow_trace_path, "write the shadow-process CSV here");
    run->add_option("--null-policy", run_args.null_policy, "count | resample");

    WalkArgs walk_args;
    auto* walk = app.add_subcommand("walk", "Simulate an abstract walk and summarise its hitting time");
    walk->add_option("--kind", walk_args.kind, "barrier | jump")->check(CLI::IsMember({"barrier", "jump"}));
    walk->add_option("--d", walk_args.d, "barrier distance")->required();
    walk->add_option("--p", walk_args.p, "step probability per direction (jump)");
    walk->add_option("--q", walk_args.q, "step probability (barrier) or jump probability (jump)");
    walk->add_option("--trials", walk_args.trials, "number of samples");
    walk->add_option("--seed", walk_args.seed, "RNG seed");
    walk->add_flag("--fast-forward", walk_args.fast_forward, "skip lazy steps with geometric holding times");

    std::string trace_path;
    auto* analyze = app.add_subcommand("analyze", "Per-state metrics of a trace file as CSV");
    analyze->add_option("trace", trace_path, "trace file written by 'run --trace'")->required();

    ExperimentArgs exp_args;
    auto* experiment = app.add_subcommand("experiment", "Run an experiment grid from a JSON config");
    experiment->add_option("--config", exp_args.config, "config JSON")->required();
    experiment->add_option("--workers", exp_args.workers, "worker threads");
    experiment->add_flag("--assert", exp_args.assert_checks, "exit with code 2 when a built-in check fails");
    experiment->add_option("--csv", exp_args.csv_path, "aggregate CSV path (overrides config)");
    experiment->add_option("--raw", exp_args.raw_path, "raw JSON-lines path (overrides config)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(run_args);
        if (*walk) return cmd_walk(walk_args);
        if (*analyze) return cmd_analyze(trace_path);
        if (*experiment) return cmd_experiment(exp_args);
    } catch (const vclab::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
