#include "vclab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "vclab/analysis.hpp"
#include "vclab/error.hpp"

namespace vclab {

namespace {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

std::string normalize_kind(std::string_view name) {
    std::string out;
    for (char c : name)
        if (c != '_' && c != '-') out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

double parse_double(std::string_view text, const char* what) {
    double value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size())
        throw InvalidParameter(std::string("bad ") + what + " '" + std::string(text) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

bool is_odd_path(const Graph& g) { return g.is_path() && g.n() % 2 == 1; }

/// Sample summary row: value is the mean.
AggregateRow sample_row(std::string instance, std::string algorithm, std::string statistic,
                        const std::vector<double>& sample) {
    AggregateRow row;
    row.instance = std::move(instance);
    row.algorithm = std::move(algorithm);
    row.statistic = std::move(statistic);
    row.count = sample.size();
    if (sample.empty()) {
        row.value = std::nan("");
        const double nan = std::nan("");
        row.spread = {nan, nan, nan, nan, nan};
        return row;
    }
    row.value = stats::mean(sample);
    row.spread = stats::five_number(sample);
    row.std_error = stats::std_error(sample);
    return row;
}

/// Derived scalar (slope, threshold): the spread collapses onto the value.
AggregateRow scalar_row(std::string instance, std::string algorithm, std::string statistic, double value,
                        std::uint64_t count) {
    AggregateRow row;
    row.instance = std::move(instance);
    row.algorithm = std::move(algorithm);
    row.statistic = std::move(statistic);
    row.value = value;
    row.count = count;
    row.spread = {value, value, value, value, value};
    return row;
}

std::vector<double> indicator(const std::vector<bool>& flags) {
    std::vector<double> out;
    out.reserve(flags.size());
    for (bool f : flags) out.push_back(f ? 1.0 : 0.0);
    return out;
}

/// Runs fn(i) for i in [0, total) on a bounded pool; rethrows the first failure.
void parallel_for(std::size_t total, unsigned workers, const std::function<void(std::size_t)>& fn) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(total, 1)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const auto i = next.fetch_add(1);
            if (i >= total) return;
            try {
                fn(i);
            } catch (...) {
                std::scoped_lock lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = total;
                return;
            }
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
}

struct GraphCell {
    std::string instance;
    Algorithm algorithm = Algorithm::EA;
    std::shared_ptr<const Graph> graph;
    OptimumInfo optimum;
    std::uint64_t budget = 0;
};

struct RunOutcome {
    nlohmann::json raw;
    RunRecord record;
    std::optional<double> bad_length;  // BadPathLengths: resolved runs only
    bool skipped = false;
    std::uint64_t walk_time = 0;
};

std::uint64_t lookup_budget(const ExperimentConfig& config, Algorithm algo, std::uint64_t fallback) {
    if (const auto it = config.budgets.find(std::string(to_string(algo))); it != config.budgets.end())
        return it->second;
    if (const auto it = config.budgets.find("default"); it != config.budgets.end()) return it->second;
    return fallback;
}

std::vector<GraphCell> build_cells(const ExperimentConfig& config, std::vector<std::string>& warnings) {
    std::vector<GraphCell> cells;
    for (const auto& spec : config.instances) {
        auto graph = std::make_shared<const Graph>(parse_instance(spec));
        const OptimumInfo optimum = config.kind == ExperimentKind::OracleEquivalence
                                        ? brute_force_min_cover(*graph)
                                        : resolve_optimum(*graph);
        for (const auto algo : config.algorithms) {
            GraphCell cell{spec, algo, graph, optimum, 0};
            switch (config.kind) {
                case ExperimentKind::OracleEquivalence:
                    cell.budget = lookup_budget(config, algo, 1'000'000);
                    break;
                case ExperimentKind::BipartiteSuccess: {
                    const auto* kb = graph->bipartite();
                    const double c = kb->ratio().value();
                    if (algo == Algorithm::BalancedEA) {
                        if (c <= 2.0)
                            warnings.push_back(spec + ": c = " + format_double(c) +
                                               " does not exceed 2; balanced cell is descriptive only");
                        cell.budget = lookup_budget(config, algo,
                                                    balanced_runtime_budget(kb->left, c, config.budget_multiplier));
                    } else {
                        cell.budget = lookup_budget(config, algo, default_budget(graph->n(), algo));
                    }
                    break;
                }
                default:
                    cell.budget = lookup_budget(config, algo, default_budget(graph->n(), algo));
            }
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

RunOutcome execute_graph_run(const ExperimentConfig& config, const GraphCell& cell, std::uint64_t run_index) {
    const auto seed = derive_seed(config.master_seed, cell.instance, to_string(cell.algorithm), run_index);
    Rng rng(seed);
    RunOptions options;
    options.stop = {true, cell.budget};
    options.optimum = cell.optimum;
    options.null_policy = config.null_policy;
    options.track_shadow = config.kind == ExperimentKind::CouplingCheck;
    options.seed = seed;
    options.instance = cell.instance;

    RunOutcome out;
    if (config.kind == ExperimentKind::BadPathLengths) {
        FirstLevelOneProbe probe(cell.graph->n());
        RunObserver* observers[] = {&probe};
        out.record = run(cell.algorithm, *cell.graph, options, rng, observers);
        if (probe.skipped()) {
            out.skipped = true;
            out.bad_length = 0.0;
        } else if (probe.length()) {
            out.bad_length = probe.length()->value();
        }
    } else {
        out.record = run(cell.algorithm, *cell.graph, options, rng);
    }

    out.raw = to_json(out.record);
    out.raw["run"] = run_index;
    if (config.kind == ExperimentKind::BadPathLengths) {
        out.raw["bad_path_length"] = out.bad_length ? nlohmann::json(*out.bad_length) : nlohmann::json(nullptr);
        out.raw["skipped_level"] = out.skipped;
    }
    if (config.kind == ExperimentKind::OracleEquivalence) out.raw["optimum_size"] = cell.optimum.size;
    return out;
}

RunOutcome execute_walk_run(const ExperimentConfig& config, const WalkSpec& spec, std::uint64_t run_index) {
    const auto name = to_string(spec);
    const auto seed = derive_seed(config.master_seed, name, "walk", run_index);
    Rng rng(seed);
    RunOutcome out;
    out.walk_time = spec.kind == WalkKind::BarrierWalk ? barrier_walk_hitting_time(spec, rng, config.walk_mode)
                                                       : jump_walk_sample(spec, rng, config.walk_mode);
    out.raw = {{"walk", name}, {"run", run_index}, {"seed", seed}, {"hitting_time", out.walk_time}};
    return out;
}

void add_assertion(ExperimentResult& result, std::string name, bool passed, std::string detail) {
    result.assertions.push_back({std::move(name), passed, std::move(detail)});
}

// Per-kind aggregation. `outcomes` is indexed by cell * runs + run.

void aggregate_path_scaling(const ExperimentConfig& config, const std::vector<GraphCell>& cells,
                            const std::vector<RunOutcome>& outcomes, ExperimentResult& result) {
    const auto runs = config.runs_per_cell;
    std::map<Algorithm, std::vector<std::pair<double, double>>> curve;
    std::map<std::pair<Algorithm, std::uint32_t>, double> means;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto& cell = cells[c];
        const std::string algo(to_string(cell.algorithm));
        std::vector<double> t_opt, t_feas;
        std::vector<bool> exhausted;
        for (std::uint64_t r = 0; r < runs; ++r) {
            const auto& rec = outcomes[c * runs + r].record;
            if (rec.t_optimal) t_opt.push_back(static_cast<double>(*rec.t_optimal));
            if (rec.t_feasible) t_feas.push_back(static_cast<double>(*rec.t_feasible));
            exhausted.push_back(rec.budget_exhausted);
        }
        result.rows.push_back(sample_row(cell.instance, algo, "t_optimal", t_opt));
        result.rows.push_back(sample_row(cell.instance, algo, "t_feasible", t_feas));
        result.rows.push_back(sample_row(cell.instance, algo, "budget_exhausted", indicator(exhausted)));
        if (t_opt.size() < runs) {
            result.budget_exhausted = true;
            result.warnings.push_back(cell.instance + "/" + algo + ": budget exhausted in " +
                                      std::to_string(runs - t_opt.size()) + " runs");
        }
        if (!t_opt.empty()) {
            const double m = stats::mean(t_opt);
            curve[cell.algorithm].emplace_back(cell.graph->n(), m);
            means[{cell.algorithm, cell.graph->n()}] = m;
        }
    }
    for (const auto& [algo, points] : curve) {
        if (points.size() < 2) continue;
        const auto fit = stats::fit_loglog_slope(points);
        const std::string name(to_string(algo));
        result.rows.push_back(scalar_row("*", name, "loglog_slope", fit.slope, points.size()));
        result.rows.push_back(scalar_row("*", name, "loglog_intercept", fit.intercept, points.size()));
        result.rows.push_back(scalar_row("*", name, "loglog_residual_norm", fit.residual_norm, points.size()));
        const auto& lim = config.limits;
        if (algo == Algorithm::EA)
            add_assertion(result, "ea_slope", fit.slope >= lim.ea_slope_min && fit.slope <= lim.ea_slope_max,
                          "slope " + format_double(fit.slope));
        if (algo == Algorithm::BalancedEA)
            add_assertion(result, "balanced_slope",
                          fit.slope >= lim.balanced_slope_min && fit.slope <= lim.balanced_slope_max,
                          "slope " + format_double(fit.slope));
    }
    for (const auto& [key, balanced_mean] : means) {
        const auto [algo, n] = key;
        if (algo != Algorithm::BalancedEA || n < config.limits.balanced_faster_from) continue;
        const auto ea = means.find({Algorithm::EA, n});
        if (ea == means.end()) continue;
        add_assertion(result, "balanced_faster_n" + std::to_string(n), balanced_mean < ea->second,
                      "balanced " + format_double(balanced_mean) + " vs ea " + format_double(ea->second));
    }
}

void aggregate_bad_paths(const ExperimentConfig& config, const std::vector<GraphCell>& cells,
                         const std::vector<RunOutcome>& outcomes, ExperimentResult& result) {
    const auto runs = config.runs_per_cell;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto& cell = cells[c];
        const std::string algo(to_string(cell.algorithm));
        std::vector<double> lengths;
        std::uint64_t skips = 0, unresolved = 0;
        for (std::uint64_t r = 0; r < runs; ++r) {
            const auto& o = outcomes[c * runs + r];
            if (o.skipped) ++skips;
            if (o.bad_length) lengths.push_back(*o.bad_length);
            else ++unresolved;
        }
        result.rows.push_back(sample_row(cell.instance, algo, "relative_bad_path_length", lengths));
        result.rows.push_back(scalar_row(cell.instance, algo, "skipped_level", static_cast<double>(skips), runs));
        result.rows.push_back(
            scalar_row(cell.instance, algo, "unresolved", static_cast<double>(unresolved), runs));
        if (unresolved > 0) {
            result.budget_exhausted = true;
            result.warnings.push_back(cell.instance + "/" + algo + ": " + std::to_string(unresolved) +
                                      " runs ended before reaching fitness OPT+1");
        }
        const auto median = lengths.empty() ? std::nan("") : stats::quantile(lengths, 0.5);
        add_assertion(result, cell.instance + "/" + algo + " median_bad_path",
                      median >= config.limits.min_median_bad_path, "median " + format_double(median));
        add_assertion(result, cell.instance + "/" + algo + " skips", skips <= config.limits.max_skips,
                      std::to_string(skips) + " skipped runs");
    }
}

void aggregate_bipartite(const ExperimentConfig& config, const std::vector<GraphCell>& cells,
                         const std::vector<RunOutcome>& outcomes, ExperimentResult& result) {
    const auto runs = config.runs_per_cell;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto& cell = cells[c];
        const std::string algo(to_string(cell.algorithm));
        const double ratio = cell.graph->bipartite()->ratio().value();
        std::vector<bool> success, trapped, failure_or_trap;
        std::vector<double> success_iters;
        for (std::uint64_t r = 0; r < runs; ++r) {
            const auto& rec = outcomes[c * runs + r].record;
            const bool ok = rec.t_optimal.has_value();
            const bool trap = rec.trapped.value_or(false);
            success.push_back(ok);
            trapped.push_back(trap);
            failure_or_trap.push_back(!ok || trap);
            if (ok) success_iters.push_back(static_cast<double>(*rec.t_optimal));
        }
        const auto success_row = sample_row(cell.instance, algo, "success_fraction", indicator(success));
        const auto failure_row = sample_row(cell.instance, algo, "failure_or_trap_fraction", indicator(failure_or_trap));
        result.rows.push_back(success_row);
        result.rows.push_back(sample_row(cell.instance, algo, "trap_fraction", indicator(trapped)));
        result.rows.push_back(failure_row);
        result.rows.push_back(sample_row(cell.instance, algo, "iterations_success", success_iters));
        result.rows.push_back(scalar_row(cell.instance, algo, "budget", static_cast<double>(cell.budget), 1));
        if (cell.algorithm == Algorithm::BalancedEA && ratio > 2.0)
            add_assertion(result, cell.instance + "/" + algo + " success",
                          success_row.value >= config.limits.min_balanced_success,
                          "success " + format_double(success_row.value));
        if (cell.algorithm == Algorithm::RLS && ratio > 1.0)
            add_assertion(result, cell.instance + "/" + algo + " failure_or_trap",
                          failure_row.value >= config.limits.min_rls_failure,
                          "failure_or_trap " + format_double(failure_row.value));
    }
}

void aggregate_coupling(const ExperimentConfig& config, const std::vector<GraphCell>& cells,
                        const std::vector<RunOutcome>& outcomes, ExperimentResult& result) {
    const auto runs = config.runs_per_cell;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto& cell = cells[c];
        const std::string algo(to_string(cell.algorithm));
        std::vector<bool> coupling, ordering, absorption;
        std::vector<double> t_s, t_rp;
        for (std::uint64_t r = 0; r < runs; ++r) {
            const auto& times = outcomes[c * runs + r].record.bipartite_times.value();
            coupling.push_back(times.coupling_violation.has_value());
            ordering.push_back(times.t_S && times.t_R_prime && *times.t_S > *times.t_R_prime);
            absorption.push_back(times.absorption_violation.has_value());
            if (times.t_S) t_s.push_back(static_cast<double>(*times.t_S));
            if (times.t_R_prime) t_rp.push_back(static_cast<double>(*times.t_R_prime));
        }
        const auto coupling_row = sample_row(cell.instance, algo, "coupling_violation_fraction", indicator(coupling));
        const auto ordering_row = sample_row(cell.instance, algo, "ordering_violation_fraction", indicator(ordering));
        const auto absorption_row =
            sample_row(cell.instance, algo, "absorption_violation_fraction", indicator(absorption));
        result.rows.push_back(coupling_row);
        result.rows.push_back(ordering_row);
        result.rows.push_back(absorption_row);
        result.rows.push_back(sample_row(cell.instance, algo, "t_S", t_s));
        result.rows.push_back(sample_row(cell.instance, algo, "t_R_prime", t_rp));
        add_assertion(result, cell.instance + " coupling", coupling_row.value == 0.0,
                      format_double(coupling_row.value * static_cast<double>(runs)) + " violating runs");
        add_assertion(result, cell.instance + " shadow_first", ordering_row.value == 0.0,
                      format_double(ordering_row.value * static_cast<double>(runs)) + " runs with T_S > T'_R");
        add_assertion(result, cell.instance + " absorption", absorption_row.value == 0.0,
                      format_double(absorption_row.value * static_cast<double>(runs)) + " violating runs");
    }
}

void aggregate_oracle(const ExperimentConfig& config, const std::vector<GraphCell>& cells,
                      const std::vector<RunOutcome>& outcomes, ExperimentResult& result) {
    const auto runs = config.runs_per_cell;
    std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> per_algo;  // matches, total
    std::set<std::string> checked_known;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto& cell = cells[c];
        const std::string algo(to_string(cell.algorithm));
        std::vector<bool> match;
        for (std::uint64_t r = 0; r < runs; ++r) {
            const auto& rec = outcomes[c * runs + r].record;
            match.push_back(rec.terminal_uncovered == 0 && rec.terminal_ones == cell.optimum.size);
        }
        const auto row = sample_row(cell.instance, algo, "terminal_equals_optimum", indicator(match));
        result.rows.push_back(row);
        auto& tally = per_algo[algo];
        tally.first += static_cast<std::uint64_t>(std::llround(row.value * static_cast<double>(runs)));
        tally.second += runs;

        if (checked_known.insert(cell.instance).second) {
            result.rows.push_back(scalar_row(cell.instance, "-", "optimum_size", cell.optimum.size, 1));
            if (const auto known = known_opt(*cell.graph)) {
                const bool same = known->size == cell.optimum.size &&
                                  (!known->unique || *known->unique == *cell.optimum.unique);
                result.rows.push_back(scalar_row(cell.instance, "-", "known_opt_matches", same ? 1.0 : 0.0, 1));
                add_assertion(result, cell.instance + " known_opt", same,
                              "known " + std::to_string(known->size) + " brute force " +
                                  std::to_string(cell.optimum.size));
            }
        }
    }
    for (const auto& [algo, tally] : per_algo)
        add_assertion(result, algo + " terminal_equals_optimum", tally.first == tally.second,
                      std::to_string(tally.first) + "/" + std::to_string(tally.second) + " runs");
}

void aggregate_walks(const ExperimentConfig& config, const std::vector<RunOutcome>& outcomes,
                     ExperimentResult& result) {
    const auto runs = config.runs_per_cell;
    for (std::size_t c = 0; c < config.walks.size(); ++c) {
        const auto& spec = config.walks[c];
        const auto name = to_string(spec);
        const bool barrier = spec.kind == WalkKind::BarrierWalk;
        const double threshold =
            barrier ? barrier_walk_expected(spec.d, spec.q) : jump_walk_threshold(spec.d, spec.p, spec.q);
        std::vector<double> times;
        std::vector<bool> above;
        for (std::uint64_t r = 0; r < runs; ++r) {
            const auto t = static_cast<double>(outcomes[c * runs + r].walk_time);
            times.push_back(t);
            above.push_back(t >= threshold);
        }
        const auto time_row = sample_row(name, "walk", "hitting_time", times);
        const auto above_row = sample_row(name, "walk", "frac_at_least_threshold", indicator(above));
        result.rows.push_back(time_row);
        result.rows.push_back(scalar_row(name, "walk", "variance", stats::variance(times), runs));
        result.rows.push_back(scalar_row(name, "walk", "threshold", threshold, 1));
        result.rows.push_back(above_row);
        if (barrier) {
            const double rel = std::abs(time_row.value - threshold) / threshold;
            add_assertion(result, name + " mean", rel <= config.limits.barrier_rel_tolerance,
                          "mean " + format_double(time_row.value) + " expected " + format_double(threshold));
        } else if (spec.d >= jump_walk_min_d()) {
            add_assertion(result, name + " lower_bound", above_row.value >= config.limits.jump_min_fraction,
                          "fraction " + format_double(above_row.value));
        } else {
            result.warnings.push_back(name + ": d below 4 ln 10, bound not asserted");
        }
    }
}

AssertionLimits limits_from_json(const nlohmann::json& j, AssertionLimits lim) {
    auto range = [&](const char* key, double& lo, double& hi) {
        if (!j.contains(key)) return;
        const auto& r = j.at(key);
        if (!r.is_array() || r.size() != 2) throw ConfigError(std::string(key) + " must be [min, max]");
        lo = r[0].get<double>();
        hi = r[1].get<double>();
    };
    range("ea_slope", lim.ea_slope_min, lim.ea_slope_max);
    range("balanced_slope", lim.balanced_slope_min, lim.balanced_slope_max);
    lim.balanced_faster_from = j.value("balanced_faster_from", lim.balanced_faster_from);
    lim.min_median_bad_path = j.value("min_median_bad_path", lim.min_median_bad_path);
    lim.max_skips = j.value("max_skips", lim.max_skips);
    lim.min_balanced_success = j.value("min_balanced_success", lim.min_balanced_success);
    lim.min_rls_failure = j.value("min_rls_failure", lim.min_rls_failure);
    lim.barrier_rel_tolerance = j.value("barrier_rel_tolerance", lim.barrier_rel_tolerance);
    lim.jump_min_fraction = j.value("jump_min_fraction", lim.jump_min_fraction);
    return lim;
}

} // namespace

std::string_view to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::PathScaling: return "PathScaling";
        case ExperimentKind::BadPathLengths: return "BadPathLengths";
        case ExperimentKind::BipartiteSuccess: return "BipartiteSuccess";
        case ExperimentKind::WalkValidation: return "WalkValidation";
        case ExperimentKind::CouplingCheck: return "CouplingCheck";
        case ExperimentKind::OracleEquivalence: return "OracleEquivalence";
    }
    return "?";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
    const auto key = normalize_kind(name);
    for (auto kind : {ExperimentKind::PathScaling, ExperimentKind::BadPathLengths, ExperimentKind::BipartiteSuccess,
                      ExperimentKind::WalkValidation, ExperimentKind::CouplingCheck,
                      ExperimentKind::OracleEquivalence})
        if (normalize_kind(to_string(kind)) == key) return kind;
    throw ConfigError("unknown experiment kind '" + std::string(name) + "'");
}

WalkSpec parse_walk_spec(std::string_view text) {
    const auto parts = split(text, ':');
    auto d_of = [](std::string_view s) {
        const double d = parse_double(s, "walk d");
        if (d < 1 || d != std::floor(d) || d > 1e9) throw InvalidParameter("walk d must be a positive integer");
        return static_cast<std::uint32_t>(d);
    };
    WalkSpec spec;
    if (parts.size() == 3 && parts[0] == "barrier") {
        spec = WalkSpec::barrier(d_of(parts[1]), parse_double(parts[2], "walk q"));
    } else if (parts.size() == 4 && parts[0] == "jump") {
        spec = WalkSpec::jump(d_of(parts[1]), parse_double(parts[2], "walk p"), parse_double(parts[3], "walk q"));
    } else {
        throw InvalidParameter("walk spec is barrier:<d>:<q> or jump:<d>:<p>:<q>, got '" + std::string(text) + "'");
    }
    spec.validate();
    return spec;
}

std::string to_string(const WalkSpec& spec) {
    if (spec.kind == WalkKind::BarrierWalk) return "barrier:" + std::to_string(spec.d) + ":" + format_double(spec.q);
    return "jump:" + std::to_string(spec.d) + ":" + format_double(spec.p) + ":" + format_double(spec.q);
}

void ExperimentConfig::validate() const {
    if (runs_per_cell < 1) throw ConfigError("runs_per_cell must be at least 1");
    if (kind == ExperimentKind::WalkValidation) {
        if (walks.empty()) throw ConfigError("WalkValidation needs at least one walk spec");
        for (const auto& w : walks) {
            try {
                w.validate();
            } catch (const InvalidParameter& e) {
                throw ConfigError(std::string("invalid walk: ") + e.what());
            }
        }
        return;
    }
    if (instances.empty()) throw ConfigError("experiment needs at least one instance");
    if (algorithms.empty()) throw ConfigError("experiment needs at least one algorithm");
    for (const auto& spec : instances) {
        std::optional<Graph> g;
        try {
            g.emplace(parse_instance(spec));
        } catch (const Error& e) {
            throw ConfigError("instance '" + spec + "': " + e.what());
        }
        switch (kind) {
            case ExperimentKind::BadPathLengths:
                if (!is_odd_path(*g)) throw ConfigError("BadPathLengths needs odd paths, got '" + spec + "'");
                break;
            case ExperimentKind::BipartiteSuccess:
            case ExperimentKind::CouplingCheck:
                if (g->bipartite() == nullptr) throw ConfigError("'" + spec + "' is not a complete bipartite graph");
                break;
            case ExperimentKind::OracleEquivalence:
                if (g->n() > kBruteForceLimit)
                    throw ConfigError("'" + spec + "' is too large for exhaustive search");
                break;
            case ExperimentKind::PathScaling:
                if (!known_opt(*g) && g->n() > kBruteForceLimit)
                    throw ConfigError("'" + spec + "' has no known optimum");
                break;
            case ExperimentKind::WalkValidation: break;
        }
    }
    if (kind == ExperimentKind::CouplingCheck) {
        if (algorithms != std::vector{Algorithm::BalancedEA})
            throw ConfigError("CouplingCheck runs the balanced algorithm only");
        if (null_policy != NullPolicy::CountIteration)
            throw ConfigError("CouplingCheck needs counted null iterations");
    }
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object()) throw ConfigError("config must be a JSON object");
        ExperimentConfig c;
        c.kind = parse_experiment_kind(j.at("kind").get<std::string>());
        c.instances = j.value("instances", std::vector<std::string>{});
        for (const auto& name : j.value("algorithms", std::vector<std::string>{}))
            c.algorithms.push_back(parse_algorithm(name));
        if (c.kind == ExperimentKind::CouplingCheck && c.algorithms.empty())
            c.algorithms = {Algorithm::BalancedEA};
        for (const auto& w : j.value("walks", std::vector<std::string>{})) c.walks.push_back(parse_walk_spec(w));
        c.runs_per_cell = j.value("runs_per_cell", std::uint64_t{1});
        c.master_seed = j.value("master_seed", std::uint64_t{0});
        if (j.contains("budgets")) {
            const auto& b = j.at("budgets");
            if (b.is_number_unsigned()) {
                c.budgets["default"] = b.get<std::uint64_t>();
            } else {
                for (const auto& [key, value] : b.items()) {
                    if (key != "default") parse_algorithm(key);
                    c.budgets[key] = value.get<std::uint64_t>();
                }
            }
        }
        c.budget_multiplier = j.value("budget_multiplier", c.budget_multiplier);
        if (!(c.budget_multiplier > 0)) throw ConfigError("budget_multiplier must be positive");
        const auto policy = j.value("null_policy", std::string("count"));
        if (policy == "count") c.null_policy = NullPolicy::CountIteration;
        else if (policy == "resample") c.null_policy = NullPolicy::Resample;
        else throw ConfigError("null_policy is count or resample");
        const auto mode = j.value("walk_mode", std::string("explicit"));
        if (mode == "explicit") c.walk_mode = WalkMode::Explicit;
        else if (mode == "fast_forward") c.walk_mode = WalkMode::FastForward;
        else throw ConfigError("walk_mode is explicit or fast_forward");
        c.workers = j.value("workers", 0u);
        if (j.contains("output")) {
            const auto& out = j.at("output");
            if (out.contains("csv")) c.csv_path = out.at("csv").get<std::string>();
            if (out.contains("raw")) c.raw_path = out.at("raw").get<std::string>();
        }
        if (j.contains("assert")) c.limits = limits_from_json(j.at("assert"), c.limits);
        c.validate();
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const InvalidParameter& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config '" + path.string() + "': " + e.what());
    }
    return config_from_json(j);
}

bool ExperimentResult::all_assertions_pass() const {
    return std::all_of(assertions.begin(), assertions.end(), [](const auto& a) { return a.passed; });
}

std::uint64_t default_budget(std::uint32_t n, Algorithm algo) {
    const double nn = n;
    const double feasibility = 100.0 * std::numbers::e * nn * (std::log(std::max(nn, 1.0)) + 0.5);
    const double optimization = algo == Algorithm::BalancedEA ? 20.0 * nn * nn * nn : 20.0 * nn * nn * nn * nn;
    return static_cast<std::uint64_t>(std::ceil(feasibility + optimization));
}

OptimumInfo resolve_optimum(const Graph& g) {
    if (auto known = known_opt(g)) return *known;
    if (g.n() <= kBruteForceLimit) return brute_force_min_cover(g);
    throw ConfigError("no optimum available for " + g.describe());
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    ExperimentResult result;
    const auto runs = config.runs_per_cell;

    if (config.kind == ExperimentKind::WalkValidation) {
        std::vector<RunOutcome> outcomes(config.walks.size() * runs);
        parallel_for(outcomes.size(), config.workers, [&](std::size_t i) {
            outcomes[i] = execute_walk_run(config, config.walks[i / runs], i % runs);
        });
        aggregate_walks(config, outcomes, result);
        for (auto& o : outcomes) result.raw.push_back(std::move(o.raw));
        return result;
    }

    const auto cells = build_cells(config, result.warnings);
    std::vector<RunOutcome> outcomes(cells.size() * runs);
    parallel_for(outcomes.size(), config.workers, [&](std::size_t i) {
        outcomes[i] = execute_graph_run(config, cells[i / runs], i % runs);
    });

    switch (config.kind) {
        case ExperimentKind::PathScaling: aggregate_path_scaling(config, cells, outcomes, result); break;
        case ExperimentKind::BadPathLengths: aggregate_bad_paths(config, cells, outcomes, result); break;
        case ExperimentKind::BipartiteSuccess: aggregate_bipartite(config, cells, outcomes, result); break;
        case ExperimentKind::CouplingCheck: aggregate_coupling(config, cells, outcomes, result); break;
        case ExperimentKind::OracleEquivalence: aggregate_oracle(config, cells, outcomes, result); break;
        case ExperimentKind::WalkValidation: break;
    }
    for (auto& o : outcomes) result.raw.push_back(std::move(o.raw));
    return result;
}

std::string rows_to_csv(const std::vector<AggregateRow>& rows) {
    std::ostringstream out;
    out << "instance,algorithm,statistic,value,count,min,q1,median,q3,max,std_error\n";
    for (const auto& r : rows) {
        out << r.instance << ',' << r.algorithm << ',' << r.statistic << ',' << format_double(r.value) << ','
            << r.count << ',' << format_double(r.spread.min) << ',' << format_double(r.spread.q1) << ','
            << format_double(r.spread.median) << ',' << format_double(r.spread.q3) << ','
            << format_double(r.spread.max) << ',' << format_double(r.std_error) << '\n';
    }
    return out.str();
}

std::string raw_to_jsonl(const std::vector<nlohmann::json>& raw) {
    std::string out;
    for (const auto& j : raw) {
        out += j.dump();
        out += '\n';
    }
    return out;
}

void write_outputs(const ExperimentConfig& config, const ExperimentResult& result) {
    auto write = [](const std::filesystem::path& path, const std::string& text) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ConfigError("cannot write '" + path.string() + "'");
        out << text;
    };
    if (config.csv_path) write(*config.csv_path, rows_to_csv(result.rows));
    if (config.raw_path) write(*config.raw_path, raw_to_jsonl(result.raw));
}

std::vector<std::string> oracle_corpus(std::uint64_t seed) {
    std::vector<std::string> corpus;
    for (std::uint32_t n = 3; n <= 15; ++n) corpus.push_back("path:" + std::to_string(n));
    for (std::uint32_t l = 1; l <= 3; ++l)
        for (std::uint32_t r = 1; r <= 5; ++r) corpus.push_back("bipartite:" + std::to_string(l) + "x" + std::to_string(r));
    Rng rng(splitmix64(seed));
    for (int i = 0; corpus.size() < 13 + 15 + 20; ++i) {
        const auto n = static_cast<std::uint32_t>(4 + uniform_index(rng, 9));  // 4..12
        const double p = static_cast<double>(2 + uniform_index(rng, 5)) / 10.0;
        const auto graph_seed = rng();
        const auto spec = "gnp:" + std::to_string(n) + ":" + format_double(p) + ":" + std::to_string(graph_seed);
        if (make_random_graph(n, p, graph_seed).edge_count() > 0) corpus.push_back(spec);
        if (i > 1000) break;
    }
    return corpus;
}

} // namespace vclab
