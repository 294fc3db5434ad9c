#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vclab/engine.hpp"
#include "vclab/stats.hpp"
#include "vclab/walks.hpp"

namespace vclab {

enum class ExperimentKind : std::uint8_t {
    PathScaling,
    BadPathLengths,
    BipartiteSuccess,
    WalkValidation,
    CouplingCheck,
    OracleEquivalence,
};

std::string_view to_string(ExperimentKind kind);
/// Accepts "PathScaling" or "path_scaling" style names.
ExperimentKind parse_experiment_kind(std::string_view name);

/// Parses "barrier:<d>:<q>" or "jump:<d>:<p>:<q>".
WalkSpec parse_walk_spec(std::string_view text);
std::string to_string(const WalkSpec& spec);

/// Tolerances applied by the built-in assertions of each experiment kind.
struct AssertionLimits {
    double ea_slope_min = 3.3, ea_slope_max = 4.7;
    double balanced_slope_min = 2.3, balanced_slope_max = 3.7;
    std::uint32_t balanced_faster_from = 41;     // Balanced mean < EA mean for n >= this
    double min_median_bad_path = 0.2;
    std::uint64_t max_skips = 2;
    double min_balanced_success = 0.95;          // cells with c > 2
    double min_rls_failure = 0.10;               // failure-or-trap fraction
    double barrier_rel_tolerance = 0.03;
    double jump_min_fraction = 16.0 / 25.0;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::PathScaling;
    std::vector<std::string> instances;
    std::vector<Algorithm> algorithms;
    std::vector<WalkSpec> walks;  // WalkValidation only
    std::uint64_t runs_per_cell = 1;
    std::uint64_t master_seed = 0;
    /// Iteration caps by algorithm name; "default" applies to the rest.
    std::map<std::string, std::uint64_t> budgets;
    double budget_multiplier = 50.0;  // BipartiteSuccess balanced budget
    NullPolicy null_policy = NullPolicy::CountIteration;
    WalkMode walk_mode = WalkMode::Explicit;
    unsigned workers = 0;  // 0: hardware concurrency
    std::optional<std::filesystem::path> csv_path;
    std::optional<std::filesystem::path> raw_path;
    AssertionLimits limits;

    /// Throws ConfigError on an invalid grid.
    void validate() const;
};

/// Throws ConfigError on malformed or incomplete JSON.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

/// One statistic of one cell. Quartile fields describe the underlying sample
/// and satisfy min <= q1 <= median <= q3 <= max.
struct AggregateRow {
    std::string instance;
    std::string algorithm;
    std::string statistic;
    double value = 0;
    std::uint64_t count = 0;
    stats::FiveNumber spread;
    double std_error = 0;
};

struct AssertionResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ExperimentResult {
    std::vector<AggregateRow> rows;
    std::vector<nlohmann::json> raw;  // one record per run, ordered by cell then run index
    std::vector<AssertionResult> assertions;
    std::vector<std::string> warnings;
    bool budget_exhausted = false;

    bool all_assertions_pass() const;
};

/// Default iteration cap: feasibility allowance 100 e n (ln n + 1/2) plus
/// 20 n^3 for the balanced variant and 20 n^4 otherwise.
std::uint64_t default_budget(std::uint32_t n, Algorithm algo);

/// Runs every cell. Output is a deterministic function of the config; the
/// worker count only changes wall-clock time.
ExperimentResult run_experiment(const ExperimentConfig& config);

std::string rows_to_csv(const std::vector<AggregateRow>& rows);
std::string raw_to_jsonl(const std::vector<nlohmann::json>& raw);

/// Writes the CSV and JSON-lines files named in the config, if any.
void write_outputs(const ExperimentConfig& config, const ExperimentResult& result);

/// Paths 3..15, K_{L,R} for L <= 3, R <= 5 and 20 seeded random graphs
/// with n <= 12.
std::vector<std::string> oracle_corpus(std::uint64_t seed);

/// Optimum of an instance: the closed form when known, exhaustive search
/// when small, ConfigError otherwise.
OptimumInfo resolve_optimum(const Graph& g);

} // namespace vclab
