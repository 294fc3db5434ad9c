#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "vclab/bipartite.hpp"
#include "vclab/graph.hpp"
#include "vclab/operators.hpp"
#include "vclab/rng.hpp"
#include "vclab/solution.hpp"

namespace vclab {

enum class Algorithm : std::uint8_t { EA, BalancedEA, RLS };

std::string_view to_string(Algorithm algo);
Algorithm parse_algorithm(std::string_view name);  // "ea" | "balanced" | "rls"

/// What a balanced pick with no opposite-valued neighbor does.
enum class NullPolicy : std::uint8_t {
    CountIteration,  // one full iteration, offspring = parent
    Resample,        // literal goto: redraw the branch coin, no iteration spent
};

struct StoppingCriterion {
    bool at_optimum = true;
    std::optional<std::uint64_t> max_iterations;
};

struct RunOptions {
    std::optional<BitString> init;  // uniform over {0,1}^n when absent
    StoppingCriterion stop;
    std::optional<OptimumInfo> optimum;
    NullPolicy null_policy = NullPolicy::CountIteration;
    bool track_shadow = false;  // bipartite instances only
    std::uint64_t seed = 0;     // recorded only; the caller seeds the stream
    std::string instance;       // recorded only
};

/// One counted iteration as seen by observers. `state` is X_t, i.e. after the
/// acceptance decision.
struct StepEvent {
    std::uint64_t t;
    MutationKind kind;
    Vertex v;
    Vertex u;
    std::span<const Vertex> flipped;
    bool accepted;
    const Candidate& state;
};

class RunObserver {
public:
    virtual ~RunObserver() = default;
    virtual void on_start(const Candidate& /*initial*/) {}
    /// Return false to stop the run after this iteration.
    virtual bool on_step(const StepEvent& /*event*/) { return true; }
};

struct RunRecord {
    std::uint64_t seed = 0;
    Algorithm algorithm = Algorithm::EA;
    std::string instance;
    std::uint64_t iterations = 0;
    std::optional<std::uint64_t> t_feasible;
    std::optional<std::uint64_t> t_optimal;
    /// Y_l: iterations spent at level l, counting states X_t for
    /// t_feasible <= t < t_optimal (or up to the last iteration when the
    /// optimum is never reached).
    std::map<std::int64_t, std::uint64_t> level_occupancy;
    BitString terminal;
    std::uint32_t terminal_ones = 0;
    std::uint64_t terminal_uncovered = 0;
    std::uint64_t terminal_fitness = 0;
    bool budget_exhausted = false;
    bool stopped_by_observer = false;
    std::optional<BipartiteTimes> bipartite_times;
    std::optional<bool> trapped;
};

nlohmann::json to_json(const RunRecord& record);

/// Runs one (1+1)-style optimizer until the stopping criterion holds.
///
/// Throws ConfigError if the criterion asks for the optimum without an
/// OptimumInfo, or if neither criterion is set.
RunRecord run(Algorithm algo, const Graph& g, const RunOptions& options, Rng& rng,
              std::span<RunObserver* const> observers = {});

/// Uniform random bit string of length n.
BitString random_bits(std::uint32_t n, Rng& rng);

} // namespace vclab
