#pragma once

#include <cstdint>
#include <vector>

#include "vclab/rng.hpp"

namespace vclab {

enum class WalkKind : std::uint8_t { BarrierWalk, JumpWalk };

/// Parameters of an abstract walk.
///
/// BarrierWalk: states 0..d, start at d, absorbing at 0, reflecting at d.
/// Interior states step down and up with probability q each; state d steps
/// down with probability 2q. Requires q in (0, 1/2]; p is unused.
///
/// JumpWalk: states -d..d+1, start at 0. Interior states step by +-1 with
/// probability p each and jump to d+1 with probability q. States -d, d and
/// d+1 are absorbing. Requires p in (0,1], q in [0,1), q + 2p <= 1.
struct WalkSpec {
    WalkKind kind = WalkKind::BarrierWalk;
    std::uint32_t d = 1;
    double p = 0.0;
    double q = 0.0;

    static WalkSpec barrier(std::uint32_t d, double q) { return {WalkKind::BarrierWalk, d, 0.0, q}; }
    static WalkSpec jump(std::uint32_t d, double p, double q) { return {WalkKind::JumpWalk, d, p, q}; }

    /// Throws InvalidParameter when the invariants above fail.
    void validate() const;
};

/// Lazy steps are either simulated one by one (Explicit) or skipped with a
/// geometric holding time (FastForward). Both produce the same law.
enum class WalkMode : std::uint8_t { Explicit, FastForward };

/// First t with Z_t = 0.
std::uint64_t barrier_walk_hitting_time(const WalkSpec& spec, Rng& rng, WalkMode mode = WalkMode::Explicit);

/// d^2 / (2q).
double barrier_walk_expected(std::uint32_t d, double q);

/// First t with |Z'_t| >= d.
std::uint64_t jump_walk_sample(const WalkSpec& spec, Rng& rng, WalkMode mode = WalkMode::Explicit);

/// min{1/(5q), d^2 (1-q) / (4 ln(10) p)}; the first term is +inf for q = 0.
double jump_walk_threshold(std::uint32_t d, double p, double q);

/// Lower bound on d for the jump-walk threshold claim.
double jump_walk_min_d();

struct WalkSummary {
    std::uint64_t trials = 0;
    double mean = 0;
    double variance = 0;
    double threshold = 0;                // d^2/(2q) for barrier walks
    double frac_at_least_threshold = 0;  // fraction of samples >= threshold
    std::vector<std::uint64_t> samples;
};

WalkSummary simulate_walk(const WalkSpec& spec, std::uint64_t trials, Rng& rng,
                          WalkMode mode = WalkMode::Explicit, bool keep_samples = false);

struct TailCheck {
    bool passed = false;
    double frequency = 0;  // empirical probability of the event
    double bound = 0;      // the probability bound under test
    double margin = 0;     // 3 binomial standard errors
};

/// Geometric(p) on {1, 2, ...}: checks Pr[X >= c/p] >= 1 - c up to the margin.
TailCheck geometric_tail_check(double p, double c, std::uint64_t trials, Rng& rng);

/// Sum of n Geometric(p): checks Pr[X <= (1-delta) n/p] <=
/// exp(-delta^2/(2 - 4 delta/3) n) up to the margin.
TailCheck geometric_sum_lower_check(std::uint32_t n, double p, double delta, std::uint64_t trials, Rng& rng);

double geometric_sum_lower_bound(std::uint32_t n, double delta);

/// (ln s0 - ln smin + 1) / delta.
double multiplicative_drift_bound(double s0, double smin, double delta);

} // namespace vclab
