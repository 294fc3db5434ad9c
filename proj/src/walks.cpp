#include "vclab/walks.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "vclab/error.hpp"

namespace vclab {

namespace {

// Number of trials up to and including the first success.
std::uint64_t geometric_trials(double success, Rng& rng) {
    if (success >= 1.0) return 1;
    return std::geometric_distribution<std::uint64_t>(success)(rng) + 1;
}

double binomial_margin(double prob, std::uint64_t trials) {
    const double clamped = std::clamp(prob, 0.0, 1.0);
    return 3.0 * std::sqrt(clamped * (1.0 - clamped) / static_cast<double>(trials));
}

} // namespace

void WalkSpec::validate() const {
    if (d == 0) throw InvalidParameter("walk barrier d must be positive");
    if (kind == WalkKind::BarrierWalk) {
        if (!(q > 0.0 && q <= 0.5)) throw InvalidParameter("barrier walk needs q in (0, 1/2]");
    } else {
        if (!(p > 0.0 && p <= 1.0)) throw InvalidParameter("jump walk needs p in (0, 1]");
        if (!(q >= 0.0 && q < 1.0)) throw InvalidParameter("jump walk needs q in [0, 1)");
        if (q + 2.0 * p > 1.0 + 1e-12) throw InvalidParameter("jump walk needs q + 2p <= 1");
    }
}

std::uint64_t barrier_walk_hitting_time(const WalkSpec& spec, Rng& rng, WalkMode mode) {
    spec.validate();
    if (spec.kind != WalkKind::BarrierWalk) throw InvalidParameter("expected a barrier walk");
    const double q = spec.q;
    std::int64_t z = spec.d;
    std::uint64_t t = 0;
    if (mode == WalkMode::Explicit) {
        while (z > 0) {
            ++t;
            const double u = uniform01(rng);
            if (z == static_cast<std::int64_t>(spec.d)) {
                if (u < 2.0 * q) --z;
            } else if (u < q) {
                --z;
            } else if (u < 2.0 * q) {
                ++z;
            }
        }
    } else {
        // Every state moves with probability 2q; the direction is then fair,
        // except at d where it is always down.
        std::bernoulli_distribution fair(0.5);
        while (z > 0) {
            t += geometric_trials(2.0 * q, rng);
            if (z == static_cast<std::int64_t>(spec.d) || fair(rng)) --z;
            else ++z;
        }
    }
    return t;
}

double barrier_walk_expected(std::uint32_t d, double q) {
    if (!(q > 0.0 && q <= 0.5)) throw InvalidParameter("barrier walk needs q in (0, 1/2]");
    return static_cast<double>(d) * d / (2.0 * q);
}

std::uint64_t jump_walk_sample(const WalkSpec& spec, Rng& rng, WalkMode mode) {
    spec.validate();
    if (spec.kind != WalkKind::JumpWalk) throw InvalidParameter("expected a jump walk");
    const auto d = static_cast<std::int64_t>(spec.d);
    const double p = spec.p;
    const double q = spec.q;
    std::int64_t z = 0;
    std::uint64_t t = 0;
    if (mode == WalkMode::Explicit) {
        while (std::abs(z) < d) {
            ++t;
            const double u = uniform01(rng);
            if (u < p) --z;
            else if (u < 2.0 * p) ++z;
            else if (u < 2.0 * p + q) z = d + 1;
        }
    } else {
        const double move = 2.0 * p + q;
        while (std::abs(z) < d) {
            t += geometric_trials(move, rng);
            const double u = uniform01(rng) * move;
            if (u < p) --z;
            else if (u < 2.0 * p) ++z;
            else z = d + 1;
        }
    }
    return t;
}

double jump_walk_threshold(std::uint32_t d, double p, double q) {
    WalkSpec::jump(d, p, q).validate();
    const double walk_term = static_cast<double>(d) * d * (1.0 - q) / (4.0 * std::numbers::ln10 * p);
    if (q == 0.0) return walk_term;
    return std::min(1.0 / (5.0 * q), walk_term);
}

double jump_walk_min_d() { return 4.0 * std::numbers::ln10; }

WalkSummary simulate_walk(const WalkSpec& spec, std::uint64_t trials, Rng& rng, WalkMode mode,
                          bool keep_samples) {
    spec.validate();
    if (trials == 0) throw InvalidParameter("need at least one trial");
    WalkSummary s;
    s.trials = trials;
    s.threshold = spec.kind == WalkKind::BarrierWalk ? barrier_walk_expected(spec.d, spec.q)
                                                     : jump_walk_threshold(spec.d, spec.p, spec.q);
    if (keep_samples) s.samples.reserve(trials);
    double mean = 0, m2 = 0;
    std::uint64_t above = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        const auto t = spec.kind == WalkKind::BarrierWalk ? barrier_walk_hitting_time(spec, rng, mode)
                                                          : jump_walk_sample(spec, rng, mode);
        const double x = static_cast<double>(t);
        const double delta = x - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (x - mean);
        if (x >= s.threshold) ++above;
        if (keep_samples) s.samples.push_back(t);
    }
    s.mean = mean;
    s.variance = trials > 1 ? m2 / static_cast<double>(trials - 1) : 0.0;
    s.frac_at_least_threshold = static_cast<double>(above) / static_cast<double>(trials);
    return s;
}

TailCheck geometric_tail_check(double p, double c, std::uint64_t trials, Rng& rng) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("geometric tail needs p in (0,1)");
    if (!(c >= 0.0)) throw InvalidParameter("geometric tail needs c >= 0");
    if (trials < 10000) throw InvalidParameter("geometric tail check needs at least 10^4 trials");
    const double cutoff = c / p;
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < trials; ++i)
        if (static_cast<double>(geometric_trials(p, rng)) >= cutoff) ++hits;
    TailCheck r;
    r.frequency = static_cast<double>(hits) / static_cast<double>(trials);
    r.bound = 1.0 - c;
    r.margin = binomial_margin(r.bound, trials);
    r.passed = r.frequency >= r.bound - r.margin;
    return r;
}

double geometric_sum_lower_bound(std::uint32_t n, double delta) {
    return std::exp(-(delta * delta) / (2.0 - 4.0 / 3.0 * delta) * n);
}

TailCheck geometric_sum_lower_check(std::uint32_t n, double p, double delta, std::uint64_t trials, Rng& rng) {
    if (n == 0) throw InvalidParameter("need at least one summand");
    if (!(p > 0.0 && p <= 1.0)) throw InvalidParameter("geometric sum needs p in (0,1]");
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidParameter("delta must lie in (0,1)");
    if (trials < 10000) throw InvalidParameter("geometric sum check needs at least 10^4 trials");
    const double cutoff = (1.0 - delta) * n / p;
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        std::uint64_t sum = 0;
        for (std::uint32_t k = 0; k < n; ++k) sum += geometric_trials(p, rng);
        if (static_cast<double>(sum) <= cutoff) ++hits;
    }
    TailCheck r;
    r.frequency = static_cast<double>(hits) / static_cast<double>(trials);
    r.bound = geometric_sum_lower_bound(n, delta);
    r.margin = binomial_margin(r.bound, trials);
    r.passed = r.frequency <= r.bound + r.margin;
    return r;
}

double multiplicative_drift_bound(double s0, double smin, double delta) {
    if (!(smin > 0.0 && s0 >= smin)) throw InvalidParameter("drift bound needs s0 >= smin > 0");
    if (!(delta > 0.0)) throw InvalidParameter("drift bound needs delta > 0");
    return (std::log(s0) - std::log(smin) + 1.0) / delta;
}

} // namespace vclab
