#include <doctest.h>

#include <cmath>
#include <numbers>

#include "vclab/error.hpp"
#include "vclab/stats.hpp"
#include "vclab/walks.hpp"

using namespace vclab;

namespace {

std::vector<double> as_doubles(const std::vector<std::uint64_t>& xs) { return {xs.begin(), xs.end()}; }

std::vector<double> draw(const WalkSpec& spec, std::uint64_t trials, std::uint64_t seed, WalkMode mode) {
    Rng rng(seed);
    return as_doubles(simulate_walk(spec, trials, rng, mode, true).samples);
}

} // namespace

TEST_CASE("walk spec validation") {
    CHECK_THROWS_AS(WalkSpec::barrier(0, 0.5).validate(), InvalidParameter);
    CHECK_THROWS_AS(WalkSpec::barrier(5, 0.0).validate(), InvalidParameter);
    CHECK_THROWS_AS(WalkSpec::barrier(5, 0.6).validate(), InvalidParameter);
    CHECK_NOTHROW(WalkSpec::barrier(5, 0.5).validate());
    CHECK_THROWS_AS(WalkSpec::jump(5, 0.0, 0.1).validate(), InvalidParameter);
    CHECK_THROWS_AS(WalkSpec::jump(5, 0.5, 0.1).validate(), InvalidParameter);
    CHECK_THROWS_AS(WalkSpec::jump(5, 0.1, 1.0).validate(), InvalidParameter);
    CHECK_NOTHROW(WalkSpec::jump(5, 0.5, 0.0).validate());
}

TEST_CASE("barrier walk from d = 1 with q = 1/2 is absorbed in one step") {
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        CHECK(barrier_walk_hitting_time(WalkSpec::barrier(1, 0.5), rng) == 1);
        CHECK(barrier_walk_hitting_time(WalkSpec::barrier(1, 0.5), rng, WalkMode::FastForward) == 1);
    }
}

TEST_CASE("barrier walk closed form") {
    CHECK(barrier_walk_expected(1, 0.5) == 1.0);
    CHECK(barrier_walk_expected(20, 0.25) == 800.0);
    CHECK(barrier_walk_expected(10, 0.5) == 100.0);
    CHECK_THROWS_AS(barrier_walk_expected(10, 0.0), InvalidParameter);
    CHECK_THROWS_AS(barrier_walk_expected(10, 0.75), InvalidParameter);
}

TEST_CASE("barrier walk empirical means within 3%") {
    for (auto [d, q] : {std::pair{10u, 0.5}, std::pair{20u, 0.25}}) {
        Rng rng(d);
        const auto s = simulate_walk(WalkSpec::barrier(d, q), 20'000, rng);
        CHECK(std::abs(s.mean - barrier_walk_expected(d, q)) <= 0.03 * barrier_walk_expected(d, q));
    }
}

TEST_CASE("jump walk with d = 1 exits on the first move") {
    Rng rng(2);
    for (int i = 0; i < 1000; ++i) CHECK(jump_walk_sample(WalkSpec::jump(1, 0.5, 0.0), rng) == 1);
    // Moves happen with probability 2p + q = 0.3, so T' is geometric with mean 10/3.
    double sum = 0;
    const int trials = 20'000;
    for (int i = 0; i < trials; ++i) sum += static_cast<double>(jump_walk_sample(WalkSpec::jump(1, 0.1, 0.1), rng));
    CHECK(std::abs(sum / trials - 10.0 / 3.0) <= 0.03 * 10.0 / 3.0);
}

TEST_CASE("jump walk without jumps has mean exit time d^2") {
    Rng rng(3);
    const auto s = simulate_walk(WalkSpec::jump(10, 0.5, 0.0), 20'000, rng);
    CHECK(std::abs(s.mean - 100.0) <= 3.0);
}

TEST_CASE("jump walk lower bound at (30, 0.01, 1e-6)") {
    Rng rng(4);
    const auto s = simulate_walk(WalkSpec::jump(30, 0.01, 1e-6), 2000, rng, WalkMode::FastForward);
    CHECK(s.frac_at_least_threshold >= 16.0 / 25.0);
}

TEST_CASE("jump walk threshold") {
    CHECK(jump_walk_threshold(30, 0.01, 1e-6) == doctest::Approx(9771.616071197323).epsilon(1e-12));
    CHECK(jump_walk_threshold(30, 0.01, 0.0) == doctest::Approx(9771.625842823165).epsilon(1e-12));
    CHECK(jump_walk_threshold(30, 0.25, 0.01) == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(jump_walk_threshold(40, 0.02, 1e-7) == doctest::Approx(8685.888769476072).epsilon(1e-12));
    CHECK(jump_walk_min_d() == doctest::Approx(4 * std::numbers::ln10));
}

TEST_CASE("barrier walk and jump walk without jumps share the hitting-time law") {
    const auto a = draw(WalkSpec::barrier(10, 0.5), 20'000, 5, WalkMode::Explicit);
    const auto b = draw(WalkSpec::jump(10, 0.5, 0.0), 20'000, 6, WalkMode::Explicit);
    CHECK(stats::ks_statistic(a, b) < stats::ks_critical_1pct(a.size(), b.size()));
}

TEST_CASE("fast-forward and explicit modes share the hitting-time law") {
    const std::vector<WalkSpec> specs = {WalkSpec::barrier(15, 0.05), WalkSpec::jump(20, 0.02, 1e-3),
                                         WalkSpec::jump(12, 0.1, 0.0)};
    std::uint64_t seed = 10;
    for (const auto& spec : specs) {
        const auto a = draw(spec, 20'000, seed++, WalkMode::Explicit);
        const auto b = draw(spec, 20'000, seed++, WalkMode::FastForward);
        CHECK(stats::ks_statistic(a, b) < stats::ks_critical_1pct(a.size(), b.size()));
    }
}

TEST_CASE("geometric tail check") {
    Rng rng(7);
    const auto r = geometric_tail_check(0.1, 0.5, 100'000, rng);
    CHECK(r.passed);
    CHECK(std::abs(r.frequency - 0.6561) <= 0.01);  // 0.9^4
    CHECK(geometric_tail_check(0.1, 1.0, 10'000, rng).passed);
    CHECK(geometric_tail_check(0.3, 2.5, 10'000, rng).passed);
    const auto zero = geometric_tail_check(0.2, 0.0, 10'000, rng);
    CHECK(zero.frequency == 1.0);
    CHECK(zero.passed);
    CHECK_THROWS_AS(geometric_tail_check(0.1, 0.5, 100, rng), InvalidParameter);
}

TEST_CASE("geometric sum lower tail check") {
    Rng rng(8);
    CHECK(geometric_sum_lower_bound(50, 0.5) == doctest::Approx(8.481823524646932e-05).epsilon(1e-9));
    const auto big = geometric_sum_lower_check(50, 0.2, 0.5, 10'000, rng);
    CHECK(big.passed);
    CHECK(big.frequency <= 0.001);
    const auto tiny = geometric_sum_lower_check(10, 0.3, 1e-9, 10'000, rng);
    CHECK(tiny.bound == doctest::Approx(1.0));
    CHECK(tiny.passed);
    const auto one = geometric_sum_lower_check(1, 0.5, 0.5, 100'000, rng);
    CHECK(one.bound == doctest::Approx(0.8290291181804004).epsilon(1e-12));
    CHECK(std::abs(one.frequency - 0.5) <= 0.01);
    CHECK(one.passed);
}

TEST_CASE("multiplicative drift bound") {
    const double n = 100;
    CHECK(multiplicative_drift_bound(n * n, 1, 2 / (std::numbers::e * n)) ==
          doctest::Approx(1387.7291347762314).epsilon(1e-12));
    CHECK(multiplicative_drift_bound(1, 1, 1) == doctest::Approx(1.0));
    CHECK(multiplicative_drift_bound(std::numbers::e, 1, 1) == doctest::Approx(2.0));
    CHECK_THROWS_AS(multiplicative_drift_bound(1, 2, 1), InvalidParameter);
    CHECK_THROWS_AS(multiplicative_drift_bound(2, 1, 0), InvalidParameter);
}
