#include <doctest.h>

#include <cmath>
#include <set>

#include "vclab/analysis.hpp"
#include "vclab/engine.hpp"
#include "vclab/error.hpp"

using namespace vclab;

namespace {

BitString bits(const char* s) { return BitString::parse(s); }

BitString from_mask(std::uint32_t n, std::uint32_t mask) {
    BitString b(n);
    for (Vertex v = 1; v <= n; ++v) b.set(v, (mask >> (v - 1)) & 1u);
    return b;
}

BitString optimum(std::uint32_t n) {
    BitString b(n);
    for (Vertex v = 2; v <= n; v += 2) b.set(v, true);
    return b;
}

// No selected vertex can be dropped without uncovering an edge.
bool irreducible(const Graph& g, const BitString& b) {
    for (Vertex v = 1; v <= g.n(); ++v) {
        if (!b.test(v)) continue;
        for (Vertex u : g.neighbors(v))
            if (!b.test(u)) goto needed;
        return false;
    needed:;
    }
    return true;
}

} // namespace

TEST_CASE("bad path examples") {
    const auto r = bad_paths(11, bits("01101010110"));
    REQUIRE(r.single());
    CHECK(r.intervals[0] == Interval{3, 9});
    CHECK(r.b() == 6);
    CHECK(bad_paths(11, bits("01010101010")).intervals.empty());
    const auto all = bad_paths(11, bits("10101010101"));
    REQUIRE(all.single());
    CHECK(all.intervals[0] == Interval{1, 11});
    CHECK_THROWS_AS(bad_paths(10, BitString(10)), UnsupportedInstance);
}

TEST_CASE("bad paths are sorted, disjoint and maximal") {
    for (std::uint32_t n : {5u, 7u, 9u}) {
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            const auto b = from_mask(n, mask);
            const auto report = bad_paths(n, b);
            std::vector<bool> inside(n + 2, false);
            Vertex prev_right = 0;  // 0 before the first interval
            for (const auto& iv : report.intervals) {
                CHECK(iv.left <= iv.right);
                if (prev_right > 0) CHECK(iv.left > prev_right + 1);
                prev_right = iv.right;
                for (Vertex k = iv.left; k <= iv.right; ++k) inside[k] = true;
            }
            for (Vertex k = 1; k <= n; ++k) CHECK(inside[k] == (b.test(k) != (k % 2 == 0)));
        }
    }
}

TEST_CASE("dual examples") {
    const auto d = dual(11, bits("01101010110"));
    CHECK(d.to_string() == "0100010");
    CHECK(d.gap == 3u);
    const auto opt = dual(11, bits("01010101010"));
    CHECK(opt.to_string() == "0000000");
    CHECK_FALSE(opt.gap.has_value());
    CHECK_THROWS_AS(dual(11, bits("00000000000")), PreconditionError);
    CHECK_THROWS_AS(dual(10, BitString(10, true)), UnsupportedInstance);
}

TEST_CASE("optimum iff feasible with no bad path; level one has a single bad path") {
    for (std::uint32_t n = 3; n <= 15; n += 2) {
        const auto g = make_path(n);
        const auto opt = (n - 1) / 2;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            const auto b = from_mask(n, mask);
            const bool feasible = is_feasible(g, b);
            const auto report = bad_paths(n, b);
            CHECK((feasible && report.intervals.empty()) == (b == optimum(n)));
            if (feasible && b.count() == opt + 1) {
                CHECK(report.single());
                CHECK(relative_bad_path_length(n, b).den != 0);
            }
        }
    }
}

TEST_CASE("dual particles sit next to the bad path endpoints") {
    // For feasible irreducible strings the particles are exactly the dual
    // positions (l-1)/2 and (r+1)/2 of every bad interval (l, r).
    for (std::uint32_t n : {5u, 7u, 9u, 11u}) {
        const auto g = make_path(n);
        std::uint64_t checked = 0;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            const auto b = from_mask(n, mask);
            if (!is_feasible(g, b) || !irreducible(g, b)) continue;
            ++checked;
            const auto report = bad_paths(n, b);
            std::set<std::uint32_t> expected;
            for (const auto& iv : report.intervals) {
                CHECK(iv.left % 2 == 1);
                CHECK(iv.right % 2 == 1);
                expected.insert((iv.left - 1) / 2);
                expected.insert((iv.right + 1) / 2);
            }
            const auto d = dual(n, b);
            std::set<std::uint32_t> particles;
            for (std::uint32_t i = 0; i < d.dual_bits.size(); ++i)
                if (d.dual_bits[i]) particles.insert(i);
            CHECK(particles == expected);
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("relative bad path length") {
    CHECK(relative_bad_path_length(11, bits("01101010110")) == Rational{7, 11});
    CHECK(relative_bad_path_length(11, bits("01010101010")) == Rational{0, 1});
    // Interval (1, 17) on n = 51: vertices 1..17 deviate, the rest are optimal.
    auto b = optimum(51);
    for (Vertex k = 1; k <= 17; ++k) b.flip(k);
    CHECK(relative_bad_path_length(51, b) == Rational{1, 3});
    // Two bad paths at level 2 report the longer one.
    CHECK(relative_bad_path_length(11, bits("11010101011")) == Rational{1, 11});
}

TEST_CASE("endpoint trace of a shrinking bad path") {
    // 01101010110 -> swap(9,8) -> swap(7,6) -> swap(5,4) -> drop vertex 3.
    std::vector<TracePoint> traj = {
        {0, bits("01101010110")}, {4, bits("01101011010")}, {9, bits("01101101010")},
        {15, bits("01110101010")}, {22, bits("01010101010")}, {30, bits("01010101010")}};
    const auto trace = endpoint_trace(11, traj);
    CHECK_FALSE(trace.truncated);
    REQUIRE(trace.samples.size() == traj.size());
    const std::vector<std::array<std::uint32_t, 3>> expected = {
        {3, 9, 6}, {3, 7, 4}, {3, 5, 2}, {3, 3, 0}, {6, 6, 0}, {6, 6, 0}};
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(trace.samples[i].t == traj[i].t);
        CHECK(trace.samples[i].l == expected[i][0]);
        CHECK(trace.samples[i].r == expected[i][1]);
        CHECK(trace.samples[i].b == expected[i][2]);
    }
    CHECK(trace.midpoint == 6.0);
}

TEST_CASE("endpoint trace of a constant trajectory is constant") {
    std::vector<TracePoint> traj;
    for (std::uint64_t t = 0; t < 5; ++t) traj.push_back({t, bits("01101010110")});
    const auto trace = endpoint_trace(11, traj);
    for (const auto& s : trace.samples) {
        CHECK(s.l == 3);
        CHECK(s.r == 9);
    }
}

TEST_CASE("endpoint trace stops at a state with two bad paths") {
    std::vector<TracePoint> traj = {{0, bits("01101010110")}, {3, bits("11010101011")}, {5, bits("01010101010")}};
    const auto trace = endpoint_trace(11, traj);
    CHECK(trace.truncated);
    CHECK(trace.truncated_at == 3u);
    CHECK(trace.samples.size() == 1);
}

TEST_CASE("EA endpoint moves are symmetric in the single bad path regime") {
    // Start with one long bad path (11, 91) on n = 101 and restart until
    // enough iterations were measured.
    const std::uint32_t n = 101;
    const auto g = make_path(n);
    auto init = optimum(n);
    for (Vertex k = 11; k <= 91; ++k) init.flip(k);
    REQUIRE(is_feasible(g, init));

    std::uint64_t measured = 0, up = 0, down = 0;
    for (std::uint64_t seed = 0; measured < 1'000'000; ++seed) {
        EndpointTransitionCounter counter(n);
        RunObserver* obs[] = {&counter};
        RunOptions o;
        o.init = init;
        o.optimum = known_opt(g);
        o.stop = {true, 400'000};
        Rng rng(seed);
        (void)run(Algorithm::EA, g, o, rng, obs);
        measured += counter.measured();
        up += counter.left_up();
        down += counter.left_down();
    }
    MESSAGE("measured " << measured << " left +2: " << up << " left -2: " << down);
    REQUIRE(up + down > 50);
    const double sd = std::sqrt(static_cast<double>(up + down)) / 2.0;
    CHECK(std::abs(static_cast<double>(up) - static_cast<double>(up + down) / 2.0) <= 3.0 * sd);
}

TEST_CASE("first level-one probe records the bad path") {
    const auto g = make_path(51);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        FirstLevelOneProbe probe(51);
        RunObserver* obs[] = {&probe};
        RunOptions o;
        o.optimum = known_opt(g);
        o.stop = {true, 50'000'000};
        Rng rng(seed);
        const auto rec = run(Algorithm::BalancedEA, g, o, rng, obs);
        REQUIRE(probe.done());
        CHECK(rec.stopped_by_observer);
        CHECK(rec.terminal_ones == 26);
        CHECK(probe.length().has_value());
        CHECK(probe.length()->value() > 0.0);
        CHECK(probe.length()->value() <= 1.0);
    }
}
