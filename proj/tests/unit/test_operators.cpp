#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "vclab/error.hpp"
#include "vclab/operators.hpp"
#include "vclab/stats.hpp"

using namespace vclab;

namespace {

BitString bits(const char* s) { return BitString::parse(s); }

std::vector<Vertex> symmetric_difference(const BitString& a, const BitString& b) {
    std::vector<Vertex> out;
    for (Vertex v = 1; v <= a.size(); ++v)
        if (a.test(v) != b.test(v)) out.push_back(v);
    return out;
}

double binomial_pmf(std::uint32_t n, std::uint32_t k, double p) {
    double c = 1;
    for (std::uint32_t i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
    return c * std::pow(p, k) * std::pow(1 - p, n - k);
}

std::uint32_t mask_of(const std::vector<Vertex>& flips) {
    std::uint32_t m = 0;
    for (auto v : flips) m |= 1u << (v - 1);
    return m;
}

} // namespace

TEST_CASE("standard mutation on one bit always flips it") {
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        const auto out = standard_mutation(bits("0"), rng);
        CHECK(out.offspring.to_string() == "1");
        CHECK(out.flipped == std::vector<Vertex>{1});
    }
}

TEST_CASE("standard mutation flip-count statistics at n = 100") {
    const StandardMutation op(100);
    Rng rng(2024);
    std::vector<Vertex> flips;
    const int samples = 1'000'000;
    std::uint64_t exactly_one = 0, total = 0;
    for (int i = 0; i < samples; ++i) {
        flips.clear();
        op.sample(rng, flips);
        exactly_one += flips.size() == 1;
        total += flips.size();
    }
    // (1 - 1/100)^99
    CHECK(std::abs(static_cast<double>(exactly_one) / samples - 0.36972963764972644) <= 0.002);
    CHECK(std::abs(static_cast<double>(total) / samples - 1.0) <= 0.01);
}

TEST_CASE("sampled positions are distinct and in range") {
    Rng rng(5);
    for (std::uint32_t n : {1u, 2u, 7u, 50u}) {
        const StandardMutation op(n);
        std::vector<Vertex> flips;
        for (int i = 0; i < 5000; ++i) {
            flips.clear();
            op.sample(rng, flips);
            auto sorted = flips;
            std::sort(sorted.begin(), sorted.end());
            CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
            for (auto v : flips) CHECK((v >= 1 && v <= n));
        }
    }
}

TEST_CASE("count table matches the binomial law exactly for n <= 8") {
    // Flip-set law of the count-then-positions sampler, enumerated over all
    // 2^n subsets, against per-bit Bernoulli weights.
    for (std::uint32_t n = 1; n <= 8; ++n) {
        const StandardMutation op(n);
        const auto pmf = op.count_pmf();
        const double p = 1.0 / n;
        double tv = 0;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            const auto k = static_cast<std::uint32_t>(std::popcount(mask));
            double subsets = 1;
            for (std::uint32_t i = 0; i < k; ++i) subsets = subsets * (n - i) / (i + 1);
            const double sampler = pmf[k] / subsets;
            const double bernoulli = std::pow(p, k) * std::pow(1 - p, n - k);
            tv += std::abs(sampler - bernoulli);
        }
        CHECK(tv / 2 <= 1e-12);
    }
}

TEST_CASE("both samplers produce the same flip-set distribution for n <= 8") {
    for (std::uint32_t n : {2u, 3u, 5u, 8u}) {
        const StandardMutation op(n);
        Rng rng(100 + n), rng2(200 + n);
        const int samples = 200'000;
        std::vector<std::uint64_t> fast(1u << n, 0), reference(1u << n, 0);
        std::vector<Vertex> flips;
        for (int i = 0; i < samples; ++i) {
            flips.clear();
            op.sample(rng, flips);
            ++fast[mask_of(flips)];
            flips.clear();
            sample_bernoulli_flips(n, rng2, flips);
            ++reference[mask_of(flips)];
        }
        std::vector<double> probs;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            const auto k = static_cast<std::uint32_t>(std::popcount(mask));
            probs.push_back(std::pow(1.0 / n, k) * std::pow(1 - 1.0 / n, n - k));
        }
        CHECK(stats::chi_squared_gof(fast, probs).p_value > 0.001);
        CHECK(stats::chi_squared_gof(reference, probs).p_value > 0.001);
    }
}

TEST_CASE("count table at n = 100 agrees with the binomial formula") {
    const StandardMutation op(100);
    const auto pmf = op.count_pmf();
    for (std::uint32_t k = 0; k <= 10; ++k) CHECK(pmf[k] == doctest::Approx(binomial_pmf(100, k, 0.01)).epsilon(1e-10));
}

TEST_CASE("balanced flip mechanics") {
    const auto p3 = make_path(3);
    CHECK(balanced_partners(p3, bits("010"), 2) == std::vector<Vertex>{1, 3});
    const auto out = balanced_swap(p3, bits("010"), 2, 1);
    CHECK(out.offspring.to_string() == "100");
    CHECK(out.kind == MutationKind::BalancedFlip);
    CHECK(out.flipped == std::vector<Vertex>{1, 2});
    CHECK_THROWS_AS(balanced_swap(p3, bits("010"), 1, 3), PreconditionError);

    const auto p11 = make_path(11);
    const auto swapped = balanced_swap(p11, bits("01101010110"), 10, 11);
    CHECK(swapped.offspring.to_string() == "01101010101");
    CHECK(swapped.offspring.count() == 6);
}

TEST_CASE("balanced flip on the all-zero string is always null") {
    const auto g = make_complete_bipartite(3, 4);
    const BitString zeros(g.n());
    for (Vertex v = 1; v <= g.n(); ++v) CHECK(balanced_partners(g, zeros, v).empty());
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const auto out = balanced_flip(g, zeros, rng);
        CHECK(out.kind == MutationKind::BalancedNull);
        CHECK(out.offspring == zeros);
        CHECK(out.flipped.empty());
        CHECK((out.v >= 1 && out.v <= g.n()));
    }
}

TEST_CASE("operators report the symmetric difference and balanced flips keep the count") {
    Rng rng(17);
    const std::vector<Graph> graphs = {make_path(15), make_complete_bipartite(3, 6), make_random_graph(12, 0.3, 9)};
    for (const auto& g : graphs) {
        for (int i = 0; i < 2000; ++i) {
            BitString parent(g.n());
            for (Vertex v = 1; v <= g.n(); ++v) parent.set(v, rng() & 1u);
            const auto s = standard_mutation(parent, rng);
            CHECK(s.flipped == symmetric_difference(parent, s.offspring));
            const auto b = standard_mutation_bernoulli(parent, rng);
            CHECK(b.flipped == symmetric_difference(parent, b.offspring));
            const auto r = rls_step(parent, rng);
            CHECK(r.flipped == symmetric_difference(parent, r.offspring));
            CHECK(r.flipped.size() == 1);
            const auto bal = balanced_flip(g, parent, rng);
            CHECK(bal.flipped == symmetric_difference(parent, bal.offspring));
            CHECK(bal.offspring.count() == parent.count());
            if (bal.kind == MutationKind::BalancedNull) {
                CHECK(bal.offspring == parent);
                CHECK(balanced_partners(g, parent, bal.v).empty());
            } else {
                CHECK(parent.test(bal.v) != parent.test(bal.u));
            }
        }
    }
}

TEST_CASE("rls flips exactly one uniform position") {
    Rng rng(8);
    CHECK(rls_step(bits("0"), rng).offspring.to_string() == "1");
    for (int i = 0; i < 100; ++i) CHECK(rls_step(bits("000"), rng).offspring.count() == 1);

    std::map<Vertex, std::uint64_t> hits;
    const int samples = 1'000'000;
    const auto parent = bits("0000");
    for (int i = 0; i < samples; ++i) ++hits[rls_step(parent, rng).v];
    for (Vertex v = 1; v <= 4; ++v) CHECK(std::abs(static_cast<double>(hits[v]) / samples - 0.25) <= 0.005);
}

TEST_CASE("acceptance keeps ties") {
    static_assert(accept(5, 5));
    static_assert(!accept(5, 6));
    static_assert(accept(5, 4));
}
