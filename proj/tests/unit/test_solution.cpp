#include <doctest.h>

#include <random>

#include "vclab/error.hpp"
#include "vclab/rng.hpp"
#include "vclab/solution.hpp"

using namespace vclab;

namespace {

BitString bits(const char* s) { return BitString::parse(s); }

// Independent cover oracle: smallest k with a k-subset cover, by recursion
// over edges (branch on which endpoint covers the first uncovered edge).
std::uint32_t branch_min_cover(const Graph& g, std::vector<std::uint8_t>& chosen, std::uint32_t size,
                               std::uint32_t best) {
    if (size >= best) return best;
    for (const auto& e : g.edges()) {
        if (chosen[e.u] || chosen[e.v]) continue;
        for (Vertex pick : {e.u, e.v}) {
            chosen[pick] = 1;
            best = branch_min_cover(g, chosen, size + 1, best);
            chosen[pick] = 0;
        }
        return best;
    }
    return size;
}

std::uint32_t oracle_min_cover(const Graph& g) {
    std::vector<std::uint8_t> chosen(g.n() + 1, 0);
    return branch_min_cover(g, chosen, 0, g.n() + 1);
}

} // namespace

TEST_CASE("bit strings serialize with vertex 1 first") {
    const auto b = bits("0110");
    CHECK(b.size() == 4);
    CHECK_FALSE(b.test(1));
    CHECK(b.test(2));
    CHECK(b.count() == 2);
    CHECK(b.to_string() == "0110");
    CHECK_THROWS_AS(BitString::parse("01a"), InvalidParameter);
}

TEST_CASE("uncovered_edges examples") {
    CHECK(uncovered_edges(make_path(5), bits("00000")) == 4);
    CHECK(uncovered_edges(make_complete_bipartite(2, 3), bits("00000")) == 6);
    CHECK(uncovered_edges(make_path(11), bits("01101010110")) == 0);
    CHECK_THROWS_AS(uncovered_edges(make_path(5), bits("0000")), InvalidParameter);
}

TEST_CASE("fitness examples") {
    CHECK(fitness(make_path(3), bits("010")) == 1);
    CHECK(fitness(make_path(3), bits("000")) == 8);
    CHECK(fitness(make_path(11), bits("01101010110")) == 6);
    CHECK_THROWS_AS(fitness(make_path(3), bits("01")), InvalidParameter);
}

TEST_CASE("is_feasible examples") {
    CHECK(is_feasible(make_path(3), bits("010")));
    CHECK_FALSE(is_feasible(make_path(3), bits("100")));
    CHECK(is_feasible(make_complete_bipartite(2, 3), bits("11000")));
    CHECK_THROWS_AS(is_feasible(make_path(3), bits("0100")), InvalidParameter);
}

TEST_CASE("level examples") {
    const auto g = make_path(11);
    const auto opt = known_opt(g).value();
    CHECK(level(g, bits("01101010110"), opt) == 1);
    CHECK(level(g, *opt.witness, opt) == 0);
    CHECK(level(g, BitString(11, true), opt) == 6);
    CHECK(level(g, BitString(11, false), opt) == -5);
}

TEST_CASE("known_opt closed forms") {
    const auto p11 = known_opt(make_path(11)).value();
    CHECK(p11.size == 5);
    CHECK(p11.unique == true);
    CHECK(p11.witness->to_string() == "01010101010");

    const auto p10 = known_opt(make_path(10)).value();
    CHECK(p10.size == 5);
    CHECK(p10.unique == false);

    const auto k = known_opt(make_complete_bipartite(8, 24)).value();
    CHECK(k.size == 8);
    CHECK(k.unique == true);

    CHECK_FALSE(known_opt(load_edge_list("1 2\n2 3\n1 3")).has_value());
}

TEST_CASE("brute_force_min_cover examples") {
    CHECK(brute_force_min_cover(make_path(5)).size == 2);
    // Triangle: 8 subsets, every pair covers, no single vertex does.
    const auto tri = brute_force_min_cover(load_edge_list("1 2\n2 3\n1 3"));
    CHECK(tri.size == 2);
    CHECK(tri.unique == false);
    CHECK(brute_force_min_cover(make_complete_bipartite(2, 5)).size == 2);
    CHECK_THROWS_AS(brute_force_min_cover(make_path(kBruteForceLimit + 1)), ResourceGuard);
}

TEST_CASE("brute force witness is a minimum cover") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto g = make_random_graph(10, 0.35, seed);
        const auto info = brute_force_min_cover(g);
        REQUIRE(info.witness.has_value());
        CHECK(is_feasible(g, *info.witness));
        CHECK(info.witness->count() == info.size);
        CHECK(info.size == oracle_min_cover(g));
    }
}

TEST_CASE("known_opt agrees with brute force up to n = 20") {
    for (std::uint32_t n = 1; n <= 20; ++n) {
        const auto g = make_path(n);
        const auto known = known_opt(g).value();
        const auto brute = brute_force_min_cover(g);
        CHECK(known.size == brute.size);
        CHECK(known.unique == brute.unique);
    }
    for (std::uint32_t l = 1; l <= 10; ++l)
        for (std::uint32_t r = 1; l + r <= 20; ++r) {
            const auto g = make_complete_bipartite(l, r);
            const auto known = known_opt(g).value();
            const auto brute = brute_force_min_cover(g);
            CHECK(known.size == brute.size);
            CHECK(known.unique == brute.unique);
        }
}

TEST_CASE("fitness <= n iff feasible, exhaustively on small graphs") {
    const std::vector<Graph> graphs = {make_path(6), make_complete_bipartite(2, 4),
                                       load_edge_list("1 2\n2 3\n1 3\n3 4\n4 5\n5 6\n6 4")};
    for (const auto& g : graphs) {
        for (std::uint32_t mask = 0; mask < (1u << g.n()); ++mask) {
            BitString b(g.n());
            for (Vertex v = 1; v <= g.n(); ++v) b.set(v, (mask >> (v - 1)) & 1u);
            CHECK((fitness(g, b) <= g.n()) == is_feasible(g, b));
        }
    }
}

TEST_CASE("uncovered_edges is nonincreasing when vertices are added") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto g = make_random_graph(12, 0.3, static_cast<std::uint64_t>(trial));
        BitString b(g.n());
        for (Vertex v = 1; v <= g.n(); ++v) b.set(v, rng() & 1u);
        for (Vertex v = 1; v <= g.n(); ++v) {
            if (b.test(v)) continue;
            const auto before = uncovered_edges(g, b);
            b.set(v, true);
            CHECK(uncovered_edges(g, b) <= before);
        }
    }
}

TEST_CASE("Candidate stays consistent under random flips") {
    Rng rng(11);
    const std::vector<Graph> graphs = {make_path(31), make_complete_bipartite(4, 9), make_random_graph(15, 0.3, 3)};
    for (const auto& g : graphs) {
        Candidate c(g, BitString(g.n()));
        for (int step = 0; step < 2000; ++step) {
            std::vector<Vertex> flips;
            const auto k = 1 + uniform_index(rng, 3);
            for (std::uint64_t i = 0; i < k; ++i) {
                const auto v = static_cast<Vertex>(1 + uniform_index(rng, g.n()));
                if (std::find(flips.begin(), flips.end(), v) == flips.end()) flips.push_back(v);
            }
            const auto before = c.bits();
            c.flip(flips);
            CHECK(c.ones() == c.bits().count());
            CHECK(c.uncovered() == uncovered_edges(g, c.bits()));
            CHECK(c.fitness() == fitness(g, c.bits()));
            CHECK(c.feasible() == (c.uncovered() == 0));
            if (rng() & 1u) {
                c.flip(flips);
                CHECK(c.bits() == before);
            }
        }
    }
}
