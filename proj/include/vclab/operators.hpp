#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "vclab/graph.hpp"
#include "vclab/rng.hpp"
#include "vclab/solution.hpp"

namespace vclab {

enum class MutationKind : std::uint8_t { StandardFlip, BalancedFlip, BalancedNull, SingleFlip };

std::string_view to_string(MutationKind kind);

struct MutationOutcome {
    BitString offspring;
    std::vector<Vertex> flipped;  // sorted, equals the symmetric difference
    MutationKind kind = MutationKind::StandardFlip;
    Vertex v = 0;                 // chosen vertex for balanced and single flips
    Vertex u = 0;                 // chosen neighbor for balanced flips
};

/// Standard bit mutation with rate 1/n, sampled as a flip count drawn from
/// Binomial(n, 1/n) followed by that many distinct uniform positions.
///
/// The count distribution is tabulated once per n; it is exposed so that the
/// sampler can be checked against per-bit Bernoulli flipping by enumeration.
class StandardMutation {
public:
    explicit StandardMutation(std::uint32_t n);

    std::uint32_t n() const noexcept { return n_; }

    /// Appends the flipped positions (distinct, unordered) to `out`.
    void sample(Rng& rng, std::vector<Vertex>& out) const;

    /// Pr[K = k] for k = 0..n as used by the sampler.
    std::span<const double> count_pmf() const noexcept { return pmf_; }

private:
    std::uint32_t n_;
    std::vector<double> pmf_;
    std::vector<double> cdf_;
};

/// Reference sampler: every position flips independently with probability 1/n.
void sample_bernoulli_flips(std::uint32_t n, Rng& rng, std::vector<Vertex>& out);

/// N_v: neighbors of v whose bit differs from v's bit.
std::vector<Vertex> balanced_partners(const Graph& g, const BitString& bits, Vertex v);

/// Result of the balanced branch; u == 0 means N_v was empty.
struct BalancedPick {
    Vertex v = 0;
    Vertex u = 0;
};

BalancedPick pick_balanced(const Graph& g, const BitString& bits, Rng& rng);

MutationOutcome standard_mutation(const BitString& parent, Rng& rng);
MutationOutcome standard_mutation_bernoulli(const BitString& parent, Rng& rng);
MutationOutcome balanced_flip(const Graph& g, const BitString& parent, Rng& rng);

/// Deterministic balanced swap of v with u; u must be in N_v.
MutationOutcome balanced_swap(const Graph& g, const BitString& parent, Vertex v, Vertex u);
MutationOutcome rls_step(const BitString& parent, Rng& rng);

/// Ties are accepted.
constexpr bool accept(std::uint64_t parent_fitness, std::uint64_t offspring_fitness) noexcept {
    return offspring_fitness <= parent_fitness;
}

} // namespace vclab
