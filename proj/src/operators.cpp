#include "vclab/operators.hpp"

#include <algorithm>
#include <cmath>

#include "vclab/error.hpp"

namespace vclab {

std::string_view to_string(MutationKind kind) {
    switch (kind) {
        case MutationKind::StandardFlip: return "standard";
        case MutationKind::BalancedFlip: return "balanced";
        case MutationKind::BalancedNull: return "balanced-null";
        case MutationKind::SingleFlip: return "single";
    }
    return "?";
}

StandardMutation::StandardMutation(std::uint32_t n) : n_(n), pmf_(std::size_t{n} + 1), cdf_(std::size_t{n} + 1) {
    if (n == 0) throw InvalidParameter("mutation on an empty bit string");
    const double p = 1.0 / n;
    // log-space binomial terms; stable for large n
    for (std::uint32_t k = 0; k <= n; ++k) {
        double log_term = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
        if (k > 0) log_term += k * std::log(p);
        if (k < n) log_term += (n - k) * std::log1p(-p);
        pmf_[k] = std::exp(log_term);
    }
    double acc = 0;
    for (std::uint32_t k = 0; k <= n; ++k) {
        acc += pmf_[k];
        cdf_[k] = acc;
    }
    cdf_[n] = 1.0;
}

void StandardMutation::sample(Rng& rng, std::vector<Vertex>& out) const {
    const double u = uniform01(rng);
    std::uint32_t k = 0;
    while (k < n_ && u >= cdf_[k]) ++k;
    if (k == 0) return;
    if (k == 1) {
        out.push_back(static_cast<Vertex>(uniform_index(rng, n_)) + 1);
        return;
    }
    // Floyd's algorithm: k distinct values from 1..n, uniformly.
    const auto first = out.size();
    for (std::uint32_t j = n_ - k + 1; j <= n_; ++j) {
        const auto t = static_cast<Vertex>(uniform_index(rng, j)) + 1;
        const bool seen = std::find(out.begin() + static_cast<std::ptrdiff_t>(first), out.end(), t) != out.end();
        out.push_back(seen ? j : t);
    }
}

void sample_bernoulli_flips(std::uint32_t n, Rng& rng, std::vector<Vertex>& out) {
    const double p = 1.0 / n;
    for (Vertex v = 1; v <= n; ++v)
        if (uniform01(rng) < p) out.push_back(v);
}

std::vector<Vertex> balanced_partners(const Graph& g, const BitString& bits, Vertex v) {
    std::vector<Vertex> out;
    const bool own = bits.test(v);
    for (auto w : g.neighbors(v))
        if (bits.test(w) != own) out.push_back(w);
    return out;
}

BalancedPick pick_balanced(const Graph& g, const BitString& bits, Rng& rng) {
    const auto v = static_cast<Vertex>(uniform_index(rng, g.n())) + 1;
    const bool own = bits.test(v);
    const auto nbrs = g.neighbors(v);
    std::uint64_t count = 0;
    for (auto w : nbrs)
        if (bits.test(w) != own) ++count;
    if (count == 0) return {v, 0};
    auto target = uniform_index(rng, count);
    for (auto w : nbrs) {
        if (bits.test(w) == own) continue;
        if (target-- == 0) return {v, w};
    }
    return {v, 0};  // unreachable
}

namespace {

MutationOutcome make_outcome(const BitString& parent, std::vector<Vertex> flipped, MutationKind kind) {
    MutationOutcome out;
    out.offspring = parent;
    std::sort(flipped.begin(), flipped.end());
    for (auto v : flipped) out.offspring.flip(v);
    out.flipped = std::move(flipped);
    out.kind = kind;
    return out;
}

} // namespace

MutationOutcome standard_mutation(const BitString& parent, Rng& rng) {
    std::vector<Vertex> flips;
    StandardMutation(parent.size()).sample(rng, flips);
    return make_outcome(parent, std::move(flips), MutationKind::StandardFlip);
}

MutationOutcome standard_mutation_bernoulli(const BitString& parent, Rng& rng) {
    if (parent.size() == 0) throw InvalidParameter("mutation on an empty bit string");
    std::vector<Vertex> flips;
    sample_bernoulli_flips(parent.size(), rng, flips);
    return make_outcome(parent, std::move(flips), MutationKind::StandardFlip);
}

MutationOutcome balanced_flip(const Graph& g, const BitString& parent, Rng& rng) {
    if (parent.size() != g.n()) throw InvalidParameter("bit string length differs from n");
    const auto pick = pick_balanced(g, parent, rng);
    if (pick.u == 0) {
        auto out = make_outcome(parent, {}, MutationKind::BalancedNull);
        out.v = pick.v;
        return out;
    }
    return balanced_swap(g, parent, pick.v, pick.u);
}

MutationOutcome balanced_swap(const Graph& g, const BitString& parent, Vertex v, Vertex u) {
    const auto partners = balanced_partners(g, parent, v);
    if (std::find(partners.begin(), partners.end(), u) == partners.end())
        throw PreconditionError("vertex " + std::to_string(u) + " is not an opposite-valued neighbor of " +
                                std::to_string(v));
    auto out = make_outcome(parent, {v, u}, MutationKind::BalancedFlip);
    out.v = v;
    out.u = u;
    return out;
}

MutationOutcome rls_step(const BitString& parent, Rng& rng) {
    if (parent.size() == 0) throw InvalidParameter("mutation on an empty bit string");
    const auto v = static_cast<Vertex>(uniform_index(rng, parent.size())) + 1;
    auto out = make_outcome(parent, {v}, MutationKind::SingleFlip);
    out.v = v;
    return out;
}

} // namespace vclab
