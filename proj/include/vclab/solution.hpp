#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vclab/graph.hpp"

namespace vclab {

/// Membership vector over vertices 1..n. Serialized as an ASCII 0/1 string
/// with vertex 1 first.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::uint32_t n, bool value = false) : bits_(n, value ? 1 : 0) {}

    static BitString parse(std::string_view text);
    std::string to_string() const;

    std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(bits_.size()); }
    bool test(Vertex v) const noexcept { return bits_[v - 1] != 0; }
    void set(Vertex v, bool value) noexcept { bits_[v - 1] = value ? 1 : 0; }
    void flip(Vertex v) noexcept { bits_[v - 1] ^= 1; }
    std::uint32_t count() const noexcept;

    friend bool operator==(const BitString&, const BitString&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

std::uint64_t uncovered_edges(const Graph& g, const BitString& bits);
std::uint64_t fitness(const Graph& g, const BitString& bits);
bool is_feasible(const Graph& g, const BitString& bits);

struct OptimumInfo {
    std::uint32_t size = 0;
    std::optional<bool> unique;
    std::optional<BitString> witness;
};

/// |X|_1 - OPT. Negative values are legal for infeasible candidates.
std::int64_t level(const Graph& g, const BitString& bits, const OptimumInfo& opt);

/// Closed-form optimum for paths and complete bipartite graphs; nullopt for
/// general graphs.
std::optional<OptimumInfo> known_opt(const Graph& g);

inline constexpr std::uint32_t kBruteForceLimit = 24;

/// Exhaustive enumeration of all 2^n subsets. Throws ResourceGuard for
/// n > kBruteForceLimit.
OptimumInfo brute_force_min_cover(const Graph& g);

/// A bit string with its fitness terms maintained incrementally.
///
/// Flipping vertex v touches only the edges incident to v, so a mutation
/// flipping k bits costs O(sum of their degrees). Flipping the same set twice
/// restores the previous state exactly, which is how rejected offspring are
/// rolled back.
class Candidate {
public:
    Candidate(const Graph& g, BitString bits);

    const BitString& bits() const noexcept { return bits_; }
    std::uint32_t ones() const noexcept { return ones_; }
    std::uint64_t uncovered() const noexcept { return uncovered_; }
    std::uint64_t fitness() const noexcept {
        return ones_ + (std::uint64_t{graph_->n()} + 1) * uncovered_;
    }
    bool feasible() const noexcept { return uncovered_ == 0; }
    const Graph& graph() const noexcept { return *graph_; }

    void flip(Vertex v) noexcept;
    void flip(std::span<const Vertex> vertices) noexcept {
        for (auto v : vertices) flip(v);
    }

private:
    const Graph* graph_;
    BitString bits_;
    std::uint32_t ones_ = 0;
    std::uint64_t uncovered_ = 0;
};

} // namespace vclab
