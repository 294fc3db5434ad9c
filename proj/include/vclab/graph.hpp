#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vclab/rational.hpp"

namespace vclab {

/// Vertex identifiers are 1-based: a graph on n vertices uses 1..n.
using Vertex = std::uint32_t;

/// Undirected edge, stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct PathKind {
    friend bool operator==(const PathKind&, const PathKind&) = default;
};

/// Left partition is 1..left, right partition is left+1..left+right.
struct CompleteBipartiteKind {
    std::uint32_t left = 0;
    std::uint32_t right = 0;

    Rational ratio() const { return {right, left}; }
    friend bool operator==(const CompleteBipartiteKind&, const CompleteBipartiteKind&) = default;
};

struct GeneralKind {
    friend bool operator==(const GeneralKind&, const GeneralKind&) = default;
};

using InstanceKind = std::variant<PathKind, CompleteBipartiteKind, GeneralKind>;

/// Immutable undirected simple graph. Safe to share between concurrent runs.
class Graph {
public:
    /// Validates the edge set against `kind`; throws ValidationError on
    /// self-loops, duplicates, out-of-range endpoints or a kind mismatch.
    Graph(std::uint32_t n, std::vector<Edge> edges, InstanceKind kind);

    std::uint32_t n() const noexcept { return n_; }
    std::span<const Edge> edges() const noexcept { return edges_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    std::span<const Vertex> neighbors(Vertex v) const noexcept {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }
    std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

    const InstanceKind& kind() const noexcept { return kind_; }
    bool is_path() const noexcept { return std::holds_alternative<PathKind>(kind_); }
    const CompleteBipartiteKind* bipartite() const noexcept {
        return std::get_if<CompleteBipartiteKind>(&kind_);
    }

    /// Canonical instance spec ("path:11", "bipartite:8x24", "general:<n>").
    std::string describe() const;

private:
    std::uint32_t n_;
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> offsets_;  // CSR, indexed by vertex 0..n+1
    std::vector<Vertex> adjacency_;
    InstanceKind kind_;
};

Graph make_path(std::uint32_t n);
Graph make_complete_bipartite(std::uint32_t left, std::uint32_t right);

/// Erdős–Rényi G(n, p) drawn from a seeded stream; kind is General.
Graph make_random_graph(std::uint32_t n, double p, std::uint64_t seed);

/// Reads "u v" pairs, one per line; '#' starts a comment. Duplicate edges are
/// merged and n is the largest index seen.
Graph load_edge_list(std::istream& in);
Graph load_edge_list(std::string_view text);

/// Inverse of load_edge_list on the edge set.
std::string to_edge_list(const Graph& g);

/// Parses `path:<n>`, `bipartite:<L>x<R>`, `file:<path>` and
/// `gnp:<n>:<p>:<seed>`.
Graph parse_instance(std::string_view spec);

} // namespace vclab
