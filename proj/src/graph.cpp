#include "vclab/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "vclab/error.hpp"
#include "vclab/rng.hpp"

namespace vclab {

namespace {

void check_kind(std::uint32_t n, const std::vector<Edge>& edges, const InstanceKind& kind) {
    if (std::holds_alternative<PathKind>(kind)) {
        if (n == 0) throw ValidationError("path needs at least one vertex");
        if (edges.size() != n - 1) throw ValidationError("path edge count mismatch");
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (edges[i].u != i + 1 || edges[i].v != i + 2)
                throw ValidationError("path edges must be {i, i+1}");
        }
    } else if (const auto* kb = std::get_if<CompleteBipartiteKind>(&kind)) {
        if (kb->left == 0 || kb->right == 0) throw ValidationError("empty bipartite side");
        if (n != kb->left + kb->right) throw ValidationError("bipartite vertex count mismatch");
        if (edges.size() != std::size_t{kb->left} * kb->right)
            throw ValidationError("bipartite edge count mismatch");
        for (const auto& e : edges) {
            if (!(e.u <= kb->left && e.v > kb->left))
                throw ValidationError("bipartite edge does not cross the partition");
        }
    }
}

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
    std::uint64_t value = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc{} || ptr != end || s.empty())
        throw InvalidParameter("bad " + std::string(what) + ": '" + std::string(s) + "'");
    return value;
}

std::uint32_t parse_u32(std::string_view s, std::string_view what) {
    const auto v = parse_u64(s, what);
    if (v > UINT32_MAX) throw InvalidParameter(std::string(what) + " out of range");
    return static_cast<std::uint32_t>(v);
}

} // namespace

Graph::Graph(std::uint32_t n, std::vector<Edge> edges, InstanceKind kind)
    : n_(n), edges_(std::move(edges)), kind_(kind) {
    for (auto& e : edges_) {
        if (e.u == e.v) throw ValidationError("self-loop at vertex " + std::to_string(e.u));
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.u < 1 || e.v > n_)
            throw ValidationError("edge endpoint outside 1.." + std::to_string(n_));
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw ValidationError("duplicate edge");
    check_kind(n_, edges_, kind_);

    offsets_.assign(std::size_t{n_} + 2, 0);
    for (const auto& e : edges_) {
        ++offsets_[e.u + 1];
        ++offsets_[e.v + 1];
    }
    for (std::size_t v = 1; v < offsets_.size(); ++v) offsets_[v] += offsets_[v - 1];
    adjacency_.resize(edges_.size() * 2);
    auto fill = offsets_;
    for (const auto& e : edges_) {
        adjacency_[fill[e.u]++] = e.v;
        adjacency_[fill[e.v]++] = e.u;
    }
}

std::string Graph::describe() const {
    if (is_path()) return "path:" + std::to_string(n_);
    if (const auto* kb = bipartite())
        return "bipartite:" + std::to_string(kb->left) + "x" + std::to_string(kb->right);
    return "general:" + std::to_string(n_);
}

Graph make_path(std::uint32_t n) {
    if (n == 0) throw InvalidParameter("path length must be positive");
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    for (Vertex i = 1; i < n; ++i) edges.push_back({i, i + 1});
    return Graph(n, std::move(edges), PathKind{});
}

Graph make_complete_bipartite(std::uint32_t left, std::uint32_t right) {
    if (left == 0 || right == 0) throw InvalidParameter("bipartite sides must be positive");
    std::vector<Edge> edges;
    edges.reserve(std::size_t{left} * right);
    for (Vertex u = 1; u <= left; ++u)
        for (Vertex v = left + 1; v <= left + right; ++v) edges.push_back({u, v});
    return Graph(left + right, std::move(edges), CompleteBipartiteKind{left, right});
}

Graph make_random_graph(std::uint32_t n, double p, std::uint64_t seed) {
    if (n == 0) throw InvalidParameter("random graph needs at least one vertex");
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("edge probability outside [0,1]");
    Rng rng(splitmix64(seed));
    std::vector<Edge> edges;
    for (Vertex u = 1; u <= n; ++u)
        for (Vertex v = u + 1; v <= n; ++v)
            if (uniform01(rng) < p) edges.push_back({u, v});
    return Graph(n, std::move(edges), GeneralKind{});
}

Graph load_edge_list(std::istream& in) {
    std::vector<Edge> edges;
    std::uint32_t n = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string a, b, extra;
        if (!(fields >> a)) continue;
        if (!(fields >> b) || (fields >> extra))
            throw ParseError(line_no, "expected two vertex indices");
        std::uint32_t u = 0, v = 0;
        try {
            u = parse_u32(a, "vertex");
            v = parse_u32(b, "vertex");
        } catch (const InvalidParameter& e) {
            throw ParseError(line_no, e.what());
        }
        if (u == 0 || v == 0) throw ParseError(line_no, "vertex indices are 1-based");
        if (u == v) throw ValidationError("line " + std::to_string(line_no) + ": self-loop");
        if (u > v) std::swap(u, v);
        edges.push_back({u, v});
        n = std::max(n, v);
    }
    if (edges.empty()) throw ValidationError("edge list contains no edges");
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Graph(n, std::move(edges), GeneralKind{});
}

Graph load_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    return load_edge_list(in);
}

std::string to_edge_list(const Graph& g) {
    std::string out;
    for (const auto& e : g.edges()) {
        out += std::to_string(e.u);
        out += ' ';
        out += std::to_string(e.v);
        out += '\n';
    }
    return out;
}

Graph parse_instance(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos)
        throw InvalidParameter("instance spec needs '<kind>:<args>': " + std::string(spec));
    const auto kind = spec.substr(0, colon);
    const auto args = spec.substr(colon + 1);
    if (kind == "path") return make_path(parse_u32(args, "path length"));
    if (kind == "bipartite") {
        const auto x = args.find('x');
        if (x == std::string_view::npos) throw InvalidParameter("bipartite spec is <L>x<R>");
        return make_complete_bipartite(parse_u32(args.substr(0, x), "L"),
                                       parse_u32(args.substr(x + 1), "R"));
    }
    if (kind == "file") {
        std::ifstream in{std::string(args)};
        if (!in) throw InvalidParameter("cannot open edge list " + std::string(args));
        return load_edge_list(in);
    }
    if (kind == "gnp") {
        const auto c1 = args.find(':');
        const auto c2 = args.find(':', c1 == std::string_view::npos ? c1 : c1 + 1);
        if (c1 == std::string_view::npos || c2 == std::string_view::npos)
            throw InvalidParameter("gnp spec is <n>:<p>:<seed>");
        double p = 0;
        const auto ps = std::string(args.substr(c1 + 1, c2 - c1 - 1));
        try {
            std::size_t used = 0;
            p = std::stod(ps, &used);
            if (used != ps.size()) throw std::invalid_argument(ps);
        } catch (const std::exception&) {
            throw InvalidParameter("bad edge probability '" + ps + "'");
        }
        return make_random_graph(parse_u32(args.substr(0, c1), "n"), p,
                                 parse_u64(args.substr(c2 + 1), "seed"));
    }
    throw InvalidParameter("unknown instance kind '" + std::string(kind) + "'");
}

} // namespace vclab
