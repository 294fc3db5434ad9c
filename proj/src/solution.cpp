#include "vclab/solution.hpp"

#include <algorithm>
#include <bit>

#include "vclab/error.hpp"

namespace vclab {

namespace {

void check_length(const Graph& g, const BitString& bits) {
    if (bits.size() != g.n())
        throw InvalidParameter("bit string has length " + std::to_string(bits.size()) +
                               ", graph has " + std::to_string(g.n()) + " vertices");
}

} // namespace

BitString BitString::parse(std::string_view text) {
    BitString out(static_cast<std::uint32_t>(text.size()));
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '0' && text[i] != '1')
            throw InvalidParameter("bit strings contain only 0 and 1");
        out.bits_[i] = text[i] == '1' ? 1 : 0;
    }
    return out;
}

std::string BitString::to_string() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) s[i] = '1';
    return s;
}

std::uint32_t BitString::count() const noexcept {
    return static_cast<std::uint32_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::uint64_t uncovered_edges(const Graph& g, const BitString& bits) {
    check_length(g, bits);
    std::uint64_t count = 0;
    for (const auto& e : g.edges())
        if (!bits.test(e.u) && !bits.test(e.v)) ++count;
    return count;
}

std::uint64_t fitness(const Graph& g, const BitString& bits) {
    return bits.count() + (std::uint64_t{g.n()} + 1) * uncovered_edges(g, bits);
}

bool is_feasible(const Graph& g, const BitString& bits) { return uncovered_edges(g, bits) == 0; }

std::int64_t level(const Graph& g, const BitString& bits, const OptimumInfo& opt) {
    check_length(g, bits);
    return static_cast<std::int64_t>(bits.count()) - static_cast<std::int64_t>(opt.size);
}

std::optional<OptimumInfo> known_opt(const Graph& g) {
    const auto n = g.n();
    if (g.is_path()) {
        BitString witness(n);
        for (Vertex v = 2; v <= n; v += 2) witness.set(v, true);
        if (n % 2 == 1) return OptimumInfo{(n - 1) / 2, true, witness};
        return OptimumInfo{n / 2, false, witness};
    }
    if (const auto* kb = g.bipartite()) {
        BitString witness(n);
        if (kb->left <= kb->right) {
            for (Vertex v = 1; v <= kb->left; ++v) witness.set(v, true);
        } else {
            for (Vertex v = kb->left + 1; v <= n; ++v) witness.set(v, true);
        }
        return OptimumInfo{std::min(kb->left, kb->right), kb->left != kb->right, witness};
    }
    return std::nullopt;
}

OptimumInfo brute_force_min_cover(const Graph& g) {
    const auto n = g.n();
    if (n > kBruteForceLimit)
        throw ResourceGuard("brute force enumeration limited to n <= " +
                            std::to_string(kBruteForceLimit));
    std::vector<std::uint32_t> edge_masks;
    edge_masks.reserve(g.edge_count());
    for (const auto& e : g.edges())
        edge_masks.push_back((1u << (e.u - 1)) | (1u << (e.v - 1)));

    std::uint32_t best = n + 1;
    std::uint32_t best_mask = 0;
    std::uint64_t ties = 0;
    const std::uint32_t limit = 1u << n;
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        const auto size = static_cast<std::uint32_t>(std::popcount(mask));
        if (size > best) continue;
        const bool covers = std::all_of(edge_masks.begin(), edge_masks.end(),
                                        [mask](std::uint32_t em) { return (em & mask) != 0; });
        if (!covers) continue;
        if (size < best) {
            best = size;
            best_mask = mask;
            ties = 1;
        } else {
            ++ties;
        }
    }
    BitString witness(n);
    for (Vertex v = 1; v <= n; ++v) witness.set(v, (best_mask >> (v - 1)) & 1u);
    return OptimumInfo{best, ties == 1, witness};
}

Candidate::Candidate(const Graph& g, BitString bits) : graph_(&g), bits_(std::move(bits)) {
    check_length(g, bits_);
    ones_ = bits_.count();
    uncovered_ = uncovered_edges(g, bits_);
}

void Candidate::flip(Vertex v) noexcept {
    std::uint64_t open = 0;
    for (auto w : graph_->neighbors(v))
        if (!bits_.test(w)) ++open;
    if (bits_.test(v)) {
        --ones_;
        uncovered_ += open;
    } else {
        ++ones_;
        uncovered_ -= open;
    }
    bits_.flip(v);
}

} // namespace vclab
