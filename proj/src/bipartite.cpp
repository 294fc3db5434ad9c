#include "vclab/bipartite.hpp"

#include <cmath>

#include "vclab/error.hpp"

namespace vclab {

namespace {

const CompleteBipartiteKind& require_bipartite(const Graph& g) {
    const auto* kb = g.bipartite();
    if (kb == nullptr) throw UnsupportedInstance("operation requires a complete bipartite instance");
    return *kb;
}

bool window_open(std::uint64_t t, const BipartiteTimes& times) {
    return !(times.t_L && *times.t_L < t) && !(times.t_R_prime && *times.t_R_prime < t);
}

} // namespace

ShadowState initial_shadow(const Graph& g, const BitString& bits) {
    const auto& kb = require_bipartite(g);
    ShadowState s;
    s.members.assign(std::size_t{g.n()} + 1, 0);
    for (Vertex v = kb.left + 1; v <= g.n(); ++v) {
        if (bits.test(v)) {
            s.members[v] = 1;
            ++s.size;
        }
    }
    return s;
}

ShadowState shadow_step(const ShadowState& shadow, const MutationOutcome& outcome, const Graph& g) {
    const auto& kb = require_bipartite(g);
    ShadowState next = shadow;
    switch (outcome.kind) {
        case MutationKind::StandardFlip:
        case MutationKind::SingleFlip:
            for (auto w : outcome.flipped) {
                if (w > kb.left && !next.members[w]) {
                    next.members[w] = 1;
                    ++next.size;
                }
            }
            break;
        case MutationKind::BalancedFlip:
        case MutationKind::BalancedNull:
            if (next.members[outcome.v]) {
                next.members[outcome.v] = 0;
                --next.size;
            }
            break;
    }
    return next;
}

bool BipartiteTimes::ordering_holds() const {
    if (t_S && t_R_prime && *t_S > *t_R_prime) return false;
    if (t_R_prime && t_R && *t_R_prime > *t_R) return false;
    return true;
}

CouplingResult coupling_check(std::span<const CouplingSample> trajectory,
                              std::optional<std::uint64_t> t_L,
                              std::optional<std::uint64_t> t_R_prime) {
    BipartiteTimes bounds;
    bounds.t_L = t_L;
    bounds.t_R_prime = t_R_prime;
    for (const auto& sample : trajectory) {
        if (!window_open(sample.t, bounds)) continue;
        for (std::size_t v = 0; v < sample.right_selected.size(); ++v) {
            if (sample.right_selected[v] && !sample.shadow.members[v])
                return {false, sample.t};
        }
    }
    return {};
}

bool trap_detect(const BitString& bits, const Graph& g) {
    const auto& kb = require_bipartite(g);
    for (Vertex v = 1; v <= g.n(); ++v)
        if (bits.test(v) != (v > kb.left)) return false;
    return true;
}

std::uint64_t balanced_runtime_budget(std::uint32_t left, double c, double multiplier) {
    if (left == 0) throw InvalidParameter("L must be positive");
    if (!(c > 0)) throw InvalidParameter("ratio c must be positive");
    if (!(multiplier > 0)) throw InvalidParameter("budget multiplier must be positive");
    const double right = c * left;
    if (std::abs(right - std::round(right)) > 1e-9) throw InvalidParameter("c * L must be integral");
    const double n = (c + 1.0) * left;
    return static_cast<std::uint64_t>(std::ceil(multiplier * (c + 1.0) * left * left * std::log(n)));
}

BipartiteTracker::BipartiteTracker(const Graph& g, bool track_shadow)
    : graph_(&g), left_(require_bipartite(g).left), right_(require_bipartite(g).right),
      track_shadow_(track_shadow) {}

void BipartiteTracker::start(const BitString& bits) {
    selected_.assign(std::size_t{graph_->n()} + 1, 0);
    left_ones_ = right_ones_ = 0;
    for (Vertex v = 1; v <= graph_->n(); ++v) {
        if (!bits.test(v)) continue;
        selected_[v] = 1;
        if (is_right(v)) ++right_ones_;
        else ++left_ones_;
    }
    if (track_shadow_) shadow_ = initial_shadow(*graph_, bits);
    outside_shadow_ = 0;
    absorbed_ = false;
    times_ = {};
    observe(0);
}

void BipartiteTracker::step(std::uint64_t t, MutationKind kind, Vertex v,
                            std::span<const Vertex> attempted, bool accepted) {
    if (track_shadow_) {
        if (kind == MutationKind::StandardFlip || kind == MutationKind::SingleFlip) {
            for (auto w : attempted) {
                if (is_right(w) && !shadow_.members[w]) {
                    shadow_.members[w] = 1;
                    ++shadow_.size;
                    if (selected_[w]) --outside_shadow_;
                }
            }
        } else if (shadow_.members[v]) {
            shadow_.members[v] = 0;
            --shadow_.size;
            if (selected_[v]) ++outside_shadow_;
        }
    }
    if (accepted) {
        for (auto w : attempted) {
            selected_[w] ^= 1;
            const bool on = selected_[w] != 0;
            if (is_right(w)) {
                on ? ++right_ones_ : --right_ones_;
                if (track_shadow_ && !shadow_.members[w]) on ? ++outside_shadow_ : --outside_shadow_;
            } else {
                on ? ++left_ones_ : --left_ones_;
            }
        }
    }
    observe(t);
}

void BipartiteTracker::clear_shadow_for_testing() {
    for (Vertex v = left_ + 1; v <= graph_->n(); ++v) {
        if (shadow_.members[v] && selected_[v]) ++outside_shadow_;
        shadow_.members[v] = 0;
    }
    shadow_.size = 0;
}

void BipartiteTracker::observe(std::uint64_t t) {
    const auto gap = static_cast<std::int64_t>(right_) - static_cast<std::int64_t>(left_);
    if (!times_.t_L && left_ones_ == left_) times_.t_L = t;
    if (!times_.t_R_prime && static_cast<std::int64_t>(right_ones_) >= gap) times_.t_R_prime = t;
    if (!times_.t_R && right_ones_ == right_) times_.t_R = t;
    if (left_ones_ == 0 && right_ones_ == right_) times_.trapped = true;
    if (track_shadow_) {
        if (!times_.t_S && static_cast<std::int64_t>(shadow_.size) >= gap) times_.t_S = t;
        if (outside_shadow_ > 0 && !times_.coupling_violation && window_open(t, times_))
            times_.coupling_violation = t;
    }
    if (absorbed_) {
        if (left_ones_ < left_ || right_ones_ > absorbed_right_) {
            if (!times_.absorption_violation) times_.absorption_violation = t;
        }
        absorbed_right_ = right_ones_;
    } else if (left_ones_ == left_ && static_cast<std::int64_t>(right_ones_) < gap) {
        absorbed_ = true;
        absorbed_right_ = right_ones_;
    }
}

} // namespace vclab
