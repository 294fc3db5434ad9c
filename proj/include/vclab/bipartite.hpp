#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vclab/graph.hpp"
#include "vclab/operators.hpp"
#include "vclab/solution.hpp"

namespace vclab {

/// S_t: a superset tracker of the selected right-partition vertices, driven by
/// attempted (not accepted) mutations. Membership is indexed by vertex id.
struct ShadowState {
    std::vector<std::uint8_t> members;  // size n + 1, only right vertices may be set
    std::uint32_t size = 0;

    bool contains(Vertex v) const noexcept { return members[v] != 0; }
};

/// S_0 = R_0.
ShadowState initial_shadow(const Graph& g, const BitString& bits);

/// Standard attempt with flip set A: S ∪ (A ∩ V_R). Balanced attempt (swap or
/// null) with start vertex v ∈ S: S \ {v}. Anything else leaves S unchanged.
ShadowState shadow_step(const ShadowState& shadow, const MutationOutcome& outcome, const Graph& g);

/// Stopping times on K_{L,R}; absent means "not reached".
struct BipartiteTimes {
    std::optional<std::uint64_t> t_L;        // |V_L ∩ X_t| = L
    std::optional<std::uint64_t> t_R_prime;  // |V_R ∩ X_t| >= R - L
    std::optional<std::uint64_t> t_R;        // V_R ⊆ X_t
    std::optional<std::uint64_t> t_S;        // |S_t| >= R - L (shadow tracking only)
    bool trapped = false;                    // X_t = V_R at some t
    std::optional<std::uint64_t> coupling_violation;    // first t with R_t ⊄ S_t, t <= min{T_L, T'_R}
    std::optional<std::uint64_t> absorption_violation;  // first t breaking the absorbed regime

    /// T_S <= T'_R <= T_R among the finite ones.
    bool ordering_holds() const;
};

/// One observed point of a trajectory: the right-partition selection R_t and
/// the shadow S_t, both as vertex-indexed membership vectors.
struct CouplingSample {
    std::uint64_t t = 0;
    std::vector<std::uint8_t> right_selected;
    ShadowState shadow;
};

struct CouplingResult {
    bool passed = true;
    std::optional<std::uint64_t> first_violation;
};

/// Checks R_t ⊆ S_t for every sample with t <= min{t_L, t_R_prime}.
CouplingResult coupling_check(std::span<const CouplingSample> trajectory,
                              std::optional<std::uint64_t> t_L,
                              std::optional<std::uint64_t> t_R_prime);

/// True iff the bits select exactly the right partition (the local optimum).
bool trap_detect(const BitString& bits, const Graph& g);

/// ceil(multiplier * (c+1) * L^2 * ln((c+1) L)).
std::uint64_t balanced_runtime_budget(std::uint32_t left, double c, double multiplier);

/// Incremental bookkeeping of partition counts, stopping times and, when
/// enabled, the shadow process and its coupling with R_t.
///
/// Feed it the initial state once, then every counted iteration with the
/// attempted flip set and whether it was accepted.
class BipartiteTracker {
public:
    BipartiteTracker(const Graph& g, bool track_shadow);

    void start(const BitString& bits);
    void step(std::uint64_t t, MutationKind kind, Vertex v, std::span<const Vertex> attempted,
              bool accepted);

    const BipartiteTimes& times() const noexcept { return times_; }
    std::uint32_t left_ones() const noexcept { return left_ones_; }
    std::uint32_t right_ones() const noexcept { return right_ones_; }
    bool tracks_shadow() const noexcept { return track_shadow_; }
    std::uint32_t shadow_size() const noexcept { return shadow_.size; }
    const ShadowState& shadow() const noexcept { return shadow_; }

    /// Test hook: empties the shadow to provoke a coupling violation.
    void clear_shadow_for_testing();

private:
    void observe(std::uint64_t t);
    bool is_right(Vertex v) const noexcept { return v > left_; }

    const Graph* graph_;
    std::uint32_t left_;
    std::uint32_t right_;
    bool track_shadow_;
    std::vector<std::uint8_t> selected_;  // X_t by vertex id
    std::uint32_t left_ones_ = 0;
    std::uint32_t right_ones_ = 0;
    ShadowState shadow_;
    std::uint32_t outside_shadow_ = 0;  // |R_t \ S_t|
    bool absorbed_ = false;
    std::uint32_t absorbed_right_ = 0;
    BipartiteTimes times_;
};

} // namespace vclab
