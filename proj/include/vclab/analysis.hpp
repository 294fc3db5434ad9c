#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vclab/engine.hpp"
#include "vclab/rational.hpp"
#include "vclab/solution.hpp"

namespace vclab {

// Trajectory analysis on odd-length paths, whose unique minimum cover is the
// set of even-indexed vertices. A vertex "deviates" when its bit differs
// from that parity pattern.

struct Interval {
    std::uint32_t left = 0;
    std::uint32_t right = 0;

    std::uint32_t length() const noexcept { return right - left + 1; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// B(X): maximal runs of deviating vertices, sorted and disjoint.
struct BadPathReport {
    std::vector<Interval> intervals;

    bool single() const noexcept { return intervals.size() == 1; }
    std::uint32_t l() const { return intervals.at(0).left; }
    std::uint32_t r() const { return intervals.at(0).right; }
    std::uint32_t b() const { return r() - l(); }
};

/// Throws UnsupportedInstance for even n.
BadPathReport bad_paths(std::uint32_t n, const BitString& bits);

/// The compressed particle picture of a feasible path state.
struct DualState {
    std::vector<std::uint8_t> dual_bits;  // indices 0..(n+1)/2
    std::optional<std::uint32_t> gap;     // H; absent with fewer than two particles

    std::string to_string() const;
};

/// Requires odd n and a feasible string (PreconditionError otherwise).
/// Irreducibility is the caller's responsibility.
DualState dual(std::uint32_t n, const BitString& bits);

/// Length of the bad path divided by n; 0 when there is none. With several
/// bad paths the longest one is reported, except at fitness OPT+1 where more
/// than one is an InvariantViolation.
Rational relative_bad_path_length(std::uint32_t n, const BitString& bits);

struct TracePoint {
    std::uint64_t t = 0;
    BitString bits;
};

struct EndpointSample {
    std::uint64_t t = 0;
    std::uint32_t l = 0;
    std::uint32_t r = 0;
    std::uint32_t b = 0;
};

struct EndpointTrace {
    std::vector<EndpointSample> samples;
    bool truncated = false;                     // a multi-interval state was met
    std::optional<std::uint64_t> truncated_at;  // its time stamp
    std::optional<double> midpoint;             // m = l_0 + (r_0 - l_0)/2
};

/// (t, l, r, b) along a feasible single-bad-path trajectory. After the bad
/// path vanishes l = r = m. Stops at the first state with several bad paths.
/// m can be a half-integer; l and r are then rounded down.
EndpointTrace endpoint_trace(std::uint32_t n, std::span<const TracePoint> trajectory);

/// Counts endpoint moves of the single bad path over counted iterations of a
/// run on an odd path.
///
/// An iteration is measured when the parent state is feasible, has exactly
/// one bad path with l >= min_left and r - l >= min_width. The counts give
/// empirical transition probabilities for l(X_t) and r(X_t).
class EndpointTransitionCounter : public RunObserver {
public:
    EndpointTransitionCounter(std::uint32_t n, std::uint32_t min_left = 3, std::uint32_t min_width = 8);

    void on_start(const Candidate& initial) override;
    bool on_step(const StepEvent& event) override;

    std::uint64_t measured() const noexcept { return measured_; }
    std::uint64_t left_up() const noexcept { return left_up_; }
    std::uint64_t left_down() const noexcept { return left_down_; }
    std::uint64_t left_jump() const noexcept { return left_jump_; }
    std::uint64_t right_up() const noexcept { return right_up_; }
    std::uint64_t right_down() const noexcept { return right_down_; }

private:
    void refresh(const BitString& bits, bool feasible);

    std::uint32_t n_;
    std::uint32_t min_left_;
    std::uint32_t min_width_;
    bool in_regime_ = false;
    std::uint32_t l_ = 0;
    std::uint32_t r_ = 0;
    std::uint64_t measured_ = 0;
    std::uint64_t left_up_ = 0, left_down_ = 0, left_jump_ = 0;
    std::uint64_t right_up_ = 0, right_down_ = 0;
};

/// Records relative_bad_path_length at the first state with fitness OPT+1 and
/// stops the run there, or flags a skip when level 0 is reached first.
class FirstLevelOneProbe : public RunObserver {
public:
    explicit FirstLevelOneProbe(std::uint32_t n);

    void on_start(const Candidate& initial) override;
    bool on_step(const StepEvent& event) override;

    bool done() const noexcept { return length_.has_value() || skipped_; }
    bool skipped() const noexcept { return skipped_; }
    std::optional<Rational> length() const noexcept { return length_; }
    std::optional<std::uint64_t> time() const noexcept { return time_; }

private:
    bool check(std::uint64_t t, const Candidate& state);

    std::uint32_t n_;
    std::uint32_t opt_;
    bool skipped_ = false;
    std::optional<Rational> length_;
    std::optional<std::uint64_t> time_;
};

} // namespace vclab
