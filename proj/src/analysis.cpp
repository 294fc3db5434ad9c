#include "vclab/analysis.hpp"

#include <algorithm>

#include "vclab/error.hpp"

namespace vclab {

namespace {

bool deviates(Vertex k, bool bit) noexcept { return bit != (k % 2 == 0); }

void require_odd(std::uint32_t n, const BitString& bits) {
    if (n % 2 == 0)
        throw UnsupportedInstance("bad paths are defined for odd path lengths only (unique optimum)");
    if (bits.size() != n) throw InvalidParameter("bit string length differs from n");
}

bool path_feasible(std::uint32_t n, const BitString& bits) {
    for (Vertex k = 1; k < n; ++k)
        if (!bits.test(k) && !bits.test(k + 1)) return false;
    return true;
}

} // namespace

BadPathReport bad_paths(std::uint32_t n, const BitString& bits) {
    require_odd(n, bits);
    BadPathReport report;
    Vertex k = 1;
    while (k <= n) {
        if (!deviates(k, bits.test(k))) {
            ++k;
            continue;
        }
        const Vertex start = k;
        while (k <= n && deviates(k, bits.test(k))) ++k;
        report.intervals.push_back({start, k - 1});
    }
    return report;
}

std::string DualState::to_string() const {
    std::string s;
    for (auto b : dual_bits) s += b ? '1' : '0';
    return s;
}

DualState dual(std::uint32_t n, const BitString& bits) {
    require_odd(n, bits);
    if (!path_feasible(n, bits)) throw PreconditionError("dual state requires a feasible string");
    const std::uint32_t half = (n - 1) / 2;
    DualState d;
    d.dual_bits.assign(std::size_t{half} + 2, 0);
    d.dual_bits[0] = bits.test(1);
    d.dual_bits[half + 1] = bits.test(n);
    for (std::uint32_t i = 1; i <= half; ++i)
        d.dual_bits[i] = bits.test(2 * i) && (bits.test(2 * i - 1) || bits.test(2 * i + 1));

    std::optional<std::size_t> last;
    for (std::size_t i = 0; i < d.dual_bits.size(); ++i) {
        if (!d.dual_bits[i]) continue;
        if (last) {
            const auto run = static_cast<std::uint32_t>(i - *last - 1);
            d.gap = d.gap ? std::max(*d.gap, run) : run;
        }
        last = i;
    }
    return d;
}

Rational relative_bad_path_length(std::uint32_t n, const BitString& bits) {
    const auto report = bad_paths(n, bits);
    if (report.intervals.empty()) return {0, 1};
    if (report.intervals.size() > 1) {
        const auto opt = (n - 1) / 2;
        if (path_feasible(n, bits) && bits.count() == opt + 1)
            throw InvariantViolation("several bad paths at fitness OPT+1");
    }
    std::uint32_t longest = 0;
    for (const auto& iv : report.intervals) longest = std::max(longest, iv.length());
    return {longest, n};
}

EndpointTrace endpoint_trace(std::uint32_t n, std::span<const TracePoint> trajectory) {
    EndpointTrace trace;
    for (const auto& point : trajectory) {
        const auto report = bad_paths(n, point.bits);
        if (report.intervals.size() > 1) {
            trace.truncated = true;
            trace.truncated_at = point.t;
            break;
        }
        if (report.single()) {
            if (!trace.midpoint) trace.midpoint = report.l() + (report.r() - report.l()) / 2.0;
            trace.samples.push_back({point.t, report.l(), report.r(), report.b()});
        } else {
            const auto m = static_cast<std::uint32_t>(trace.midpoint.value_or((n + 1) / 2.0));
            trace.samples.push_back({point.t, m, m, 0});
        }
    }
    return trace;
}

EndpointTransitionCounter::EndpointTransitionCounter(std::uint32_t n, std::uint32_t min_left,
                                                     std::uint32_t min_width)
    : n_(n), min_left_(min_left), min_width_(min_width) {
    if (n % 2 == 0) throw UnsupportedInstance("endpoint transitions need an odd path");
}

void EndpointTransitionCounter::refresh(const BitString& bits, bool feasible) {
    in_regime_ = false;
    if (!feasible) return;
    const auto report = bad_paths(n_, bits);
    if (!report.single()) return;
    l_ = report.l();
    r_ = report.r();
    in_regime_ = l_ >= min_left_ && r_ - l_ >= min_width_;
}

void EndpointTransitionCounter::on_start(const Candidate& initial) {
    refresh(initial.bits(), initial.feasible());
}

bool EndpointTransitionCounter::on_step(const StepEvent& ev) {
    const bool changed = ev.accepted && !ev.flipped.empty();
    if (in_regime_) {
        ++measured_;
        if (changed) {
            const auto report = bad_paths(n_, ev.state.bits());
            if (!report.single()) {
                ++left_jump_;
            } else {
                const auto nl = static_cast<std::int64_t>(report.l());
                const auto nr = static_cast<std::int64_t>(report.r());
                const auto dl = nl - static_cast<std::int64_t>(l_);
                const auto dr = nr - static_cast<std::int64_t>(r_);
                if (dl == 2) ++left_up_;
                else if (dl == -2) ++left_down_;
                else if (dl != 0) ++left_jump_;
                if (dr == 2) ++right_up_;
                else if (dr == -2) ++right_down_;
            }
        }
    }
    if (changed) refresh(ev.state.bits(), ev.state.feasible());
    return true;
}

FirstLevelOneProbe::FirstLevelOneProbe(std::uint32_t n) : n_(n), opt_((n - 1) / 2) {
    if (n % 2 == 0) throw UnsupportedInstance("bad-path probe needs an odd path");
}

bool FirstLevelOneProbe::check(std::uint64_t t, const Candidate& state) {
    if (done() || !state.feasible()) return !done();
    if (state.ones() == opt_ + 1) {
        length_ = relative_bad_path_length(n_, state.bits());
        time_ = t;
    } else if (state.ones() == opt_) {
        skipped_ = true;
        time_ = t;
    }
    return !done();
}

void FirstLevelOneProbe::on_start(const Candidate& initial) { check(0, initial); }

bool FirstLevelOneProbe::on_step(const StepEvent& ev) { return check(ev.t, ev.state); }

} // namespace vclab
