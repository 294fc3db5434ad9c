#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vclab/analysis.hpp"
#include "vclab/bipartite.hpp"
#include "vclab/engine.hpp"

namespace vclab {

// Trace file format:
//   # trace instance=<spec> n=<n>
//   <t> <bits>
// with one line for t = 0 and one per accepted change of the current state.

class TraceWriter : public RunObserver {
public:
    TraceWriter(std::ostream& out, std::string instance);

    void on_start(const Candidate& initial) override;
    bool on_step(const StepEvent& event) override;

private:
    std::ostream* out_;
    std::string instance_;
};

/// CSV (t, ones_left, ones_right, shadow_size, feasible, trapped) on K_{L,R}.
/// A row is written at t = 0 and whenever any column other than t changes.
class ShadowTraceWriter : public RunObserver {
public:
    ShadowTraceWriter(std::ostream& out, const Graph& g);

    void on_start(const Candidate& initial) override;
    bool on_step(const StepEvent& event) override;

private:
    void emit(std::uint64_t t, const Candidate& state, bool force);

    std::ostream* out_;
    const Graph* graph_;
    BipartiteTracker tracker_;
    std::string last_;
};

struct Trace {
    std::string instance;
    std::uint32_t n = 0;
    std::vector<TracePoint> points;
};

/// Throws ParseError with the offending line number.
Trace read_trace(std::istream& in);

/// CSV with columns t, ones, uncovered, fitness, level, n_bad_intervals, l, r,
/// b, H. Columns that do not apply to the instance or state are left empty.
std::string analyze_trace(const Trace& trace);

} // namespace vclab
