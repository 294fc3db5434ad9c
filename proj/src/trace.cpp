#include "vclab/trace.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "vclab/error.hpp"
#include "vclab/experiments.hpp"

namespace vclab {

TraceWriter::TraceWriter(std::ostream& out, std::string instance) : out_(&out), instance_(std::move(instance)) {}

void TraceWriter::on_start(const Candidate& initial) {
    *out_ << "# trace instance=" << instance_ << " n=" << initial.bits().size() << '\n';
    *out_ << 0 << ' ' << initial.bits().to_string() << '\n';
}

bool TraceWriter::on_step(const StepEvent& ev) {
    if (ev.accepted && !ev.flipped.empty()) *out_ << ev.t << ' ' << ev.state.bits().to_string() << '\n';
    return true;
}

ShadowTraceWriter::ShadowTraceWriter(std::ostream& out, const Graph& g)
    : out_(&out), graph_(&g), tracker_(g, true) {}

void ShadowTraceWriter::emit(std::uint64_t t, const Candidate& state, bool force) {
    std::ostringstream row;
    row << tracker_.left_ones() << ',' << tracker_.right_ones() << ',' << tracker_.shadow_size() << ','
        << (state.feasible() ? 1 : 0) << ',' << (trap_detect(state.bits(), *graph_) ? 1 : 0);
    auto text = row.str();
    if (!force && text == last_) return;
    *out_ << t << ',' << text << '\n';
    last_ = std::move(text);
}

void ShadowTraceWriter::on_start(const Candidate& initial) {
    tracker_.start(initial.bits());
    *out_ << "t,ones_left,ones_right,shadow_size,feasible,trapped\n";
    emit(0, initial, true);
}

bool ShadowTraceWriter::on_step(const StepEvent& ev) {
    tracker_.step(ev.t, ev.kind, ev.v, ev.flipped, ev.accepted);
    emit(ev.t, ev.state, false);
    return true;
}

Trace read_trace(std::istream& in) {
    Trace trace;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line.front() == '#') {
            if (have_header) continue;
            std::istringstream fields(line.substr(1));
            std::string word;
            fields >> word;
            if (word != "trace") throw ParseError(line_no, "expected '# trace' header");
            while (fields >> word) {
                if (word.rfind("instance=", 0) == 0) trace.instance = word.substr(9);
                else if (word.rfind("n=", 0) == 0) trace.n = static_cast<std::uint32_t>(std::stoul(word.substr(2)));
            }
            if (trace.instance.empty() || trace.n == 0) throw ParseError(line_no, "header needs instance= and n=");
            have_header = true;
            continue;
        }
        if (!have_header) throw ParseError(line_no, "trace data before header");
        std::istringstream fields(line);
        std::uint64_t t = 0;
        std::string bits, extra;
        if (!(fields >> t >> bits) || (fields >> extra)) throw ParseError(line_no, "expected '<t> <bits>'");
        if (!trace.points.empty() && t < trace.points.back().t) throw ParseError(line_no, "time stamps decrease");
        try {
            auto parsed = BitString::parse(bits);
            if (parsed.size() != trace.n) throw ParseError(line_no, "bit string length differs from n");
            trace.points.push_back({t, std::move(parsed)});
        } catch (const InvalidParameter& e) {
            throw ParseError(line_no, e.what());
        }
    }
    if (!have_header) throw ParseError(line_no, "missing '# trace' header");
    return trace;
}

std::string analyze_trace(const Trace& trace) {
    const Graph g = parse_instance(trace.instance);
    if (g.n() != trace.n) throw ValidationError("trace n differs from the instance size");
    std::optional<OptimumInfo> optimum;
    if (auto known = known_opt(g)) optimum = known;
    else if (g.n() <= kBruteForceLimit) optimum = brute_force_min_cover(g);
    const bool odd_path = g.is_path() && g.n() % 2 == 1;

    std::ostringstream out;
    out << "t,ones,uncovered,fitness,level,n_bad_intervals,l,r,b,H\n";
    for (const auto& point : trace.points) {
        const Candidate c(g, point.bits);
        out << point.t << ',' << c.ones() << ',' << c.uncovered() << ',' << c.fitness() << ',';
        if (optimum && c.feasible()) out << level(g, point.bits, *optimum);
        out << ',';
        if (odd_path) {
            const auto report = bad_paths(g.n(), point.bits);
            out << report.intervals.size() << ',';
            if (report.single()) out << report.l() << ',' << report.r() << ',' << report.b() << ',';
            else out << ",,,";
            if (c.feasible()) {
                const auto d = dual(g.n(), point.bits);
                if (d.gap) out << *d.gap;
            }
        } else {
            out << ",,,,";
        }
        out << '\n';
    }
    return out.str();
}

} // namespace vclab
