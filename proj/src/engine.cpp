#include "vclab/engine.hpp"

#include <limits>
#include <random>
#include <vector>

#include "vclab/error.hpp"

namespace vclab {

std::string_view to_string(Algorithm algo) {
    switch (algo) {
        case Algorithm::EA: return "ea";
        case Algorithm::BalancedEA: return "balanced";
        case Algorithm::RLS: return "rls";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view name) {
    if (name == "ea") return Algorithm::EA;
    if (name == "balanced") return Algorithm::BalancedEA;
    if (name == "rls") return Algorithm::RLS;
    throw InvalidParameter("unknown algorithm '" + std::string(name) + "' (ea|balanced|rls)");
}

BitString random_bits(std::uint32_t n, Rng& rng) {
    BitString bits(n);
    for (Vertex v = 1; v <= n; ++v) bits.set(v, (rng() >> 63) != 0);
    return bits;
}

namespace {

nlohmann::json optional_json(const std::optional<std::uint64_t>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

} // namespace

nlohmann::json to_json(const RunRecord& r) {
    nlohmann::json j;
    j["seed"] = r.seed;
    j["algorithm"] = std::string(to_string(r.algorithm));
    j["instance"] = r.instance;
    j["iterations"] = r.iterations;
    j["t_feasible"] = optional_json(r.t_feasible);
    j["t_optimal"] = optional_json(r.t_optimal);
    auto occupancy = nlohmann::json::object();
    for (const auto& [lvl, count] : r.level_occupancy) occupancy[std::to_string(lvl)] = count;
    j["level_occupancy"] = occupancy;
    j["terminal"] = {{"bits", r.terminal.to_string()},
                     {"ones", r.terminal_ones},
                     {"uncovered", r.terminal_uncovered},
                     {"fitness", r.terminal_fitness}};
    j["budget_exhausted"] = r.budget_exhausted;
    j["stopped_by_observer"] = r.stopped_by_observer;
    if (r.bipartite_times) {
        const auto& b = *r.bipartite_times;
        j["bipartite_times"] = {{"t_L", optional_json(b.t_L)},
                                {"t_R_prime", optional_json(b.t_R_prime)},
                                {"t_R", optional_json(b.t_R)},
                                {"t_S", optional_json(b.t_S)},
                                {"coupling_violation", optional_json(b.coupling_violation)},
                                {"absorption_violation", optional_json(b.absorption_violation)}};
    } else {
        j["bipartite_times"] = nullptr;
    }
    j["trapped"] = r.trapped ? nlohmann::json(*r.trapped) : nlohmann::json(nullptr);
    return j;
}

RunRecord run(Algorithm algo, const Graph& g, const RunOptions& options, Rng& rng,
              std::span<RunObserver* const> observers) {
    const auto& stop = options.stop;
    if (!stop.at_optimum && !stop.max_iterations)
        throw ConfigError("stopping criterion needs an optimum target or an iteration budget");
    if (stop.at_optimum && !options.optimum)
        throw ConfigError("optimum-reached stopping requires OptimumInfo");
    if (g.n() == 0) throw InvalidParameter("empty graph");
    if (options.track_shadow) {
        if (g.bipartite() == nullptr) throw UnsupportedInstance("shadow tracking needs K_{L,R}");
        if (options.null_policy != NullPolicy::CountIteration)
            throw ConfigError("shadow tracking is defined for counted null iterations only");
    }

    BitString init = options.init ? *options.init : random_bits(g.n(), rng);
    Candidate x(g, std::move(init));

    std::optional<BipartiteTracker> tracker;
    if (g.bipartite() != nullptr) {
        tracker.emplace(g, options.track_shadow);
        tracker->start(x.bits());
    }

    RunRecord rec;
    rec.seed = options.seed;
    rec.algorithm = algo;
    rec.instance = options.instance.empty() ? g.describe() : options.instance;

    const std::uint64_t budget = stop.max_iterations.value_or(std::numeric_limits<std::uint64_t>::max());
    const bool have_opt = options.optimum.has_value();
    const std::uint32_t opt_size = have_opt ? options.optimum->size : 0;
    auto is_optimal = [&] { return have_opt && x.feasible() && x.ones() == opt_size; };

    std::vector<std::uint64_t> occupancy(std::size_t{g.n()} + 1, 0);
    const StandardMutation standard(g.n());
    std::bernoulli_distribution coin(0.5);
    std::vector<Vertex> flips;
    flips.reserve(g.n());

    std::uint64_t t = 0;
    if (x.feasible()) rec.t_feasible = 0;
    if (is_optimal()) rec.t_optimal = 0;
    for (auto* obs : observers) obs->on_start(x);

    bool stopped = false;
    while (t < budget && !(stop.at_optimum && rec.t_optimal)) {
        if (have_opt && rec.t_feasible && !rec.t_optimal) ++occupancy[x.ones() - opt_size];

        flips.clear();
        MutationKind kind = MutationKind::StandardFlip;
        Vertex pick_v = 0, pick_u = 0;
        switch (algo) {
            case Algorithm::EA:
                standard.sample(rng, flips);
                break;
            case Algorithm::RLS:
                kind = MutationKind::SingleFlip;
                pick_v = static_cast<Vertex>(uniform_index(rng, g.n())) + 1;
                flips.push_back(pick_v);
                break;
            case Algorithm::BalancedEA:
                for (;;) {
                    if (coin(rng)) {
                        standard.sample(rng, flips);
                        break;
                    }
                    const auto pick = pick_balanced(g, x.bits(), rng);
                    pick_v = pick.v;
                    if (pick.u != 0) {
                        kind = MutationKind::BalancedFlip;
                        pick_u = pick.u;
                        flips.push_back(pick.v);
                        flips.push_back(pick.u);
                        break;
                    }
                    if (options.null_policy == NullPolicy::CountIteration) {
                        kind = MutationKind::BalancedNull;
                        break;
                    }
                }
                break;
        }

        ++t;
        const auto parent_fitness = x.fitness();
        x.flip(flips);
        const bool accepted = accept(parent_fitness, x.fitness());
        if (!accepted) x.flip(flips);

        if (!rec.t_feasible && x.feasible()) rec.t_feasible = t;
        if (!rec.t_optimal && is_optimal()) rec.t_optimal = t;
        if (tracker) tracker->step(t, kind, pick_v, flips, accepted);

        if (!observers.empty()) {
            const StepEvent ev{t, kind, pick_v, pick_u, flips, accepted, x};
            for (auto* obs : observers)
                if (!obs->on_step(ev)) stopped = true;
            if (stopped) break;
        }
    }

    rec.iterations = t;
    rec.stopped_by_observer = stopped;
    rec.budget_exhausted = !stopped && t >= budget && !(stop.at_optimum && rec.t_optimal);
    if (have_opt && rec.t_feasible) {
        for (std::size_t lvl = 0; lvl < occupancy.size(); ++lvl)
            if (occupancy[lvl] > 0) rec.level_occupancy[static_cast<std::int64_t>(lvl)] = occupancy[lvl];
    }
    rec.terminal = x.bits();
    rec.terminal_ones = x.ones();
    rec.terminal_uncovered = x.uncovered();
    rec.terminal_fitness = x.fitness();
    if (tracker) {
        rec.bipartite_times = tracker->times();
        rec.trapped = tracker->times().trapped;
    }
    return rec;
}

} // namespace vclab
