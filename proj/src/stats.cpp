#include "vclab/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>

#include "vclab/error.hpp"

namespace vclab::stats {

double mean(std::span<const double> xs) {
    if (xs.empty()) throw InvalidParameter("mean of an empty sample");
    double sum = 0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean(xs);
    double ss = 0;
    for (double x : xs) ss += (x - m) * (x - m);
    return ss / static_cast<double>(xs.size() - 1);
}

double std_error(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    return std::sqrt(variance(xs) / static_cast<double>(xs.size()));
}

double quantile(std::span<const double> xs, double prob) {
    if (xs.empty()) throw InvalidParameter("quantile of an empty sample");
    if (!(prob >= 0.0 && prob <= 1.0)) throw InvalidParameter("quantile probability outside [0,1]");
    std::vector<double> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    const double h = (static_cast<double>(sorted.size()) - 1.0) * prob;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

FiveNumber five_number(std::span<const double> xs) {
    return {quantile(xs, 0.0), quantile(xs, 0.25), quantile(xs, 0.5), quantile(xs, 0.75), quantile(xs, 1.0)};
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw InvalidParameter("KS statistic of an empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double ks_critical_1pct(std::size_t n, std::size_t m) {
    const double nn = static_cast<double>(n);
    const double mm = static_cast<double>(m);
    return 1.628 * std::sqrt((nn + mm) / (nn * mm));
}

double chi_squared_sf(double statistic, double degrees_of_freedom) {
    if (!(degrees_of_freedom > 0)) throw InvalidParameter("chi-squared needs positive degrees of freedom");
    if (statistic <= 0) return 1.0;
    const boost::math::chi_squared dist(degrees_of_freedom);
    return boost::math::cdf(boost::math::complement(dist, statistic));
}

ChiSquared chi_squared_gof(std::span<const std::uint64_t> observed, std::span<const double> probs,
                           double min_expected) {
    if (observed.size() != probs.size() || observed.empty())
        throw InvalidParameter("observed and expected cell counts differ");
    double total = 0;
    for (auto o : observed) total += static_cast<double>(o);
    if (total <= 0) throw InvalidParameter("no observations");

    // Pool adjacent cells left to right until each expected count is large enough.
    std::vector<double> obs_cells, exp_cells;
    double obs_acc = 0, exp_acc = 0;
    for (std::size_t k = 0; k < observed.size(); ++k) {
        obs_acc += static_cast<double>(observed[k]);
        exp_acc += probs[k] * total;
        if (exp_acc >= min_expected) {
            obs_cells.push_back(obs_acc);
            exp_cells.push_back(exp_acc);
            obs_acc = exp_acc = 0;
        }
    }
    if (obs_acc > 0 || exp_acc > 0) {
        if (exp_cells.empty()) {
            obs_cells.push_back(obs_acc);
            exp_cells.push_back(exp_acc);
        } else {
            obs_cells.back() += obs_acc;
            exp_cells.back() += exp_acc;
        }
    }

    ChiSquared r;
    for (std::size_t k = 0; k < obs_cells.size(); ++k) {
        if (exp_cells[k] <= 0) {
            if (obs_cells[k] > 0) return {INFINITY, 1, 0.0};
            continue;
        }
        const double diff = obs_cells[k] - exp_cells[k];
        r.statistic += diff * diff / exp_cells[k];
    }
    r.dof = static_cast<double>(obs_cells.size()) - 1.0;
    r.p_value = r.dof > 0 ? chi_squared_sf(r.statistic, r.dof) : 1.0;
    return r;
}

LogLogFit fit_loglog_slope(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2) throw InvalidParameter("log-log fit needs at least two points");
    std::vector<double> xs, ys;
    for (const auto& [x, y] : points) {
        if (!(x > 0 && y > 0)) throw InvalidParameter("log-log fit needs positive coordinates");
        xs.push_back(std::log(x));
        ys.push_back(std::log(y));
    }
    const double mx = mean(xs);
    const double my = mean(ys);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0) throw InvalidParameter("log-log fit needs at least two distinct x values");
    LogLogFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
        rss += e * e;
    }
    fit.residual_norm = std::sqrt(rss);
    return fit;
}

} // namespace vclab::stats
