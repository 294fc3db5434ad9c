#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace vclab::stats {

double mean(std::span<const double> xs);
/// Unbiased sample variance; 0 for fewer than two values.
double variance(std::span<const double> xs);
double std_error(std::span<const double> xs);

/// Linear-interpolation quantile (R type 7) of an unsorted sample.
double quantile(std::span<const double> xs, double prob);

struct FiveNumber {
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};
FiveNumber five_number(std::span<const double> xs);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::vector<double> a, std::vector<double> b);
/// Asymptotic critical value at the 1% level.
double ks_critical_1pct(std::size_t n, std::size_t m);

/// Upper-tail probability of a chi-squared variable.
double chi_squared_sf(double statistic, double degrees_of_freedom);

struct ChiSquared {
    double statistic = 0;
    double dof = 0;
    double p_value = 1;
};

/// Goodness of fit of observed counts against expected probabilities. Cells
/// with expected count below min_expected are pooled into their neighbor.
ChiSquared chi_squared_gof(std::span<const std::uint64_t> observed, std::span<const double> probs,
                           double min_expected = 5.0);

struct LogLogFit {
    double slope = 0;
    double intercept = 0;
    double residual_norm = 0;
};

/// Least squares of log(y) against log(x). Needs two or more points, all
/// coordinates positive.
LogLogFit fit_loglog_slope(std::span<const std::pair<double, double>> points);

} // namespace vclab::stats
