#pragma once

#include <functional>
#include <span>
#include <vector>

namespace caft {

/// Kendall's tau-b with tie correction, O(n log n) (Knight's algorithm).
double kendall_tau(std::span<const double> x, std::span<const double> y);

/// sup_x |F_n(x) - F(x)| of a sample against a continuous CDF.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Asymptotic Kolmogorov critical value at level alpha for sample size n.
double ks_critical_value(std::size_t n, double alpha);

double mean(std::span<const double> x);
/// Unbiased sample variance.
double variance(std::span<const double> x);

}  // namespace caft
