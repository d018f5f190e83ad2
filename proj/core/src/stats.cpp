#include "caft/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "caft/error.hpp"

namespace caft {
namespace {

// Number of ties summed as pairs within runs of equal values (sorted input).
double tied_pairs(const std::vector<double>& v) {
  double pairs = 0;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    const double m = static_cast<double>(j - i);
    pairs += m * (m - 1) / 2;
    i = j;
  }
  return pairs;
}

// Merge sort of `v` returning the number of swaps (discordant pairs).
double merge_count(std::vector<double>& v, std::vector<double>& buf, std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  double swaps = merge_count(v, buf, lo, mid) + merge_count(v, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      swaps += static_cast<double>(mid - i);
      buf[k++] = v[j++];
    } else {
      buf[k++] = v[i++];
    }
  }
  while (i < mid) buf[k++] = v[i++];
  while (j < hi) buf[k++] = v[j++];
  std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return swaps;
}

}  // namespace

double kendall_tau(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (y.size() != n) throw InvalidArgument("kendall_tau: length mismatch");
  if (n < 2) throw InvalidArgument("kendall_tau: need at least two observations");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return x[i] < x[j] || (x[i] == x[j] && y[i] < y[j]);
  });

  std::vector<double> xs(n), ys(n);
  for (std::size_t k = 0; k < n; ++k) {
    xs[k] = x[order[k]];
    ys[k] = y[order[k]];
  }
  const double n0 = static_cast<double>(n) * static_cast<double>(n - 1) / 2;
  const double n1 = tied_pairs(xs);
  // Pairs tied in both x and y.
  double n3 = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && xs[j] == xs[i] && ys[j] == ys[i]) ++j;
    const double m = static_cast<double>(j - i);
    n3 += m * (m - 1) / 2;
    i = j;
  }
  std::vector<double> buf(n);
  const double swaps = merge_count(ys, buf, 0, n);
  const double n2 = tied_pairs(ys);
  const double concordant_minus_discordant = n0 - n1 - n2 + n3 - 2 * swaps;
  const double denom = std::sqrt((n0 - n1) * (n0 - n2));
  if (denom == 0) throw InvalidArgument("kendall_tau: a variable is constant");
  return concordant_minus_discordant / denom;
}

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw InvalidArgument("ks_statistic: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

double ks_critical_value(std::size_t n, double alpha) {
  if (n == 0 || !(alpha > 0 && alpha < 1)) throw InvalidArgument("ks_critical_value: bad arguments");
  return std::sqrt(-0.5 * std::log(alpha / 2)) / std::sqrt(static_cast<double>(n));
}

double mean(std::span<const double> x) {
  if (x.empty()) throw InvalidArgument("mean: empty input");
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  if (x.size() < 2) throw InvalidArgument("variance: need at least two observations");
  const double m = mean(x);
  double ss = 0;
  for (double v : x) ss += (v - m) * (v - m);
  return ss / static_cast<double>(x.size() - 1);
}

}  // namespace caft
