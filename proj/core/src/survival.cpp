#include "caft/survival.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "caft/error.hpp"

namespace caft {

SmoothSurvival::SmoothSurvival(std::function<double(double)> fn, double support_hint)
    : fn_(std::move(fn)), support_hint_(support_hint) {
  if (!(support_hint_ > 0.0)) throw InvalidArgument("support hint must be positive");
}

double StepSurvival::operator()(double t) const {
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return 1.0;
  return values[static_cast<std::size_t>(it - times.begin()) - 1];
}

void StepSurvival::check_invariants() const {
  if (values.size() != times.size()) throw InvalidArgument("step survival: times/values size mismatch");
  double prev_t = -INFINITY;
  double prev_v = 1.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > prev_t)) throw InvalidArgument("step survival: jump times not strictly increasing");
    if (!(values[i] <= prev_v + 1e-15) || values[i] < 0.0)
      throw InvalidArgument("step survival: values must be nonincreasing in [0, 1]");
    prev_t = times[i];
    prev_v = values[i];
  }
}

std::optional<double> quantile(const SmoothSurvival& s, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw InvalidArgument("quantile level must lie in (0, 1]");
  double lo = 0.0;
  double hi = s.support_hint();
  int expansions = 0;
  while (s(hi) >= p) {
    lo = hi;
    hi *= 2.0;
    if (++expansions > 2000 || !std::isfinite(hi)) return std::nullopt;
  }
  // Invariant: S(lo) >= p > S(hi).
  for (int i = 0; i < 2000 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (s(mid) >= p) lo = mid;
    else hi = mid;
  }
  return lo;
}

std::optional<double> quantile(const StepSurvival& s, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw InvalidArgument("quantile level must lie in (0, 1]");
  if (p <= s.min_value()) return std::nullopt;
  // First jump with value < p; values are nonincreasing.
  const auto it = std::partition_point(s.values.begin(), s.values.end(), [p](double v) { return v >= p; });
  return s.times[static_cast<std::size_t>(it - s.values.begin())];
}

}  // namespace caft
