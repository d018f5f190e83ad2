#include <algorithm>
#include <cmath>
#include <numeric>

#include "caft/error.hpp"
#include "caft/estimators.hpp"
#include "caft/parallel.hpp"
#include "caft/rng.hpp"

namespace caft {
namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// Linear interpolation between order statistics (sorted input).
double percentile(const std::vector<double>& sorted, double q) {
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

AccelCurve theta_on_grid(const StepSurvival& control, const StepSurvival& treated, std::span<const double> times,
                         Provenance provenance) {
  AccelCurve curve;
  curve.axis = CurveAxis::time;
  curve.provenance = provenance;
  curve.points.reserve(times.size());
  for (double t : times) {
    if (!(t > 0.0)) throw InvalidArgument("theta grid: times must be positive");
    AccelPoint pt;
    pt.t = t;
    const double sa = treated(t);
    pt.treated_cdf = 1.0 - sa;
    // S_a(t) = 0 lies below every control level: not identified.
    if (sa > 0.0)
      if (auto q = quantile(control, sa)) pt.value = *q / t;
    curve.points.push_back(pt);
  }
  if (curve.identified_count() == 0) throw InvalidArgument("theta grid: no gridpoint is identified");
  return curve;
}

}  // namespace

AccelCurve observed_theta(const StepSurvival& control, const StepSurvival& treated, std::span<const double> times,
                          Provenance provenance) {
  return theta_on_grid(control, treated, times, provenance);
}

AccelCurve adjusted_theta(const StepSurvival& control, const StepSurvival& treated, std::span<const double> times) {
  return theta_on_grid(control, treated, times, Provenance::adjusted);
}

std::vector<double> default_grid(const StepSurvival& treated, std::size_t max_points) {
  if (max_points == 0) throw InvalidArgument("default_grid: max_points must be positive");
  const std::size_t m = treated.size();
  if (m <= max_points) return treated.times;
  std::vector<double> grid;
  grid.reserve(max_points);
  for (std::size_t k = 0; k < max_points; ++k) {
    const std::size_t idx = (k * (m - 1)) / (max_points - 1 == 0 ? 1 : max_points - 1);
    if (grid.empty() || treated.times[idx] > grid.back()) grid.push_back(treated.times[idx]);
  }
  return grid;
}

std::vector<std::optional<double>> times_at_levels(const StepSurvival& treated, std::span<const double> levels) {
  std::vector<std::optional<double>> out;
  out.reserve(levels.size());
  for (double p : levels) out.push_back(quantile(treated, p));
  return out;
}

std::optional<double> theta_summary(const StepSurvival& control, const StepSurvival& treated) {
  std::vector<double> values;
  for (const auto& t : times_at_levels(treated, kSummaryLevels)) {
    if (!t || !(*t > 0.0)) continue;
    if (auto q = quantile(control, treated(*t))) values.push_back(*q / *t);
  }
  if (values.empty()) return std::nullopt;
  return median_of(std::move(values));
}

LogTRegression logT_regression(const Dataset& data) {
  if (data.any_censored()) throw InvalidArgument("logT_regression: censored data is not supported");
  double sum[2] = {0, 0};
  double count[2] = {0, 0};
  for (const auto& r : data.records()) {
    sum[r.a] += std::log(r.t_obs);
    count[r.a] += 1;
  }
  if (count[0] == 0 || count[1] == 0) throw InvalidArgument("logT_regression: both arms must be non-empty");
  LogTRegression out;
  out.log_contrast = sum[1] / count[1] - sum[0] / count[0];
  out.theta_hat = std::exp(-out.log_contrast);
  return out;
}

StepSurvival adjusted_survival(const Dataset& data, int arm, const ConfoundedTreatment& design,
                               const AdjustOptions& options) {
  if (!data.has_confounder()) throw InvalidArgument("adjusted_survival: dataset has no confounder column");
  if (arm != 0 && arm != 1) throw InvalidArgument("adjusted_survival: arm must be 0 or 1");
  const auto recs = data.records();

  if (options.method == AdjustMethod::ipw) {
    std::vector<double> t, w;
    std::vector<int> d;
    for (const auto& r : recs) {
      const double p1 = design.propensity(r.l);
      const double pa = arm == 1 ? p1 : 1.0 - p1;
      if (std::min(p1, 1.0 - p1) < options.min_propensity)
        throw PositivityViolation("adjusted_survival: propensity " + std::to_string(p1) + " outside [" +
                                  std::to_string(options.min_propensity) + ", " +
                                  std::to_string(1.0 - options.min_propensity) + "]");
      if (r.a != arm) continue;
      t.push_back(r.t_obs);
      d.push_back(r.d);
      w.push_back(1.0 / pa);
    }
    if (t.empty()) throw InvalidArgument("adjusted_survival: arm is empty");
    auto km = kaplan_meier(t, d, w);
    km.arm = arm;
    return km;
  }

  if (options.bins < 1) throw InvalidArgument("adjusted_survival: bins must be positive");
  const std::size_t n = recs.size();
  const auto k = static_cast<std::size_t>(options.bins);
  if (n < k) throw InvalidArgument("adjusted_survival: fewer records than bins");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return recs[i].l < recs[j].l; });

  std::vector<StepSurvival> strata;
  std::vector<double> mass;
  double last_observed = 0.0;
  for (std::size_t b = 0; b < k; ++b) {
    const std::size_t lo = b * n / k, hi = (b + 1) * n / k;
    std::vector<double> t;
    std::vector<int> d;
    for (std::size_t i = lo; i < hi; ++i) {
      const auto& r = recs[order[i]];
      if (r.a != arm) continue;
      t.push_back(r.t_obs);
      d.push_back(r.d);
    }
    if (t.empty()) throw PositivityViolation("adjusted_survival: stratum " + std::to_string(b) + " has no arm-" +
                                             std::to_string(arm) + " records");
    strata.push_back(kaplan_meier(t, d));
    last_observed = std::max(last_observed, strata.back().last_observed);
    mass.push_back(static_cast<double>(hi - lo) / static_cast<double>(n));
  }

  std::vector<double> jumps;
  for (const auto& s : strata) jumps.insert(jumps.end(), s.times.begin(), s.times.end());
  std::sort(jumps.begin(), jumps.end());
  jumps.erase(std::unique(jumps.begin(), jumps.end()), jumps.end());

  StepSurvival out;
  out.arm = arm;
  out.last_observed = last_observed;
  std::vector<std::size_t> cursor(strata.size(), 0);
  for (double t : jumps) {
    double v = 0.0;
    for (std::size_t b = 0; b < strata.size(); ++b) {
      const auto& s = strata[b];
      auto& c = cursor[b];
      while (c < s.size() && s.times[c] <= t) ++c;
      v += mass[b] * (c == 0 ? 1.0 : s.values[c - 1]);
    }
    if (!out.values.empty() && v >= out.values.back()) continue;
    out.times.push_back(t);
    out.values.push_back(std::min(v, out.values.empty() ? 1.0 : out.values.back()));
  }
  return out;
}

AccelCurve bootstrap_band(const Dataset& data, const CurveEstimator& estimator, int replicates, std::uint64_t seed,
                          unsigned threads) {
  if (replicates < 100) throw InvalidArgument("bootstrap_band: at least 100 replicates are required");
  if (data.empty()) throw InvalidArgument("bootstrap_band: empty dataset");
  AccelCurve base = estimator(data);
  const std::size_t grid = base.points.size();
  const auto b_count = static_cast<std::size_t>(replicates);

  // values[b][g]; NaN marks an unidentified gridpoint or a failed replicate.
  std::vector<std::vector<double>> values(b_count, std::vector<double>(grid, std::nan("")));
  const RngStream root(seed);
  const auto recs = data.records();
  parallel_for(b_count, threads, [&](std::size_t b) {
    RngStream rng = root.substream(b);
    std::vector<CohortRecord> sample;
    sample.reserve(recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) sample.push_back(recs[rng.index(recs.size())]);
    AccelCurve rep;
    try {
      rep = estimator(Dataset(std::move(sample), data.has_confounder()));
    } catch (const InvalidArgument&) {
      return;
    }
    if (rep.points.size() != grid) throw InvalidArgument("bootstrap_band: estimator changed the grid");
    for (std::size_t g = 0; g < grid; ++g)
      if (rep.points[g].value) values[b][g] = *rep.points[g].value;
  });

  for (std::size_t g = 0; g < grid; ++g) {
    std::vector<double> col;
    col.reserve(b_count);
    for (std::size_t b = 0; b < b_count; ++b)
      if (!std::isnan(values[b][g])) col.push_back(values[b][g]);
    if (static_cast<double>(b_count - col.size()) > 0.2 * static_cast<double>(b_count) || col.empty()) continue;
    std::sort(col.begin(), col.end());
    base.points[g].lo = percentile(col, 0.025);
    base.points[g].hi = percentile(col, 0.975);
  }
  return base;
}

}  // namespace caft
