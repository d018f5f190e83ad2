#pragma once

// Estimators on observed data: product-limit survival, observed and
// confounder-adjusted acceleration factors, the marginal Cox fit, the
// log-time contrast, and percentile bootstrap bands.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "caft/accel_curve.hpp"
#include "caft/scm.hpp"
#include "caft/survival.hpp"

namespace caft {

/// Product-limit estimator; tied event times form one jump. With `weights`
/// the at-risk and event counts are weighted sums. An all-censored sample
/// yields a flat curve and a warning.
StepSurvival kaplan_meier(std::span<const double> times, std::span<const int> events,
                          std::span<const double> weights = {});

/// Kaplan-Meier of arm `a` on the observed (t_obs, d) columns.
StepSurvival kaplan_meier(const Dataset& data, int arm);

/// theta_m(t) = S0^{-1}(Sa(t)) / t on step functions. Gridpoints whose
/// control quantile is not identified are reported missing. Throws when no
/// gridpoint is identified.
AccelCurve observed_theta(const StepSurvival& control, const StepSurvival& treated, std::span<const double> times,
                          Provenance provenance = Provenance::estimated);

/// Treated-arm jump times, thinned evenly to at most `max_points`.
std::vector<double> default_grid(const StepSurvival& treated, std::size_t max_points = 200);

/// For each survival level p, the treated-arm quantile time; nullopt where
/// the level is below the curve's reach.
std::vector<std::optional<double>> times_at_levels(const StepSurvival& treated, std::span<const double> levels);

/// Treated-arm survival levels used to collapse theta_m to one number.
inline constexpr double kSummaryLevels[] = {0.3, 0.4, 0.5, 0.6, 0.7};

/// Median of theta_m over the identified summary levels; nullopt if none.
std::optional<double> theta_summary(const StepSurvival& control, const StepSurvival& treated);

struct CoxFit {
  double log_hr = 0.0;
  double standard_error = 0.0;
  double score = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Marginal Cox model on the binary treatment with Breslow ties, fitted by
/// Newton-Raphson with step halving until |delta beta| < 1e-10 (at most 50
/// iterations). A monotone likelihood leaves `converged` false.
CoxFit cox_fit(const Dataset& data);

struct LogTRegression {
  double theta_hat = 1.0;
  double log_contrast = 0.0;  // mean log T | A=1  -  mean log T | A=0
};

/// exp(-(mean log T | A=1 - mean log T | A=0)). Refuses censored data.
LogTRegression logT_regression(const Dataset& data);

enum class AdjustMethod { ipw, stratify };

struct AdjustOptions {
  AdjustMethod method = AdjustMethod::ipw;
  int bins = 20;                  // stratify only
  double min_propensity = 0.01;   // ipw positivity bound
};

/// Confounder-standardized survival of arm `a`. IPW weights use the known
/// design propensity; stratification averages per-bin Kaplan-Meier curves
/// over equal-mass bins of L with the bin masses.
StepSurvival adjusted_survival(const Dataset& data, int arm, const ConfoundedTreatment& design,
                               const AdjustOptions& options = {});

AccelCurve adjusted_theta(const StepSurvival& control, const StepSurvival& treated, std::span<const double> times);

using CurveEstimator = std::function<AccelCurve(const Dataset&)>;

/// Percentile 95% band from B nonparametric bootstrap resamples of the
/// records. Replicate i uses substream i of `seed`. Gridpoints unidentified
/// in more than 20% of replicates get no band.
AccelCurve bootstrap_band(const Dataset& data, const CurveEstimator& estimator, int replicates, std::uint64_t seed,
                          unsigned threads = 1);

}  // namespace caft
