#pragma once

// Ground-truth survival functions and causal acceleration factors of a
// constant-rate structural AFT model, computed analytically or by
// quadrature from the model's laws (never from simulated data).

#include <span>
#include <vector>

#include "caft/accel_curve.hpp"
#include "caft/scm.hpp"
#include "caft/survival.hpp"

namespace caft {

/// Baseline cumulative hazard kappa t^(1/sigma) of a Weibull baseline.
double baseline_cumulative_hazard(const WeibullBaseline& b, double t);

/// S_{T0}(t): the frailty Laplace transform at the baseline cumulative
/// hazard, or the explicit average over a Weibull-mixture baseline's scales.
SmoothSurvival survival_control(const ScmConfig& config);

/// S_{Ta}(t) = E_{U1}[ S_{T0}(t U1^a) ]. Discrete effect laws are summed
/// exactly; the gamma law is integrated by adaptive Gauss-Kronrod on the
/// log axis with tails of mass below 1e-14 dropped. Throws NotConverged
/// when the error estimate exceeds 1e-6 relative.
SmoothSurvival survival_treated(const ScmConfig& config, int a = 1);

/// exp f1(u1, a): the individual time-scale factor, constant in t and U0.
double conditional_theta(const ScmConfig& config, double u1, double t, int a = 1);

/// theta(t) = S0^{-1}(Sa(t)) / t for arbitrary survival functions.
AccelCurve theta_between(const SmoothSurvival& control, const SmoothSurvival& treated, std::span<const double> times,
                         Provenance provenance = Provenance::oracle);

AccelCurve causal_theta(const ScmConfig& config, std::span<const double> times);

/// eta(t) = d/dt S0^{-1}(Sa(t)); central differences with step
/// h = max(1e-4 t, 1e-6) and one Richardson extrapolation.
AccelCurve causal_eta(const ScmConfig& config, std::span<const double> times);

/// theta~(s) = Sa^{-1}(S0(s)) / s, the inverse map of theta.
AccelCurve reverse_theta(const ScmConfig& config, std::span<const double> times);

struct MomentContrasts {
  double log_diff = 0.0;    // E[log Ta] - E[log T0]
  double mean_ratio = 1.0;  // E[Ta] / E[T0]
  bool log_diverged = false;
  bool mean_diverged = false;
  double horizon = 0.0;     // truncation time used for divergent integrals
};

/// Moment contrasts by quadrature over the oracle survival functions on the
/// log-time axis. The integrals run to the horizon where S = 1e-8 and are
/// closed with a power-law tail fitted there; a tail index <= 1 flags the
/// mean as divergent and the truncated integral is reported instead.
MomentContrasts moment_contrasts(const ScmConfig& config);

/// Moments of a single survival function, same method as moment_contrasts.
struct SurvivalMoments {
  double mean = 0.0;
  double mean_log = 0.0;
  bool mean_diverged = false;
  bool log_diverged = false;
  double horizon = 0.0;
};
SurvivalMoments survival_moments(const SmoothSurvival& s);

struct AccelComponent {
  double weight;
  double factor;
};

/// theta(t) of S1(t) = sum_j w_j S0(c_j t) against S0.
AccelCurve mixture_theta(const SmoothSurvival& control, std::span<const AccelComponent> components,
                         std::span<const double> times);

/// Times at which the treated CDF 1 - Sa(t) reaches each level.
std::vector<double> times_at_treated_cdf(const SmoothSurvival& treated, std::span<const double> cdf_levels);

}  // namespace caft
