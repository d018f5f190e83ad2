#include "caft/oracle.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "caft/error.hpp"

namespace caft {

namespace {

constexpr double kTailMass = 1e-14;
constexpr double kQuadTolerance = 1e-12;
constexpr double kConvergenceLimit = 1e-6;
constexpr double kHorizonLevel = 1e-8;

template <typename F>
double integrate(F&& f, double a, double b) {
  double error = 0.0;
  double l1 = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, kQuadTolerance, &error, &l1);
  if (error > kConvergenceLimit * std::max(std::abs(value), 1e-300) && error > 1e-15)
    throw NotConverged("quadrature did not converge: error estimate " + std::to_string(error));
  return value;
}

// E[g(U)] for U ~ Gamma(shape, scale), integrated over x = log u.
struct GammaLogAxis {
  double shape;
  double scale;
  double x_lo;
  double x_hi;
  double log_norm;

  GammaLogAxis(double shape_, double scale_) : shape(shape_), scale(scale_) {
    x_lo = std::log(boost::math::gamma_p_inv(shape, kTailMass) * scale);
    x_hi = std::log(boost::math::gamma_q_inv(shape, kTailMass) * scale);
    log_norm = -std::lgamma(shape) - shape * std::log(scale);
  }

  [[nodiscard]] double density(double x) const {
    return std::exp(log_norm + shape * x - std::exp(x) / scale);
  }

  template <typename G>
  double expect(G&& g) const {
    return integrate([&](double x) { return g(std::exp(x)) * density(x); }, x_lo, x_hi);
  }
};

double control_hint(const ScmConfig& config) {
  if (const auto* w = std::get_if<WeibullBaseline>(&config.baseline)) return std::pow(w->kappa, -w->sigma);
  const auto& m = std::get<WeibullMixtureBaseline>(config.baseline);
  double largest = 0.0;
  for (double x : m.scale_law.atoms) largest = std::max(largest, m.weibull_scale(x));
  return largest;
}

}  // namespace

double baseline_cumulative_hazard(const WeibullBaseline& b, double t) { return b.kappa * std::pow(t, 1.0 / b.sigma); }

SmoothSurvival survival_control(const ScmConfig& config) {
  config.validate();
  const double hint = control_hint(config);
  if (const auto* w = std::get_if<WeibullBaseline>(&config.baseline)) {
    return SmoothSurvival(
        [b = *w, frailty = config.frailty](double t) {
          return laplace_transform(frailty, baseline_cumulative_hazard(b, t));
        },
        hint);
  }
  const auto& m = std::get<WeibullMixtureBaseline>(config.baseline);
  return SmoothSurvival(
      [m](double t) {
        double s = 0.0;
        for (std::size_t i = 0; i < m.scale_law.atoms.size(); ++i)
          s += m.scale_law.weights[i] * std::exp(-std::pow(t / m.weibull_scale(m.scale_law.atoms[i]), m.shape));
        return s;
      },
      hint);
}

SmoothSurvival survival_treated(const ScmConfig& config, int a) {
  SmoothSurvival control = survival_control(config);
  if (a == 0) return control;
  if (a != 1) throw InvalidArgument("treatment level must be 0 or 1");
  const EffectLaw& effect = config.effect;
  if (effect.is_discrete()) {
    const auto atoms = effect.atoms();
    double smallest = INFINITY;
    for (const auto& [w, u] : atoms)
      if (w > 0.0) smallest = std::min(smallest, u);
    return SmoothSurvival(
        [control, atoms](double t) {
          double s = 0.0;
          for (const auto& [w, u] : atoms)
            if (w > 0.0) s += w * control(t * u);
          return s;
        },
        control.support_hint() / smallest);
  }
  const GammaLogAxis axis(effect.gamma_shape(), effect.gamma_scale());
  return SmoothSurvival(
      [control, axis](double t) { return axis.expect([&](double u) { return control(t * u); }); },
      control.support_hint() / effect.mean());
}

double conditional_theta(const ScmConfig& config, double u1, double t, int a) {
  (void)config;
  if (!(t > 0.0)) throw InvalidArgument("conditional theta needs t > 0");
  if (!(u1 > 0.0)) throw InvalidArgument("effect value must be positive");
  return a == 0 ? 1.0 : u1;
}

AccelCurve theta_between(const SmoothSurvival& control, const SmoothSurvival& treated, std::span<const double> times,
                         Provenance provenance) {
  AccelCurve curve;
  curve.axis = CurveAxis::time;
  curve.provenance = provenance;
  for (double t : times) {
    if (!(t > 0.0)) throw InvalidArgument("acceleration factor grid needs t > 0");
    AccelPoint p;
    p.t = t;
    const double st = treated(t);
    p.treated_cdf = 1.0 - st;
    if (st > 0.0) {
      if (const auto q = quantile(control, st); q && *q > 0.0) p.value = *q / t;
    }
    curve.points.push_back(p);
  }
  return curve;
}

AccelCurve causal_theta(const ScmConfig& config, std::span<const double> times) {
  return theta_between(survival_control(config), survival_treated(config), times);
}

AccelCurve causal_eta(const ScmConfig& config, std::span<const double> times) {
  const SmoothSurvival control = survival_control(config);
  const SmoothSurvival treated = survival_treated(config);
  const auto matched = [&](double t) {
    const auto q = quantile(control, treated(t));
    if (!q) throw InvalidArgument("control quantile not identified at t = " + std::to_string(t));
    return *q;
  };
  AccelCurve curve;
  curve.axis = CurveAxis::time;
  for (double t : times) {
    const double h = std::max(1e-4 * t, 1e-6);
    if (!(t - h > 0.0)) throw InvalidArgument("grid too coarse near 0 for the eta finite difference");
    const auto central = [&](double step) { return (matched(t + step) - matched(t - step)) / (2.0 * step); };
    AccelPoint p;
    p.t = t;
    p.treated_cdf = 1.0 - treated(t);
    p.value = (4.0 * central(0.5 * h) - central(h)) / 3.0;
    curve.points.push_back(p);
  }
  return curve;
}

AccelCurve reverse_theta(const ScmConfig& config, std::span<const double> times) {
  const SmoothSurvival control = survival_control(config);
  const SmoothSurvival treated = survival_treated(config);
  AccelCurve curve;
  curve.axis = CurveAxis::time;
  for (double s : times) {
    if (!(s > 0.0)) throw InvalidArgument("acceleration factor grid needs t > 0");
    AccelPoint p;
    p.t = s;
    p.treated_cdf = 1.0 - treated(s);
    const double level = control(s);
    if (level > 0.0) {
      if (const auto q = quantile(treated, level); q && *q > 0.0) p.value = *q / s;
    }
    curve.points.push_back(p);
  }
  return curve;
}

SurvivalMoments survival_moments(const SmoothSurvival& s) {
  SurvivalMoments m;
  const auto upper = quantile(s, kHorizonLevel);
  const auto lower = quantile(s, 1.0 - 1e-12);
  if (!upper || !(*upper > 0.0)) throw NotConverged("could not locate the survival horizon");
  const double t_hi = *upper;
  const double t_lo = (lower && *lower > 0.0) ? std::min(*lower, 0.5 * t_hi) : 1e-12 * t_hi;
  const double x_lo = std::log(t_lo);
  const double x_hi = std::log(t_hi);
  m.horizon = t_hi;

  // Local power-law index of the tail at the horizon.
  const double s_hi = s(t_hi);
  const double s_far = s(2.0 * t_hi);
  const double alpha = (s_far > 0.0 && s_hi > 0.0) ? -std::log(s_far / s_hi) / std::log(2.0) : INFINITY;

  // E[T] = int S(t) dt; below t_lo the survival is 1 to within 1e-12.
  const double body_mean = integrate([&](double x) { return s(std::exp(x)) * std::exp(x); }, x_lo, x_hi) + t_lo;
  if (alpha <= 1.0) {
    m.mean = body_mean;
    m.mean_diverged = true;
  } else {
    m.mean = body_mean + (std::isfinite(alpha) ? t_hi * s_hi / (alpha - 1.0) : 0.0);
  }

  // E[log T] = int_1^inf S(t)/t dt - int_0^1 (1 - S(t))/t dt.
  const auto log_integrand = [&](double x) { return x >= 0.0 ? s(std::exp(x)) : s(std::exp(x)) - 1.0; };
  double body_log = 0.0;
  if (x_lo < 0.0 && x_hi > 0.0) {
    body_log = integrate(log_integrand, x_lo, 0.0) + integrate(log_integrand, 0.0, x_hi);
  } else {
    body_log = integrate(log_integrand, x_lo, x_hi);
  }
  // Outside [x_lo, x_hi] the integrand is 0 or +-1 up to 1e-8: S ~ 1 on [0, x_lo], S ~ 0 on [x_hi, 0].
  if (x_lo > 0.0) body_log += x_lo;
  if (x_hi < 0.0) body_log += x_hi;
  if (!(alpha > 0.0)) {
    m.mean_log = body_log;
    m.log_diverged = true;
  } else {
    m.mean_log = body_log + (std::isfinite(alpha) ? s_hi / alpha : 0.0);
  }
  return m;
}

MomentContrasts moment_contrasts(const ScmConfig& config) {
  const SurvivalMoments control = survival_moments(survival_control(config));
  const SurvivalMoments treated = survival_moments(survival_treated(config));
  MomentContrasts out;
  out.log_diff = treated.mean_log - control.mean_log;
  out.mean_ratio = treated.mean / control.mean;
  out.log_diverged = treated.log_diverged || control.log_diverged;
  out.mean_diverged = treated.mean_diverged || control.mean_diverged;
  out.horizon = std::max(treated.horizon, control.horizon);
  return out;
}

AccelCurve mixture_theta(const SmoothSurvival& control, std::span<const AccelComponent> components,
                         std::span<const double> times) {
  if (components.empty()) throw InvalidArgument("mixture needs at least one component");
  double total = 0.0;
  double smallest = INFINITY;
  for (const auto& c : components) {
    if (!(c.weight >= 0.0) || !(c.factor > 0.0)) throw InvalidArgument("mixture weights must be >= 0 and factors > 0");
    total += c.weight;
    smallest = std::min(smallest, c.factor);
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("mixture weights must sum to 1");
  const std::vector<AccelComponent> parts(components.begin(), components.end());
  const SmoothSurvival treated(
      [control, parts](double t) {
        double s = 0.0;
        for (const auto& c : parts) s += c.weight * control(c.factor * t);
        return s;
      },
      control.support_hint() / smallest);
  return theta_between(control, treated, times);
}

std::vector<double> times_at_treated_cdf(const SmoothSurvival& treated, std::span<const double> cdf_levels) {
  std::vector<double> out;
  out.reserve(cdf_levels.size());
  for (double q : cdf_levels) {
    if (!(q > 0.0 && q < 1.0)) throw InvalidArgument("treated CDF levels must lie in (0, 1)");
    const auto t = quantile(treated, 1.0 - q);
    if (!t) throw InvalidArgument("treated quantile not identified");
    out.push_back(*t);
  }
  return out;
}

}  // namespace caft
