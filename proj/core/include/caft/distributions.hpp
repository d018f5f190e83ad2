#pragma once

// Random variates and analytic transforms for the frailty, effect and
// baseline laws used by the structural AFT generators.

#include <utility>
#include <vector>

#include "caft/rng.hpp"

namespace caft {

enum class FrailtyKind { degenerate, gamma, inverse_gaussian, weibull_mixture_scale };

/// Law of the baseline frailty U0. Gamma and inverse-Gaussian laws have
/// mean 1 and variance `variance`. The mixture-scale kind is the discrete
/// scale variable of a Weibull-mixture baseline and does not follow the
/// mean-one convention.
struct FrailtyLaw {
  FrailtyKind kind = FrailtyKind::degenerate;
  double variance = 0.0;
  std::vector<double> atoms;    // weibull_mixture_scale only
  std::vector<double> weights;  // weibull_mixture_scale only

  static FrailtyLaw degenerate();
  /// Gamma(shape = 1/variance, scale = variance); variance 0 gives the point mass.
  static FrailtyLaw gamma(double variance);
  /// IG(mean = 1, shape = 1/variance); variance 0 gives the point mass.
  static FrailtyLaw inverse_gaussian(double variance);
  static FrailtyLaw weibull_mixture_scale(std::vector<double> atoms, std::vector<double> weights);

  void validate() const;
  [[nodiscard]] double mean() const;
  [[nodiscard]] double var() const;
};

enum class EffectKind { degenerate, bhn, gamma };

struct BhnParams {
  double p1 = 0.0;   // probability of benefit
  double mu1 = 1.0;  // benefit multiplier, < 1
  double p2 = 0.0;   // probability of harm
  double mu2 = 1.0;  // harm multiplier, > 1
};

/// Law of the individual time-scale multiplier U1: a treated individual's
/// event time is T0 / U1. Values above one shorten life.
struct EffectLaw {
  EffectKind kind = EffectKind::degenerate;
  double value = 1.0;  // degenerate only
  BhnParams bhn{};     // bhn only
  double gamma_mean = 1.0;
  double gamma_variance = 0.0;

  static EffectLaw degenerate(double factor);
  /// Homogeneous effect of a Weibull PH model with log hazard ratio `log_hr`
  /// and shape-inverse `sigma`: the time-scale factor is exp(log_hr * sigma).
  static EffectLaw homogeneous(double log_hr, double sigma);
  static EffectLaw bhn_law(double p1, double mu1, double p2, double mu2);
  static EffectLaw gamma(double mean, double variance);

  void validate() const;
  [[nodiscard]] double mean() const;
  [[nodiscard]] double var() const;
  [[nodiscard]] bool is_discrete() const { return kind != EffectKind::gamma; }
  /// (weight, value) pairs of a discrete law. Throws for the gamma law.
  [[nodiscard]] std::vector<std::pair<double, double>> atoms() const;
  [[nodiscard]] double gamma_shape() const;
  [[nodiscard]] double gamma_scale() const;
};

double sample(const FrailtyLaw& law, RngStream& rng);
double sample(const EffectLaw& law, RngStream& rng);

/// Minimum-type Gumbel variate: exp(W) is unit exponential, so
/// P(exp(W) > t) = exp(-t) and the median of W is log(log 2).
double sample_standard_extreme_value(RngStream& rng);

/// E[exp(-U0 s)] for gamma, inverse-Gaussian and degenerate frailty.
double laplace_transform(const FrailtyLaw& law, double s);

/// Quantile functions, used to push copula uniforms onto the marginals.
double inverse_cdf(const FrailtyLaw& law, double u);
double inverse_cdf(const EffectLaw& law, double u);

/// Kendall's tau of L with U0 and with U1. U0 and U1 are independent.
struct KendallTaus {
  double l_u0 = 0.0;
  double l_u1 = 0.0;
};

struct CopulaDraw {
  double l;
  double u0;
  double u1;
};

/// Gaussian copula over (L, U0-coordinate, U1-coordinate) with latent
/// correlations sin(pi * tau / 2) and independent U0, U1 coordinates.
class GaussianCopula {
 public:
  explicit GaussianCopula(KendallTaus taus);

  CopulaDraw sample(RngStream& rng) const;

  [[nodiscard]] double rho_u0() const noexcept { return rho0_; }
  [[nodiscard]] double rho_u1() const noexcept { return rho1_; }

  static double pearson_from_kendall(double tau);

 private:
  double rho0_;
  double rho1_;
  double residual_;
};

CopulaDraw gaussian_copula_sample(KendallTaus taus, RngStream& rng);

double standard_normal_cdf(double z);

}  // namespace caft
