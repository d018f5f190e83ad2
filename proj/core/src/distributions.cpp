#include "caft/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <boost/math/distributions/inverse_gaussian.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "caft/error.hpp"

namespace caft {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

// Discrete inverse CDF over (weight, value) pairs sorted by value.
double discrete_quantile(std::vector<std::pair<double, double>> atoms, double u) {
  std::sort(atoms.begin(), atoms.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  double cum = 0.0;
  for (const auto& [w, v] : atoms) {
    cum += w;
    if (u <= cum) return v;
  }
  return atoms.back().second;
}

double clamp_unit(double u) {
  return std::clamp(u, 0x1.0p-60, 1.0 - 0x1.0p-53);
}

}  // namespace

// --- FrailtyLaw -------------------------------------------------------------

FrailtyLaw FrailtyLaw::degenerate() { return FrailtyLaw{}; }

FrailtyLaw FrailtyLaw::gamma(double variance) {
  require(variance >= 0.0 && std::isfinite(variance), "frailty variance must be finite and >= 0");
  if (variance == 0.0) return degenerate();
  FrailtyLaw law;
  law.kind = FrailtyKind::gamma;
  law.variance = variance;
  return law;
}

FrailtyLaw FrailtyLaw::inverse_gaussian(double variance) {
  require(variance >= 0.0 && std::isfinite(variance), "frailty variance must be finite and >= 0");
  if (variance == 0.0) return degenerate();
  FrailtyLaw law;
  law.kind = FrailtyKind::inverse_gaussian;
  law.variance = variance;
  return law;
}

FrailtyLaw FrailtyLaw::weibull_mixture_scale(std::vector<double> atoms, std::vector<double> weights) {
  FrailtyLaw law;
  law.kind = FrailtyKind::weibull_mixture_scale;
  law.atoms = std::move(atoms);
  law.weights = std::move(weights);
  law.validate();
  return law;
}

void FrailtyLaw::validate() const {
  switch (kind) {
    case FrailtyKind::degenerate:
      return;
    case FrailtyKind::gamma:
    case FrailtyKind::inverse_gaussian:
      require(variance > 0.0 && std::isfinite(variance), "frailty variance must be > 0");
      return;
    case FrailtyKind::weibull_mixture_scale: {
      require(!atoms.empty() && atoms.size() == weights.size(), "mixture scale needs matching atoms and weights");
      double total = 0.0;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        require(atoms[i] > 0.0, "mixture scale atoms must be positive");
        require(weights[i] >= 0.0, "mixture scale weights must be nonnegative");
        total += weights[i];
      }
      require(std::abs(total - 1.0) < 1e-12, "mixture scale weights must sum to 1");
      return;
    }
  }
}

double FrailtyLaw::mean() const {
  if (kind != FrailtyKind::weibull_mixture_scale) return 1.0;
  return std::inner_product(atoms.begin(), atoms.end(), weights.begin(), 0.0);
}

double FrailtyLaw::var() const {
  if (kind != FrailtyKind::weibull_mixture_scale) return kind == FrailtyKind::degenerate ? 0.0 : variance;
  const double m = mean();
  double v = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) v += weights[i] * (atoms[i] - m) * (atoms[i] - m);
  return v;
}

// --- EffectLaw --------------------------------------------------------------

EffectLaw EffectLaw::degenerate(double factor) {
  EffectLaw law;
  law.value = factor;
  law.validate();
  return law;
}

EffectLaw EffectLaw::homogeneous(double log_hr, double sigma) {
  return degenerate(std::exp(log_hr * sigma));
}

EffectLaw EffectLaw::bhn_law(double p1, double mu1, double p2, double mu2) {
  EffectLaw law;
  law.kind = EffectKind::bhn;
  law.bhn = {p1, mu1, p2, mu2};
  law.validate();
  return law;
}

EffectLaw EffectLaw::gamma(double mean, double variance) {
  if (variance == 0.0) return degenerate(mean);
  EffectLaw law;
  law.kind = EffectKind::gamma;
  law.gamma_mean = mean;
  law.gamma_variance = variance;
  law.validate();
  return law;
}

void EffectLaw::validate() const {
  switch (kind) {
    case EffectKind::degenerate:
      require(value > 0.0 && std::isfinite(value), "degenerate effect must be positive");
      return;
    case EffectKind::bhn:
      require(bhn.p1 >= 0.0 && bhn.p2 >= 0.0 && bhn.p1 + bhn.p2 <= 1.0 + 1e-12,
              "BHN probabilities must lie in the simplex");
      require(bhn.mu1 > 0.0 && bhn.mu1 < 1.0 && bhn.mu2 > 1.0 && std::isfinite(bhn.mu2),
              "BHN requires 0 < mu1 < 1 < mu2");
      return;
    case EffectKind::gamma:
      require(gamma_mean > 0.0 && gamma_variance > 0.0 && std::isfinite(gamma_variance),
              "gamma effect needs positive mean and variance");
      return;
  }
}

double EffectLaw::mean() const {
  switch (kind) {
    case EffectKind::degenerate:
      return value;
    case EffectKind::bhn:
      return bhn.p1 * bhn.mu1 + bhn.p2 * bhn.mu2 + (1.0 - bhn.p1 - bhn.p2);
    case EffectKind::gamma:
      return gamma_mean;
  }
  return 0.0;
}

double EffectLaw::var() const {
  switch (kind) {
    case EffectKind::degenerate:
      return 0.0;
    case EffectKind::bhn: {
      const double m = mean();
      double v = 0.0;
      for (const auto& [w, x] : atoms()) v += w * (x - m) * (x - m);
      return v;
    }
    case EffectKind::gamma:
      return gamma_variance;
  }
  return 0.0;
}

std::vector<std::pair<double, double>> EffectLaw::atoms() const {
  switch (kind) {
    case EffectKind::degenerate:
      return {{1.0, value}};
    case EffectKind::bhn:
      return {{bhn.p1, bhn.mu1}, {1.0 - bhn.p1 - bhn.p2, 1.0}, {bhn.p2, bhn.mu2}};
    case EffectKind::gamma:
      break;
  }
  throw Unsupported("gamma effect law has no atoms");
}

double EffectLaw::gamma_shape() const { return gamma_mean * gamma_mean / gamma_variance; }
double EffectLaw::gamma_scale() const { return gamma_variance / gamma_mean; }

// --- sampling ---------------------------------------------------------------

namespace {

// Michael, Schucany and Haas (1976) transformation with one rejection step.
double sample_inverse_gaussian(double mu, double lambda, RngStream& rng) {
  const double nu = rng.normal();
  const double y = nu * nu;
  const double x = mu + mu * mu * y / (2.0 * lambda) -
                   mu / (2.0 * lambda) * std::sqrt(4.0 * mu * lambda * y + mu * mu * y * y);
  return rng.uniform() <= mu / (mu + x) ? x : mu * mu / x;
}

}  // namespace

double sample(const FrailtyLaw& law, RngStream& rng) {
  switch (law.kind) {
    case FrailtyKind::degenerate:
      return 1.0;
    case FrailtyKind::gamma:
      return rng.gamma(1.0 / law.variance, law.variance);
    case FrailtyKind::inverse_gaussian:
      return sample_inverse_gaussian(1.0, 1.0 / law.variance, rng);
    case FrailtyKind::weibull_mixture_scale: {
      std::vector<std::pair<double, double>> atoms;
      for (std::size_t i = 0; i < law.atoms.size(); ++i) atoms.emplace_back(law.weights[i], law.atoms[i]);
      return discrete_quantile(std::move(atoms), rng.uniform());
    }
  }
  return 1.0;
}

double sample(const EffectLaw& law, RngStream& rng) {
  switch (law.kind) {
    case EffectKind::degenerate:
      return law.value;
    case EffectKind::bhn:
      return discrete_quantile(law.atoms(), rng.uniform());
    case EffectKind::gamma:
      return rng.gamma(law.gamma_shape(), law.gamma_scale());
  }
  return 1.0;
}

double sample_standard_extreme_value(RngStream& rng) { return std::log(rng.exponential()); }

double laplace_transform(const FrailtyLaw& law, double s) {
  require(s >= 0.0, "Laplace transform argument must be nonnegative");
  switch (law.kind) {
    case FrailtyKind::degenerate:
      return std::exp(-s);
    case FrailtyKind::gamma:
      return std::exp(-std::log1p(law.variance * s) / law.variance);
    case FrailtyKind::inverse_gaussian:
      // (1 - sqrt(1 + 2 rho s)) / rho, written to avoid cancellation at small s.
      return std::exp(-2.0 * s / (1.0 + std::sqrt(1.0 + 2.0 * law.variance * s)));
    case FrailtyKind::weibull_mixture_scale:
      break;
  }
  throw Unsupported("mixture-scale frailty is evaluated as an explicit mixture, not a transform");
}

double inverse_cdf(const FrailtyLaw& law, double u) {
  require(u > 0.0 && u < 1.0, "inverse_cdf needs u in (0, 1)");
  switch (law.kind) {
    case FrailtyKind::degenerate:
      return 1.0;
    case FrailtyKind::gamma:
      return boost::math::gamma_p_inv(1.0 / law.variance, u) * law.variance;
    case FrailtyKind::inverse_gaussian:
      return boost::math::quantile(boost::math::inverse_gaussian_distribution<double>(1.0, 1.0 / law.variance), u);
    case FrailtyKind::weibull_mixture_scale: {
      std::vector<std::pair<double, double>> atoms;
      for (std::size_t i = 0; i < law.atoms.size(); ++i) atoms.emplace_back(law.weights[i], law.atoms[i]);
      return discrete_quantile(std::move(atoms), u);
    }
  }
  return 1.0;
}

double inverse_cdf(const EffectLaw& law, double u) {
  require(u > 0.0 && u < 1.0, "inverse_cdf needs u in (0, 1)");
  switch (law.kind) {
    case EffectKind::degenerate:
      return law.value;
    case EffectKind::bhn:
      return discrete_quantile(law.atoms(), u);
    case EffectKind::gamma:
      return boost::math::gamma_p_inv(law.gamma_shape(), u) * law.gamma_scale();
  }
  return 1.0;
}

// --- copula -----------------------------------------------------------------

double standard_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double GaussianCopula::pearson_from_kendall(double tau) {
  require(std::abs(tau) < 1.0, "Kendall's tau must lie in (-1, 1)");
  return std::sin(std::numbers::pi * tau / 2.0);
}

GaussianCopula::GaussianCopula(KendallTaus taus)
    : rho0_(pearson_from_kendall(taus.l_u0)), rho1_(pearson_from_kendall(taus.l_u1)) {
  // Correlation matrix [[1, r0, r1], [r0, 1, 0], [r1, 0, 1]] is PSD iff r0^2 + r1^2 <= 1.
  const double slack = 1.0 - rho0_ * rho0_ - rho1_ * rho1_;
  if (slack < -1e-12) throw InvalidArgument("copula correlation matrix is not positive semi-definite");
  residual_ = std::sqrt(std::max(0.0, slack));
}

CopulaDraw GaussianCopula::sample(RngStream& rng) const {
  const double z0 = rng.normal();
  const double z1 = rng.normal();
  const double e = rng.normal();
  const double zl = rho0_ * z0 + rho1_ * z1 + residual_ * e;
  return {clamp_unit(standard_normal_cdf(zl)), clamp_unit(standard_normal_cdf(z0)),
          clamp_unit(standard_normal_cdf(z1))};
}

CopulaDraw gaussian_copula_sample(KendallTaus taus, RngStream& rng) { return GaussianCopula(taus).sample(rng); }

}  // namespace caft
