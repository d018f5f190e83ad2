#pragma once

// Cohort generation from constant-rate structural AFT models:
//
//   log T0 = -sigma log kappa - sigma log U0 + sigma W,   W min-Gumbel
//   Ta     = T0 / U1^a
//
// optionally with a Weibull-mixture baseline, a measured confounder L tied
// to (U0, U1) by a Gaussian copula, and independent right censoring.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "caft/distributions.hpp"
#include "caft/rng.hpp"

namespace caft {

/// Weibull baseline with cumulative hazard kappa * t^(1/sigma) * U0.
struct WeibullBaseline {
  double sigma = 1.0 / 3.0;
  double kappa = 1.0 / 60.0;
};

/// T0 ~ Weibull(scale = X / Gamma(1 + 1/shape), shape) with X drawn from
/// `scale_law`, so that E[T0 | X] = X.
struct WeibullMixtureBaseline {
  double shape = 2.0;
  FrailtyLaw scale_law = FrailtyLaw::weibull_mixture_scale({1.0, 10.0}, {0.5, 0.5});

  [[nodiscard]] double weibull_scale(double x) const;
};

using Baseline = std::variant<WeibullBaseline, WeibullMixtureBaseline>;

struct RandomizedTreatment {
  double p_treat = 0.5;
};

/// P(A = 1 | L = l) = 0.5 + beta_la (2 l - 1), L ~ Uniform(0, 1).
struct ConfoundedTreatment {
  double beta_la = 0.0;
  KendallTaus taus{};

  [[nodiscard]] double propensity(double l) const { return 0.5 + beta_la * (2.0 * l - 1.0); }
};

using Treatment = std::variant<RandomizedTreatment, ConfoundedTreatment>;

/// Administrative follow-up and exponential censoring compose by minimum.
struct CensoringSpec {
  std::optional<double> administrative;    // follow-up horizon t_max
  std::optional<double> exponential_mean;  // mean of C ~ Exp

  [[nodiscard]] bool none() const { return !administrative && !exponential_mean; }
  void validate() const;
};

struct ScmConfig {
  Baseline baseline = WeibullBaseline{};
  FrailtyLaw frailty = FrailtyLaw::degenerate();
  EffectLaw effect = EffectLaw::degenerate(1.0);
  Treatment treatment = RandomizedTreatment{};
  CensoringSpec censoring{};

  void validate() const;
  [[nodiscard]] bool confounded() const { return std::holds_alternative<ConfoundedTreatment>(treatment); }
};

/// One individual. Latent columns (u0, u1, l, t0, ta) are always populated;
/// `l` is NaN for unconfounded cohorts.
struct CohortRecord {
  double u0 = 1.0;
  double u1 = 1.0;
  double l = 0.0;
  int a = 0;
  double t0 = 0.0;
  double ta = 0.0;
  double t_obs = 0.0;
  int d = 1;

  [[nodiscard]] double factual_time() const { return a == 1 ? ta : t0; }
};

class Dataset {
 public:
  Dataset() = default;
  Dataset(std::vector<CohortRecord> records, bool has_confounder)
      : records_(std::move(records)), has_confounder_(has_confounder) {}

  [[nodiscard]] std::span<const CohortRecord> records() const noexcept { return records_; }
  [[nodiscard]] std::size_t size() const noexcept { return records_.size(); }
  [[nodiscard]] bool empty() const noexcept { return records_.empty(); }
  [[nodiscard]] bool has_confounder() const noexcept { return has_confounder_; }
  const CohortRecord& operator[](std::size_t i) const { return records_[i]; }

  [[nodiscard]] std::size_t arm_size(int a) const;
  [[nodiscard]] bool any_censored() const;

 private:
  std::vector<CohortRecord> records_;
  bool has_confounder_ = false;
};

/// Draws T0 for frailty / mixture-scale value `u0`.
double sample_control_time(const Baseline& baseline, double u0, RngStream& rng);

/// Unconfounded cohort; the config's censoring is not applied.
Dataset generate_cohort(const ScmConfig& config, std::size_t n, std::uint64_t seed);

/// Confounded cohort with (L, U0, U1) from the Gaussian copula; censoring not applied.
Dataset generate_confounded_cohort(const ScmConfig& config, std::size_t n, std::uint64_t seed);

/// Independent right censoring: t_obs = min(T, C, t_max), d = 1{T <= min(C, t_max)}.
Dataset apply_censoring(const Dataset& data, const CensoringSpec& spec, RngStream& rng);

/// Dispatches on the treatment mechanism and applies the config's censoring
/// from a stream disjoint from the generation stream, so a censored and an
/// uncensored cohort with the same seed share every latent value.
Dataset generate(const ScmConfig& config, std::size_t n, std::uint64_t seed);

/// Stream used by `generate` for the censoring step.
RngStream censoring_stream(std::uint64_t seed);

}  // namespace caft
