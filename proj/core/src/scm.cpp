#include "caft/scm.hpp"

#include <cmath>
#include <iostream>

#include "caft/error.hpp"

namespace caft {

double WeibullMixtureBaseline::weibull_scale(double x) const { return x / std::tgamma(1.0 + 1.0 / shape); }

void CensoringSpec::validate() const {
  if (administrative && !(*administrative >= 0.0))
    throw InvalidArgument("follow-up horizon must be nonnegative");
  if (exponential_mean && !(*exponential_mean > 0.0))
    throw InvalidArgument("censoring mean must be positive");
}

void ScmConfig::validate() const {
  if (const auto* w = std::get_if<WeibullBaseline>(&baseline)) {
    if (!(w->sigma > 0.0) || !(w->kappa > 0.0)) throw InvalidArgument("Weibull baseline needs sigma > 0 and kappa > 0");
    frailty.validate();
    if (frailty.kind == FrailtyKind::weibull_mixture_scale)
      throw InvalidArgument("mixture-scale law is only valid as a Weibull-mixture baseline");
  } else {
    const auto& m = std::get<WeibullMixtureBaseline>(baseline);
    if (!(m.shape > 0.0)) throw InvalidArgument("Weibull-mixture shape must be positive");
    m.scale_law.validate();
  }
  effect.validate();
  if (const auto* r = std::get_if<RandomizedTreatment>(&treatment)) {
    if (!(r->p_treat > 0.0 && r->p_treat < 1.0)) throw InvalidArgument("p_treat must lie in (0, 1)");
  } else {
    const auto& c = std::get<ConfoundedTreatment>(treatment);
    if (!(c.beta_la >= 0.0 && c.beta_la <= 0.5)) throw InvalidArgument("beta_la must lie in [0, 0.5]");
    GaussianCopula check(c.taus);
    (void)check;
  }
  censoring.validate();
}

std::size_t Dataset::arm_size(int a) const {
  std::size_t n = 0;
  for (const auto& r : records_) n += (r.a == a);
  return n;
}

bool Dataset::any_censored() const {
  for (const auto& r : records_)
    if (r.d == 0) return true;
  return false;
}

double sample_control_time(const Baseline& baseline, double u0, RngStream& rng) {
  if (const auto* w = std::get_if<WeibullBaseline>(&baseline)) {
    const double extreme = sample_standard_extreme_value(rng);
    return std::exp(-std::log(w->kappa) * w->sigma - std::log(u0) * w->sigma + w->sigma * extreme);
  }
  const auto& m = std::get<WeibullMixtureBaseline>(baseline);
  return m.weibull_scale(u0) * std::pow(rng.exponential(), 1.0 / m.shape);
}

namespace {

const FrailtyLaw& u0_law(const ScmConfig& config) {
  if (const auto* m = std::get_if<WeibullMixtureBaseline>(&config.baseline)) return m->scale_law;
  return config.frailty;
}

CohortRecord complete(CohortRecord r, const Baseline& baseline, RngStream& rng) {
  r.t0 = sample_control_time(baseline, r.u0, rng);
  r.ta = r.t0 / r.u1;
  r.t_obs = r.factual_time();
  r.d = 1;
  return r;
}

}  // namespace

Dataset generate_cohort(const ScmConfig& config, std::size_t n, std::uint64_t seed) {
  config.validate();
  if (n == 0) throw InvalidArgument("cohort size must be at least 1");
  if (config.confounded()) throw InvalidArgument("generate_cohort needs a randomized treatment; use generate_confounded_cohort");
  const double p_treat = std::get<RandomizedTreatment>(config.treatment).p_treat;
  const FrailtyLaw& frailty = u0_law(config);

  RngStream rng(seed);
  std::vector<CohortRecord> records;
  records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    CohortRecord r;
    r.u0 = sample(frailty, rng);
    r.u1 = sample(config.effect, rng);
    r.l = std::nan("");
    r.a = rng.bernoulli(p_treat) ? 1 : 0;
    records.push_back(complete(r, config.baseline, rng));
  }
  return Dataset(std::move(records), false);
}

Dataset generate_confounded_cohort(const ScmConfig& config, std::size_t n, std::uint64_t seed) {
  config.validate();
  if (n == 0) throw InvalidArgument("cohort size must be at least 1");
  const auto* treatment = std::get_if<ConfoundedTreatment>(&config.treatment);
  if (treatment == nullptr) throw InvalidArgument("generate_confounded_cohort needs a confounded treatment spec");
  const GaussianCopula copula(treatment->taus);
  const FrailtyLaw& frailty = u0_law(config);

  RngStream rng(seed);
  std::vector<CohortRecord> records;
  records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const CopulaDraw draw = copula.sample(rng);
    CohortRecord r;
    r.l = draw.l;
    r.u0 = inverse_cdf(frailty, draw.u0);
    r.u1 = inverse_cdf(config.effect, draw.u1);
    r.a = rng.bernoulli(treatment->propensity(r.l)) ? 1 : 0;
    records.push_back(complete(r, config.baseline, rng));
  }
  return Dataset(std::move(records), true);
}

Dataset apply_censoring(const Dataset& data, const CensoringSpec& spec, RngStream& rng) {
  spec.validate();
  if (spec.administrative && *spec.administrative == 0.0)
    std::clog << "caft: warning: zero follow-up horizon censors every record\n";
  std::vector<CohortRecord> records(data.records().begin(), data.records().end());
  for (auto& r : records) {
    const double t = r.factual_time();
    double c = spec.administrative.value_or(INFINITY);
    if (spec.exponential_mean) c = std::min(c, *spec.exponential_mean * rng.exponential());
    r.t_obs = std::min(t, c);
    r.d = t <= c ? 1 : 0;
  }
  return Dataset(std::move(records), data.has_confounder());
}

RngStream censoring_stream(std::uint64_t seed) { return RngStream(seed).substream(0xC3A5); }

Dataset generate(const ScmConfig& config, std::size_t n, std::uint64_t seed) {
  Dataset data = config.confounded() ? generate_confounded_cohort(config, n, seed) : generate_cohort(config, n, seed);
  if (config.censoring.none()) return data;
  RngStream rng = censoring_stream(seed);
  return apply_censoring(data, config.censoring, rng);
}

}  // namespace caft
