#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "caft/error.hpp"
#include "caft/oracle.hpp"
#include "caft/scm.hpp"
#include "caft/stats.hpp"

using namespace caft;

namespace {

ScmConfig weibull_config(FrailtyLaw frailty, EffectLaw effect) {
  ScmConfig c;
  c.frailty = std::move(frailty);
  c.effect = std::move(effect);
  return c;
}

double median_of(std::vector<double> x) {
  const auto mid = x.begin() + static_cast<std::ptrdiff_t>(x.size() / 2);
  std::nth_element(x.begin(), mid, x.end());
  return *mid;
}

}  // namespace

TEST_SUITE("scm") {
  TEST_CASE("null effect leaves treated times equal to control times") {
    const auto data = generate_cohort(weibull_config(FrailtyLaw::gamma(1.0), EffectLaw::degenerate(1.0)), 1000, 1);
    for (const auto& r : data.records()) CHECK(r.ta == r.t0);
  }

  TEST_CASE("control median matches the closed-form gamma frailty survival") {
    const auto config = weibull_config(FrailtyLaw::gamma(1.0), EffectLaw::homogeneous(std::log(3.0), 1.0 / 3.0));
    const auto data = generate_cohort(config, 1000000, 2);
    std::vector<double> t0;
    t0.reserve(data.size());
    for (const auto& r : data.records()) t0.push_back(r.t0);
    // (1 + t^3 / 60)^-1 = 1/2 at t = 60^(1/3).
    CHECK(median_of(t0) == doctest::Approx(std::cbrt(60.0)).epsilon(0.01));
  }

  TEST_CASE("randomized assignment has the requested rate") {
    constexpr std::size_t n = 200000;
    const auto data = generate_cohort(weibull_config(FrailtyLaw::degenerate(), EffectLaw::degenerate(1.0)), n, 3);
    const double p = static_cast<double>(data.arm_size(1)) / n;
    CHECK(std::abs(p - 0.5) < 3.0 * std::sqrt(0.25 / n));
  }

  TEST_CASE("records are consistent and rank preserving") {
    const auto config = weibull_config(FrailtyLaw::inverse_gaussian(1.0), EffectLaw::bhn_law(0.05, 0.5, 0.18, 3.53));
    const auto data = generate_cohort(config, 20000, 4);
    for (const auto& r : data.records()) {
      CHECK(r.d == 1);
      CHECK(r.t_obs == r.factual_time());
      CHECK(r.ta == doctest::Approx(r.t0 / r.u1).epsilon(1e-12));
      CHECK((r.ta < r.t0) == (r.u1 > 1.0));
      CHECK(std::isnan(r.l));
    }
  }

  TEST_CASE("without frailty log T0 is Gumbel located") {
    const WeibullBaseline b;
    const auto data = generate_cohort(weibull_config(FrailtyLaw::degenerate(), EffectLaw::degenerate(1.0)), 1000000, 5);
    std::vector<double> logt;
    for (const auto& r : data.records()) logt.push_back(std::log(r.t0));
    // Minimum-type Gumbel has mean -gamma.
    const double expected = -b.sigma * std::log(b.kappa) - b.sigma * std::numbers::egamma;
    const double se = std::sqrt(variance(logt) / static_cast<double>(logt.size()));
    CHECK(std::abs(mean(logt) - expected) < 3.0 * se);
  }

  TEST_CASE("empirical arm survival converges to the oracle") {
    const auto config = weibull_config(FrailtyLaw::gamma(1.0), EffectLaw::bhn_law(0.05, 0.5, 0.18, 3.53));
    const auto data = generate_cohort(config, 1000000, 6);
    const auto s0 = survival_control(config);
    const auto s1 = survival_treated(config);
    for (int arm : {0, 1}) {
      std::vector<double> t;
      for (const auto& r : data.records())
        if (r.a == arm) t.push_back(r.t_obs);
      const auto& s = arm == 0 ? s0 : s1;
      CHECK(ks_statistic(t, [&](double x) { return 1.0 - s(x); }) < 0.01);
    }
  }

  TEST_CASE("same seed reproduces the cohort") {
    const auto config = weibull_config(FrailtyLaw::gamma(2.0), EffectLaw::gamma(1.442, 1.0));
    const auto a = generate_cohort(config, 500, 7);
    const auto b = generate_cohort(config, 500, 7);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].t0 == b[i].t0);
      CHECK(a[i].ta == b[i].ta);
      CHECK(a[i].a == b[i].a);
    }
  }

  TEST_CASE("censoring leaves latent values untouched") {
    auto config = weibull_config(FrailtyLaw::gamma(1.0), EffectLaw::degenerate(1.442));
    const auto plain = generate(config, 5000, 8);
    config.censoring.exponential_mean = 3.0;
    config.censoring.administrative = 5.0;
    const auto censored = generate(config, 5000, 8);
    for (std::size_t i = 0; i < plain.size(); ++i) {
      const auto& r = censored[i];
      CHECK(r.t0 == plain[i].t0);
      CHECK(r.ta == plain[i].ta);
      CHECK(r.t_obs <= r.factual_time());
      CHECK(r.t_obs <= 5.0);
      CHECK((r.d == 1) == (r.t_obs == r.factual_time()));
    }
  }

  TEST_CASE("no censoring spec keeps every event") {
    const auto data = generate_cohort(weibull_config(FrailtyLaw::gamma(1.0), EffectLaw::degenerate(1.0)), 1000, 9);
    RngStream rng(1);
    const auto same = apply_censoring(data, CensoringSpec{}, rng);
    for (std::size_t i = 0; i < same.size(); ++i) {
      CHECK(same[i].d == 1);
      CHECK(same[i].t_obs == same[i].factual_time());
    }
  }

  TEST_CASE("exponential censoring fraction matches quadrature") {
    const double m = 4.0;
    auto config = weibull_config(FrailtyLaw::gamma(1.0), EffectLaw::degenerate(1.0));
    config.censoring.exponential_mean = m;
    const auto data = generate(config, 200000, 10);
    double censored = 0, control = 0;
    for (const auto& r : data.records())
      if (r.a == 0) {
        ++control;
        censored += r.d == 0;
      }
    const auto s0 = survival_control(config);
    const double p = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double c) { return s0(c) * std::exp(-c / m) / m; }, 0.0, std::numeric_limits<double>::infinity());
    CHECK(std::abs(censored / control - p) < 0.01);
  }

  TEST_CASE("zero follow-up censors everything") {
    const auto data = generate_cohort(weibull_config(FrailtyLaw::gamma(1.0), EffectLaw::degenerate(1.0)), 100, 11);
    RngStream rng(2);
    CensoringSpec spec;
    spec.administrative = 0.0;
    const auto out = apply_censoring(data, spec, rng);
    for (const auto& r : out.records()) CHECK(r.d == 0);
    spec.exponential_mean = -1.0;
    CHECK_THROWS_AS(apply_censoring(data, spec, rng), InvalidArgument);
  }

  TEST_CASE("confounded cohort links L to treatment and frailty") {
    ScmConfig config = weibull_config(FrailtyLaw::gamma(1.0), EffectLaw::degenerate(1.442));
    config.treatment = ConfoundedTreatment{0.25, {0.5, 0.0}};
    constexpr std::size_t n = 100000;
    const auto data = generate_confounded_cohort(config, n, 12);
    REQUIRE(data.has_confounder());
    std::vector<double> l, a, u0;
    for (const auto& r : data.records()) {
      CHECK(r.l >= 0.0);
      CHECK(r.l <= 1.0);
      l.push_back(r.l);
      a.push_back(r.a);
      u0.push_back(r.u0);
    }
    CHECK(std::abs(kendall_tau(l, u0) - 0.5) < 0.02);
    // With L uniform and P(A=1|L) = 0.5 + b(2L - 1): tau_a = 2b/3 and
    // tau_b = tau_a / sqrt(1/2).
    const double tau_b = (2.0 * 0.25 / 3.0) / std::sqrt(0.5);
    CHECK(std::abs(kendall_tau(l, a) - tau_b) < 0.01);
  }

  TEST_CASE("no confounding slope leaves treatment independent of L") {
    ScmConfig config = weibull_config(FrailtyLaw::gamma(1.0), EffectLaw::degenerate(1.0));
    config.treatment = ConfoundedTreatment{0.0, {0.5, 0.5}};
    const auto data = generate_confounded_cohort(config, 50000, 13);
    std::vector<double> l, a;
    for (const auto& r : data.records()) {
      l.push_back(r.l);
      a.push_back(r.a);
    }
    CHECK(std::abs(kendall_tau(l, a)) < 0.01);
  }

  TEST_CASE("config validation rejects bad parameters") {
    ScmConfig c;
    c.treatment = RandomizedTreatment{1.0};
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c.treatment = ConfoundedTreatment{0.6, {}};
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c.treatment = RandomizedTreatment{};
    c.baseline = WeibullBaseline{-1.0, 1.0};
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    CHECK_THROWS_AS(generate_cohort(ScmConfig{}, 0, 1), InvalidArgument);
    ScmConfig conf;
    conf.treatment = ConfoundedTreatment{};
    CHECK_THROWS_AS(generate_cohort(conf, 10, 1), InvalidArgument);
  }
}
