#include <doctest.h>

#include <cmath>
#include <vector>

#include "caft/error.hpp"
#include "caft/oracle.hpp"
#include "caft/scm.hpp"

using namespace caft;

namespace {

ScmConfig make(FrailtyLaw frailty, EffectLaw effect) {
  ScmConfig c;
  c.frailty = std::move(frailty);
  c.effect = std::move(effect);
  return c;
}

const std::vector<double> kGrid = {0.5, 1.0, 2.0, 3.0, 4.0, 6.0, 8.0};

void check_constant(const AccelCurve& curve, double value, double tol) {
  for (const auto& p : curve.points) {
    REQUIRE(p.identified());
    CHECK(std::abs(*p.value - value) < tol);
  }
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("gamma frailty control survival has its closed form") {
    const auto s = survival_control(make(FrailtyLaw::gamma(1.0), EffectLaw::degenerate(1.0)));
    CHECK(s(0.0) == 1.0);
    for (double t : {0.5, 2.0, 4.0, 6.0, 10.0}) CHECK(s(t) == doctest::Approx(1.0 / (1.0 + t * t * t / 60.0)));
  }

  TEST_CASE("degenerate frailty control median") {
    const auto s = survival_control(make(FrailtyLaw::degenerate(), EffectLaw::degenerate(1.0)));
    const double median = std::cbrt(60.0 * std::log(2.0));
    CHECK(s(median) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(*quantile(s, 0.5) == doctest::Approx(median).epsilon(1e-9));
  }

  TEST_CASE("null effect gives identical arms") {
    const auto c = make(FrailtyLaw::inverse_gaussian(2.0), EffectLaw::degenerate(1.0));
    const auto s0 = survival_control(c);
    const auto s1 = survival_treated(c);
    for (double t : kGrid) CHECK(s0(t) == s1(t));
    check_constant(causal_theta(c, kGrid), 1.0, 1e-9);
    check_constant(causal_eta(c, kGrid), 1.0, 1e-6);
    check_constant(reverse_theta(c, kGrid), 1.0, 1e-9);
    const auto m = moment_contrasts(c);
    CHECK(m.log_diff == doctest::Approx(0.0));
    CHECK(m.mean_ratio == doctest::Approx(1.0));
  }

  TEST_CASE("homogeneous effect collapses every estimand to one number") {
    for (double beta : {std::log(1.0 / 3.0), std::log(3.0)}) {
      for (const auto& frailty : {FrailtyLaw::gamma(0.5), FrailtyLaw::inverse_gaussian(2.0)}) {
        const auto c = make(frailty, EffectLaw::homogeneous(beta, 1.0 / 3.0));
        const double theta = std::exp(beta / 3.0);
        check_constant(causal_theta(c, kGrid), theta, 1e-6);
        check_constant(causal_eta(c, kGrid), theta, 1e-6);
        check_constant(reverse_theta(c, kGrid), 1.0 / theta, 1e-6);
        const auto m = moment_contrasts(c);
        CHECK(std::exp(-m.log_diff) == doctest::Approx(theta).epsilon(1e-6));
        CHECK(1.0 / m.mean_ratio == doctest::Approx(theta).epsilon(1e-6));
      }
    }
    CHECK(std::exp(std::log(3.0) / 3.0) == doctest::Approx(1.442).epsilon(5e-4));
    CHECK(std::exp(std::log(1.0 / 3.0) / 3.0) == doctest::Approx(0.693).epsilon(5e-4));
  }

  TEST_CASE("reverse map inverts the forward map") {
    const auto c = make(FrailtyLaw::gamma(1.0), EffectLaw::homogeneous(std::log(3.0), 1.0 / 3.0));
    const auto fwd = causal_theta(c, kGrid);
    for (const auto& p : fwd.points) {
      const double s = p.t * *p.value;
      const double back = s * *reverse_theta(c, std::vector{s}).points[0].value;
      CHECK(std::abs(back - p.t) < 1e-8);
    }
  }

  TEST_CASE("conditional factor is the effect value") {
    const auto c = make(FrailtyLaw::gamma(1.0), EffectLaw::bhn_law(0.05, 0.5, 0.18, 3.53));
    for (double t : {0.1, 1.0, 10.0}) {
      CHECK(conditional_theta(c, 3.53, t) == 3.53);
      CHECK(conditional_theta(c, 3.53, t, 0) == 1.0);
    }
  }

  TEST_CASE("treated survival of a discrete effect is the exact mixture") {
    const auto c = make(FrailtyLaw::gamma(1.0), EffectLaw::bhn_law(0.05, 0.5, 0.18, 3.53));
    const auto s0 = survival_control(c);
    const auto s1 = survival_treated(c);
    for (double t : kGrid)
      CHECK(s1(t) == doctest::Approx(0.05 * s0(0.5 * t) + 0.18 * s0(3.53 * t) + 0.77 * s0(t)).epsilon(1e-12));
  }

  TEST_CASE("heterogeneous effect gives a decreasing theta inside the atom range") {
    const auto c = make(FrailtyLaw::gamma(1.0), EffectLaw::bhn_law(0.05, 0.5, 0.18, 3.53));
    const double levels[] = {0.05, 0.95};
    const auto t = times_at_treated_cdf(survival_treated(c), levels);
    const auto theta = causal_theta(c, t);
    const double lo = *theta.points[0].value, hi = *theta.points[1].value;
    CHECK(lo > hi);
    for (double v : {lo, hi}) {
      CHECK(v >= 0.5);
      CHECK(v <= 3.53);
    }
  }

  TEST_CASE("eta is the derivative of t theta(t)") {
    const auto c = make(FrailtyLaw::gamma(1.0), EffectLaw::bhn_law(0.05, 0.5, 0.18, 3.53));
    for (double t : {1.0, 2.5, 5.0}) {
      const double h = 1e-3 * t;
      const std::vector<double> g = {t - h, t + h};
      const auto th = causal_theta(c, g);
      const double derivative = ((t + h) * *th.points[1].value - (t - h) * *th.points[0].value) / (2 * h);
      const double eta = *causal_eta(c, std::vector{t}).points[0].value;
      CHECK(std::abs(derivative - eta) < 1e-4);
    }
  }

  TEST_CASE("heterogeneous moment contrasts") {
    const auto c = make(FrailtyLaw::gamma(1.0), EffectLaw::bhn_law(0.05, 0.5, 0.18, 3.53));
    const auto m = moment_contrasts(c);
    CHECK_FALSE(m.mean_diverged);
    CHECK(1.0 / m.mean_ratio == doctest::Approx(1.090).epsilon(0.02));
    // E[log U1] of the atoms, independent of the frailty.
    const double expected = 0.05 * std::log(0.5) + 0.18 * std::log(3.53);
    CHECK(-m.log_diff == doctest::Approx(expected).epsilon(1e-6));
  }

  TEST_CASE("step quantile follows the supremum definition") {
    StepSurvival s;
    s.times = {2.0, 5.0};
    s.values = {0.6, 0.3};
    CHECK(*quantile(s, 0.6) == 5.0);
    CHECK(*quantile(s, 0.9) == 2.0);
    CHECK(*quantile(s, 1.0) == 2.0);
    CHECK_FALSE(quantile(s, 0.3).has_value());
    CHECK_FALSE(quantile(s, 0.1).has_value());
    CHECK_THROWS_AS(quantile(s, 0.0), InvalidArgument);
  }

  TEST_CASE("smooth quantile examples") {
    const SmoothSurvival e([](double t) { return std::exp(-t); }, 10.0);
    CHECK(*quantile(e, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    CHECK(*quantile(e, 1.0) == doctest::Approx(0.0));
    for (double t : {0.01, 0.3, 2.0, 20.0}) CHECK(*quantile(e, e(t)) == doctest::Approx(t).epsilon(1e-8));
  }

  TEST_CASE("mixture theta") {
    const SmoothSurvival s0([](double t) { return std::exp(-(t / 200.0) * (t / 200.0)); }, 1000.0);
    const std::vector<double> grid = {10, 50, 100, 200, 300, 500};
    const AccelComponent single[] = {{1.0, 0.7}};
    check_constant(mixture_theta(s0, single, grid), 0.7, 1e-8);
    const AccelComponent pair[] = {{0.5, 0.9}, {0.5, 0.45}};
    for (const auto& p : mixture_theta(s0, pair, grid).points) {
      CHECK(*p.value >= 0.45 - 1e-12);
      CHECK(*p.value <= 0.9 + 1e-12);
    }
  }

  TEST_CASE("weibull mixture baseline averages its two scales") {
    ScmConfig c;
    c.baseline = WeibullMixtureBaseline{};
    const auto s = survival_control(c);
    const auto weibull = [](double t, double mean) {
      const double scale = mean / std::tgamma(1.5);
      return std::exp(-(t / scale) * (t / scale));
    };
    for (double t : {0.5, 2.0, 8.0}) CHECK(s(t) == doctest::Approx(0.5 * weibull(t, 1) + 0.5 * weibull(t, 10)));
  }

  TEST_CASE("oracle survival agrees with a simulated cohort") {
    std::vector<ScmConfig> configs = {
        make(FrailtyLaw::gamma(2.0), EffectLaw::homogeneous(std::log(3.0), 1.0 / 3.0)),
        make(FrailtyLaw::inverse_gaussian(1.0), EffectLaw::bhn_law(0.7, 0.3, 0.05, 5.10)),
        make(FrailtyLaw::gamma(1.0), EffectLaw::gamma(1.442, 1.0)),
    };
    ScmConfig mixture;
    mixture.baseline = WeibullMixtureBaseline{};
    mixture.effect = EffectLaw::bhn_law(0.05, 0.5, 0.18, 3.53);
    configs.push_back(mixture);
    std::uint64_t seed = 40;
    for (const auto& c : configs) {
      const auto data = generate_cohort(c, 1000000, ++seed);
      for (int arm : {0, 1}) {
        const auto s = arm == 0 ? survival_control(c) : survival_treated(c);
        std::vector<double> t;
        for (const auto& r : data.records())
          if (r.a == arm) t.push_back(r.t_obs);
        std::sort(t.begin(), t.end());
        const double n = static_cast<double>(t.size());
        for (int k = 1; k <= 20; ++k) {
          const double q = t[static_cast<std::size_t>(k * (n - 1) / 21)];
          const double empirical = static_cast<double>(t.end() - std::upper_bound(t.begin(), t.end(), q)) / n;
          CHECK(std::abs(s(q) - empirical) < 0.004);
        }
      }
    }
  }

  TEST_CASE("weibull hazard duality without frailty") {
    const double beta = std::log(3.0);
    const WeibullBaseline b;
    const auto c = make(FrailtyLaw::degenerate(), EffectLaw::homogeneous(beta, b.sigma));
    const auto s1 = survival_treated(c);
    for (double t : {0.5, 1.0, 2.0, 3.0}) {
      const double h = 1e-5 * t;
      const double hazard = -(std::log(s1(t + h)) - std::log(s1(t - h))) / (2 * h);
      const double expected = (b.kappa / b.sigma) * std::pow(t, 1.0 / b.sigma - 1.0) * std::exp(beta);
      CHECK(std::abs(hazard / expected - 1.0) < 1e-5);
    }
  }
}
