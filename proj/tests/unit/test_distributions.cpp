#include <doctest.h>

#include <cmath>
#include <vector>

#include "caft/distributions.hpp"
#include "caft/error.hpp"
#include "caft/stats.hpp"

using namespace caft;

namespace {

std::vector<double> draws(const FrailtyLaw& law, std::size_t n, std::uint64_t seed) {
  RngStream rng(seed);
  std::vector<double> out(n);
  for (auto& x : out) x = sample(law, rng);
  return out;
}

std::vector<double> draws(const EffectLaw& law, std::size_t n, std::uint64_t seed) {
  RngStream rng(seed);
  std::vector<double> out(n);
  for (auto& x : out) x = sample(law, rng);
  return out;
}

// Mean within 3 standard errors, variance within 3 standard errors of the
// sample variance (fourth moment estimated from the draws).
void check_moments(const std::vector<double>& x, double mu, double var) {
  const double n = static_cast<double>(x.size());
  const double m = mean(x);
  const double v = variance(x);
  CHECK(std::abs(m - mu) < 3.0 * std::sqrt(var / n) + 1e-12);
  double m4 = 0.0;
  for (double xi : x) m4 += std::pow(xi - m, 4);
  m4 /= n;
  CHECK(std::abs(v - var) < 3.0 * std::sqrt(std::max(m4 - v * v, 0.0) / n) + 1e-12);
}

}  // namespace

TEST_SUITE("distributions") {
  TEST_CASE("point masses draw their value") {
    RngStream rng(1);
    for (int i = 0; i < 100; ++i) {
      CHECK(sample(FrailtyLaw::degenerate(), rng) == 1.0);
      CHECK(sample(EffectLaw::degenerate(1.0), rng) == 1.0);
    }
    CHECK(FrailtyLaw::gamma(0.0).kind == FrailtyKind::degenerate);
  }

  TEST_CASE("continuous laws match their first two moments") {
    constexpr std::size_t n = 1000000;
    for (double v : {0.5, 1.0, 2.0}) {
      CAPTURE(v);
      check_moments(draws(FrailtyLaw::gamma(v), n, 11), 1.0, v);
      check_moments(draws(FrailtyLaw::inverse_gaussian(v), n, 12), 1.0, v);
    }
    check_moments(draws(EffectLaw::gamma(1.442, 0.5), n, 13), 1.442, 0.5);
  }

  TEST_CASE("gamma with shape 2 and scale 0.5 has mean one") {
    const auto x = draws(FrailtyLaw::gamma(0.5), 1000000, 3);
    CHECK(mean(x) == doctest::Approx(1.0).epsilon(0.01));
  }

  TEST_CASE("benefit-harm-neutral law hits its atoms at the stated rates") {
    const auto law = EffectLaw::bhn_law(0.05, 0.5, 0.18, 3.53);
    CHECK(law.mean() == doctest::Approx(1.4304).epsilon(1e-9));
    constexpr std::size_t n = 1000000;
    const auto x = draws(law, n, 4);
    CHECK(std::abs(mean(x) - 1.4304) < 0.01);
    double benefit = 0, neutral = 0, harm = 0;
    for (double u : x) {
      if (u == 0.5) ++benefit;
      else if (u == 1.0) ++neutral;
      else if (u == 3.53) ++harm;
      else FAIL("draw off the atoms: " << u);
    }
    const double nn = static_cast<double>(n);
    for (auto [count, p] : {std::pair{benefit, 0.05}, {neutral, 0.77}, {harm, 0.18}})
      CHECK(std::abs(count / nn - p) < 3.0 * std::sqrt(p * (1 - p) / nn));
  }

  TEST_CASE("effect laws reject invalid parameters") {
    CHECK_THROWS_AS(EffectLaw::bhn_law(0.6, 0.5, 0.6, 2.0), InvalidArgument);
    CHECK_THROWS_AS(EffectLaw::bhn_law(0.1, 1.5, 0.1, 2.0), InvalidArgument);
    CHECK_THROWS_AS(EffectLaw::bhn_law(-0.1, 0.5, 0.1, 2.0), InvalidArgument);
    CHECK_THROWS_AS(FrailtyLaw::gamma(-1.0), InvalidArgument);
    CHECK_THROWS_AS(EffectLaw::degenerate(0.0), InvalidArgument);
  }

  TEST_CASE("extreme value variate is minimum-type") {
    RngStream rng(5);
    constexpr std::size_t n = 1000000;
    std::vector<double> w(n);
    std::size_t above = 0;
    for (auto& x : w) {
      x = sample_standard_extreme_value(rng);
      above += std::exp(x) > 1.0;
    }
    CHECK(std::abs(static_cast<double>(above) / n - std::exp(-1.0)) < 0.005);
    std::nth_element(w.begin(), w.begin() + n / 2, w.end());
    CHECK(std::abs(w[n / 2] - std::log(std::log(2.0))) < 0.01);
  }

  TEST_CASE("laplace transform closed forms") {
    for (const auto& law : {FrailtyLaw::degenerate(), FrailtyLaw::gamma(1.0), FrailtyLaw::inverse_gaussian(1.0)})
      CHECK(laplace_transform(law, 0.0) == 1.0);
    CHECK(laplace_transform(FrailtyLaw::gamma(1.0), 1.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(laplace_transform(FrailtyLaw::inverse_gaussian(1.0), 1.0) ==
          doctest::Approx(std::exp(1.0 - std::sqrt(3.0))).epsilon(1e-12));
    CHECK(laplace_transform(FrailtyLaw::degenerate(), 2.0) == doctest::Approx(std::exp(-2.0)));
    CHECK_THROWS_AS(laplace_transform(FrailtyLaw::weibull_mixture_scale({1, 10}, {0.5, 0.5}), 1.0), Unsupported);
  }

  TEST_CASE("laplace transform agrees with Monte Carlo and is nonincreasing") {
    constexpr std::size_t n = 1000000;
    std::uint64_t seed = 100;
    for (double v : {0.5, 1.0, 2.0}) {
      for (const auto& law : {FrailtyLaw::gamma(v), FrailtyLaw::inverse_gaussian(v)}) {
        const auto x = draws(law, n, ++seed);
        double prev = 1.0;
        for (double s : {0.1, 1.0, 10.0}) {
          double mc = 0.0;
          for (double u : x) mc += std::exp(-u * s);
          mc /= static_cast<double>(n);
          const double lt = laplace_transform(law, s);
          CAPTURE(v);
          CAPTURE(s);
          CHECK(std::abs(lt - mc) < 0.003);
          CHECK(lt <= prev);
          prev = lt;
        }
      }
    }
  }

  TEST_CASE("inverse cdf pushes uniforms onto the law") {
    for (double v : {0.5, 2.0}) {
      const auto g = FrailtyLaw::gamma(v);
      const auto ig = FrailtyLaw::inverse_gaussian(v);
      std::vector<double> xg, xi;
      for (int i = 1; i < 20000; ++i) {
        const double u = (i - 0.5) / 20000.0;
        xg.push_back(inverse_cdf(g, u));
        xi.push_back(inverse_cdf(ig, u));
      }
      CHECK(mean(xg) == doctest::Approx(1.0).epsilon(0.02));
      CHECK(mean(xi) == doctest::Approx(1.0).epsilon(0.02));
      for (double u : {0.1, 0.5, 0.9}) CHECK(inverse_cdf(g, u) < inverse_cdf(g, u + 0.05));
    }
    const auto bhn = EffectLaw::bhn_law(0.05, 0.5, 0.18, 3.53);
    CHECK(inverse_cdf(bhn, 0.01) == 0.5);
    CHECK(inverse_cdf(bhn, 0.5) == 1.0);
    CHECK(inverse_cdf(bhn, 0.99) == 3.53);
  }

  TEST_CASE("copula without dependence gives independent uniforms") {
    RngStream rng(21);
    constexpr std::size_t n = 100000;
    std::vector<double> l(n), u0(n), u1(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto d = gaussian_copula_sample({0.0, 0.0}, rng);
      l[i] = d.l;
      u0[i] = d.u0;
      u1[i] = d.u1;
    }
    CHECK(std::abs(kendall_tau(l, u0)) < 0.01);
    CHECK(std::abs(kendall_tau(l, u1)) < 0.01);
    CHECK(std::abs(kendall_tau(u0, u1)) < 0.01);
  }

  TEST_CASE("copula reproduces the requested Kendall tau with uniform margins") {
    RngStream rng(22);
    constexpr std::size_t n = 100000;
    const GaussianCopula copula({0.5, 0.0});
    std::vector<double> l(n), u0(n), u1(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto d = copula.sample(rng);
      l[i] = d.l;
      u0[i] = d.u0;
      u1[i] = d.u1;
    }
    CHECK(std::abs(kendall_tau(l, u0) - 0.5) < 0.01);
    CHECK(std::abs(kendall_tau(l, u1)) < 0.01);
    const auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };
    CHECK(ks_statistic(l, uniform) < 0.005);
    CHECK(ks_statistic(u0, uniform) < 0.005);
    CHECK(ks_statistic(u1, uniform) < 0.005);
  }

  TEST_CASE("copula rejects an indefinite correlation matrix") {
    CHECK_THROWS_AS(GaussianCopula({0.9, 0.9}), InvalidArgument);
    CHECK_THROWS_AS(GaussianCopula({1.0, 0.0}), InvalidArgument);
    CHECK_NOTHROW(GaussianCopula({0.5, 0.5}));
  }

  TEST_CASE("same stream seed reproduces every sampler") {
    const auto a = draws(FrailtyLaw::inverse_gaussian(2.0), 1000, 9);
    const auto b = draws(FrailtyLaw::inverse_gaussian(2.0), 1000, 9);
    CHECK(a == b);
    const auto c = draws(EffectLaw::gamma(0.693, 1.0), 1000, 9);
    const auto d = draws(EffectLaw::gamma(0.693, 1.0), 1000, 9);
    CHECK(c == d);
  }
}
