#include <doctest.h>

#include <cmath>
#include <vector>

#include "caft/rng.hpp"
#include "caft/stats.hpp"

using namespace caft;

namespace {

// Direct O(n^2) tau-b.
double naive_tau_b(const std::vector<double>& x, const std::vector<double>& y) {
  double concordant = 0, discordant = 0, tx = 0, ty = 0;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j], dy = y[i] - y[j];
      if (dx == 0 && dy == 0) continue;
      if (dx == 0) ++tx;
      else if (dy == 0) ++ty;
      else if (dx * dy > 0) ++concordant;
      else ++discordant;
    }
  return (concordant - discordant) / std::sqrt((concordant + discordant + tx) * (concordant + discordant + ty));
}

}  // namespace

TEST_SUITE("stats") {
  TEST_CASE("kendall tau of perfectly ordered samples") {
    const std::vector<double> x = {1, 2, 3, 4, 5};
    const std::vector<double> up = {10, 20, 30, 40, 50};
    const std::vector<double> down = {5, 4, 3, 2, 1};
    CHECK(kendall_tau(x, up) == doctest::Approx(1.0));
    CHECK(kendall_tau(x, down) == doctest::Approx(-1.0));
  }

  TEST_CASE("kendall tau matches the quadratic definition with ties") {
    RngStream rng(3);
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<double> x(300), y(300);
      for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = static_cast<double>(rng.index(12));
        y[i] = rep % 2 ? static_cast<double>(rng.index(2)) : x[i] + static_cast<double>(rng.index(5));
      }
      CHECK(kendall_tau(x, y) == doctest::Approx(naive_tau_b(x, y)).epsilon(1e-12));
    }
  }

  TEST_CASE("kolmogorov distance") {
    const std::vector<double> grid = {0.1, 0.3, 0.5, 0.7, 0.9};
    const auto uniform = [](double v) { return v; };
    CHECK(ks_statistic(grid, uniform) == doctest::Approx(0.1));
    CHECK(ks_critical_value(100, 0.05) == doctest::Approx(1.358 / 10.0).epsilon(0.01));
  }

  TEST_CASE("mean and unbiased variance") {
    const std::vector<double> x = {1, 2, 3, 4};
    CHECK(mean(x) == 2.5);
    CHECK(variance(x) == doctest::Approx(5.0 / 3.0));
  }
}
