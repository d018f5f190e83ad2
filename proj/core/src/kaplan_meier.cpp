#include <algorithm>
#include <iostream>
#include <numeric>

#include "caft/error.hpp"
#include "caft/estimators.hpp"

namespace caft {

StepSurvival kaplan_meier(std::span<const double> times, std::span<const int> events,
                          std::span<const double> weights) {
  const std::size_t n = times.size();
  if (n == 0) throw InvalidArgument("kaplan_meier: empty sample");
  if (events.size() != n) throw InvalidArgument("kaplan_meier: times and events differ in length");
  if (!weights.empty() && weights.size() != n) throw InvalidArgument("kaplan_meier: weights differ in length");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return times[i] < times[j]; });

  auto weight = [&](std::size_t i) { return weights.empty() ? 1.0 : weights[i]; };
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = weight(i);
    if (!(w >= 0.0)) throw InvalidArgument("kaplan_meier: negative weight");
    if (!(times[i] >= 0.0)) throw InvalidArgument("kaplan_meier: negative or NaN time");
    total += w;
  }

  StepSurvival km;
  km.last_observed = times[order.back()];
  double at_risk = total;
  double s = 1.0;
  for (std::size_t k = 0; k < n;) {
    const double t = times[order[k]];
    double d = 0.0;
    double leaving = 0.0;
    std::size_t m = k;
    for (; m < n && times[order[m]] == t; ++m) {
      const double w = weight(order[m]);
      leaving += w;
      if (events[order[m]] != 0) d += w;
    }
    if (d > 0.0 && at_risk > 0.0) {
      s *= 1.0 - d / at_risk;
      km.times.push_back(t);
      km.values.push_back(s);
      km.at_risk.push_back(at_risk);
      km.events.push_back(d);
    }
    at_risk -= leaving;
    k = m;
  }
  if (km.times.empty()) std::clog << "warning: kaplan_meier: no events, curve is flat\n";
  return km;
}

StepSurvival kaplan_meier(const Dataset& data, int arm) {
  std::vector<double> t;
  std::vector<int> d;
  for (const auto& r : data.records()) {
    if (r.a != arm) continue;
    t.push_back(r.t_obs);
    d.push_back(r.d);
  }
  if (t.empty()) throw InvalidArgument("kaplan_meier: arm " + std::to_string(arm) + " is empty");
  auto km = kaplan_meier(t, d);
  km.arm = arm;
  return km;
}

}  // namespace caft
