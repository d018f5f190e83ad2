#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "caft/error.hpp"
#include "caft/estimators.hpp"

namespace caft {
namespace {

// Per distinct time: records joining the risk set (scanning backwards) and events.
struct TimeGroup {
  double join0 = 0, join1 = 0;
  double d0 = 0, d1 = 0;
};

struct Derivatives {
  double loglik = 0, score = 0, info = 0;
};

// Neumaier compensated sum; the score must resolve 1e-8 over 10^5 terms.
struct CompensatedSum {
  double sum = 0, carry = 0;
  void add(double x) {
    const double t = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  [[nodiscard]] double value() const { return sum + carry; }
};

Derivatives evaluate(const std::vector<TimeGroup>& groups, double beta) {
  // Groups are ordered by decreasing time so the risk set only grows.
  const double e = std::exp(beta);
  double n0 = 0, n1 = 0;
  Derivatives out;
  CompensatedSum loglik, score;
  for (const auto& g : groups) {
    n0 += g.join0;
    n1 += g.join1;
    const double d = g.d0 + g.d1;
    if (d == 0) continue;
    const double s0 = n0 + n1 * e;
    const double mean = n1 * e / s0;
    loglik.add(beta * g.d1 - d * std::log(s0));
    score.add(g.d1 - d * mean);
    out.info += d * mean * (1.0 - mean);
  }
  out.loglik = loglik.value();
  out.score = score.value();
  return out;
}

}  // namespace

CoxFit cox_fit(const Dataset& data) {
  if (data.arm_size(0) == 0 || data.arm_size(1) == 0) throw InvalidArgument("cox_fit: both arms must be non-empty");
  const auto recs = data.records();
  std::vector<std::size_t> order(recs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return recs[i].t_obs > recs[j].t_obs; });

  std::vector<TimeGroup> groups;
  double events0 = 0, events1 = 0;
  for (std::size_t k = 0; k < order.size();) {
    const double t = recs[order[k]].t_obs;
    TimeGroup g;
    for (; k < order.size() && recs[order[k]].t_obs == t; ++k) {
      const auto& r = recs[order[k]];
      (r.a == 1 ? g.join1 : g.join0) += 1;
      if (r.d) (r.a == 1 ? g.d1 : g.d0) += 1;
    }
    events0 += g.d0;
    events1 += g.d1;
    groups.push_back(g);
  }
  if (events0 == 0 || events1 == 0) throw InvalidArgument("cox_fit: each arm needs at least one event");

  CoxFit fit;
  double beta = 0.0;
  Derivatives cur = evaluate(groups, beta);
  constexpr int kMaxIter = 50;
  constexpr double kDivergedBeta = 30.0;
  for (int it = 1; it <= kMaxIter; ++it) {
    fit.iterations = it;
    if (!(cur.info > 0.0)) break;
    double step = cur.score / cur.info;
    Derivatives next = evaluate(groups, beta + step);
    // Near the optimum the log-likelihood gain drops below its rounding
    // error, so a decrease within that noise is not grounds for halving.
    const double noise = 1e-13 * (1.0 + std::abs(cur.loglik));
    for (int halving = 0; halving < 30 && !(next.loglik >= cur.loglik - noise); ++halving) {
      step *= 0.5;
      next = evaluate(groups, beta + step);
    }
    beta += step;
    cur = next;
    if (std::abs(step) < 1e-10) {
      fit.converged = true;
      break;
    }
    if (std::abs(beta) > kDivergedBeta) break;
  }
  fit.log_hr = beta;
  fit.score = cur.score;
  fit.standard_error = cur.info > 0.0 ? 1.0 / std::sqrt(cur.info) : std::numeric_limits<double>::infinity();
  return fit;
}

}  // namespace caft
