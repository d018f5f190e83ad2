#pragma once

// Survival functions and their generalized inverse
//   S^{-1}(p) = sup { t >= 0 : S(t) >= p }.

#include <functional>
#include <optional>
#include <vector>

namespace caft {

/// Evaluatable survival function S(t) with S(0) = 1, nonincreasing and
/// vanishing at infinity. `support_hint` is a time where S is already small;
/// quantile brackets start there.
class SmoothSurvival {
 public:
  SmoothSurvival(std::function<double(double)> fn, double support_hint);

  double operator()(double t) const { return t <= 0.0 ? 1.0 : fn_(t); }
  [[nodiscard]] double support_hint() const noexcept { return support_hint_; }

 private:
  std::function<double(double)> fn_;
  double support_hint_;
};

/// Right-continuous nonincreasing step function starting at 1, as produced
/// by the (possibly weighted) product-limit estimator.
struct StepSurvival {
  std::vector<double> times;    // strictly increasing jump times
  std::vector<double> values;   // S just after each jump
  std::vector<double> at_risk;  // (weighted) number at risk at each jump
  std::vector<double> events;   // (weighted) number of events at each jump
  int arm = -1;
  double last_observed = 0.0;   // largest observed time, event or censored

  double operator()(double t) const;
  /// Value after the final jump (1 for a curve without jumps).
  [[nodiscard]] double min_value() const { return values.empty() ? 1.0 : values.back(); }
  [[nodiscard]] std::size_t size() const noexcept { return times.size(); }
  void check_invariants() const;
};

/// Generalized inverse of a smooth survival function by bisection. The
/// bracket grows geometrically from the support hint until S < p. Returns
/// nullopt when p is not attained above the curve's infimum.
std::optional<double> quantile(const SmoothSurvival& s, double p);

/// Generalized inverse of a step function: the jump time at which the curve
/// first drops below p. nullopt when p <= min_value(): the supremum then lies
/// beyond the last jump and is not identified.
std::optional<double> quantile(const StepSurvival& s, double p);

}  // namespace caft
