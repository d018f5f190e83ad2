#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace caft {

enum class Provenance { oracle, estimated, adjusted };
enum class CurveAxis { time, treated_cdf };

std::string to_string(Provenance p);
std::string to_string(CurveAxis a);

/// One gridpoint of an acceleration-factor curve. Every point carries both
/// axes: the time t and the treated-arm CDF 1 - S_a(t). Missing values mark
/// gridpoints where the quantile is not identified.
struct AccelPoint {
  double t = 0.0;
  double treated_cdf = 0.0;
  std::optional<double> value;
  std::optional<double> lo;
  std::optional<double> hi;

  [[nodiscard]] bool identified() const { return value.has_value(); }
};

struct AccelCurve {
  CurveAxis axis = CurveAxis::time;
  Provenance provenance = Provenance::oracle;
  std::vector<AccelPoint> points;

  /// Values are positive and the primary axis is strictly increasing.
  void check_invariants() const;

  [[nodiscard]] std::size_t identified_count() const;
  /// Largest |value - other.value| over gridpoints identified in both curves.
  /// Curves must share the grid.
  [[nodiscard]] double max_abs_diff(const AccelCurve& other) const;
  /// Median of the identified values; nullopt when none are identified.
  [[nodiscard]] std::optional<double> median_value() const;
};

/// Rows `series,t,treated_cdf,estimate,lo,hi,identified`.
void write_curve_header(std::ostream& out);
void write_curve_rows(std::ostream& out, const std::string& series, const AccelCurve& curve);

}  // namespace caft
