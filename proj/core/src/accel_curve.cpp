#include "caft/accel_curve.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "caft/csv.hpp"
#include "caft/error.hpp"

namespace caft {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::oracle: return "oracle";
    case Provenance::estimated: return "estimated";
    case Provenance::adjusted: return "adjusted";
  }
  return "?";
}

std::string to_string(CurveAxis a) { return a == CurveAxis::time ? "time" : "treated_cdf"; }

void AccelCurve::check_invariants() const {
  double prev = -INFINITY;
  for (const auto& p : points) {
    const double x = axis == CurveAxis::time ? p.t : p.treated_cdf;
    if (!(x > prev)) throw InvalidArgument("acceleration curve grid must be strictly increasing");
    prev = x;
    if (p.value && !(*p.value > 0.0)) throw InvalidArgument("acceleration factor must be positive");
  }
}

std::size_t AccelCurve::identified_count() const {
  return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const auto& p) { return p.identified(); }));
}

double AccelCurve::max_abs_diff(const AccelCurve& other) const {
  if (other.points.size() != points.size()) throw InvalidArgument("curves do not share a grid");
  double worst = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (points[i].value && other.points[i].value)
      worst = std::max(worst, std::abs(*points[i].value - *other.points[i].value));
  return worst;
}

std::optional<double> AccelCurve::median_value() const {
  std::vector<double> v;
  for (const auto& p : points)
    if (p.value) v.push_back(*p.value);
  if (v.empty()) return std::nullopt;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

void write_curve_header(std::ostream& out) { out << "series,t,treated_cdf,estimate,lo,hi,identified\n"; }

void write_curve_rows(std::ostream& out, const std::string& series, const AccelCurve& curve) {
  csv::Writer w(out);
  for (const auto& p : curve.points)
    w.row({series, csv::format_number(p.t), csv::format_number(p.treated_cdf), csv::format_optional(p.value),
           csv::format_optional(p.lo), csv::format_optional(p.hi), p.identified() ? "1" : "0"});
}

}  // namespace caft
