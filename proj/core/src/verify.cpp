// Registered tolerances per exhibit and the oracle integrity suite.

#include <cmath>
#include <iomanip>
#include <sstream>

#include "caft/csv.hpp"
#include "caft/distributions.hpp"
#include "caft/error.hpp"
#include "caft/experiments.hpp"
#include "caft/oracle.hpp"
#include "reference_values.hpp"

namespace caft {
namespace {

using csv::format_number;

const double kThetaUp = std::cbrt(3.0);
const double kThetaDown = 1.0 / std::cbrt(3.0);

class Rows {
 public:
  explicit Rows(const std::vector<SummaryRow>& rows) : rows_(rows) {}

  const SummaryRow& get(const std::string& key, const std::string& estimand) const {
    for (const auto& r : rows_)
      if (r.key == key && r.estimand == estimand) return r;
    throw IoError("summary has no row " + key + "/" + estimand);
  }
  double value(const std::string& key, const std::string& estimand) const { return get(key, estimand).value; }

 private:
  const std::vector<SummaryRow>& rows_;
};

Check within(int criterion, std::string label, double observed, double target, double tol) {
  std::ostringstream e;
  e << format_number(target) << " +/- " << format_number(tol);
  return {criterion, std::move(label), observed, e.str(), std::abs(observed - target) <= tol};
}

Check below(int criterion, std::string label, double observed, double bound) {
  return {criterion, std::move(label), observed, "< " + format_number(bound), observed < bound};
}

Check above(int criterion, std::string label, double observed, double bound) {
  return {criterion, std::move(label), observed, "> " + format_number(bound), observed > bound};
}

Check in_range(int criterion, std::string label, double observed, double lo, double hi) {
  return {criterion, std::move(label), observed, "in [" + format_number(lo) + ", " + format_number(hi) + "]",
          observed >= lo && observed <= hi};
}

Check info(std::string label, double observed) { return {0, std::move(label), observed, "(informational)", true}; }

const char* kFrailtyKeys[] = {"gamma_0.5", "gamma_1", "gamma_2", "ig_0.5", "ig_1", "ig_2"};

std::vector<Check> table1_rules(const std::string& exhibit, const Rows& rows, bool up) {
  const auto& reference = up ? kTable1Up : kTable1Down;
  const double theta = up ? kThetaUp : kThetaDown;
  std::vector<Check> out;
  for (std::size_t i = 0; i < 6; ++i) {
    const std::string key = kFrailtyKeys[i];
    out.push_back(within(1, exhibit + " " + key + " mean theta_m", rows.value(key, "theta_m"), theta, 0.01));
    const auto& ref = reference[i].cox_hr;
    out.push_back(in_range(1, exhibit + " " + key + " mean exp(beta_hat)", rows.value(key, "cox_hr"), ref.lo - 0.01,
                           ref.hi + 0.01));
  }
  return out;
}

std::vector<Check> fig1_rules(const Rows& rows) {
  return {
      below(2, "fig1 homogeneous sup|theta_m - theta|", rows.value("uncensored", "theta_m_gap"), 0.02),
      below(3, "fig1 sup|theta_m(censored, mean 100) - theta_m(uncensored)|", rows.value("exp100", "theta_m_shift"),
            0.03),
      above(3, "fig1 range of Cox exp(beta_hat) over follow-up x censoring grid", rows.value("grid", "cox_range"), 0.1),
      below(3, "fig1 range of theta_m summary over follow-up x censoring grid", rows.value("grid", "theta_m_range"),
            0.03),
      info("fig1 range of Cox exp(beta_hat) over censoring means at longest follow-up",
           rows.value("longest_follow_up", "cox_range_censoring_only")),
  };
}

std::vector<Check> fig2_rules(const std::string& exhibit, const Rows& rows, bool left) {
  std::vector<Check> out;
  for (const std::string key : {"bhn_mean_1.442", "bhn_mean_0.693"})
    out.push_back(below(2, exhibit + " " + key + " sup|theta_m - theta|", rows.value(key, "theta_m_gap"), 0.02));
  if (left) {
    const std::string key = "bhn_mean_1.442";
    const double at05 = rows.value(key, "theta_at_cdf_0.05"), at95 = rows.value(key, "theta_at_cdf_0.95");
    out.push_back(above(6, exhibit + " theta(cdf 0.05) - theta(cdf 0.95)", at05 - at95, 0.0));
    out.push_back(in_range(6, exhibit + " min theta on [0.05, 0.95]", rows.value(key, "theta_min"), 0.5, 3.53));
    out.push_back(in_range(6, exhibit + " max theta on [0.05, 0.95]", rows.value(key, "theta_max"), 0.5, 3.53));
  }
  return out;
}

std::vector<Check> fig3_rules(const Rows& rows) {
  std::vector<Check> out;
  for (const std::string mean : {"1.442", "0.693"}) {
    double prev = -INFINITY;
    for (double var : kFig3EffectVariances) {
      const std::string key = "gamma_mean_" + mean + "_var_" + format_number(var);
      out.push_back(below(2, "fig3 " + key + " sup|theta_m - theta|", rows.value(key, "theta_m_gap"), 0.02));
      const double range = rows.value(key, "quantile_range");
      if (prev > -INFINITY)
        out.push_back(above(6, "fig3 " + key + " quantile range increase over previous variance", range - prev, 0.0));
      prev = range;
    }
  }
  return out;
}

std::vector<Check> fig5_rules(const Rows& rows) {
  std::vector<Check> out;
  for (const std::string key : {"null_beta", "null_tau"})
    out.push_back(below(7, "fig5 " + key + " sup|theta_m - theta|", rows.value(key, "theta_m_gap"), 0.03));
  for (const std::string key : {"left", "middle", "right"}) {
    const double adj = rows.value(key, "theta_adj_gap"), m = rows.value(key, "theta_m_gap");
    out.push_back(below(7, "fig5 " + key + " sup|theta_adj - theta|", adj, 0.03));
    out.push_back(above(7, "fig5 " + key + " theta_m gap minus theta_adj gap", m - adj, 0.0));
    out.push_back(below(0, "fig5 " + key + " sup|ipw - stratified|", rows.value(key, "ipw_vs_strat"), 0.02));
  }
  const double right = rows.value("right", "theta_m_gap");
  out.push_back(above(7, "fig5 theta_m gap right minus left", right - rows.value("left", "theta_m_gap"), 0.0));
  out.push_back(above(7, "fig5 theta_m gap right minus middle", right - rows.value("middle", "theta_m_gap"), 0.0));
  return out;
}

// Sup over nine panels and 17 gridpoints, with IPW weights up to 1/0.05
// at beta_LA = 0.45; across seeds 1..5 the largest value seen was 0.047.
constexpr double kSweepAdjustedTolerance = 0.06;

std::vector<Check> appendix_rules(const std::string& exhibit, const Rows& rows, int which) {
  auto key = [&](double b, double t) {
    const double t0 = which == 1 ? 0.0 : t, t1 = which == 0 ? 0.0 : t;
    return "beta" + format_number(b) + "_tau" + format_number(t0) + "_" + format_number(t1);
  };
  std::vector<Check> out;
  for (double b : kAppendixLevels)
    for (double t : kAppendixLevels) {
      const std::string k = key(b, t);
      if (b == 0.0 || t == 0.0)
        out.push_back(below(7, exhibit + " " + k + " sup|theta_m - theta| (no confounding)", rows.value(k, "theta_m_gap"),
                            0.03));
      out.push_back(below(0, exhibit + " " + k + " sup|theta_adj - theta|", rows.value(k, "theta_adj_gap"),
                          kSweepAdjustedTolerance));
    }
  // The theta_m gap grows with the strength of either confounding path.
  constexpr double kSlack = 0.005;
  const double hi = kAppendixLevels.back(), mid = kAppendixLevels[1];
  out.push_back(above(0, exhibit + " theta_m gap growth in tau at beta " + format_number(hi),
                      rows.value(key(hi, hi), "theta_m_gap") - rows.value(key(hi, mid), "theta_m_gap"), -kSlack));
  out.push_back(above(0, exhibit + " theta_m gap growth in beta at tau " + format_number(hi),
                      rows.value(key(hi, hi), "theta_m_gap") - rows.value(key(mid, hi), "theta_m_gap"), -kSlack));
  return out;
}

std::vector<Check> supp_rules(const Rows& rows) {
  std::vector<Check> out;
  for (const std::string tag : {"down", "up"}) {
    const bool up = tag == "up";
    const double theta = up ? kThetaUp : kThetaDown;
    const double printed = up ? 1.442 : 0.693;
    for (const char* f : kFrailtyKeys) {
      const std::string key = tag + "/homogeneous_" + f;
      const double mr = rows.value(key, "mean_ratio"), lc = rows.value(key, "log_contrast");
      out.push_back(within(4, key + " E[T0]/E[Ta] = theta (oracle)", mr, theta, 1e-6));
      out.push_back(within(4, key + " exp(E log T0 - E log Ta) = theta (oracle)", lc, theta, 1e-6));
      out.push_back(within(4, key + " Monte Carlo E[T0]/E[Ta] / theta", rows.value(key, "mc_mean_ratio") / theta, 1.0,
                           0.01));
      out.push_back(within(4, key + " Monte Carlo exp(E log T0 - E log Ta) / theta",
                           rows.value(key, "mc_log_contrast") / theta, 1.0, 0.01));
      out.push_back(within(5, key + " mean ratio vs table", mr, printed, 0.01));
      out.push_back(within(5, key + " log contrast vs table", lc, printed, 0.01));
      out.push_back(below(5, key + " mean flagged divergent", rows.value(key, "mean_diverged"), 0.5));
    }
    for (const std::string b : {"bhn_weibull", "bhn_mixture"}) {
      const std::string key = tag + "/" + b;
      const auto& mr = rows.get(key, "mean_ratio");
      out.push_back(within(5, key + " mean ratio vs table", mr.value, *mr.reference, 0.02));
      if (up) {
        const auto& lc = rows.get(key, "log_contrast");
        out.push_back(within(5, key + " log contrast vs table", lc.value, *lc.reference, 0.02));
      }
      out.push_back(below(5, key + " mean flagged divergent", rows.value(key, "mean_diverged"), 0.5));
    }
    for (double var : kFig3EffectVariances) {
      const std::string key = tag + "/gamma_effect_var_" + format_number(var);
      const double flag = rows.value(key, "mean_diverged");
      if (up) {
        out.push_back(below(5, key + " mean flagged divergent", flag, 0.5));
        if (var < 2.0) {
          const auto& mr = rows.get(key, "mean_ratio");
          out.push_back(within(0, key + " mean ratio vs table", mr.value, *mr.reference, 0.02));
        }
      } else {
        out.push_back(above(5, key + " mean flagged divergent", flag, 0.5));
      }
    }
  }
  return out;
}

std::vector<Check> case_rules(const Rows& rows) {
  std::vector<Check> out;
  for (const std::string key : {"weibull_scale200_shape2", "weibull_gamma_frailty", "weibull_mixture", "loglogistic"}) {
    out.push_back(above(8, "caseMixture " + key + " min theta", rows.value(key, "theta_min"), 0.45 - 1e-9));
    out.push_back(below(8, "caseMixture " + key + " max theta", rows.value(key, "theta_max"), 0.9 + 1e-9));
    out.push_back(below(8, "caseMixture " + key + " sup|theta - brute force|", rows.value(key, "brute_force_gap"), 1e-4));
  }
  return out;
}

}  // namespace

std::vector<Check> verify_rows(const std::string& exhibit, const std::vector<SummaryRow>& summary) {
  const Rows rows(summary);
  if (exhibit == "table1a") return table1_rules(exhibit, rows, false);
  if (exhibit == "table1b") return table1_rules(exhibit, rows, true);
  if (exhibit == "fig1") return fig1_rules(rows);
  if (exhibit == "fig2L") return fig2_rules(exhibit, rows, true);
  if (exhibit == "fig2R") return fig2_rules(exhibit, rows, false);
  if (exhibit == "fig3") return fig3_rules(rows);
  if (exhibit == "fig5") return fig5_rules(rows);
  if (exhibit == "figA1") return appendix_rules(exhibit, rows, 0);
  if (exhibit == "figA2") return appendix_rules(exhibit, rows, 1);
  if (exhibit == "figA3") return appendix_rules(exhibit, rows, 2);
  if (exhibit == "suppTable") return supp_rules(rows);
  if (exhibit == "caseMixture") return case_rules(rows);
  throw InvalidArgument("no verification rules for '" + exhibit + "'");
}

VerifyReport verify_scenario(const std::string& name, const std::filesystem::path& dir) {
  if (!find_scenario(name)) throw InvalidArgument("unknown scenario '" + name + "'");
  const auto path = dir / name / "summary.csv";
  if (!std::filesystem::exists(path))
    throw IoError("missing artifact " + path.string() + " (run the scenario first)");
  return {name, verify_rows(name, read_summary(path))};
}

std::string format_check(const Check& c) {
  std::ostringstream out;
  out << (c.pass ? "PASS" : "FAIL") << "  " << c.label << ": observed " << std::setprecision(6) << c.observed
      << ", expected " << c.expected;
  return out.str();
}

// ---------------------------------------------------------------- integrity

std::vector<Check> oracle_integrity_checks(std::uint64_t seed) {
  std::vector<Check> out;
  const RngStream root(seed);
  const FrailtyLaw laws[] = {FrailtyLaw::gamma(0.5),            FrailtyLaw::gamma(1.0),
                             FrailtyLaw::gamma(2.0),            FrailtyLaw::inverse_gaussian(0.5),
                             FrailtyLaw::inverse_gaussian(1.0), FrailtyLaw::inverse_gaussian(2.0)};

  // Laplace transforms against Monte Carlo averages of exp(-s U).
  constexpr std::size_t kDraws = 1000000;
  double worst_laplace = 0.0;
  for (std::size_t i = 0; i < std::size(laws); ++i) {
    RngStream rng = root.substream(i);
    const double s_values[] = {0.5, 1.0, 2.0};
    double acc[3] = {0, 0, 0};
    for (std::size_t k = 0; k < kDraws; ++k) {
      const double u = sample(laws[i], rng);
      for (int j = 0; j < 3; ++j) acc[j] += std::exp(-s_values[j] * u);
    }
    for (int j = 0; j < 3; ++j)
      worst_laplace = std::max(worst_laplace, std::abs(acc[j] / kDraws - laplace_transform(laws[i], s_values[j])));
  }
  out.push_back(below(9, "Laplace transform vs Monte Carlo, max abs diff", worst_laplace, 0.003));

  // Oracle control survival against the simulated cohort.
  double worst_survival = 0.0;
  for (std::size_t i = 0; i < std::size(laws); ++i) {
    ScmConfig c;
    c.frailty = laws[i];
    const Dataset d = generate_cohort(c, kDraws, root.substream(100 + i).key());
    const auto s0 = survival_control(c);
    for (double t : {2.0, 4.0, 6.0}) {
      double above_t = 0;
      for (const auto& r : d.records()) above_t += r.t0 > t;
      worst_survival = std::max(worst_survival, std::abs(above_t / kDraws - s0(t)));
    }
  }
  out.push_back(below(9, "oracle S0 vs simulated S0 at t = 2, 4, 6, max abs diff", worst_survival, 0.003));

  // Without frailty the generator is a Weibull PH model: hazard
  // (kappa/sigma) t^(1/sigma - 1) e^(beta a).
  {
    ScmConfig c;
    const WeibullBaseline b{};
    c.effect = EffectLaw::homogeneous(std::log(3.0), b.sigma);
    const auto s0 = survival_control(c), s1 = survival_treated(c);
    double worst = 0.0;
    for (double t : {0.5, 1.0, 2.0, 4.0}) {
      const double h = 1e-4 * t;
      for (int a = 0; a < 2; ++a) {
        const auto& s = a ? s1 : s0;
        const double hazard = -(std::log(s(t + h)) - std::log(s(t - h))) / (2 * h);
        const double expected = b.kappa / b.sigma * std::pow(t, 1.0 / b.sigma - 1.0) * (a ? 3.0 : 1.0);
        worst = std::max(worst, std::abs(hazard / expected - 1.0));
      }
    }
    out.push_back(below(9, "AFT-PH duality, max relative hazard error", worst, 1e-5));
  }

  // Quantile round trip on smooth survivals.
  {
    double worst = 0.0;
    for (const auto& law : laws) {
      ScmConfig c;
      c.frailty = law;
      c.effect = EffectLaw::bhn_law(0.05, 0.5, 0.18, 3.53);
      for (const auto& s : {survival_control(c), survival_treated(c)})
        for (double t : {0.1, 1.0, 3.0, 10.0, 50.0}) worst = std::max(worst, std::abs(*quantile(s, s(t)) / t - 1.0));
    }
    out.push_back(below(9, "quantile(S, S(t)) / t - 1, max abs", worst, 1e-8));
  }

  // Homogeneity collapse: theta, eta and both moment contrasts agree.
  {
    double worst = 0.0;
    const double grid[] = {0.5, 1.0, 2.0, 4.0, 8.0};
    for (const auto& law : laws)
      for (double log_hr : {std::log(1.0 / 3.0), std::log(3.0)}) {
        ScmConfig c;
        c.frailty = law;
        c.effect = EffectLaw::homogeneous(log_hr, 1.0 / 3.0);
        const double theta = std::exp(log_hr / 3.0);
        const auto th = causal_theta(c, grid), eta = causal_eta(c, grid);
        for (std::size_t i = 0; i < std::size(grid); ++i) {
          worst = std::max(worst, std::abs(*th.points[i].value - theta));
          worst = std::max(worst, std::abs(*eta.points[i].value - theta));
        }
        const auto l = moment_contrasts(c);
        worst = std::max(worst, std::abs(std::exp(-l.log_diff) - theta));
        worst = std::max(worst, std::abs(1.0 / l.mean_ratio - theta));
      }
    out.push_back(below(9, "theta = eta = exp(-log_diff) = 1/mean_ratio under homogeneity, max abs diff", worst, 1e-6));
  }
  return out;
}

}  // namespace caft
