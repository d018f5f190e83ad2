#include "caft/experiments.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "caft/csv.hpp"
#include "caft/error.hpp"
#include "caft/estimators.hpp"
#include "caft/oracle.hpp"
#include "caft/rng.hpp"

#ifndef CAFT_GIT_DESCRIBE
#define CAFT_GIT_DESCRIBE "unknown"
#endif

namespace caft {
namespace {

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << body;
  if (!out) throw IoError("write failed: " + path.string());
}

void write_artifacts(const std::filesystem::path& dir, const std::string& name, const RunContext& ctx,
                     const Artifacts& artifacts) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / "estimates.csv", artifacts.estimates);
  write_file(dir / "oracle.csv", artifacts.oracle);
  write_file(dir / "summary.csv", summary_csv(artifacts.summary));

  std::ostringstream hashed;
  hashed << artifacts.config_text << "n_obs = " << ctx.n_obs << "\nn_sim = " << ctx.n_sim << "\nseed = " << ctx.seed
         << '\n';
  nlohmann::ordered_json manifest;
  manifest["scenario"] = name;
  manifest["seed"] = ctx.seed;
  manifest["n_obs"] = ctx.n_obs;
  manifest["n_sim"] = ctx.n_sim;
  manifest["config_hash"] = text_hash(hashed.str());
  manifest["build"] = CAFT_GIT_DESCRIBE;
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace

const Scenario* find_scenario(std::string_view name) {
  for (const auto& s : scenarios())
    if (s.name == name) return &s;
  return nullptr;
}

RunContext make_context(const Scenario& scenario, const RunOptions& options) {
  RunContext ctx;
  ctx.n_obs = options.n_obs.value_or(scenario.n_obs);
  ctx.n_sim = options.n_sim.value_or(scenario.n_sim);
  ctx.seed = options.seed.value_or(scenario.seed);
  ctx.threads = std::max(1u, options.threads);
  if (scenario.n_obs > 0 && ctx.n_obs < 2) throw InvalidArgument("n_obs must be at least 2");
  if (ctx.n_sim < 1) throw InvalidArgument("n_sim must be at least 1");
  return ctx;
}

std::filesystem::path run_scenario(const Scenario& scenario, const RunOptions& options) {
  const RunContext ctx = make_context(scenario, options);
  const Artifacts artifacts = scenario.run(ctx);
  const auto dir = options.out / scenario.name;
  write_artifacts(dir, scenario.name, ctx, artifacts);
  return dir;
}

Artifacts analyze_config(const ConfigFile& file, unsigned threads) {
  (void)threads;  // a single cohort; nothing to fan out
  const ScmConfig& config = file.config;
  config.validate();
  const Dataset data = generate(config, file.n_obs, file.seed);
  const auto km0 = kaplan_meier(data, 0);
  const auto km1 = kaplan_meier(data, 1);

  const auto levels = cdf_levels(0.05, 0.95, 0.05);
  const auto times = times_at_treated_cdf(survival_treated(config), levels);
  const auto oracle = causal_theta(config, times);
  const auto observed = observed_theta(km0, km1, times);

  Artifacts out;
  out.config_text = to_config_text(config);
  std::ostringstream est, orc;
  write_curve_header(est);
  write_curve_rows(est, "theta_m", observed);
  write_curve_header(orc);
  write_curve_rows(orc, "theta", oracle);

  out.summary.push_back({"cohort", "theta_m_gap", observed.max_abs_diff(oracle), {}, {}, 0.0});
  if (auto s = theta_summary(km0, km1)) out.summary.push_back({"cohort", "theta_m_summary", *s, {}, {}, {}});
  if (data.has_confounder()) {
    const auto& design = std::get<ConfoundedTreatment>(config.treatment);
    const auto adjusted =
        adjusted_theta(adjusted_survival(data, 0, design), adjusted_survival(data, 1, design), times);
    write_curve_rows(est, "theta_adj", adjusted);
    out.summary.push_back({"cohort", "theta_adj_gap", adjusted.max_abs_diff(oracle), {}, {}, 0.0});
  }
  const auto cox = cox_fit(data);
  out.summary.push_back({"cohort", "cox_hr", std::exp(cox.log_hr), std::exp(cox.log_hr - 1.96 * cox.standard_error),
                         std::exp(cox.log_hr + 1.96 * cox.standard_error), {}});
  double censored = 0;
  for (const auto& r : data.records()) censored += r.d == 0;
  out.summary.push_back({"cohort", "censored_fraction", censored / static_cast<double>(data.size()), {}, {}, {}});
  out.estimates = est.str();
  out.oracle = orc.str();
  return out;
}

std::filesystem::path run_config_file(const ConfigFile& file, const std::string& name, const RunOptions& options) {
  ConfigFile f = file;
  if (options.n_obs) f.n_obs = *options.n_obs;
  if (options.seed) f.seed = *options.seed;
  const Artifacts artifacts = analyze_config(f, options.threads);
  RunContext ctx{f.n_obs, 1, f.seed, options.threads};
  const auto dir = options.out / name;
  write_artifacts(dir, name, ctx, artifacts);
  return dir;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  csv::Writer w(out);
  w.row({"key", "estimand", "value", "lo", "hi", "reference"});
  for (const auto& r : rows)
    w.row({r.key, r.estimand, csv::format_number(r.value), csv::format_optional(r.lo), csv::format_optional(r.hi),
           csv::format_optional(r.reference)});
  return out.str();
}

std::vector<SummaryRow> read_summary(const std::filesystem::path& path) {
  const auto table = csv::read_file(path);
  auto opt = [&](std::size_t i, const char* col) -> std::optional<double> {
    const double v = table.number(i, col);
    if (std::isnan(v)) return std::nullopt;
    return v;
  };
  std::vector<SummaryRow> rows;
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    rows.push_back({table.at(i, "key"), table.at(i, "estimand"), table.number(i, "value"), opt(i, "lo"),
                    opt(i, "hi"), opt(i, "reference")});
  return rows;
}

std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t config_index, std::uint64_t replicate) {
  return RngStream(seed).substream(config_index).substream(replicate).key();
}

std::vector<double> cdf_levels(double lo, double hi, double step) {
  if (!(step > 0.0) || !(lo <= hi)) throw InvalidArgument("cdf_levels: bad range");
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::llround((hi - lo) / step));
  for (std::size_t i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

bool VerifyReport::passed() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

}  // namespace caft
