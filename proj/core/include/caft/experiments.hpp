#pragma once

// Scenario registry and artifact plumbing. Each scenario regenerates one
// exhibit as three CSV files plus a manifest under <out>/<name>/.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "caft/config_file.hpp"

namespace caft {

struct RunContext {
  std::size_t n_obs = 0;
  std::size_t n_sim = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// One row of summary.csv: `key,estimand,value,lo,hi,reference`.
struct SummaryRow {
  std::string key;
  std::string estimand;
  double value = 0.0;
  std::optional<double> lo;
  std::optional<double> hi;
  std::optional<double> reference;
};

struct Artifacts {
  std::string estimates;    // estimates.csv body including header
  std::string oracle;       // oracle.csv body including header
  std::vector<SummaryRow> summary;
  std::string config_text;  // canonical description hashed into the manifest
};

struct Scenario {
  std::string name;         // equals the exhibit tag
  std::string citation;     // exhibit label printed by `describe`
  std::string description;  // configs and grids, printed by `describe`
  std::size_t n_obs = 0;
  std::size_t n_sim = 1;
  std::uint64_t seed = 1;
  std::function<Artifacts(const RunContext&)> run;
};

const std::vector<Scenario>& scenarios();
/// nullptr when no scenario has this name.
const Scenario* find_scenario(std::string_view name);

struct RunOptions {
  std::optional<std::size_t> n_obs;
  std::optional<std::size_t> n_sim;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out = "results";
  unsigned threads = 1;
};

RunContext make_context(const Scenario& scenario, const RunOptions& options);

/// Runs a scenario and writes estimates.csv, oracle.csv, summary.csv and
/// manifest.json into <out>/<name>. Returns the directory.
std::filesystem::path run_scenario(const Scenario& scenario, const RunOptions& options);

/// Generic run of a user config: theta_m against the oracle theta on the
/// treated-CDF grid, plus the Cox fit. Artifacts go to <out>/<name>.
std::filesystem::path run_config_file(const ConfigFile& file, const std::string& name, const RunOptions& options);
Artifacts analyze_config(const ConfigFile& file, unsigned threads);

std::string summary_csv(const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary(const std::filesystem::path& path);

/// Replicate r of configuration c under a scenario seed.
std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t config_index, std::uint64_t replicate);

/// Treated-CDF levels lo, lo+step, ..., hi.
std::vector<double> cdf_levels(double lo, double hi, double step);

// ---- verification ----

struct Check {
  int criterion = 0;  // acceptance criterion this check belongs to; 0 = none
  std::string label;
  double observed = 0.0;
  std::string expected;
  bool pass = false;
};

/// Registered checks for an exhibit, evaluated on its summary rows.
std::vector<Check> verify_rows(const std::string& exhibit, const std::vector<SummaryRow>& rows);

struct VerifyReport {
  std::string scenario;
  std::vector<Check> checks;
  [[nodiscard]] bool passed() const;
};

/// Reads <dir>/<name>/summary.csv and applies the exhibit's rules. Throws
/// IoError when the artifacts are missing.
VerifyReport verify_scenario(const std::string& name, const std::filesystem::path& dir);

/// Oracle consistency checks that must hold before any experiment is run.
std::vector<Check> oracle_integrity_checks(std::uint64_t seed);

std::string format_check(const Check& check);

}  // namespace caft
