// caft: regenerate and verify the exhibit scenarios.
//
//   caft list
//   caft describe <scenario>
//   caft run <scenario> [--n-obs N --n-sim M --seed S --out DIR --threads K]
//   caft run [NAME] --config FILE.cfg [...]
//   caft verify <scenario> [--out DIR]

#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "caft/error.hpp"
#include "caft/experiments.hpp"
#include "caft/parallel.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

int list_scenarios() {
  for (const auto& s : caft::scenarios()) std::cout << s.name << "\t" << s.citation << "\n";
  return kExitPass;
}

int describe(const std::string& name) {
  const auto* s = caft::find_scenario(name);
  if (!s) {
    std::cerr << "unknown scenario '" << name << "'; see `caft list`\n";
    return kExitUsage;
  }
  std::cout << s->name << " (" << s->citation << ")\n"
            << "defaults: n_obs = " << s->n_obs << ", n_sim = " << s->n_sim << ", seed = " << s->seed << "\n"
            << s->description;
  return kExitPass;
}

int run(const std::string& name, const std::string& config_path, const caft::RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  std::filesystem::path dir;
  if (!config_path.empty()) {
    const auto file = caft::load_config(config_path);
    dir = caft::run_config_file(file, name.empty() ? std::filesystem::path(config_path).stem().string() : name,
                                options);
  } else {
    const auto* s = caft::find_scenario(name);
    if (!s) {
      std::cerr << "unknown scenario '" << name << "'; see `caft list`\n";
      return kExitUsage;
    }
    dir = caft::run_scenario(*s, options);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::clog << "wrote " << dir.string() << " in " << secs << " s\n";
  return kExitPass;
}

int verify(const std::string& name, const std::filesystem::path& out) {
  const auto report = caft::verify_scenario(name, out);
  for (const auto& c : report.checks) std::cout << caft::format_check(c) << "\n";
  std::cout << (report.passed() ? "PASS " : "FAIL ") << name << "\n";
  return report.passed() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Causal acceleration factor experiments"};
  app.require_subcommand(1);

  app.add_subcommand("list", "List scenarios and the exhibit each reproduces");

  auto* describe_cmd = app.add_subcommand("describe", "Print a scenario's configuration and grids");
  std::string describe_name;
  describe_cmd->add_option("scenario", describe_name)->required();

  auto* run_cmd = app.add_subcommand("run", "Run a scenario or a config file and write CSV artifacts");
  std::string run_name, config_path;
  caft::RunOptions options;
  std::size_t n_obs = 0, n_sim = 0;
  std::uint64_t seed = 0;
  options.threads = caft::default_threads();
  run_cmd->add_option("scenario", run_name, "Scenario name (or output name with --config)");
  run_cmd->add_option("--config", config_path, "Run a key = value config file instead of a scenario")
      ->check(CLI::ExistingFile);
  auto* n_obs_opt = run_cmd->add_option("--n-obs", n_obs, "Cohort size")->check(CLI::PositiveNumber);
  auto* n_sim_opt = run_cmd->add_option("--n-sim", n_sim, "Replications")->check(CLI::PositiveNumber);
  auto* seed_opt = run_cmd->add_option("--seed", seed, "Root seed");
  run_cmd->add_option("--out", options.out, "Output directory")->capture_default_str();
  run_cmd->add_option("--threads", options.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();

  auto* verify_cmd = app.add_subcommand("verify", "Check a scenario's artifacts against registered tolerances");
  std::string verify_name;
  std::filesystem::path verify_out = "results";
  verify_cmd->add_option("scenario", verify_name)->required();
  verify_cmd->add_option("--out", verify_out, "Directory holding the artifacts")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (app.got_subcommand("list")) return list_scenarios();
    if (app.got_subcommand("describe")) return describe(describe_name);
    if (app.got_subcommand("run")) {
      if (run_name.empty() && config_path.empty()) {
        std::cerr << "run: give a scenario name or --config FILE\n";
        return kExitUsage;
      }
      if (*n_obs_opt) options.n_obs = n_obs;
      if (*n_sim_opt) options.n_sim = n_sim;
      if (*seed_opt) options.seed = seed;
      return run(run_name, config_path, options);
    }
    if (app.got_subcommand("verify")) return verify(verify_name, verify_out);
  } catch (const caft::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const caft::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
