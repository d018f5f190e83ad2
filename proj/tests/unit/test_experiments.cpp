#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "caft/error.hpp"
#include "caft/experiments.hpp"

using namespace caft;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("caft_unit_" + name);
  fs::remove_all(dir);
  return dir;
}

void check_identical(const fs::path& a, const fs::path& b) {
  for (const char* f : {"estimates.csv", "oracle.csv", "summary.csv", "manifest.json"}) {
    CAPTURE(f);
    CHECK(slurp(a / f) == slurp(b / f));
  }
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("registry holds the twelve exhibits once each") {
    const std::set<std::string> expected = {"table1a", "table1b", "fig1",  "fig2L", "fig2R",     "fig3",
                                            "fig5",    "figA1",   "figA2", "figA3", "suppTable", "caseMixture"};
    std::set<std::string> seen;
    for (const auto& s : scenarios()) {
      CHECK(seen.insert(s.name).second);
      CHECK_FALSE(s.description.empty());
      CHECK(s.run);
    }
    CHECK(seen == expected);
    CHECK(find_scenario("fig1") != nullptr);
    CHECK(find_scenario("fig4") == nullptr);
  }

  TEST_CASE("every exhibit has verification rules") {
    for (const auto& s : scenarios()) {
      CAPTURE(s.name);
      // Rules exist, so an empty summary fails on a missing row rather than a missing rule.
      CHECK_THROWS_AS(verify_rows(s.name, {}), IoError);
    }
    CHECK_THROWS_AS(verify_rows("fig4", {}), InvalidArgument);
  }

  TEST_CASE("reruns are byte identical") {
    const auto root = scratch("rerun");
    RunOptions opt;
    opt.out = root / "a";
    const auto a = run_scenario(*find_scenario("caseMixture"), opt);
    opt.out = root / "b";
    const auto b = run_scenario(*find_scenario("caseMixture"), opt);
    check_identical(a, b);
    fs::remove_all(root);
  }

  TEST_CASE("thread count does not change replicated artifacts") {
    const auto root = scratch("threads");
    RunOptions opt;
    opt.n_sim = 24;
    opt.n_obs = 200;
    opt.out = root / "serial";
    opt.threads = 1;
    const auto a = run_scenario(*find_scenario("table1a"), opt);
    opt.out = root / "parallel";
    opt.threads = 4;
    const auto b = run_scenario(*find_scenario("table1a"), opt);
    check_identical(a, b);
    fs::remove_all(root);
  }

  TEST_CASE("manifest records seed and sizes") {
    const auto root = scratch("manifest");
    RunOptions opt;
    opt.out = root;
    opt.seed = 123;
    const auto dir = run_scenario(*find_scenario("caseMixture"), opt);
    const auto manifest = slurp(dir / "manifest.json");
    CHECK(manifest.find("\"seed\": 123") != std::string::npos);
    CHECK(manifest.find("\"config_hash\"") != std::string::npos);
    CHECK(manifest.find("\"build\"") != std::string::npos);
    fs::remove_all(root);
  }

  TEST_CASE("verifying an unrun scenario is an artifact error") {
    const auto root = scratch("missing");
    CHECK_THROWS_AS(verify_scenario("fig3", root), IoError);
  }

  TEST_CASE("summary rows round trip through csv") {
    const auto root = scratch("summary");
    fs::create_directories(root);
    const std::vector<SummaryRow> rows = {{"gamma_1", "theta_m", 0.69312345678901234, 0.69, 0.70, 0.693},
                                          {"ig_2", "failed_replicates", 0.0, {}, {}, {}}};
    std::ofstream(root / "summary.csv") << summary_csv(rows);
    const auto back = read_summary(root / "summary.csv");
    REQUIRE(back.size() == 2);
    CHECK(back[0].key == "gamma_1");
    CHECK(back[0].value == rows[0].value);
    CHECK(*back[0].hi == 0.70);
    CHECK_FALSE(back[1].lo.has_value());
    CHECK_FALSE(back[1].reference.has_value());
    fs::remove_all(root);
  }

  TEST_CASE("replicate seeds are distinct and stable") {
    std::set<std::uint64_t> seeds;
    for (std::uint64_t c = 0; c < 12; ++c)
      for (std::uint64_t r = 0; r < 100; ++r) seeds.insert(replicate_seed(1, c, r));
    CHECK(seeds.size() == 1200);
    CHECK(replicate_seed(7, 2, 3) == replicate_seed(7, 2, 3));
  }

  TEST_CASE("context validation") {
    const auto& s = *find_scenario("table1a");
    RunOptions opt;
    opt.n_obs = 1;
    CHECK_THROWS_AS(make_context(s, opt), InvalidArgument);
    opt.n_obs.reset();
    opt.n_sim = 0;
    CHECK_THROWS_AS(make_context(s, opt), InvalidArgument);
  }

  TEST_CASE("cdf levels are evenly spaced and inclusive") {
    const auto l = cdf_levels(0.1, 0.9, 0.05);
    REQUIRE(l.size() == 17);
    CHECK(l.front() == 0.1);
    CHECK(l.back() == doctest::Approx(0.9));
  }

  TEST_CASE("a user config runs end to end") {
    const auto root = scratch("config");
    ConfigFile file = parse_config("frailty = gamma\nfrailty_variance = 1\neffect = degenerate\neffect_factor = 1.442\n"
                                   "n_obs = 20000\nseed = 3\n");
    RunOptions opt;
    opt.out = root;
    const auto dir = run_config_file(file, "custom", opt);
    const auto rows = read_summary(dir / "summary.csv");
    bool saw_gap = false;
    for (const auto& r : rows)
      if (r.estimand == "theta_m_gap") {
        saw_gap = true;
        CHECK(r.value < 0.1);
      }
    CHECK(saw_gap);
    fs::remove_all(root);
  }
}
