#include <doctest.h>

#include <cmath>
#include <sstream>

#include "caft/config_file.hpp"
#include "caft/dataset_io.hpp"
#include "caft/error.hpp"
#include "caft/scm.hpp"

using namespace caft;

namespace {

void check_same(const Dataset& a, const Dataset& b) {
  REQUIRE(a.size() == b.size());
  CHECK(a.has_confounder() == b.has_confounder());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].u0 == b[i].u0);
    CHECK(a[i].u1 == b[i].u1);
    CHECK((a[i].l == b[i].l || (std::isnan(a[i].l) && std::isnan(b[i].l))));
    CHECK(a[i].a == b[i].a);
    CHECK(a[i].t0 == b[i].t0);
    CHECK(a[i].ta == b[i].ta);
    CHECK(a[i].t_obs == b[i].t_obs);
    CHECK(a[i].d == b[i].d);
  }
}

Dataset sample_data(bool confounded) {
  ScmConfig c;
  c.frailty = FrailtyLaw::gamma(1.0);
  c.effect = EffectLaw::bhn_law(0.05, 0.5, 0.18, 3.53);
  c.censoring.exponential_mean = 4.0;
  if (confounded) c.treatment = ConfoundedTreatment{0.2, {0.3, 0.3}};
  return generate(c, 300, 5);
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("dataset csv round trip is exact") {
    for (bool confounded : {false, true}) {
      const auto data = sample_data(confounded);
      std::stringstream buf;
      write_csv(data, buf);
      CHECK(buf.str().rfind("u0,u1,l,a,t0,ta,t_obs,d\n", 0) == 0);
      check_same(data, read_csv(buf));
    }
  }

  TEST_CASE("dataset binary round trip is exact") {
    for (bool confounded : {false, true}) {
      const auto data = sample_data(confounded);
      std::stringstream buf;
      write_binary(data, buf);
      check_same(data, read_binary(buf));
    }
    std::stringstream junk("not a dataset");
    CHECK_THROWS_AS(read_binary(junk), IoError);
  }

  TEST_CASE("malformed csv is rejected") {
    std::stringstream wrong_header("a,b\n1,2\n");
    CHECK_THROWS_AS(read_csv(wrong_header), IoError);
  }

  TEST_CASE("config parses and round trips") {
    const std::string text =
        "# heterogeneous effect under confounding\n"
        "frailty = gamma\nfrailty_variance = 1\n"
        "effect = bhn\nbhn = 0.05, 0.5, 0.18, 3.53\n"
        "treatment = confounded\nbeta_la = 0.25\ntau0 = 0.5\ntau1 = 0\n"
        "censoring_mean = 100\nn_obs = 5000\nseed = 9\n";
    const auto file = parse_config(text);
    CHECK(file.n_obs == 5000);
    CHECK(file.seed == 9);
    CHECK(file.config.frailty.kind == FrailtyKind::gamma);
    CHECK(file.config.effect.bhn.mu2 == 3.53);
    CHECK(*file.config.censoring.exponential_mean == 100.0);
    const auto canonical = to_config_text(file.config);
    CHECK(to_config_text(parse_config(canonical).config) == canonical);
    CHECK(config_hash(file.config) == config_hash(parse_config(canonical).config));
    CHECK(config_hash(file.config).size() == 16);
  }

  TEST_CASE("config hash separates configs") {
    ScmConfig a, b;
    b.effect = EffectLaw::degenerate(1.442);
    CHECK(config_hash(a) != config_hash(b));
  }

  TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse_config("frailty = gamma\nfrailty_varance = 1\n"), InvalidArgument);
    CHECK_THROWS_AS(parse_config("frailty = weird\n"), InvalidArgument);
    CHECK_THROWS_AS(parse_config("p_treat = abc\n"), InvalidArgument);
    CHECK_THROWS_AS(parse_config("p_treat = 0.5\np_treat = 0.4\n"), InvalidArgument);
    CHECK_THROWS_AS(parse_config("just words\n"), InvalidArgument);
    CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), IoError);
  }
}
