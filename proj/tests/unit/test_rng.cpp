#include <doctest.h>

#include <set>

#include "caft/rng.hpp"

using caft::RngStream;

TEST_SUITE("rng") {
  TEST_CASE("same seed reproduces the stream") {
    RngStream a(42), b(42);
    for (int i = 0; i < 1000; ++i) CHECK(a.uniform() == b.uniform());
  }

  TEST_CASE("different seeds and substreams differ") {
    RngStream a(42), b(43);
    CHECK(a.uniform() != b.uniform());
    const RngStream root(7);
    std::set<std::uint64_t> keys;
    for (std::uint64_t i = 0; i < 1000; ++i) keys.insert(root.substream(i).key());
    CHECK(keys.size() == 1000);
    CHECK(root.substream(3).key() == RngStream(7).substream(3).key());
  }

  TEST_CASE("substream does not advance the parent") {
    RngStream a(5), b(5);
    (void)a.substream(1);
    CHECK(a.uniform() == b.uniform());
  }

  TEST_CASE("uniform is on the open unit interval") {
    RngStream r(1);
    double lo = 1, hi = 0, sum = 0;
    constexpr int n = 200000;
    for (int i = 0; i < n; ++i) {
      const double u = r.uniform();
      lo = std::min(lo, u);
      hi = std::max(hi, u);
      sum += u;
    }
    CHECK(lo > 0.0);
    CHECK(hi < 1.0);
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.005));
  }

  TEST_CASE("index stays in range") {
    RngStream r(2);
    for (int i = 0; i < 10000; ++i) CHECK(r.index(7) < 7);
  }
}
