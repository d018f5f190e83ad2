#include "caft/rng.hpp"

#include <cmath>

namespace caft {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

std::mt19937_64 seeded_engine(std::uint64_t key) {
  std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32),
                    static_cast<std::uint32_t>(mix64(key)), static_cast<std::uint32_t>(mix64(key) >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) : RngStream(FromKey{}, mix64(seed)) {}

RngStream::RngStream(FromKey, std::uint64_t key) : key_(key), engine_(seeded_engine(key)) {}

RngStream RngStream::substream(std::uint64_t index) const {
  return RngStream(FromKey{}, mix64(key_ ^ mix64(index + 0x632be59bd9b4e019ULL)));
}

double RngStream::uniform() {
  // 53 random bits placed at the centre of their cell: never 0, never 1.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

double RngStream::exponential() { return -std::log(uniform()); }

double RngStream::gamma(double shape, double scale) {
  return std::gamma_distribution<double>(shape, scale)(engine_);
}

bool RngStream::bernoulli(double p) { return uniform() < p; }

std::uint64_t RngStream::index(std::uint64_t n) {
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
}

}  // namespace caft
