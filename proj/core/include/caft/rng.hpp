#pragma once

#include <cstdint>
#include <random>

namespace caft {

/// A reproducible random stream identified by a 64-bit key.
///
/// Streams are splittable: `substream(i)` derives a child stream whose key
/// depends only on the parent key and `i`, so replication `i` of a Monte
/// Carlo experiment draws the same variates whether it runs serially or on
/// any worker thread.
class RngStream {
 public:
  using engine_type = std::mt19937_64;

  explicit RngStream(std::uint64_t seed);

  [[nodiscard]] RngStream substream(std::uint64_t index) const;
  [[nodiscard]] std::uint64_t key() const noexcept { return key_; }

  /// Uniform on the open interval (0, 1).
  double uniform();
  double normal();
  /// Unit-rate exponential.
  double exponential();
  double gamma(double shape, double scale);
  bool bernoulli(double p);
  /// Uniform integer in [0, n).
  std::uint64_t index(std::uint64_t n);

  engine_type& engine() noexcept { return engine_; }

 private:
  struct FromKey {};
  RngStream(FromKey, std::uint64_t key);

  std::uint64_t key_;
  engine_type engine_;
};

/// SplitMix64 finalizer; used for key derivation and hashing.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace caft
