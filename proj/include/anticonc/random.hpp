#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace anticonc {

/// splitmix64 finalizer; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for sub-stream `index` of a master seed. Depends only on the pair, so
/// per-chunk and per-grid-point streams are stable under any thread count.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Reproducible random stream over std::mt19937_64 (period 2^19937 - 1).
/// Not thread-safe; give each worker its own stream.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  /// Standard normal, Marsaglia polar method (variates produced in pairs).
  double normal();
  /// Standard exponential.
  double exponential();
  /// Gamma(shape, 1); Marsaglia-Tsang with the U^{1/shape} boost below 1.
  double gamma(double shape);
  /// ln of a Gamma(shape, 1) variate; stays finite for shapes where the
  /// variate itself underflows.
  double log_gamma_variate(double shape);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

}  // namespace anticonc
