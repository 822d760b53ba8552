#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace anticonc {

/// Truncation control for power series and continued fractions.
struct SeriesConfig {
  double rel_tol = 1e-15;
  long max_terms = 1'000'000;

  void check() const;
};

/// Every numeric knob the library and the CLI expose.
///
/// The random stream is `std::mt19937_64` seeded from a 64-bit value; one
/// stream per Monte Carlo chunk or grid point, derived from `seed` with
/// splitmix64 (see random.hpp).
struct NumericConfig {
  SeriesConfig series{};
  double quad_tol = 1e-12;
  std::uint64_t mc_samples = 1'000'000;
  std::uint64_t seed = 0x5EED'A11C'0FFE'E000ULL;

  void check() const;
};

/// Parses {"rel_tol", "max_terms", "quad_tol", "mc_samples", "seed"}; absent
/// keys keep their defaults, unknown keys are rejected.
NumericConfig parse_config(const std::string& json_text);
NumericConfig load_config_file(const std::string& path);

/// Explicit path first, then $ANTICONC_CONFIG, then defaults.
NumericConfig resolve_config(const std::optional<std::string>& path);

}  // namespace anticonc
