#pragma once

#include <cmath>
#include <cstdint>

#include <doctest.h>

#include "anticonc/random.hpp"

namespace testsupport {

inline double uniform_in(anticonc::RandomStream& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.uniform();
}

inline double log_uniform_in(anticonc::RandomStream& rng, double lo, double hi) {
  return std::exp(uniform_in(rng, std::log(lo), std::log(hi)));
}

inline std::int64_t integer_in(anticonc::RandomStream& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng.next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Feeds `cases` generated inputs to `prop`; failures report the case index.
template <class Gen, class Prop>
void for_all(std::uint64_t seed, int cases, Gen gen, Prop prop) {
  anticonc::RandomStream rng(seed);
  for (int i = 0; i < cases; ++i) {
    const auto input = gen(rng);
    CAPTURE(i);
    prop(input);
  }
}

inline double rel_err(double got, double want) {
  return want == 0.0 ? std::abs(got) : std::abs(got - want) / std::abs(want);
}

}  // namespace testsupport
