#pragma once

#include <cstdint>

#include "anticonc/distributions.hpp"
#include "anticonc/oracle.hpp"
#include "anticonc/sampling.hpp"

namespace anticonc::oracle::detail {

// Tail hits in Monte Carlo chunk `chunk` of a run with `n_samples` draws.
inline std::uint64_t count_chunk(const Sampler& sampler, const Moments& m, double y,
                                 std::uint64_t seed, std::uint64_t chunk, std::uint64_t n_samples) {
  const std::uint64_t begin = chunk * kMcChunk;
  const std::uint64_t end = std::min(n_samples, begin + kMcChunk);
  RandomStream rng(derive_seed(seed, chunk));
  std::uint64_t hits = 0;
  for (std::uint64_t i = begin; i < end; ++i) hits += in_tail(sampler(rng), m, y) ? 1u : 0u;
  return hits;
}

McEstimate make_estimate(std::uint64_t hits, std::uint64_t n_samples, std::uint64_t seed);

void check_mc_args(const ParamSet& ps, double y, std::uint64_t n_samples);

// Index of the smallest value; lowest index wins ties.
std::size_t argmin_index(const std::vector<double>& values);

}  // namespace anticonc::oracle::detail
