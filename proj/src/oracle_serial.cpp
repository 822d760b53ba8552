#include "anticonc/distributions.hpp"
#include "anticonc/oracle.hpp"
#include "oracle_detail.hpp"

namespace anticonc::oracle::serial {

McEstimate mc_tail(const ParamSet& ps, double y, std::uint64_t n_samples, std::uint64_t seed) {
  detail::check_mc_args(ps, y, n_samples);
  const Moments m = moments(ps);
  const Sampler sampler(ps);
  const std::uint64_t chunks = (n_samples + kMcChunk - 1) / kMcChunk;
  std::uint64_t hits = 0;
  for (std::uint64_t c = 0; c < chunks; ++c) hits += detail::count_chunk(sampler, m, y, seed, c, n_samples);
  return detail::make_estimate(hits, n_samples, seed);
}

InfimumEstimate grid_infimum(double y, const GridSpec& grid, const SeriesConfig& cfg) {
  grid.check();
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = tail_probability(grid.point(i), y, cfg).probability;
  }
  const std::size_t best = detail::argmin_index(values);
  return {values[best], grid.point(best), grid};
}

}  // namespace anticonc::oracle::serial
