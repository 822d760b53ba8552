#pragma once

#include <cstdint>

#include "anticonc/distributions.hpp"
#include "anticonc/family.hpp"
#include "anticonc/random.hpp"

namespace anticonc {

/// Draws variates of one validated parameter point.
///
/// Continuous laws use inversion (uniform, exponential, Pareto, Weibull),
/// polar normals (Gaussian, log-normal), normal over scaled chi (Student's t)
/// and gamma variates (gamma, beta). Lattice laws use sequential inversion
/// started at the mode, whose CDF value is computed once at construction.
class Sampler {
 public:
  explicit Sampler(ParamSet ps);

  double operator()(RandomStream& rng) const;

  const ParamSet& params() const { return params_; }

 private:
  std::int64_t sample_lattice(RandomStream& rng) const;
  double step_ratio(std::int64_t k) const;  // pmf(k + 1) / pmf(k)

  ParamSet params_;
  // Lattice inversion state.
  std::int64_t kmin_ = 0;
  std::int64_t kmax_ = 0;
  std::int64_t mode_ = 0;
  double pmf_mode_ = 0.0;
  double cdf_mode_ = 0.0;
};

/// One variate; builds a Sampler per call, so prefer Sampler in loops.
double sample(const ParamSet& ps, RandomStream& rng);

}  // namespace anticonc
