#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "anticonc/config.hpp"
#include "anticonc/family.hpp"

namespace anticonc::oracle {

struct McEstimate {
  double estimate;
  double std_err;
  std::uint64_t n_samples;
  std::uint64_t seed;
};

enum class Scale { Linear, Logarithmic };

/// One grid axis. `param` names a family parameter or an auxiliary
/// coordinate consumed by a tie.
struct GridAxis {
  std::string param;
  double lo;
  double hi;
  Scale scale;
  int points;

  std::vector<double> values() const;
};

/// param = factor * source + offset, applied after axes and fixed values.
struct GridTie {
  std::string param;
  std::string source;
  double factor = 1.0;
  double offset = 0.0;
};

struct GridSpec {
  FamilyId family;
  std::vector<GridAxis> axes;
  std::map<std::string, double> fixed;
  std::vector<GridTie> ties;

  std::size_t size() const;
  /// Parameter point at flat index i (first axis varies slowest). Integer
  /// parameters are rounded to nearest.
  ParamSet point(std::size_t i) const;
  /// Throws DomainError if structure is inconsistent or a point is invalid.
  void check() const;
};

/// Same ranges, every axis with 2(points - 1) + 1 points; the original grid
/// is a subset of the refined one.
GridSpec refine(const GridSpec& grid);

/// Verification grid bracketing the limiting parameter ray of each family.
GridSpec canonical_grid(FamilyId family);

struct InfimumEstimate {
  double value;
  ParamSet argmin;
  GridSpec grid;
};

/// Fraction of samples in the tail event. Samples are drawn in fixed-size
/// chunks, chunk c from stream derive_seed(seed, c): the result is identical
/// for any thread count and identical to serial::mc_tail.
McEstimate mc_tail(const ParamSet& ps, double y, std::uint64_t n_samples, std::uint64_t seed);

/// Minimum of tail_probability over every grid point (lowest index on ties).
InfimumEstimate grid_infimum(double y, const GridSpec& grid, const SeriesConfig& cfg = {});

/// Student's t distribution function by adaptive Gauss-Kronrod quadrature of
/// the density; independent of the series route in student_t_cdf.
double quad_student_cdf(std::int64_t n, double x, double abs_tol = 1e-12);

struct Integral {
  double value;
  double abs_error;
};

/// Globally adaptive 15-point Gauss-Kronrod integration on [a, b].
Integral integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                   int max_intervals = 20000);

/// 2 Phi(-y) by quadrature of the normal density: 1 - 2 int_0^y phi.
double quad_normal_two_sided_tail(double y, double abs_tol = 1e-13);

/// |estimate - exact| <= k * sqrt(exact (1 - exact) / n); an exact
/// probability of 0 demands an estimate of exactly 0.
bool within_binomial_sigmas(const McEstimate& mc, double exact, double k);

/// Serial reference kernels; same results as the parallel ones, bit for bit.
namespace serial {
McEstimate mc_tail(const ParamSet& ps, double y, std::uint64_t n_samples, std::uint64_t seed);
InfimumEstimate grid_infimum(double y, const GridSpec& grid, const SeriesConfig& cfg = {});
}  // namespace serial

/// Chunk length shared by both Monte Carlo kernels.
inline constexpr std::uint64_t kMcChunk = 1u << 16;

}  // namespace anticonc::oracle
