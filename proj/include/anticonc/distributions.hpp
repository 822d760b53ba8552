#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

#include "anticonc/config.hpp"
#include "anticonc/family.hpp"

namespace anticonc {

struct Moments {
  double mean;
  double variance;

  double stddev() const;
};

enum class TailMethod { ClosedForm, SpecialFunction, PmfSum, Quadrature, MonteCarlo };

std::string_view method_name(TailMethod m);

/// P(|X - E X| >= y sd(X)) at one parameter point.
struct TailResult {
  double probability;
  TailMethod method;
  double abs_error_bound;
};

/// Exact mean and variance. Throws DomainError for invalid parameters or when
/// a moment overflows double (Weibull with a tiny shape).
Moments moments(const ParamSet& ps);

/// Right-continuous P(X <= x).
double cdf(const ParamSet& ps, double x, const SeriesConfig& cfg = {});

/// Support bounds of an integer-valued family (kmax may be INT64_MAX).
struct IntegerSupport {
  std::int64_t kmin;
  std::int64_t kmax;
};
IntegerSupport integer_support(const ParamSet& ps);

/// ln P(X = k) for the four lattice families; -inf off the support.
double log_pmf(const ParamSet& ps, std::int64_t k);

namespace detail {
/// log_pmf without re-validating the parameters; callers guarantee validity.
double log_pmf_unchecked(const ParamSet& ps, std::int64_t k);
}  // namespace detail

/// Standardized two-sided tail with inclusive boundary. Lattice families are
/// summed pmf term by term; continuous ones use their distribution function
/// on each side separately so small tails keep full relative accuracy.
TailResult tail_probability(const ParamSet& ps, double y, const SeriesConfig& cfg = {});

/// True when x lies in the tail event |x - mean| >= y sd.
inline bool in_tail(double x, const Moments& m, double y) {
  return !(std::abs(x - m.mean) < y * m.stddev());
}

}  // namespace anticonc
