#pragma once

#include "anticonc/config.hpp"

namespace anticonc::specfun {

/// ln Gamma(x) for x > 0 (Lanczos, g = 671/128, 15 coefficients).
double log_gamma(double x);

/// Gauss hypergeometric 2F1(a, b; c; z) for real z < 1.
///
/// z in [0, 1) is summed directly; z < 0 goes through the Pfaff
/// transformation (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)) so the summed argument
/// always lies in [0, 1). When c - b < 0 <= c - a that series alternates and
/// cancels badly, so the mirror form (1-z)^{-b} 2F1(c-a, b; c; z/(z-1)) with
/// all-positive terms is summed instead. If both c - a and c - b are
/// negative, both forms are summed and the one with the smaller
/// sum|term| / |sum| is returned. Summation stops once two consecutive terms
/// and the geometric bound on the remainder are below `cfg.rel_tol` relative;
/// throws ConvergenceError past `cfg.max_terms` terms.
double gauss_2f1(double a, double b, double c, double z, const SeriesConfig& cfg = {});

/// Sum of the power series alone, valid for |z| < 1. Exposed so tests can
/// check the transformation against the raw series where both apply.
double gauss_2f1_series(double a, double b, double c, double z, const SeriesConfig& cfg = {});

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
double reg_inc_gamma_lower(double a, double x, const SeriesConfig& cfg = {});
/// Q(a, x) = 1 - P(a, x), evaluated without cancellation.
double reg_inc_gamma_upper(double a, double x, const SeriesConfig& cfg = {});

/// Regularized incomplete beta I_x(a, b).
double reg_inc_beta(double x, double a, double b, const SeriesConfig& cfg = {});

/// Standard normal distribution function.
double std_normal_cdf(double x);

/// Clamps a computed probability into [0, 1]. Overshoot beyond 1e-9 signals a
/// numerical bug and throws InternalError.
double clamp_probability(double p);

}  // namespace anticonc::specfun
