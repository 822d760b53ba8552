#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "anticonc/config.hpp"
#include "anticonc/family.hpp"

namespace anticonc {

enum class Classification { AntiConcentrated, ZeroInfimum };

std::string_view classification_name(Classification c);
Classification classify(FamilyId family);

struct StudentDetail {
  std::int64_t n0;
  std::int64_t argmax_n;
};

/// A(y) for one family at one y.
struct AValue {
  FamilyId family;
  double y;
  double value;
  std::optional<StudentDetail> detail;
};

/// A parameter point whose exact standardized tail is at most epsilon.
struct Witness {
  FamilyId family;
  double y;
  double epsilon;
  ParamSet params;
  double achieved_tail;
};

AValue a_uniform(double y);
AValue a_exponential(double y);
AValue a_gaussian(double y);

/// Upper end (exclusive) of the y range where the Student's t closed form holds.
double student_t_y_limit();

/// Rational cutoff sequence (3n^2 - 14n + 16) / (2n^2 - 6n + 3).
double cutoff_sequence(std::int64_t n);

/// Smallest n >= 3 with y^2 < cutoff_sequence(n), for 0 < y < sqrt(6)/2.
std::int64_t n0(double y);

/// F_n(x) = 1/2 + x c_n 2F1(1/2, (n+1)/2; 3/2; -x^2/n), with
/// c_n = Gamma((n+1)/2) / (sqrt(n pi) Gamma(n/2)).
///
/// Past x^2/n > 999 the transformed argument is too close to 1 (the series
/// crawls for odd n and the argument rounds to 1 for huge x); there the
/// equivalent incomplete-beta tail 1/2 I_{n/(n+x^2)}(n/2, 1/2) is used. The
/// same tail replaces the formula for x < 0 whenever the formula gives less
/// than 1e-4, where 1/2 + x c_n F loses its relative accuracy.
double student_t_cdf(std::int64_t n, double x, const SeriesConfig& cfg = {});

/// J_n(y) = P(|X_n| < y sqrt(n/(n-2))) = 2 F_n(y sqrt(n/(n-2))) - 1, n >= 3.
double inner_probability(std::int64_t n, double y, const SeriesConfig& cfg = {});

enum class StudentRange {
  /// Maximize J_n over 3 <= n <= n0(y) + 1.
  Full,
  /// Maximize over n in {3, 4}; only allowed for y <= 1.
  Restricted,
};

/// A(y) = 1 - max J_n for 0 < y < sqrt(6)/2.
AValue a_student_t(double y, StudentRange range = StudentRange::Full, const SeriesConfig& cfg = {});

/// Closed-form A(y) for the four anti-concentrated families; DomainError for
/// the others (their A(y) is identically zero, see witness_parameter).
AValue closed_form(FamilyId family, double y, const SeriesConfig& cfg = {});

/// Human-readable description of the one-dimensional ray the witness search
/// walks for a zero-infimum family.
std::string_view witness_construction(FamilyId family);

struct WitnessSearch {
  int max_steps = 200;
  /// Bisection stops once the bracket is within this fraction of the boundary.
  double bracket_rel = 0.1;
};

Witness witness_parameter(FamilyId family, double y, double epsilon,
                          const WitnessSearch& search = {}, const SeriesConfig& cfg = {});

}  // namespace anticonc
