#pragma once

#include <stdexcept>
#include <string>

namespace anticonc {

/// Input outside the mathematical domain of an operation (bad parameters,
/// y <= 0, an anti-concentrated family passed to the witness search...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A series, continued fraction or quadrature did not reach its tolerance
/// within the configured budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The witness search walked its whole step budget without certifying.
class SearchFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Broken internal invariant, e.g. a probability that needed a clamp
/// larger than the tolerated rounding slack.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace anticonc
