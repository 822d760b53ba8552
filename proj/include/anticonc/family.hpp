#pragma once

#include <array>
#include <map>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace anticonc {

enum class FamilyId {
  Uniform,
  Exponential,
  Gaussian,
  StudentT,
  Binomial,
  Poisson,
  NegBinomial,
  Hypergeometric,
  Gamma,
  Pareto,
  Weibull,
  LogNormal,
  Beta,
};

inline constexpr std::array<FamilyId, 13> kAllFamilies = {
    FamilyId::Uniform,     FamilyId::Exponential,    FamilyId::Gaussian, FamilyId::StudentT,
    FamilyId::Binomial,    FamilyId::Poisson,        FamilyId::NegBinomial,
    FamilyId::Hypergeometric, FamilyId::Gamma,       FamilyId::Pareto,   FamilyId::Weibull,
    FamilyId::LogNormal,   FamilyId::Beta};

/// Kebab-case wire name ("student-t", "neg-binomial", ...).
std::string_view family_name(FamilyId id);
/// Inverse of family_name; throws DomainError on unknown names.
FamilyId parse_family(std::string_view name);

bool is_discrete(FamilyId id);

namespace params {

struct Uniform {
  double a, b;
  bool operator==(const Uniform&) const = default;
};
struct Exponential {
  double lambda;
  bool operator==(const Exponential&) const = default;
};
struct Gaussian {
  double mu, sigma;
  bool operator==(const Gaussian&) const = default;
};
struct StudentT {
  std::int64_t n;
  bool operator==(const StudentT&) const = default;
};
struct Binomial {
  std::int64_t n; double p;
  bool operator==(const Binomial&) const = default;
};
struct Poisson {
  double lambda;
  bool operator==(const Poisson&) const = default;
};
struct NegBinomial {
  double r, p;
  bool operator==(const NegBinomial&) const = default;
};
/// M marked items in a population of N, n draws without replacement.
struct Hypergeometric {
  std::int64_t M, N, n;
  bool operator==(const Hypergeometric&) const = default;
};
/// Shape alpha, scale beta.
struct Gamma {
  double alpha, beta;
  bool operator==(const Gamma&) const = default;
};
/// Density r A^r x^{-r-1} on [A, inf).
struct Pareto {
  double r, A;
  bool operator==(const Pareto&) const = default;
};
/// Density alpha lambda x^{alpha-1} exp(-lambda x^alpha) on (0, inf).
struct Weibull {
  double alpha, lambda;
  bool operator==(const Weibull&) const = default;
};
/// ln X ~ N(alpha, sigma^2).
struct LogNormal {
  double alpha, sigma;
  bool operator==(const LogNormal&) const = default;
};
struct Beta {
  double p, q;
  bool operator==(const Beta&) const = default;
};

}  // namespace params

/// Alternatives are ordered exactly as FamilyId.
using ParamSet =
    std::variant<params::Uniform, params::Exponential, params::Gaussian, params::StudentT,
                 params::Binomial, params::Poisson, params::NegBinomial, params::Hypergeometric,
                 params::Gamma, params::Pareto, params::Weibull, params::LogNormal, params::Beta>;

inline FamilyId family_of(const ParamSet& ps) { return static_cast<FamilyId>(ps.index()); }

/// Parameter field names in declaration order ("lambda", "alpha", "A", ...).
std::vector<std::string> param_names(FamilyId id);

/// Field values as doubles, in param_names order.
std::vector<std::pair<std::string, double>> param_values(const ParamSet& ps);

/// Builds a ParamSet from named values. Every field must be present and no
/// other key may appear. Integer fields must be integral unless
/// `round_integers` is set, in which case they are rounded to nearest.
ParamSet make_params(FamilyId id, const std::map<std::string, double>& values,
                     bool round_integers = false);

/// Every violated parameter constraint, in a human-readable form. Empty
/// means valid; a valid set always has finite moments and positive variance.
std::vector<std::string> validate(const ParamSet& ps);

/// Throws DomainError listing the violations, if any.
void require_valid(const ParamSet& ps);

}  // namespace anticonc
