#include "anticonc/anticoncentration.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "anticonc/distributions.hpp"
#include "anticonc/errors.hpp"
#include "anticonc/specfun.hpp"

namespace anticonc {

namespace {

constexpr std::int64_t kN0ScanCap = 1'000'000;
constexpr double kSmallLeftTail = 1e-4;

void require_positive_y(double y) {
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("y must be a finite positive number");
}

double log_t_normalizer(double n) {
  return specfun::log_gamma(0.5 * (n + 1.0)) - specfun::log_gamma(0.5 * n) -
         0.5 * std::log(n * M_PI);
}

// One-dimensional parameter ray along which the standardized tail goes to zero.
struct Ray {
  double start;
  bool toward_zero;  // halve the ray parameter, else double it
  bool integer;
  std::function<ParamSet(double)> at;
};

Ray ray_for(FamilyId family) {
  switch (family) {
    case FamilyId::Binomial:
      return {0.5, true, false, [](double p) { return ParamSet{params::Binomial{1, p}}; }};
    case FamilyId::Poisson:
      return {1.0, true, false, [](double l) { return ParamSet{params::Poisson{l}}; }};
    case FamilyId::NegBinomial:
      return {0.5, true, false, [](double q) { return ParamSet{params::NegBinomial{1.0, 1.0 - q}}; }};
    case FamilyId::Hypergeometric:
      return {2.0, false, true, [](double N) {
                const auto n = static_cast<std::int64_t>(N);
                return ParamSet{params::Hypergeometric{n - 1, n, 1}};
              }};
    case FamilyId::Gamma:
      return {1.0, true, false, [](double a) { return ParamSet{params::Gamma{a, 1.0}}; }};
    case FamilyId::Pareto:
      return {1.0, true, false, [](double d) { return ParamSet{params::Pareto{2.0 + d, 1.0}}; }};
    case FamilyId::Weibull:
      return {1.0, true, false, [](double a) { return ParamSet{params::Weibull{a, 1.0}}; }};
    case FamilyId::LogNormal:
      return {1.0, false, false, [](double s) { return ParamSet{params::LogNormal{0.0, s}}; }};
    case FamilyId::Beta:
      return {1.0, true, false, [](double q) { return ParamSet{params::Beta{1.0, q}}; }};
    default:
      throw DomainError(std::string(family_name(family)) + ": family is anti-concentrated");
  }
}

}  // namespace

std::string_view classification_name(Classification c) {
  return c == Classification::AntiConcentrated ? "anti-concentrated" : "zero-infimum";
}

Classification classify(FamilyId family) {
  switch (family) {
    case FamilyId::Uniform:
    case FamilyId::Exponential:
    case FamilyId::Gaussian:
    case FamilyId::StudentT:
      return Classification::AntiConcentrated;
    default:
      return Classification::ZeroInfimum;
  }
}

AValue a_uniform(double y) {
  require_positive_y(y);
  static const double kSqrt3 = std::sqrt(3.0);
  const double value = y >= kSqrt3 ? 0.0 : 1.0 - y / kSqrt3;
  return {FamilyId::Uniform, y, value, std::nullopt};
}

AValue a_exponential(double y) {
  require_positive_y(y);
  double value = std::exp(-(1.0 + y));
  if (y < 1.0) value += -std::expm1(-(1.0 - y));
  return {FamilyId::Exponential, y, specfun::clamp_probability(value), std::nullopt};
}

AValue a_gaussian(double y) {
  require_positive_y(y);
  return {FamilyId::Gaussian, y, 2.0 * specfun::std_normal_cdf(-y), std::nullopt};
}

double student_t_y_limit() {
  static const double kLimit = std::sqrt(6.0) / 2.0;
  return kLimit;
}

double cutoff_sequence(std::int64_t n) {
  const double nd = static_cast<double>(n);
  return (3.0 * nd * nd - 14.0 * nd + 16.0) / (2.0 * nd * nd - 6.0 * nd + 3.0);
}

std::int64_t n0(double y) {
  require_positive_y(y);
  if (!(y < student_t_y_limit())) throw DomainError("n0 needs y < sqrt(6)/2");
  const double y2 = y * y;
  for (std::int64_t n = 3; n <= kN0ScanCap; ++n) {
    if (y2 < cutoff_sequence(n)) return n;
  }
  throw InternalError("n0 scan exceeded " + std::to_string(kN0ScanCap) + " (y = " +
                      std::to_string(y) + " too close to sqrt(6)/2)");
}

double student_t_cdf(std::int64_t n, double x, const SeriesConfig& cfg) {
  if (n < 1) throw DomainError("student_t_cdf needs n >= 1");
  if (std::isnan(x)) throw DomainError("student_t_cdf: NaN argument");
  if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
  if (x == 0.0) return 0.5;
  // Through the left side so both halves round the same way and stay monotone.
  if (x > 0.0) return 1.0 - student_t_cdf(n, -x, cfg);
  const double nd = static_cast<double>(n);
  const double ratio = x * x / nd;
  auto beta_route = [&] {
    return specfun::clamp_probability(0.5 * specfun::reg_inc_beta(nd / (nd + x * x), 0.5 * nd, 0.5, cfg));
  };
  if (ratio > 999.0) return beta_route();
  const double f = specfun::gauss_2f1(0.5, 0.5 * (nd + 1.0), 1.5, -ratio, cfg);
  const double value = specfun::clamp_probability(0.5 + x * std::exp(log_t_normalizer(nd)) * f);
  // 1/2 + x c_n F cancels in the far left tail.
  if (value < kSmallLeftTail) return beta_route();
  return value;
}

double inner_probability(std::int64_t n, double y, const SeriesConfig& cfg) {
  if (n < 3) throw DomainError("inner_probability needs n >= 3");
  require_positive_y(y);
  const double nd = static_cast<double>(n);
  return 2.0 * student_t_cdf(n, y * std::sqrt(nd / (nd - 2.0)), cfg) - 1.0;
}

AValue a_student_t(double y, StudentRange range, const SeriesConfig& cfg) {
  require_positive_y(y);
  if (!(y < student_t_y_limit())) {
    throw DomainError("Student's t closed form covers only 0 < y < sqrt(6)/2 = " +
                      std::to_string(student_t_y_limit()));
  }
  const std::int64_t cutoff = n0(y);
  std::int64_t last = cutoff + 1;
  if (range == StudentRange::Restricted) {
    if (y > 1.0) throw DomainError("the {3, 4} restriction only holds for y <= 1");
    last = 4;
  }
  double best = -1.0;
  std::int64_t argmax = 3;
  for (std::int64_t n = 3; n <= last; ++n) {
    const double j = inner_probability(n, y, cfg);
    if (j > best) {
      best = j;
      argmax = n;
    }
  }
  return {FamilyId::StudentT, y, specfun::clamp_probability(1.0 - best), StudentDetail{cutoff, argmax}};
}

AValue closed_form(FamilyId family, double y, const SeriesConfig& cfg) {
  switch (family) {
    case FamilyId::Uniform: return a_uniform(y);
    case FamilyId::Exponential: return a_exponential(y);
    case FamilyId::Gaussian: return a_gaussian(y);
    case FamilyId::StudentT: return a_student_t(y, StudentRange::Full, cfg);
    default:
      throw DomainError(std::string(family_name(family)) + " has no closed form: A(y) is identically zero");
  }
}

std::string_view witness_construction(FamilyId family) {
  switch (family) {
    case FamilyId::Binomial: return "construction n=1, p decreasing to 0";
    case FamilyId::Poisson: return "construction lambda decreasing to 0";
    case FamilyId::NegBinomial: return "construction r=1, p increasing to 1";
    case FamilyId::Hypergeometric: return "construction M=N-1, n=1, N increasing";
    case FamilyId::Gamma: return "construction beta=1, alpha decreasing to 0";
    case FamilyId::Pareto: return "construction A=1, r decreasing to 2";
    case FamilyId::Weibull: return "construction lambda=1, alpha decreasing to 0";
    case FamilyId::LogNormal: return "construction alpha=0, sigma increasing";
    case FamilyId::Beta: return "construction p=1, q decreasing to 0";
    default: return "family is anti-concentrated";
  }
}

Witness witness_parameter(FamilyId family, double y, double epsilon, const WitnessSearch& search,
                          const SeriesConfig& cfg) {
  if (classify(family) == Classification::AntiConcentrated) {
    throw DomainError(std::string(family_name(family)) + ": family is anti-concentrated");
  }
  require_positive_y(y);
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");

  const Ray ray = ray_for(family);
  auto evaluate = [&](double t) {
    const ParamSet ps = ray.at(t);
    if (!validate(ps).empty()) {
      throw SearchFailure(std::string(family_name(family)) +
                          ": witness ray left the valid parameter region before reaching epsilon");
    }
    return tail_probability(ps, y, cfg).probability;
  };

  double bad = ray.start;
  double bad_tail = evaluate(bad);
  if (bad_tail <= epsilon) return {family, y, epsilon, ray.at(bad), bad_tail};

  double ok = 0.0;
  double ok_tail = 0.0;
  bool found = false;
  for (int step = 0; step < search.max_steps; ++step) {
    const double t = ray.toward_zero ? 0.5 * bad : 2.0 * bad;
    const double tail = evaluate(t);
    if (tail <= epsilon) {
      ok = t;
      ok_tail = tail;
      found = true;
      break;
    }
    bad = t;
  }
  if (!found) {
    throw SearchFailure(std::string(family_name(family)) + ": no witness within " +
                        std::to_string(search.max_steps) + " ray steps");
  }

  // Shrink the (bad, ok] bracket; ok always certifies tail <= epsilon.
  for (int iter = 0; iter < 4 * search.max_steps; ++iter) {
    if (ray.integer) {
      if (std::abs(ok - bad) <= 1.0) break;
    } else if (std::abs(ok - bad) <= search.bracket_rel * std::max(ok, bad)) {
      break;
    }
    const double mid = ray.integer ? std::floor(0.5 * (ok + bad)) : std::sqrt(ok * bad);
    const double tail = evaluate(mid);
    if (tail <= epsilon) {
      ok = mid;
      ok_tail = tail;
    } else {
      bad = mid;
    }
  }
  return {family, y, epsilon, ray.at(ok), ok_tail};
}

}  // namespace anticonc
