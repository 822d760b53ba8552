#include "anticonc/distributions.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>

#include "anticonc/anticoncentration.hpp"
#include "anticonc/errors.hpp"
#include "anticonc/specfun.hpp"

namespace anticonc {

namespace {

using specfun::clamp_probability;
using specfun::log_gamma;
using specfun::reg_inc_beta;
using specfun::reg_inc_gamma_lower;
using specfun::reg_inc_gamma_upper;
using specfun::std_normal_cdf;

constexpr std::int64_t kInfiniteSupport = std::numeric_limits<std::int64_t>::max();
constexpr double kClosedFormError = 8.0 * DBL_EPSILON;
constexpr double kSpecialFunctionError = 1e-12;
// Upper tails of lattice laws stop once the provable remaining mass drops below this.
constexpr double kTruncationMass = 1e-16;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double log_choose(double n, double k) {
  return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

// Weibull coefficient of variation terms in log space: returns
// {ln Gamma(1 + 1/alpha), sd / mean}.
std::pair<double, double> weibull_shape_terms(double alpha) {
  const double lg1 = log_gamma(1.0 + 1.0 / alpha);
  const double lg2 = log_gamma(1.0 + 2.0 / alpha);
  return {lg1, std::sqrt(std::expm1(lg2 - 2.0 * lg1))};
}

std::int64_t clamp_to_int64(double v) {
  if (v >= 9.0e18) return kInfiniteSupport;
  if (v <= -9.0e18) return std::numeric_limits<std::int64_t>::min() / 2;
  return static_cast<std::int64_t>(v);
}

IntegerSupport support_unchecked(const ParamSet& ps) {
  return std::visit(
      Overloaded{
          [](const params::Binomial& b) { return IntegerSupport{0, b.n}; },
          [](const params::Poisson&) { return IntegerSupport{0, kInfiniteSupport}; },
          [](const params::NegBinomial&) { return IntegerSupport{0, kInfiniteSupport}; },
          [](const params::Hypergeometric& h) {
            return IntegerSupport{std::max<std::int64_t>(0, h.n - (h.N - h.M)), std::min(h.M, h.n)};
          },
          [](const auto&) -> IntegerSupport { throw DomainError("family is not lattice-valued"); },
      },
      ps);
}

// pmf with an exact product for the hypergeometric zero atom, which the
// witness construction lands on and which must reproduce 1/N bit-for-bit.
double pmf(const ParamSet& ps, std::int64_t k) {
  if (const auto* h = std::get_if<params::Hypergeometric>(&ps); h && k == 0 && h->n <= 1'000'000) {
    double prod = 1.0;
    for (std::int64_t i = 0; i < h->n; ++i) {
      if (h->N - h->M - i <= 0) return 0.0;
      prod *= static_cast<double>(h->N - h->M - i) / static_cast<double>(h->N - i);
    }
    if (prod > 1e-290) return prod;
  }
  return std::exp(detail::log_pmf_unchecked(ps, k));
}

// Bound on pmf(j+1)/pmf(j) valid for every j >= k.
double upper_ratio_bound(const ParamSet& ps, std::int64_t k) {
  const double kd = static_cast<double>(k);
  return std::visit(
      Overloaded{
          [&](const params::Binomial& b) {
            return (static_cast<double>(b.n) - kd) * b.p / ((kd + 1.0) * (1.0 - b.p));
          },
          [&](const params::Poisson& p) { return p.lambda / (kd + 1.0); },
          [&](const params::NegBinomial& nb) {
            const double q = 1.0 - nb.p;
            return q * std::max(1.0, (nb.r + kd) / (kd + 1.0));
          },
          [&](const params::Hypergeometric& h) {
            const double M = static_cast<double>(h.M), N = static_cast<double>(h.N),
                         n = static_cast<double>(h.n);
            return (M - kd) * (n - kd) / ((kd + 1.0) * (N - M - n + kd + 1.0));
          },
          [](const auto&) -> double { throw InternalError("ratio bound on a continuous family"); },
      },
      ps);
}

TailResult lattice_tail(const ParamSet& ps, double y) {
  const Moments m = moments(ps);
  const double d = y * m.stddev();
  const IntegerSupport sup = integer_support(ps);
  auto tail_at = [&](std::int64_t k) { return in_tail(static_cast<double>(k), m, y); };

  double lower = 0.0;
  double upper = 0.0;
  double error = 0.0;
  long terms = 0;

  // Largest lattice point below the mean that still lies in the tail.
  std::int64_t k_lo = clamp_to_int64(std::floor(m.mean - d));
  while (static_cast<double>(k_lo + 1) <= m.mean && tail_at(k_lo + 1)) ++k_lo;
  while (k_lo >= sup.kmin && !tail_at(k_lo)) --k_lo;
  for (std::int64_t k = sup.kmin; k <= std::min(k_lo, sup.kmax); ++k, ++terms) lower += pmf(ps, k);

  std::int64_t k_hi = clamp_to_int64(std::ceil(m.mean + d));
  while (static_cast<double>(k_hi - 1) >= m.mean && tail_at(k_hi - 1)) --k_hi;
  while (k_hi <= sup.kmax && !tail_at(k_hi)) ++k_hi;
  for (std::int64_t k = std::max(k_hi, sup.kmin); k <= sup.kmax; ++k, ++terms) {
    const double term = pmf(ps, k);
    upper += term;
    const double rho = upper_ratio_bound(ps, k);
    if (rho < 1.0) {
      const double remainder = term * rho / (1.0 - rho);
      if (remainder < kTruncationMass) {
        error += remainder;
        break;
      }
    }
    if (terms > 100'000'000) throw ConvergenceError("lattice tail summation did not terminate");
  }
  const double p = lower + upper;
  error += static_cast<double>(terms + 1) * DBL_EPSILON * p + 1e-15 * p;
  return {clamp_probability(p), TailMethod::PmfSum, error};
}

}  // namespace

double Moments::stddev() const { return std::sqrt(variance); }

std::string_view method_name(TailMethod m) {
  switch (m) {
    case TailMethod::ClosedForm: return "closed-form";
    case TailMethod::SpecialFunction: return "special-function";
    case TailMethod::PmfSum: return "pmf-sum";
    case TailMethod::Quadrature: return "quadrature";
    case TailMethod::MonteCarlo: return "monte-carlo";
  }
  return "unknown";
}

Moments moments(const ParamSet& ps) {
  require_valid(ps);
  const Moments m = std::visit(
      Overloaded{
          [](const params::Uniform& u) {
            return Moments{0.5 * (u.a + u.b), (u.b - u.a) * (u.b - u.a) / 12.0};
          },
          [](const params::Exponential& e) {
            return Moments{1.0 / e.lambda, 1.0 / (e.lambda * e.lambda)};
          },
          [](const params::Gaussian& g) { return Moments{g.mu, g.sigma * g.sigma}; },
          [](const params::StudentT& t) {
            const double n = static_cast<double>(t.n);
            return Moments{0.0, n / (n - 2.0)};
          },
          [](const params::Binomial& b) {
            const double n = static_cast<double>(b.n);
            return Moments{n * b.p, n * b.p * (1.0 - b.p)};
          },
          [](const params::Poisson& p) { return Moments{p.lambda, p.lambda}; },
          [](const params::NegBinomial& nb) {
            const double q = 1.0 - nb.p;
            return Moments{nb.r * q / nb.p, nb.r * q / (nb.p * nb.p)};
          },
          [](const params::Hypergeometric& h) {
            const double M = static_cast<double>(h.M), N = static_cast<double>(h.N),
                         n = static_cast<double>(h.n);
            const double mean = n * M / N;
            return Moments{mean, mean * (1.0 - M / N) * (N - n) / (N - 1.0)};
          },
          [](const params::Gamma& g) {
            return Moments{g.alpha * g.beta, g.alpha * g.beta * g.beta};
          },
          [](const params::Pareto& p) {
            return Moments{p.r * p.A / (p.r - 1.0),
                           p.r * p.A * p.A / ((p.r - 2.0) * (p.r - 1.0) * (p.r - 1.0))};
          },
          [](const params::Weibull& w) {
            const auto [lg1, cv] = weibull_shape_terms(w.alpha);
            const double log_mean = -std::log(w.lambda) / w.alpha + lg1;
            const double mean = std::exp(log_mean);
            return Moments{mean, mean * mean * cv * cv};
          },
          [](const params::LogNormal& l) {
            const double s2 = l.sigma * l.sigma;
            return Moments{std::exp(l.alpha + 0.5 * s2), std::exp(2.0 * l.alpha + s2) * std::expm1(s2)};
          },
          [](const params::Beta& b) {
            const double s = b.p + b.q;
            return Moments{b.p / s, b.p * b.q / (s * s * (s + 1.0))};
          },
      },
      ps);
  if (!std::isfinite(m.mean) || !std::isfinite(m.variance)) {
    throw DomainError(std::string(family_name(family_of(ps))) + " moments overflow double precision");
  }
  if (!(m.variance > 0.0)) {
    throw DomainError(std::string(family_name(family_of(ps))) + " variance underflows to zero");
  }
  return m;
}

IntegerSupport integer_support(const ParamSet& ps) {
  require_valid(ps);
  return support_unchecked(ps);
}

double log_pmf(const ParamSet& ps, std::int64_t k) {
  require_valid(ps);
  return detail::log_pmf_unchecked(ps, k);
}

double detail::log_pmf_unchecked(const ParamSet& ps, std::int64_t k) {
  const IntegerSupport sup = support_unchecked(ps);
  if (k < sup.kmin || k > sup.kmax) return -std::numeric_limits<double>::infinity();
  const double kd = static_cast<double>(k);
  return std::visit(
      Overloaded{
          [&](const params::Binomial& b) {
            const double n = static_cast<double>(b.n);
            return log_choose(n, kd) + kd * std::log(b.p) + (n - kd) * std::log1p(-b.p);
          },
          [&](const params::Poisson& p) {
            return kd * std::log(p.lambda) - p.lambda - log_gamma(kd + 1.0);
          },
          [&](const params::NegBinomial& nb) {
            // binom(r + k - 1, k) p^r q^k with real r
            return log_gamma(nb.r + kd) - log_gamma(kd + 1.0) - log_gamma(nb.r) +
                   nb.r * std::log(nb.p) + kd * std::log1p(-nb.p);
          },
          [&](const params::Hypergeometric& h) {
            const double M = static_cast<double>(h.M), N = static_cast<double>(h.N),
                         n = static_cast<double>(h.n);
            return log_choose(M, kd) + log_choose(N - M, n - kd) - log_choose(N, n);
          },
          [](const auto&) -> double { throw DomainError("family is not lattice-valued"); },
      },
      ps);
}

double cdf(const ParamSet& ps, double x, const SeriesConfig& cfg) {
  require_valid(ps);
  if (std::isnan(x)) throw DomainError("cdf: NaN argument");
  const double kf = std::floor(x);
  return std::visit(
      Overloaded{
          [&](const params::Uniform& u) { return std::clamp((x - u.a) / (u.b - u.a), 0.0, 1.0); },
          [&](const params::Exponential& e) { return x <= 0 ? 0.0 : -std::expm1(-e.lambda * x); },
          [&](const params::Gaussian& g) { return std_normal_cdf((x - g.mu) / g.sigma); },
          [&](const params::StudentT& t) { return student_t_cdf(t.n, x, cfg); },
          [&](const params::Binomial& b) {
            if (kf < 0) return 0.0;
            if (kf >= static_cast<double>(b.n)) return 1.0;
            const double n = static_cast<double>(b.n);
            return reg_inc_beta(1.0 - b.p, n - kf, kf + 1.0, cfg);
          },
          [&](const params::Poisson& p) {
            return kf < 0 ? 0.0 : reg_inc_gamma_upper(kf + 1.0, p.lambda, cfg);
          },
          [&](const params::NegBinomial& nb) {
            return kf < 0 ? 0.0 : reg_inc_beta(nb.p, nb.r, kf + 1.0, cfg);
          },
          [&](const params::Hypergeometric& h) {
            const IntegerSupport sup = integer_support(ps);
            if (kf < static_cast<double>(sup.kmin)) return 0.0;
            if (kf >= static_cast<double>(sup.kmax)) return 1.0;
            (void)h;
            double s = 0.0;
            for (std::int64_t k = sup.kmin; k <= static_cast<std::int64_t>(kf); ++k) s += pmf(ps, k);
            return clamp_probability(s);
          },
          [&](const params::Gamma& g) {
            return x <= 0 ? 0.0 : reg_inc_gamma_lower(g.alpha, x / g.beta, cfg);
          },
          [&](const params::Pareto& p) {
            return x <= p.A ? 0.0 : -std::expm1(p.r * std::log(p.A / x));
          },
          [&](const params::Weibull& w) {
            return x <= 0 ? 0.0 : -std::expm1(-w.lambda * std::pow(x, w.alpha));
          },
          [&](const params::LogNormal& l) {
            return x <= 0 ? 0.0 : std_normal_cdf((std::log(x) - l.alpha) / l.sigma);
          },
          [&](const params::Beta& b) {
            return reg_inc_beta(std::clamp(x, 0.0, 1.0), b.p, b.q, cfg);
          },
      },
      ps);
}

TailResult tail_probability(const ParamSet& ps, double y, const SeriesConfig& cfg) {
  require_valid(ps);
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("tail_probability needs a finite y > 0");
  if (is_discrete(family_of(ps))) return lattice_tail(ps, y);

  auto two_sided = [](double lower, double upper, TailMethod method, double err) {
    return TailResult{clamp_probability(lower + upper), method, err};
  };

  return std::visit(
      Overloaded{
          [&](const params::Uniform& u) {
            const Moments m = moments(ps);
            const double d = y * m.stddev();
            const double w = u.b - u.a;
            const double upper = std::clamp((u.b - (m.mean + d)) / w, 0.0, 1.0);
            const double lower = std::clamp(((m.mean - d) - u.a) / w, 0.0, 1.0);
            return two_sided(lower, upper, TailMethod::ClosedForm, kClosedFormError);
          },
          [&](const params::Exponential& e) {
            const Moments m = moments(ps);
            const double d = y * m.stddev();
            const double upper = std::exp(-e.lambda * (m.mean + d));
            const double lo = m.mean - d;
            const double lower = lo > 0 ? -std::expm1(-e.lambda * lo) : 0.0;
            return two_sided(lower, upper, TailMethod::ClosedForm, kClosedFormError);
          },
          [&](const params::Gaussian&) {
            // Standardized: both sides are Phi(-y).
            const double side = std_normal_cdf(-y);
            return two_sided(side, side, TailMethod::SpecialFunction, 1e-15);
          },
          [&](const params::StudentT& t) {
            const double n = static_cast<double>(t.n);
            const double x = y * std::sqrt(n / (n - 2.0));
            const double side = student_t_cdf(t.n, -x, cfg);
            return two_sided(side, side, TailMethod::SpecialFunction, kSpecialFunctionError);
          },
          [&](const params::Gamma& g) {
            const Moments m = moments(ps);
            const double d = y * m.stddev();
            const double upper = reg_inc_gamma_upper(g.alpha, (m.mean + d) / g.beta, cfg);
            const double lo = m.mean - d;
            const double lower = lo > 0 ? reg_inc_gamma_lower(g.alpha, lo / g.beta, cfg) : 0.0;
            return two_sided(lower, upper, TailMethod::SpecialFunction, kSpecialFunctionError);
          },
          [&](const params::Pareto& p) {
            const Moments m = moments(ps);
            const double d = y * m.stddev();
            const double upper = std::exp(p.r * std::log(p.A / (m.mean + d)));
            const double lo = m.mean - d;
            const double lower = lo > p.A ? -std::expm1(p.r * std::log(p.A / lo)) : 0.0;
            return two_sided(lower, upper, TailMethod::ClosedForm, kClosedFormError);
          },
          [&](const params::Weibull& w) {
            // lambda X^alpha ~ Exp(1) and lambda mean^alpha = Gamma(1 + 1/alpha)^alpha, so the
            // standardized tail depends on alpha only and never needs the raw moments.
            const auto [lg1, cv] = weibull_shape_terms(w.alpha);
            const double upper = std::exp(-std::exp(w.alpha * (lg1 + std::log1p(y * cv))));
            const double lower =
                y * cv < 1.0 ? -std::expm1(-std::exp(w.alpha * (lg1 + std::log1p(-y * cv)))) : 0.0;
            return two_sided(lower, upper, TailMethod::ClosedForm, 1e-14);
          },
          [&](const params::LogNormal& l) {
            // (ln X - alpha) / sigma is standard normal; thresholds in that scale.
            const double s = l.sigma;
            const double cv = std::sqrt(std::expm1(s * s));
            const double upper = std_normal_cdf(-(0.5 * s * s + std::log1p(y * cv)) / s);
            const double lower =
                y * cv < 1.0 ? std_normal_cdf((0.5 * s * s + std::log1p(-y * cv)) / s) : 0.0;
            return two_sided(lower, upper, TailMethod::SpecialFunction, 1e-14);
          },
          [&](const params::Beta& b) {
            const Moments m = moments(ps);
            const double d = y * m.stddev();
            const double hi = m.mean + d;
            const double lo = m.mean - d;
            const double upper = hi < 1.0 ? reg_inc_beta(1.0 - hi, b.q, b.p, cfg) : 0.0;
            const double lower = lo > 0.0 ? reg_inc_beta(lo, b.p, b.q, cfg) : 0.0;
            return two_sided(lower, upper, TailMethod::SpecialFunction, kSpecialFunctionError);
          },
          [](const auto&) -> TailResult { throw InternalError("lattice family reached continuous branch"); },
      },
      ps);
}

}  // namespace anticonc
