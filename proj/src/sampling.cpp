#include "anticonc/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "anticonc/errors.hpp"

namespace anticonc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::int64_t lattice_mode(const ParamSet& ps) {
  return std::visit(
      Overloaded{
          [](const params::Binomial& b) {
            return std::min<std::int64_t>(
                b.n, static_cast<std::int64_t>(std::floor(static_cast<double>(b.n + 1) * b.p)));
          },
          [](const params::Poisson& p) { return static_cast<std::int64_t>(std::floor(p.lambda)); },
          [](const params::NegBinomial& nb) {
            return nb.r > 1.0 ? static_cast<std::int64_t>(std::floor((nb.r - 1.0) * (1.0 - nb.p) / nb.p))
                              : std::int64_t{0};
          },
          [](const params::Hypergeometric& h) {
            return static_cast<std::int64_t>(std::floor(static_cast<double>(h.n + 1) *
                                                        static_cast<double>(h.M + 1) /
                                                        static_cast<double>(h.N + 2)));
          },
          [](const auto&) -> std::int64_t { return 0; },
      },
      ps);
}

}  // namespace

Sampler::Sampler(ParamSet ps) : params_(std::move(ps)) {
  require_valid(params_);
  if (is_discrete(family_of(params_))) {
    const IntegerSupport sup = integer_support(params_);
    kmin_ = sup.kmin;
    kmax_ = sup.kmax;
    mode_ = std::clamp(lattice_mode(params_), kmin_, kmax_);
    pmf_mode_ = std::exp(log_pmf(params_, mode_));
    cdf_mode_ = cdf(params_, static_cast<double>(mode_));
  }
}

double Sampler::step_ratio(std::int64_t k) const {
  const double kd = static_cast<double>(k);
  return std::visit(
      Overloaded{
          [&](const params::Binomial& b) {
            return (static_cast<double>(b.n) - kd) / (kd + 1.0) * (b.p / (1.0 - b.p));
          },
          [&](const params::Poisson& p) { return p.lambda / (kd + 1.0); },
          [&](const params::NegBinomial& nb) { return (1.0 - nb.p) * (nb.r + kd) / (kd + 1.0); },
          [&](const params::Hypergeometric& h) {
            const double M = static_cast<double>(h.M), N = static_cast<double>(h.N),
                         n = static_cast<double>(h.n);
            return (M - kd) * (n - kd) / ((kd + 1.0) * (N - M - n + kd + 1.0));
          },
          [](const auto&) -> double { throw InternalError("step ratio on a continuous family"); },
      },
      params_);
}

std::int64_t Sampler::sample_lattice(RandomStream& rng) const {
  const double u = rng.uniform();
  std::int64_t k = mode_;
  double pk = pmf_mode_;
  double cum = cdf_mode_;
  if (u <= cum) {
    while (k > kmin_) {
      const double below = cum - pk;
      if (u > below) break;
      cum = below;
      pk /= step_ratio(k - 1);
      --k;
    }
    return k;
  }
  while (u > cum && k < kmax_) {
    pk *= step_ratio(k);
    ++k;
    cum += pk;
    if (pk == 0.0) break;  // cum saturated below u through rounding
  }
  return k;
}

double Sampler::operator()(RandomStream& rng) const {
  return std::visit(
      Overloaded{
          [&](const params::Uniform& u) { return u.a + (u.b - u.a) * rng.uniform(); },
          [&](const params::Exponential& e) { return rng.exponential() / e.lambda; },
          [&](const params::Gaussian& g) { return g.mu + g.sigma * rng.normal(); },
          [&](const params::StudentT& t) {
            const double n = static_cast<double>(t.n);
            const double z = rng.normal();
            const double chi2 = 2.0 * rng.gamma(0.5 * n);
            return z / std::sqrt(chi2 / n);
          },
          [&](const params::Gamma& g) { return g.beta * std::exp(rng.log_gamma_variate(g.alpha)); },
          [&](const params::Pareto& p) { return p.A * std::exp(-std::log(rng.uniform()) / p.r); },
          [&](const params::Weibull& w) {
            return std::exp(std::log(rng.exponential() / w.lambda) / w.alpha);
          },
          [&](const params::LogNormal& l) { return std::exp(l.alpha + l.sigma * rng.normal()); },
          [&](const params::Beta& b) {
            const double lx = rng.log_gamma_variate(b.p);
            const double ly = rng.log_gamma_variate(b.q);
            return 1.0 / (1.0 + std::exp(ly - lx));
          },
          [&](const auto&) { return static_cast<double>(sample_lattice(rng)); },
      },
      params_);
}

double sample(const ParamSet& ps, RandomStream& rng) { return Sampler(ps)(rng); }

}  // namespace anticonc
