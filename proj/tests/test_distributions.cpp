#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "anticonc/distributions.hpp"
#include "anticonc/errors.hpp"
#include "anticonc/oracle.hpp"
#include "anticonc/specfun.hpp"
#include "anticonc/verify.hpp"
#include "support.hpp"

using namespace anticonc;
using testsupport::for_all;
using testsupport::rel_err;

namespace {

bool has_violation(const ParamSet& ps, const std::string& text) {
  const auto v = validate(ps);
  return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(text) != std::string::npos; });
}

double pmf_sum_cdf(const ParamSet& ps, std::int64_t k) {
  double sum = 0.0;
  for (std::int64_t j = integer_support(ps).kmin; j <= k; ++j) sum += std::exp(log_pmf(ps, j));
  return sum;
}

// Pascal's triangle; every entry is exact in double for n <= 50.
std::vector<std::vector<double>> pascal(int n) {
  std::vector<std::vector<double>> c(n + 1);
  for (int i = 0; i <= n; ++i) {
    c[i].assign(i + 1, 1.0);
    for (int k = 1; k < i; ++k) c[i][k] = c[i - 1][k - 1] + c[i - 1][k];
  }
  return c;
}

}  // namespace

TEST_CASE("family names round-trip") {
  for (FamilyId f : kAllFamilies) CHECK(parse_family(family_name(f)) == f);
  CHECK(family_name(FamilyId::NegBinomial) == "neg-binomial");
  CHECK(family_name(FamilyId::StudentT) == "student-t");
  CHECK_THROWS_AS(parse_family("cauchy"), DomainError);
}

TEST_CASE("validate names each violated constraint") {
  CHECK(has_violation(params::Pareto{2.0, 1.0}, "r must exceed 2"));
  CHECK(validate(params::Uniform{0.0, 1.0}).empty());
  CHECK(has_violation(params::Uniform{1.0, 1.0}, "a must be less than b"));
  CHECK(has_violation(params::StudentT{2}, "n must be >= 3"));
  CHECK(has_violation(params::Binomial{3, 1.0}, "p must lie in (0, 1)"));
  CHECK(has_violation(params::NegBinomial{2.0, 1.0}, "p must lie in (0, 1)"));
  CHECK(has_violation(params::Hypergeometric{10, 10, 3}, "positive variance"));
  CHECK(has_violation(params::Hypergeometric{11, 10, 3}, "M must not exceed N"));
  CHECK(validate(params::Pareto{2.0, -1.0}).size() == 2);
  CHECK_THROWS_WITH_AS(require_valid(params::Pareto{2.0, 1.0}), doctest::Contains("r must exceed 2"), DomainError);
}

TEST_CASE("make_params checks names and integrality") {
  CHECK(std::get<params::Pareto>(make_params(FamilyId::Pareto, {{"r", 3.0}, {"A", 1.0}})).r == 3.0);
  CHECK_THROWS_AS(make_params(FamilyId::Pareto, {{"r", 3.0}}), DomainError);
  CHECK_THROWS_AS(make_params(FamilyId::Pareto, {{"r", 3.0}, {"A", 1.0}, {"k", 2.0}}), DomainError);
  CHECK_THROWS_AS(make_params(FamilyId::StudentT, {{"n", 3.5}}), DomainError);
  CHECK(std::get<params::StudentT>(make_params(FamilyId::StudentT, {{"n", 3.4}}, true)).n == 3);
}

TEST_CASE("moments") {
  const Moments e = moments(params::Exponential{2.0});
  CHECK(e.mean == 0.5);
  CHECK(e.variance == 0.25);
  const Moments t = moments(params::StudentT{4});
  CHECK(t.mean == 0.0);
  CHECK(t.variance == 2.0);
  const Moments h = moments(params::Hypergeometric{9, 10, 1});
  CHECK(std::abs(h.mean - 0.9) < 1e-15);
  CHECK(std::abs(h.variance - 0.09) < 1e-15);
  // Weibull with shape 1 is exponential with rate lambda.
  const Moments w = moments(params::Weibull{1.0, 2.0});
  CHECK(rel_err(w.mean, 0.5) < 1e-14);
  CHECK(rel_err(w.variance, 0.25) < 1e-13);
  const Moments p = moments(params::Pareto{3.0, 1.0});
  CHECK(p.mean == 1.5);
  CHECK(p.variance == 0.75);
  CHECK_THROWS_AS(moments(params::Weibull{1e-3, 1.0}), DomainError);
  CHECK_THROWS_AS(moments(params::Gamma{-1.0, 1.0}), DomainError);
}

TEST_CASE("cdf examples") {
  CHECK(cdf(params::StudentT{3}, 0.0) == 0.5);
  CHECK(std::abs(cdf(params::Pareto{3.0, 1.0}, 2.0) - 0.875) < 1e-15);
  CHECK(std::abs(cdf(params::Poisson{0.01}, 0.0) - std::exp(-0.01)) < 1e-15);
  CHECK(cdf(params::Poisson{0.01}, 0.0) == doctest::Approx(0.9900498).epsilon(1e-7));
  CHECK(cdf(params::Binomial{4, 0.5}, 1.0) == doctest::Approx(5.0 / 16.0).epsilon(1e-14));
  CHECK(cdf(params::Binomial{4, 0.5}, 0.999) == doctest::Approx(1.0 / 16.0).epsilon(1e-14));
}

TEST_CASE("lattice cdf property: special-function routes equal pmf sums") {
  auto gen = [](RandomStream& r) {
    switch (r.next_u64() % 4) {
      case 0: return ParamSet{params::Binomial{testsupport::integer_in(r, 1, 300), testsupport::uniform_in(r, 0.01, 0.99)}};
      case 1: return ParamSet{params::Poisson{testsupport::log_uniform_in(r, 1e-3, 200.0)}};
      case 2: return ParamSet{params::NegBinomial{testsupport::log_uniform_in(r, 0.1, 30.0), testsupport::uniform_in(r, 0.05, 0.95)}};
      default: {
        const std::int64_t N = testsupport::integer_in(r, 2, 400);
        return ParamSet{params::Hypergeometric{testsupport::integer_in(r, 1, N - 1), N, testsupport::integer_in(r, 1, N - 1)}};
      }
    }
  };
  for_all(201, 300, gen, [](const ParamSet& ps) {
    const Moments m = moments(ps);
    for (double z : {-2.0, -1.0, 0.0, 0.5, 1.0, 3.0}) {
      const double x = std::floor(m.mean + z * m.stddev());
      if (x < integer_support(ps).kmin) continue;
      CAPTURE(z);
      CHECK(std::abs(cdf(ps, x) - pmf_sum_cdf(ps, static_cast<std::int64_t>(x))) < 1e-11);
    }
  });
}

TEST_CASE("hypergeometric pmf equals exact combinatorics") {
  const auto c = pascal(50);
  for (int N : {2, 7, 20, 50}) {
    for (int M = 1; M < N; M += std::max(1, N / 5)) {
      for (int n = 1; n < N; n += std::max(1, N / 4)) {
        const params::Hypergeometric h{M, N, n};
        const auto sup = integer_support(h);
        for (std::int64_t k = sup.kmin; k <= sup.kmax; ++k) {
          const double exact = c[M][k] * c[N - M][n - k] / c[N][n];
          CAPTURE(N);
          CAPTURE(M);
          CAPTURE(n);
          CAPTURE(k);
          CHECK(rel_err(std::exp(log_pmf(h, k)), exact) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("tail examples") {
  CHECK(std::abs(tail_probability(params::Gaussian{0.0, 1.0}, 1.0).probability - 0.3173105079) < 1e-10);
  CHECK(std::abs(tail_probability(params::Exponential{1.0}, 1.0).probability - 0.1353352832) < 1e-10);
  CHECK(std::abs(tail_probability(params::Exponential{1.0}, 1.0).probability - std::exp(-2.0)) < 1e-15);
  CHECK(std::abs(tail_probability(params::Hypergeometric{99, 100, 1}, 1.0).probability - 0.01) < 1e-15);
  CHECK(tail_probability(params::Binomial{4, 0.5}, 1.0).probability == doctest::Approx(0.625).epsilon(1e-15));
  CHECK(tail_probability(params::Binomial{4, 0.5}, 1.0).method == TailMethod::PmfSum);
  // Pareto r=3, A=1: mean 3/2, sd sqrt(3)/2, lower threshold below A.
  const double upper = std::pow(1.0 / (1.5 + std::sqrt(0.75)), 3.0);
  CHECK(rel_err(tail_probability(params::Pareto{3.0, 1.0}, 1.0).probability, upper) < 1e-14);
}

TEST_CASE("lattice boundary is inclusive") {
  // Binomial(4, 1/2): mean 2, sd 1; k = 0 and 4 sit exactly at distance 2.
  CHECK(tail_probability(params::Binomial{4, 0.5}, 2.0).probability == 0.125);
  CHECK(tail_probability(params::Binomial{4, 0.5}, std::nextafter(2.0, 3.0)).probability == 0.0);
  CHECK(in_tail(0.0, Moments{2.0, 1.0}, 2.0));
}

TEST_CASE("continuous tails against quadrature of the density") {
  const double tol = 1e-13;
  auto quad_tail = [&](auto density, double lo_support, double hi_support, const Moments& m, double y) {
    const double d = y * m.stddev();
    double inner = oracle::integrate(density, std::max(lo_support, m.mean - d), std::min(hi_support, m.mean + d), tol).value;
    return 1.0 - inner;
  };
  for (double y : {0.3, 1.0, 1.7}) {
    CAPTURE(y);
    {
      const params::Gamma g{2.5, 1.5};
      const double lnorm = specfun::log_gamma(g.alpha) + g.alpha * std::log(g.beta);
      auto f = [&](double x) { return std::exp((g.alpha - 1.0) * std::log(x) - x / g.beta - lnorm); };
      CHECK(std::abs(tail_probability(g, y).probability - quad_tail(f, 0.0, 1e300, moments(g), y)) < 1e-11);
    }
    {
      const params::Beta b{2.0, 3.0};  // density 12 x (1-x)^2
      auto f = [](double x) { return 12.0 * x * (1.0 - x) * (1.0 - x); };
      CHECK(std::abs(tail_probability(b, y).probability - quad_tail(f, 0.0, 1.0, moments(b), y)) < 1e-11);
    }
    {
      const params::Weibull w{1.5, 2.0};
      auto f = [&](double x) { return w.alpha * w.lambda * std::pow(x, w.alpha - 1.0) * std::exp(-w.lambda * std::pow(x, w.alpha)); };
      CHECK(std::abs(tail_probability(w, y).probability - quad_tail(f, 0.0, 1e300, moments(w), y)) < 1e-11);
    }
    {
      const params::LogNormal l{0.2, 0.5};
      auto f = [&](double x) {
        const double z = (std::log(x) - l.alpha) / l.sigma;
        return std::exp(-0.5 * z * z) / (x * l.sigma * std::sqrt(2.0 * M_PI));
      };
      CHECK(std::abs(tail_probability(l, y).probability - quad_tail(f, 1e-300, 1e300, moments(l), y)) < 1e-11);
    }
  }
}

TEST_CASE("tail property: in [0, 1] and nonincreasing in y, all families") {
  for (FamilyId f : kAllFamilies) {
    CAPTURE(family_name(f));
    for_all(202 + static_cast<int>(f), 15, [f](RandomStream& r) { return verify::random_params(f, r); },
            [](const ParamSet& ps) {
              double prev = 1.0;
              for (int i = 1; i <= 60; ++i) {
                const double t = tail_probability(ps, 0.07 * i).probability;
                CHECK(t >= 0.0);
                CHECK(t <= prev + 1e-14);
                prev = t;
              }
            });
  }
}

TEST_CASE("tail rejects bad input") {
  CHECK_THROWS_AS(tail_probability(params::Gaussian{0.0, 1.0}, 0.0), DomainError);
  CHECK_THROWS_AS(tail_probability(params::Gaussian{0.0, 1.0}, -1.0), DomainError);
  CHECK_THROWS_AS(tail_probability(params::Pareto{2.0, 1.0}, 1.0), DomainError);
}

TEST_CASE("weibull and log-normal tails are scale free") {
  for (double lambda : {1e-3, 0.5, 7.0, 1e4}) {
    CHECK(tail_probability(params::Weibull{0.7, lambda}, 1.3).probability ==
          doctest::Approx(tail_probability(params::Weibull{0.7, 1.0}, 1.3).probability).epsilon(1e-13));
  }
  for (double alpha : {-20.0, 0.0, 3.0, 50.0}) {
    CHECK(tail_probability(params::LogNormal{alpha, 1.2}, 0.8).probability ==
          tail_probability(params::LogNormal{0.0, 1.2}, 0.8).probability);
  }
}
