#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "anticonc/anticoncentration.hpp"
#include "anticonc/distributions.hpp"
#include "anticonc/errors.hpp"
#include "anticonc/oracle.hpp"
#include "anticonc/specfun.hpp"
#include "anticonc/verify.hpp"
#include "support.hpp"

using namespace anticonc;
using namespace anticonc::oracle;

TEST_CASE("axis values hit both endpoints exactly") {
  const GridAxis lin{"b", 0.1, 10.0, Scale::Linear, 7};
  const GridAxis lg{"b", 1e-6, 1e2, Scale::Logarithmic, 9};
  for (const auto& ax : {lin, lg}) {
    const auto v = ax.values();
    CHECK(v.size() == static_cast<std::size_t>(ax.points));
    CHECK(v.front() == ax.lo);
    CHECK(v.back() == ax.hi);
    for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] > v[i - 1]);
  }
  const auto v = lg.values();
  CHECK(std::abs(v[1] / v[0] - v[2] / v[1]) < 1e-12);
}

TEST_CASE("refinement keeps every original grid point") {
  for (FamilyId f : kAllFamilies) {
    const GridSpec g = canonical_grid(f);
    const GridSpec r = refine(g);
    for (std::size_t a = 0; a < g.axes.size(); ++a) {
      const auto coarse = g.axes[a].values();
      const auto fine = r.axes[a].values();
      REQUIRE(fine.size() == 2 * coarse.size() - 1);
      for (std::size_t i = 0; i < coarse.size(); ++i) CHECK(fine[2 * i] == coarse[i]);
    }
  }
}

TEST_CASE("grid points: first axis varies slowest, ties applied, integers rounded") {
  const GridSpec g{FamilyId::Gaussian, {{"mu", 0.0, 1.0, Scale::Linear, 2}, {"sigma", 1.0, 3.0, Scale::Linear, 3}}, {}, {}};
  CHECK(g.size() == 6);
  CHECK(std::get<params::Gaussian>(g.point(0)) == params::Gaussian{0.0, 1.0});
  CHECK(std::get<params::Gaussian>(g.point(1)) == params::Gaussian{0.0, 2.0});
  CHECK(std::get<params::Gaussian>(g.point(3)) == params::Gaussian{1.0, 1.0});
  const GridSpec h = canonical_grid(FamilyId::Hypergeometric);
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto p = std::get<params::Hypergeometric>(h.point(i));
    CHECK(p.M == p.N - 1);
    CHECK(p.n == 1);
  }
}

TEST_CASE("grid structure is checked") {
  using S = Scale;
  CHECK_NOTHROW(canonical_grid(FamilyId::Pareto).check());
  CHECK_THROWS_AS((GridSpec{FamilyId::Pareto, {{"r", 3.0, 4.0, S::Linear, 3}}, {}, {}}.check()), DomainError);
  CHECK_THROWS_AS((GridSpec{FamilyId::Exponential, {{"lambda", 1.0, 4.0, S::Linear, 1}}, {}, {}}.check()), DomainError);
  CHECK_THROWS_AS((GridSpec{FamilyId::Exponential, {{"lambda", 0.0, 4.0, S::Logarithmic, 3}}, {}, {}}.check()), DomainError);
  CHECK_THROWS_AS((GridSpec{FamilyId::Exponential, {{"lambda", 2.0, 1.0, S::Linear, 3}}, {}, {}}.check()), DomainError);
  CHECK_THROWS_AS((GridSpec{FamilyId::Exponential, {{"lambda", 1.0, 2.0, S::Linear, 3}}, {{"lambda", 1.0}}, {}}.check()),
                  DomainError);
  CHECK_THROWS_AS((GridSpec{FamilyId::Exponential, {{"lambda", 1.0, 2.0, S::Linear, 3}}, {{"zeta", 1.0}}, {}}.check()),
                  DomainError);
  // r = d + 1 leaves the r > 2 region for small d.
  CHECK_THROWS_WITH_AS((GridSpec{FamilyId::Pareto, {{"d", 0.5, 2.0, S::Linear, 3}}, {{"A", 1.0}}, {{"r", "d", 1.0, 1.0}}}.check()),
                       doctest::Contains("r must exceed 2"), DomainError);
  CHECK_THROWS_AS((GridSpec{FamilyId::Pareto, {}, {{"A", 1.0}}, {{"r", "d", 1.0, 2.0}}}.check()), DomainError);
}

TEST_CASE("every canonical grid is valid and reaches toward its limiting ray") {
  for (FamilyId f : kAllFamilies) {
    CAPTURE(family_name(f));
    CHECK_NOTHROW(canonical_grid(f).check());
    if (classify(f) == Classification::ZeroInfimum) {
      CHECK(grid_infimum(1.0, canonical_grid(f)).value <= 1e-3);
    }
  }
}

TEST_CASE("Monte Carlo examples") {
  const auto g = mc_tail(params::Gaussian{0.0, 1.0}, 1.0, 1'000'000, 2024);
  // One sd at 10^6 samples is 0.00047, so the example's +-0.0005 is read as
  // a 4 sd band.
  CHECK(std::abs(g.estimate - 0.3173) < 4 * 0.00047 + 0.0001);
  CHECK(within_binomial_sigmas(g, 2.0 * specfun::std_normal_cdf(-1.0), 4.0));
  CHECK(std::abs(g.std_err - std::sqrt(g.estimate * (1 - g.estimate) / 1e6)) < 1e-15);
  CHECK(g.n_samples == 1'000'000);
  CHECK(g.seed == 2024);
  CHECK(mc_tail(params::Uniform{-1.0, 1.0}, 2.0, 100'000, 1).estimate == 0.0);
  CHECK(mc_tail(params::Gaussian{0.0, 1.0}, 1.0, 100'000, 5).estimate == mc_tail(params::Gaussian{0.0, 1.0}, 1.0, 100'000, 5).estimate);
  CHECK(mc_tail(params::Gaussian{0.0, 1.0}, 1.0, 100'000, 5).estimate != mc_tail(params::Gaussian{0.0, 1.0}, 1.0, 100'000, 6).estimate);
  CHECK_THROWS_AS(mc_tail(params::Gaussian{0.0, 1.0}, 1.0, 999, 1), DomainError);
  CHECK_THROWS_AS(mc_tail(params::Gaussian{0.0, -1.0}, 1.0, 10'000, 1), DomainError);
  CHECK_THROWS_AS(mc_tail(params::Gaussian{0.0, 1.0}, 0.0, 10'000, 1), DomainError);
}

TEST_CASE("Monte Carlo: serial and parallel kernels agree bit for bit at any thread count") {
  for (const ParamSet& ps : verify::verification_panel()) {
    CAPTURE(family_name(family_of(ps)));
    // Not a multiple of the chunk length, so the short last chunk is exercised.
    const std::uint64_t n = 5 * kMcChunk + 1234;
    const double serial = serial::mc_tail(ps, 0.9, n, 77).estimate;
    CHECK(mc_tail(ps, 0.9, n, 77).estimate == serial);
#ifdef _OPENMP
    const int before = omp_get_max_threads();
    for (int threads : {1, 3, 8}) {
      omp_set_num_threads(threads);
      CHECK(mc_tail(ps, 0.9, n, 77).estimate == serial);
    }
    omp_set_num_threads(before);
#endif
  }
}

TEST_CASE("Monte Carlo property: within 4 sd of the exact tail on random parameters") {
  int checked = 0;
  for (FamilyId f : kAllFamilies) {
    testsupport::for_all(500 + static_cast<int>(f), 3, [f](RandomStream& r) { return verify::random_params(f, r); },
                         [&](const ParamSet& ps) {
                           for (double y : {0.5, 1.5}) {
                             const double exact = tail_probability(ps, y).probability;
                             CHECK(within_binomial_sigmas(mc_tail(ps, y, 200'000, derive_seed(9, checked++)), exact, 4.0));
                           }
                         });
  }
}

TEST_CASE("Student's t quadrature") {
  CHECK(quad_student_cdf(3, 0.0) == 0.5);
  CHECK(std::abs(quad_student_cdf(1, 1.0) - 0.75) < 1e-12);
  CHECK(std::abs(quad_student_cdf(4, 2.0) - student_t_cdf(4, 2.0)) < 1e-10);
  for (double x : {-30.0, -2.0, 0.3, 7.0}) {
    CHECK(std::abs(quad_student_cdf(2, x) - (0.5 + x / (2.0 * std::sqrt(2.0 + x * x)))) < 1e-12);
  }
  for (int n = 1; n <= 50; ++n) {
    for (double x : {-5.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 5.0}) {
      CAPTURE(n);
      CAPTURE(x);
      CHECK(std::abs(quad_student_cdf(n, x) - student_t_cdf(n, x)) < 1e-10);
    }
  }
  CHECK_THROWS_AS(quad_student_cdf(0, 1.0), DomainError);
}

TEST_CASE("adaptive quadrature") {
  CHECK(std::abs(integrate([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-14).value - 2.0) < 1e-14);
  CHECK(std::abs(integrate([](double x) { return std::pow(x, 5); }, 0.0, 1.0, 1e-15).value - 1.0 / 6.0) < 1e-15);
  CHECK(std::abs(integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-12).value - 2.0 / 3.0) < 1e-12);
  CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0, 1e-12).value == 0.0);
  CHECK_THROWS_AS(integrate([](double x) { return 1.0 / std::sqrt(x + 1e-300); }, 0.0, 1.0, 1e-15, 5), ConvergenceError);
  for (double y : {0.5, 1.0, 2.0, 3.0}) {
    CHECK(std::abs(quad_normal_two_sided_tail(y) - 2.0 * specfun::std_normal_cdf(-y)) < 1e-13);
  }
}

TEST_CASE("grid infimum examples") {
  const auto gauss = grid_infimum(1.0, canonical_grid(FamilyId::Gaussian));
  CHECK(std::abs(gauss.value - 2.0 * specfun::std_normal_cdf(-1.0)) < 1e-15);
  const GridSpec uni{FamilyId::Uniform, {{"b", 0.1, 10.0, Scale::Linear, 40}}, {}, {{"a", "b", -1.0, 0.0}}};
  for (std::size_t i = 0; i < uni.size(); ++i) {
    CHECK(std::abs(tail_probability(uni.point(i), 1.0).probability - 0.4226497308) < 1e-10);
  }
  const auto poisson = grid_infimum(1.0, canonical_grid(FamilyId::Poisson));
  CHECK(poisson.value <= 1e-3);
  CHECK(std::get<params::Poisson>(poisson.argmin).lambda == 1e-4);
  CHECK(tail_probability(poisson.argmin, 1.0).probability == poisson.value);
}

TEST_CASE("grid infimum: lower bound, refinement, serial agreement") {
  for (FamilyId f : kAllFamilies) {
    const GridSpec g = canonical_grid(f);
    for (double y : {0.5, 1.0, 2.0}) {
      CAPTURE(family_name(f));
      CAPTURE(y);
      const auto coarse = grid_infimum(y, g);
      const auto fine = grid_infimum(y, refine(g));
      const auto ser = serial::grid_infimum(y, g);
      CHECK(fine.value <= coarse.value);
      CHECK(ser.value == coarse.value);
      CHECK(ser.argmin == coarse.argmin);
      if (classify(f) == Classification::AntiConcentrated && !(f == FamilyId::StudentT && y >= student_t_y_limit())) {
        CHECK(coarse.value >= closed_form(f, y).value - 1e-12);
      }
    }
  }
}

TEST_CASE("within_binomial_sigmas") {
  const McEstimate zero{0.0, 0.0, 1000, 1};
  CHECK(within_binomial_sigmas(zero, 0.0, 4.0));
  CHECK_FALSE(within_binomial_sigmas(McEstimate{0.001, 0.0, 1000, 1}, 0.0, 4.0));
  // sd = sqrt(0.25 / 1e4) = 0.005
  CHECK(within_binomial_sigmas(McEstimate{0.519, 0.0, 10000, 1}, 0.5, 4.0));
  CHECK_FALSE(within_binomial_sigmas(McEstimate{0.521, 0.0, 10000, 1}, 0.5, 4.0));
}
