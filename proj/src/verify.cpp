#include "anticonc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>

#include "anticonc/anticoncentration.hpp"
#include "anticonc/distributions.hpp"
#include "anticonc/errors.hpp"
#include "anticonc/oracle.hpp"
#include "anticonc/sampling.hpp"
#include "anticonc/specfun.hpp"

namespace anticonc::verify {

namespace {

using oracle::within_binomial_sigmas;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Accumulates the cases of one named check.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++cases_;
    if (!ok && failures_++ == 0) first_failure_ = what;
  }

  void close(double got, double want, double tol, const std::string& what, bool relative = false) {
    double dev = std::abs(got - want);
    if (relative && want != 0.0) dev /= std::abs(want);
    if (std::isnan(got)) dev = std::numeric_limits<double>::infinity();
    max_dev_ = std::max(max_dev_, dev);
    expect(dev <= tol, what + ": got " + fmt(got) + ", want " + fmt(want) + " (tol " + fmt(tol) + ")");
  }

  void mc(const oracle::McEstimate& est, double exact, const std::string& what) {
    const double sd = std::sqrt(exact * (1.0 - exact) / static_cast<double>(est.n_samples));
    if (sd > 0) max_sigmas_ = std::max(max_sigmas_, std::abs(est.estimate - exact) / sd);
    expect(within_binomial_sigmas(est, exact, 4.0),
           what + ": Monte Carlo " + fmt(est.estimate) + " vs exact " + fmt(exact));
  }

  bool passed() const { return failures_ == 0 && cases_ > 0; }

  std::string detail() const {
    std::string out = std::to_string(cases_) + " cases";
    if (max_dev_ > 0) out += ", max dev " + fmt(max_dev_);
    if (max_sigmas_ > 0) out += ", max " + fmt(max_sigmas_) + " sd";
    if (failures_ > 0) out += "; " + std::to_string(failures_) + " failed, first: " + first_failure_;
    if (cases_ == 0) out += " (nothing checked)";
    return out;
  }

 private:
  long cases_ = 0;
  long failures_ = 0;
  double max_dev_ = 0.0;
  double max_sigmas_ = 0.0;
  std::string first_failure_;
};

using CheckFn = std::function<void(Check&, const NumericConfig&)>;

struct NamedCheck {
  const char* name;
  CheckFn run;
};

std::string label(const ParamSet& ps) {
  std::string out(family_name(family_of(ps)));
  out += '(';
  bool first = true;
  for (const auto& [k, v] : param_values(ps)) {
    out += (first ? "" : ", ") + k + "=" + fmt(v);
    first = false;
  }
  return out + ')';
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  return out;
}

double tail(const ParamSet& ps, double y, const NumericConfig& cfg) {
  return tail_probability(ps, y, cfg.series).probability;
}

constexpr std::array<FamilyId, 4> kAntiConcentrated = {FamilyId::Uniform, FamilyId::Exponential,
                                                       FamilyId::Gaussian, FamilyId::StudentT};

std::vector<FamilyId> zero_infimum_families() {
  std::vector<FamilyId> out;
  for (FamilyId f : kAllFamilies) {
    if (classify(f) == Classification::ZeroInfimum) out.push_back(f);
  }
  return out;
}

// ---------------------------------------------------------------- specfun

std::vector<NamedCheck> specfun_checks() {
  using namespace specfun;
  return {
      {"log_gamma anchors",
       [](Check& c, const NumericConfig&) {
         c.expect(log_gamma(1.0) == 0.0, "log_gamma(1) is not exactly 0");
         c.expect(log_gamma(2.0) == 0.0, "log_gamma(2) is not exactly 0");
         c.close(log_gamma(0.5), 0.5 * std::log(M_PI), 1e-13, "log_gamma(0.5)", true);
         long fact = 1;
         for (long k = 2; k <= 10; ++k) fact *= k;
         c.close(log_gamma(11.0), std::log(static_cast<double>(fact)), 1e-13, "log_gamma(11)", true);
       }},
      {"log_gamma vs std::lgamma on [1e-6, 1e6]",
       [](Check& c, const NumericConfig&) {
         for (int i = 0; i <= 600; ++i) {
           const double x = std::pow(10.0, -6.0 + 12.0 * i / 600.0);
           const double ref = std::lgamma(x);
           c.close(log_gamma(x) / std::max(1.0, std::abs(ref)), ref / std::max(1.0, std::abs(ref)), 1e-13,
                   "log_gamma(" + fmt(x) + ")");
         }
       }},
      {"2F1 anchors",
       [](Check& c, const NumericConfig& cfg) {
         c.close(gauss_2f1(0.5, 2.0, 1.5, 0.0, cfg.series), 1.0, 0.0, "2F1(.5,2;1.5;0)");
         c.close(gauss_2f1(0.5, 2.0, 0.5, -1.0, cfg.series), 0.25, 1e-15, "2F1(.5,2;.5;-1)");
         c.close(gauss_2f1(0.5, 1.0, 1.5, -1.0, cfg.series), std::atan(1.0), 1e-14, "2F1(.5,1;1.5;-1)", true);
         for (double x : {0.1, 0.5, 2.0, 10.0}) {
           c.close(gauss_2f1(0.5, 1.0, 1.5, -x * x, cfg.series), std::atan(x) / x, 1e-13,
                   "2F1(.5,1;1.5;-x^2) vs arctan(x)/x at x=" + fmt(x), true);
         }
       }},
      {"2F1 symmetric in a and b for z in [-8, 0]",
       [](Check& c, const NumericConfig& cfg) {
         for (double a : {0.5, 1.5, 2.5, 3.7}) {
           for (double b : {0.25, 1.0, 2.0, 4.5}) {
             for (double cc : {0.7, 1.5, 2.5}) {
               for (double z : linspace(-8.0, 0.0, 17)) {
                 c.close(gauss_2f1(a, b, cc, z, cfg.series), gauss_2f1(b, a, cc, z, cfg.series), 1e-12,
                         "2F1 symmetry a=" + fmt(a) + " b=" + fmt(b) + " c=" + fmt(cc) + " z=" + fmt(z), true);
               }
             }
           }
         }
       }},
      {"2F1(a, b; a; z) = (1 - z)^-b",
       [](Check& c, const NumericConfig& cfg) {
         for (double a : {0.5, 1.5, 3.0}) {
           for (double b : {0.5, 1.0, 2.0, 5.5}) {
             for (double z : {-4.0, -1.0, -0.5, 0.0, 0.5}) {
               c.close(gauss_2f1(a, b, a, z, cfg.series), std::pow(1.0 - z, -b), 1e-12,
                       "a=" + fmt(a) + " b=" + fmt(b) + " z=" + fmt(z), true);
             }
           }
         }
       }},
      {"contiguous relation in n",
       [](Check& c, const NumericConfig& cfg) {
         for (int n = 3; n <= 50; ++n) {
           for (double y : {0.25, 0.5, 1.0, 1.2}) {
             const double nd = n;
             const double z = -y * y / nd;
             const double lhs = 0.5 * (nd + 1.0) * gauss_2f1(0.5, 0.5 * (nd + 3.0), 1.5, z, cfg.series);
             const double rhs = 0.5 * nd * gauss_2f1(0.5, 0.5 * (nd + 1.0), 1.5, z, cfg.series) +
                                0.5 * std::pow(1.0 - z, -0.5 * (nd + 1.0));
             c.close(lhs, rhs, 1e-11, "n=" + std::to_string(n) + " y=" + fmt(y), true);
           }
         }
       }},
      {"incomplete gamma anchors",
       [](Check& c, const NumericConfig& cfg) {
         c.close(reg_inc_gamma_lower(2.5, 0.0, cfg.series), 0.0, 0.0, "P(2.5, 0)");
         c.close(reg_inc_gamma_lower(1.0, 1.0, cfg.series), -std::expm1(-1.0), 1e-12, "P(1, 1)");
         c.close(reg_inc_gamma_lower(0.5, 0.5, cfg.series), std::erf(std::sqrt(0.5)), 1e-12, "P(0.5, 0.5)");
         for (double a : {0.5, 1.0, 4.0, 30.0}) {
           for (double x : {0.1, 1.0, 5.0, 40.0}) {
             c.close(reg_inc_gamma_lower(a, x, cfg.series) + reg_inc_gamma_upper(a, x, cfg.series), 1.0, 1e-14,
                     "P + Q at a=" + fmt(a) + " x=" + fmt(x));
           }
         }
       }},
      {"incomplete gamma nondecreasing in x",
       [](Check& c, const NumericConfig& cfg) {
         for (double a : {0.05, 0.5, 1.0, 3.0, 10.0, 80.0}) {
           double prev = 0.0;
           for (double x : linspace(0.0, 4.0 * a + 20.0, 300)) {
             const double p = reg_inc_gamma_lower(a, x, cfg.series);
             c.expect(p >= prev && p >= 0.0 && p <= 1.0, "P(" + fmt(a) + ", " + fmt(x) + ") decreased");
             prev = p;
           }
         }
       }},
      {"incomplete beta anchors",
       [](Check& c, const NumericConfig& cfg) {
         c.close(reg_inc_beta(0.0, 2.0, 3.0, cfg.series), 0.0, 0.0, "I_0(2, 3)");
         c.close(reg_inc_beta(1.0, 2.0, 3.0, cfg.series), 1.0, 0.0, "I_1(2, 3)");
         c.close(reg_inc_beta(0.5, 1.0, 1.0, cfg.series), 0.5, 1e-15, "I_0.5(1, 1)");
         c.close(reg_inc_beta(0.3, 1.0, 2.0, cfg.series), 0.51, 1e-12, "I_0.3(1, 2)");
       }},
      {"incomplete beta nondecreasing and I_x(a,b) + I_{1-x}(b,a) = 1",
       [](Check& c, const NumericConfig& cfg) {
         for (double a : {0.1, 0.5, 1.0, 2.5, 10.0, 40.0}) {
           for (double b : {0.1, 0.5, 1.0, 2.5, 10.0, 40.0}) {
             double prev = 0.0;
             for (double x : linspace(0.0, 1.0, 101)) {
               const double ix = reg_inc_beta(x, a, b, cfg.series);
               c.expect(ix >= prev, "I_x decreased at a=" + fmt(a) + " b=" + fmt(b) + " x=" + fmt(x));
               prev = ix;
               c.close(ix + reg_inc_beta(1.0 - x, b, a, cfg.series), 1.0, 1e-12,
                       "duality a=" + fmt(a) + " b=" + fmt(b) + " x=" + fmt(x));
             }
           }
         }
       }},
      {"standard normal cdf",
       [](Check& c, const NumericConfig&) {
         c.close(std_normal_cdf(0.0), 0.5, 0.0, "Phi(0)");
         c.close(std_normal_cdf(-1.0), 0.5 * oracle::quad_normal_two_sided_tail(1.0), 1e-13, "Phi(-1) vs quadrature");
         for (double x : linspace(0.0, 9.0, 91)) {
           c.close(std_normal_cdf(x) + std_normal_cdf(-x), 1.0, 1e-15, "Phi(x) + Phi(-x) at " + fmt(x));
         }
       }},
  };
}

// ----------------------------------------------------------- closed-forms

std::vector<NamedCheck> closed_form_checks() {
  return {
      {"uniform formula",
       [](Check& c, const NumericConfig&) {
         const double s3 = std::sqrt(3.0);
         c.close(a_uniform(s3).value, 0.0, 0.0, "A(sqrt 3)");
         c.close(a_uniform(s3 / 2.0).value, 0.5, 1e-15, "A(sqrt(3)/2)");
         c.close(a_uniform(1.0).value, 1.0 - 1.0 / s3, 1e-15, "A(1)");
         double prev = 1.0;
         for (int i = 1; i <= 200; ++i) {
           const double y = s3 * i / 201.0;
           const double v = a_uniform(y).value;
           c.expect(v < prev && v >= 0.0 && v <= 1.0, "A not strictly decreasing at y=" + fmt(y));
           prev = v;
         }
         c.expect(a_uniform(2.0).value == 0.0, "A(2) is not 0");
       }},
      {"uniform vs grid infimum and Monte Carlo",
       [](Check& c, const NumericConfig& cfg) {
         for (double y : {0.5, 1.0, 1.5, 2.0}) {
           const double a = a_uniform(y).value;
           const auto inf = oracle::grid_infimum(y, oracle::canonical_grid(FamilyId::Uniform), cfg.series);
           c.close(inf.value, a, 1e-12, "grid infimum at y=" + fmt(y));
           const auto mc = oracle::mc_tail(params::Uniform{-1.0, 1.0}, y, cfg.mc_samples, derive_seed(cfg.seed, 11));
           c.mc(mc, a, "Uniform(-1, 1) at y=" + fmt(y));
         }
       }},
      {"exponential formula vs exact tail, grid constant",
       [](Check& c, const NumericConfig& cfg) {
         c.close(a_exponential(1.0).value, std::exp(-2.0), 1e-15, "A(1)");
         c.close(a_exponential(0.5).value, 1.0 - std::exp(-0.5) + std::exp(-1.5), 1e-15, "A(0.5)");
         for (double y : {0.1, 0.25, 0.5, 0.9, 1.0, 1.5, 3.0}) {
           const double a = a_exponential(y).value;
           c.close(tail(params::Exponential{1.0}, y, cfg), a, 1e-12, "tail Exp(1) at y=" + fmt(y));
           const auto grid = oracle::canonical_grid(FamilyId::Exponential);
           for (std::size_t i = 0; i < grid.size(); ++i) {
             c.close(tail(grid.point(i), y, cfg), a, 1e-12, "grid point " + label(grid.point(i)));
           }
         }
       }},
      {"gaussian formula vs quadrature",
       [](Check& c, const NumericConfig& cfg) {
         for (double y : {0.5, 1.0, 2.0, 3.0}) {
           c.close(a_gaussian(y).value, oracle::quad_normal_two_sided_tail(y, cfg.quad_tol * 0.1), 1e-10,
                   "y=" + fmt(y));
         }
         c.close(a_gaussian(1.0).value, 0.3173105079, 1e-10, "A(1)");
         c.close(a_gaussian(3.0).value, 0.0026997961, 1e-10, "A(3)");
       }},
      {"closed forms bound every tail from below and are attained",
       [](Check& c, const NumericConfig& cfg) {
         RandomStream rng(derive_seed(cfg.seed, 21));
         for (FamilyId f : kAntiConcentrated) {
           for (double y : {0.3, 0.7, 1.0, 1.2}) {
             const AValue a = closed_form(f, y, cfg.series);
             for (int k = 0; k < 50; ++k) {
               const ParamSet ps = random_params(f, rng);
               const double t = tail(ps, y, cfg);
               c.expect(t >= a.value - 1e-12, label(ps) + " tail " + fmt(t) + " below A=" + fmt(a.value));
               if (f != FamilyId::StudentT) c.close(t, a.value, 1e-12, "scale-free " + label(ps));
             }
             if (a.detail) {
               c.close(tail(params::StudentT{a.detail->argmax_n}, y, cfg), a.value, 1e-12,
                       "Student's t at argmax n, y=" + fmt(y));
             }
           }
         }
       }},
      {"student t equals 1 - max J_n over 3 <= n <= 400",
       [](Check& c, const NumericConfig& cfg) {
         for (double y : {0.25, 0.5, 0.75, 1.0, 1.1, 1.2}) {
           double best = -1.0;
           for (int n = 3; n <= 400; ++n) best = std::max(best, inner_probability(n, y, cfg.series));
           const AValue a = a_student_t(y, StudentRange::Full, cfg.series);
           c.close(a.value, 1.0 - best, 1e-12, "y=" + fmt(y));
           c.expect(a.detail && a.detail->argmax_n >= 3 && a.detail->argmax_n <= a.detail->n0 + 1,
                    "argmax outside [3, n0 + 1] at y=" + fmt(y));
         }
       }},
      {"student t {3, 4} range equals full range for y <= 1",
       [](Check& c, const NumericConfig& cfg) {
         for (int i = 1; i <= 10; ++i) {
           const double y = 0.1 * i;
           c.close(a_student_t(y, StudentRange::Restricted, cfg.series).value,
                   a_student_t(y, StudentRange::Full, cfg.series).value, 1e-12, "y=" + fmt(y));
         }
       }},
      {"J_{n+2} < J_n",
       [](Check& c, const NumericConfig& cfg) {
         for (double y : {0.1, 0.3, 0.5, 0.8, 1.0}) {
           for (int n = 3; n <= 99; ++n) {
             const double jn = inner_probability(n, y, cfg.series);
             const double jn2 = inner_probability(n + 2, y, cfg.series);
             c.expect(jn2 < jn, "n=" + std::to_string(n) + " y=" + fmt(y));
           }
         }
       }},
      {"cutoff sequence and n0",
       [](Check& c, const NumericConfig&) {
         // Numerator and denominator in exact integer arithmetic.
         const std::array<std::pair<long, long>, 4> hand = {{{1, 3}, {8, 11}, {21, 23}, {40, 39}}};
         for (long n = 3; n <= 6; ++n) {
           const long num = 3 * n * n - 14 * n + 16;
           const long den = 2 * n * n - 6 * n + 3;
           const auto [hn, hd] = hand[static_cast<std::size_t>(n - 3)];
           c.expect(num * hd == hn * den, "sequence at n=" + std::to_string(n));
           c.close(cutoff_sequence(n), static_cast<double>(hn) / static_cast<double>(hd), 1e-15,
                   "sequence value n=" + std::to_string(n));
         }
         c.expect(n0(0.5) == 3, "n0(0.5)");
         c.expect(n0(0.9) == 5, "n0(0.9)");
         c.expect(n0(1.0) == 6, "n0(1)");
         for (long n = 3; n < 10000; ++n) {
           c.expect(cutoff_sequence(n + 1) > cutoff_sequence(n) && cutoff_sequence(n + 1) < 1.5,
                    "sequence not increasing below 3/2 at n=" + std::to_string(n));
         }
       }},
      {"student t vs grid infimum and Monte Carlo",
       [](Check& c, const NumericConfig& cfg) {
         for (double y : {0.5, 1.0, 1.2}) {
           const AValue a = a_student_t(y, StudentRange::Full, cfg.series);
           const auto inf = oracle::grid_infimum(y, oracle::canonical_grid(FamilyId::StudentT), cfg.series);
           c.expect(inf.value >= a.value - 1e-12, "grid below closed form at y=" + fmt(y));
           c.close(inf.value, a.value, 1e-3, "grid infimum at y=" + fmt(y));
           const auto mc = oracle::mc_tail(params::StudentT{a.detail->argmax_n}, y, cfg.mc_samples,
                                           derive_seed(cfg.seed, 31));
           c.mc(mc, a.value, "Student's t at argmax, y=" + fmt(y));
         }
       }},
      {"anti-concentrated grid infima stay within 1e-3 of the closed form",
       [](Check& c, const NumericConfig& cfg) {
         for (FamilyId f : kAntiConcentrated) {
           for (double y : {0.5, 1.0}) {
             const double a = closed_form(f, y, cfg.series).value;
             const auto inf = oracle::grid_infimum(y, oracle::canonical_grid(f), cfg.series);
             c.expect(inf.value >= a - 1e-12, std::string(family_name(f)) + " grid below A");
             c.close(inf.value, a, 1e-3, std::string(family_name(f)) + " y=" + fmt(y));
           }
         }
       }},
  };
}

// -------------------------------------------------------------- witnesses

std::vector<NamedCheck> witness_checks() {
  return {
      {"certificates: tail <= epsilon, exact and Monte Carlo",
       [](Check& c, const NumericConfig& cfg) {
         std::uint64_t stream = 0;
         for (FamilyId f : zero_infimum_families()) {
           for (double y : {0.5, 1.0, 2.0}) {
             for (double eps : {1e-2, 1e-3, 1e-4}) {
               const Witness w = witness_parameter(f, y, eps, {}, cfg.series);
               const std::string what = label(w.params) + " y=" + fmt(y) + " eps=" + fmt(eps);
               c.expect(validate(w.params).empty(), what + " invalid");
               c.expect(w.achieved_tail <= eps, what + " tail " + fmt(w.achieved_tail));
               c.close(tail(w.params, y, cfg), w.achieved_tail, 0.0, what + " recomputed");
               c.mc(oracle::mc_tail(w.params, y, cfg.mc_samples, derive_seed(cfg.seed, 1000 + stream++)),
                    w.achieved_tail, what);
             }
           }
         }
       }},
      {"hypergeometric certificate is N = 200 at y = 1, eps = 0.005",
       [](Check& c, const NumericConfig& cfg) {
         const Witness w = witness_parameter(FamilyId::Hypergeometric, 1.0, 0.005, {}, cfg.series);
         const auto& h = std::get<params::Hypergeometric>(w.params);
         c.expect(h.N == 200 && h.M == 199 && h.n == 1, "got " + label(w.params));
         c.close(w.achieved_tail, 1.0 / 200.0, 1e-15, "achieved tail");
         c.close(tail(params::Hypergeometric{99, 100, 1}, 1.0, cfg), 0.01, 1e-15, "M=99, N=100, n=1");
       }},
      {"poisson and negative binomial anchors",
       [](Check& c, const NumericConfig& cfg) {
         c.close(tail(params::Poisson{0.01}, 1.0, cfg), -std::expm1(-0.01), 1e-15, "Poisson(0.01)");
         const double p = 0.9995;
         const double q = 1.0 - p;
         c.expect(q / p + std::sqrt(q) / p < 1.0, "threshold condition");
         c.close(tail(params::NegBinomial{1.0, p}, 1.0, cfg), 1.0 - p, 1e-12, "NegBinomial(1, 0.9995)");
         const Witness w = witness_parameter(FamilyId::NegBinomial, 1.0, 1e-3, {}, cfg.series);
         c.expect(w.achieved_tail <= 1e-3, "neg-binomial witness");
       }},
      {"beta certificate keeps p = 1",
       [](Check& c, const NumericConfig& cfg) {
         const Witness w = witness_parameter(FamilyId::Beta, 0.5, 1e-3, {}, cfg.series);
         const auto& b = std::get<params::Beta>(w.params);
         c.expect(b.p == 1.0 && b.q < 0.01, "got " + label(w.params));
         c.expect(w.achieved_tail <= 1e-3, "tail " + fmt(w.achieved_tail));
       }},
      {"anti-concentrated families have no witness",
       [](Check& c, const NumericConfig& cfg) {
         for (FamilyId f : kAntiConcentrated) {
           bool threw = false;
           try {
             witness_parameter(f, 1.0, 0.1, {}, cfg.series);
           } catch (const DomainError&) {
             threw = true;
           }
           c.expect(threw, std::string(family_name(f)));
         }
       }},
  };
}

// ---------------------------------------------------------------- oracles

std::vector<NamedCheck> oracle_checks() {
  return {
      {"quadrature vs hypergeometric Student's t cdf",
       [](Check& c, const NumericConfig& cfg) {
         c.close(oracle::quad_student_cdf(1, 1.0), 0.75, 1e-12, "n=1 x=1");
         c.close(oracle::quad_student_cdf(3, 0.0), 0.5, 0.0, "n=3 x=0");
         for (int n = 1; n <= 50; ++n) {
           for (double x : {-5.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 5.0}) {
             c.close(oracle::quad_student_cdf(n, x, cfg.quad_tol), student_t_cdf(n, x, cfg.series), 1e-10,
                     "n=" + std::to_string(n) + " x=" + fmt(x));
             c.close(student_t_cdf(n, x, cfg.series) + student_t_cdf(n, -x, cfg.series), 1.0, 1e-12,
                     "symmetry n=" + std::to_string(n) + " x=" + fmt(x));
           }
         }
       }},
      {"Monte Carlo panel within 4 sd of the exact tail",
       [](Check& c, const NumericConfig& cfg) {
         std::uint64_t stream = 0;
         for (const ParamSet& ps : verification_panel()) {
           for (double y : {0.5, 1.0, 2.0}) {
             c.mc(oracle::mc_tail(ps, y, cfg.mc_samples, derive_seed(cfg.seed, 2000 + stream++)), tail(ps, y, cfg),
                  label(ps) + " y=" + fmt(y));
           }
         }
         c.expect(oracle::mc_tail(params::Uniform{-1.0, 1.0}, 2.0, cfg.mc_samples, cfg.seed).estimate == 0.0,
                  "Uniform(-1, 1) beyond its support");
       }},
      {"Monte Carlo replay and serial kernel agree bit for bit",
       [](Check& c, const NumericConfig& cfg) {
         for (const ParamSet& ps : verification_panel()) {
           const auto a = oracle::mc_tail(ps, 1.0, 200'000, cfg.seed);
           const auto b = oracle::mc_tail(ps, 1.0, 200'000, cfg.seed);
           const auto s = oracle::serial::mc_tail(ps, 1.0, 200'000, cfg.seed);
           c.expect(a.estimate == b.estimate && a.estimate == s.estimate, label(ps));
         }
       }},
      {"grid infimum examples",
       [](Check& c, const NumericConfig& cfg) {
         const auto gauss = oracle::canonical_grid(FamilyId::Gaussian);
         const auto ginf = oracle::grid_infimum(1.0, gauss, cfg.series);
         c.close(ginf.value, 2.0 * specfun::std_normal_cdf(-1.0), 1e-15, "gaussian");
         for (std::size_t i = 0; i < gauss.size(); ++i) {
           c.close(tail(gauss.point(i), 1.0, cfg), ginf.value, 0.0, "gaussian constant " + label(gauss.point(i)));
         }
         const oracle::GridSpec uni{FamilyId::Uniform,
                                    {{"b", 0.1, 10.0, oracle::Scale::Linear, 50}},
                                    {},
                                    {{"a", "b", -1.0, 0.0}}};
         for (std::size_t i = 0; i < uni.size(); ++i) {
           c.close(tail(uni.point(i), 1.0, cfg), 1.0 - 1.0 / std::sqrt(3.0), 1e-12, label(uni.point(i)));
         }
         const auto pinf = oracle::grid_infimum(1.0, oracle::canonical_grid(FamilyId::Poisson), cfg.series);
         c.expect(pinf.value <= 1e-3, "poisson value " + fmt(pinf.value));
         c.expect(std::get<params::Poisson>(pinf.argmin).lambda == 1e-4, "poisson argmin " + label(pinf.argmin));
         c.close(tail(pinf.argmin, 1.0, cfg), pinf.value, 0.0, "value at argmin");
       }},
      {"canonical grids of zero-infimum families reach below 1e-3",
       [](Check& c, const NumericConfig& cfg) {
         for (FamilyId f : zero_infimum_families()) {
           const auto inf = oracle::grid_infimum(1.0, oracle::canonical_grid(f), cfg.series);
           c.expect(inf.value <= 1e-3, std::string(family_name(f)) + " " + fmt(inf.value));
         }
       }},
      {"serial and parallel grid kernels agree",
       [](Check& c, const NumericConfig& cfg) {
         for (FamilyId f : kAllFamilies) {
           const auto grid = oracle::canonical_grid(f);
           const auto p = oracle::grid_infimum(0.8, grid, cfg.series);
           const auto s = oracle::serial::grid_infimum(0.8, grid, cfg.series);
           c.expect(p.value == s.value && p.argmin == s.argmin, std::string(family_name(f)));
         }
       }},
  };
}

// ------------------------------------------------------------- properties

// Fourth moments exist here, so the sample variance has a usable error bar.
std::vector<ParamSet> moment_panel() {
  auto panel = verification_panel();
  panel[static_cast<std::size_t>(FamilyId::StudentT)] = params::StudentT{12};
  panel[static_cast<std::size_t>(FamilyId::Pareto)] = params::Pareto{10.0, 1.0};
  return panel;
}

std::vector<NamedCheck> property_checks() {
  return {
      {"tail nonincreasing in y",
       [](Check& c, const NumericConfig& cfg) {
         RandomStream rng(derive_seed(cfg.seed, 41));
         for (FamilyId f : kAllFamilies) {
           for (int k = 0; k < 20; ++k) {
             const ParamSet ps = random_params(f, rng);
             double prev = 1.0;
             for (int i = 1; i <= 100; ++i) {
               const double t = tail(ps, 0.05 * i, cfg);
               c.expect(t <= prev + 1e-14 && t >= 0.0 && t <= 1.0, label(ps) + " at y=" + fmt(0.05 * i));
               prev = t;
             }
           }
         }
       }},
      {"continuous tails tend to 1 as y -> 0",
       [](Check& c, const NumericConfig& cfg) {
         RandomStream rng(derive_seed(cfg.seed, 42));
         for (FamilyId f : kAllFamilies) {
           if (is_discrete(f)) continue;
           for (int k = 0; k < 20; ++k) {
             const ParamSet ps = random_params(f, rng);
             c.expect(tail(ps, 1e-9, cfg) >= 1.0 - 1e-6, label(ps));
           }
         }
       }},
      {"cdf nondecreasing with limits 0 and 1",
       [](Check& c, const NumericConfig& cfg) {
         RandomStream rng(derive_seed(cfg.seed, 43));
         for (FamilyId f : kAllFamilies) {
           for (int k = 0; k < 20; ++k) {
             const ParamSet ps = random_params(f, rng);
             const Moments m = moments(ps);
             double prev = 0.0;
             for (double z : linspace(-12.0, 12.0, 401)) {
               const double v = cdf(ps, m.mean + z * m.stddev(), cfg.series);
               c.expect(v >= prev && v <= 1.0, label(ps) + " at z=" + fmt(z));
               prev = v;
             }
             c.expect(cdf(ps, m.mean - 1e15 * m.stddev(), cfg.series) <= 1e-12, label(ps) + " left limit");
             c.expect(cdf(ps, m.mean + 1e15 * m.stddev(), cfg.series) >= 1.0 - 1e-12, label(ps) + " right limit");
           }
         }
       }},
      {"sampler mean and variance match moments within 5 se",
       [](Check& c, const NumericConfig& cfg) {
         std::uint64_t stream = 0;
         for (const ParamSet& ps : moment_panel()) {
           const Moments m = moments(ps);
           const Sampler sampler(ps);
           RandomStream rng(derive_seed(cfg.seed, 3000 + stream++));
           const auto n = static_cast<double>(cfg.mc_samples);
           // Centered at the exact mean to keep the sums well conditioned.
           double s1 = 0, s2 = 0, s4 = 0;
           for (std::uint64_t i = 0; i < cfg.mc_samples; ++i) {
             const double d = sampler(rng) - m.mean;
             s1 += d;
             s2 += d * d;
             s4 += d * d * d * d;
           }
           const double mean_dev = s1 / n;
           const double var_hat = s2 / n;
           const double var_se = std::sqrt(std::max(s4 / n - var_hat * var_hat, 0.0) / n);
           c.expect(std::abs(mean_dev) <= 5.0 * m.stddev() / std::sqrt(n), label(ps) + " mean");
           c.expect(std::abs(var_hat - m.variance) <= 5.0 * var_se, label(ps) + " variance");
         }
       }},
      {"sampler replays from its seed",
       [](Check& c, const NumericConfig& cfg) {
         for (const ParamSet& ps : verification_panel()) {
           RandomStream a(cfg.seed), b(cfg.seed);
           const Sampler sampler(ps);
           bool same = true;
           for (int i = 0; i < 1000; ++i) same = same && sampler(a) == sampler(b);
           c.expect(same, label(ps));
         }
       }},
      {"grid refinement never increases the infimum",
       [](Check& c, const NumericConfig& cfg) {
         for (FamilyId f : kAllFamilies) {
           const auto grid = oracle::canonical_grid(f);
           for (double y : {0.5, 1.0, 2.0}) {
             const double coarse = oracle::grid_infimum(y, grid, cfg.series).value;
             const double fine = oracle::grid_infimum(y, oracle::refine(grid), cfg.series).value;
             c.expect(fine <= coarse, std::string(family_name(f)) + " y=" + fmt(y));
           }
         }
       }},
  };
}

std::vector<NamedCheck> checks_for(std::string_view suite) {
  if (suite == "specfun") return specfun_checks();
  if (suite == "closed-forms") return closed_form_checks();
  if (suite == "witnesses") return witness_checks();
  if (suite == "oracles") return oracle_checks();
  if (suite == "properties") return property_checks();
  throw DomainError("unknown verification suite '" + std::string(suite) + "'");
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"specfun", "closed-forms", "witnesses", "oracles", "properties", "all"};
}

std::vector<CheckResult> run_suite(std::string_view suite, const NumericConfig& cfg) {
  cfg.check();
  if (suite == "all") {
    std::vector<CheckResult> out;
    for (const auto& name : suite_names()) {
      if (name == "all") continue;
      auto part = run_suite(name, cfg);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  std::vector<CheckResult> out;
  for (const auto& check : checks_for(suite)) {
    Check c;
    try {
      check.run(c, cfg);
      out.push_back({std::string(suite), check.name, c.passed(), c.detail()});
    } catch (const std::exception& e) {
      out.push_back({std::string(suite), check.name, false, std::string("exception: ") + e.what()});
    }
  }
  return out;
}

ParamSet random_params(FamilyId family, RandomStream& rng) {
  auto unif = [&](double lo, double hi) { return lo + (hi - lo) * rng.uniform(); };
  auto log_unif = [&](double lo, double hi) { return std::exp(unif(std::log(lo), std::log(hi))); };
  auto integer = [&](std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng.next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  switch (family) {
    case FamilyId::Uniform: {
      const double a = unif(-50.0, 50.0);
      return params::Uniform{a, a + log_unif(1e-2, 1e2)};
    }
    case FamilyId::Exponential: return params::Exponential{log_unif(1e-3, 1e3)};
    case FamilyId::Gaussian: return params::Gaussian{unif(-100.0, 100.0), log_unif(1e-2, 1e2)};
    case FamilyId::StudentT: return params::StudentT{integer(3, 400)};
    case FamilyId::Binomial: return params::Binomial{integer(1, 200), unif(1e-3, 1.0 - 1e-3)};
    case FamilyId::Poisson: return params::Poisson{log_unif(1e-3, 150.0)};
    case FamilyId::NegBinomial: return params::NegBinomial{log_unif(0.1, 20.0), unif(0.02, 0.98)};
    case FamilyId::Hypergeometric: {
      const std::int64_t N = integer(2, 500);
      return params::Hypergeometric{integer(1, N - 1), N, integer(1, N - 1)};
    }
    case FamilyId::Gamma: return params::Gamma{log_unif(2e-2, 50.0), log_unif(5e-2, 20.0)};
    case FamilyId::Pareto: return params::Pareto{2.0 + log_unif(2e-2, 20.0), log_unif(5e-2, 20.0)};
    case FamilyId::Weibull: return params::Weibull{log_unif(0.2, 12.0), log_unif(5e-2, 20.0)};
    case FamilyId::LogNormal: return params::LogNormal{unif(-3.0, 3.0), log_unif(5e-2, 2.0)};
    case FamilyId::Beta: return params::Beta{log_unif(5e-2, 20.0), log_unif(5e-2, 20.0)};
  }
  throw DomainError("unknown family id");
}

std::vector<ParamSet> verification_panel() {
  return {params::Uniform{-1.0, 2.0},
          params::Exponential{2.0},
          params::Gaussian{1.0, 3.0},
          params::StudentT{5},
          params::Binomial{20, 0.3},
          params::Poisson{4.0},
          params::NegBinomial{2.5, 0.4},
          params::Hypergeometric{30, 100, 20},
          params::Gamma{2.5, 1.5},
          params::Pareto{4.0, 1.0},
          params::Weibull{1.5, 2.0},
          params::LogNormal{0.2, 0.5},
          params::Beta{2.0, 3.0}};
}

}  // namespace anticonc::verify
