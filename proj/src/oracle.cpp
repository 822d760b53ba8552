#include "anticonc/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <mutex>
#include <queue>
#include <set>

#include "anticonc/distributions.hpp"
#include "anticonc/errors.hpp"
#include "oracle_detail.hpp"

namespace anticonc::oracle {

namespace detail {

McEstimate make_estimate(std::uint64_t hits, std::uint64_t n_samples, std::uint64_t seed) {
  const double n = static_cast<double>(n_samples);
  const double est = static_cast<double>(hits) / n;
  return {est, std::sqrt(est * (1.0 - est) / n), n_samples, seed};
}

void check_mc_args(const ParamSet& ps, double y, std::uint64_t n_samples) {
  require_valid(ps);
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("mc_tail needs a finite y > 0");
  if (n_samples < 1000) throw DomainError("mc_tail needs at least 1000 samples");
}

std::size_t argmin_index(const std::vector<double>& values) {
  if (values.empty()) throw DomainError("empty grid");
  return static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
}

}  // namespace detail

namespace {

// Re-raises the first exception thrown inside an OpenMP worker.
class FirstError {
 public:
  void capture() {
    std::lock_guard<std::mutex> lock(mu_);
    if (!error_) error_ = std::current_exception();
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mu_;
  std::exception_ptr error_;
};

// 15-point Kronrod extension of the 7-point Gauss rule.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b, value, error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

Piece kronrod(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double k = fc * kKronrodWeights[7];
  double g = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double fsum = f(center - dx) + f(center + dx);
    k += kKronrodWeights[j] * fsum;
    if (j % 2 == 1) g += kGaussWeights[j / 2] * fsum;
  }
  return {a, b, k * half, std::abs((k - g) * half)};
}

// Breakpoints 0, 1, 2, 4, ... up to x so no single rule spans a heavy tail.
std::vector<double> dyadic_breaks(double x) {
  std::vector<double> breaks{0.0};
  for (double t = 1.0; t < x; t *= 2.0) breaks.push_back(t);
  breaks.push_back(x);
  return breaks;
}

double integrate_dyadic(const std::function<double(double)>& f, double x, double abs_tol) {
  const auto breaks = dyadic_breaks(x);
  const double share = abs_tol / static_cast<double>(breaks.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    total += integrate(f, breaks[i], breaks[i + 1], share).value;
  }
  return total;
}

}  // namespace

std::vector<double> GridAxis::values() const {
  std::vector<double> out(static_cast<std::size_t>(points));
  const double steps = static_cast<double>(points - 1);
  if (scale == Scale::Linear) {
    const double step = (hi - lo) / steps;
    for (int i = 0; i < points; ++i) out[i] = lo + static_cast<double>(i) * step;
  } else {
    const double l0 = std::log(lo);
    const double step = (std::log(hi) - l0) / steps;
    for (int i = 0; i < points; ++i) out[i] = std::exp(l0 + static_cast<double>(i) * step);
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::size_t GridSpec::size() const {
  std::size_t n = 1;
  for (const auto& ax : axes) n *= static_cast<std::size_t>(std::max(ax.points, 0));
  return n;
}

ParamSet GridSpec::point(std::size_t i) const {
  std::map<std::string, double> values = fixed;
  std::size_t rest = i;
  for (auto it = axes.rbegin(); it != axes.rend(); ++it) {
    const auto pts = static_cast<std::size_t>(it->points);
    const std::size_t idx = rest % pts;
    rest /= pts;
    // Recomputing the whole axis for one value keeps point() self-contained;
    // grids are small.
    values[it->param] = it->values()[idx];
  }
  for (const auto& tie : ties) values[tie.param] = tie.factor * values.at(tie.source) + tie.offset;
  const auto names = param_names(family);
  std::map<std::string, double> params_only;
  for (const auto& n : names) {
    if (values.count(n)) params_only[n] = values[n];
  }
  return make_params(family, params_only, true);
}

void GridSpec::check() const {
  const auto names = param_names(family);
  const std::set<std::string> family_params(names.begin(), names.end());
  std::map<std::string, int> provided;
  std::set<std::string> sources;
  for (const auto& ax : axes) {
    if (ax.points < 2) throw DomainError("grid axis '" + ax.param + "' needs at least 2 points");
    if (!std::isfinite(ax.lo) || !std::isfinite(ax.hi) || !(ax.lo < ax.hi)) {
      throw DomainError("grid axis '" + ax.param + "' needs finite lo < hi");
    }
    if (ax.scale == Scale::Logarithmic && !(ax.lo > 0.0)) {
      throw DomainError("logarithmic grid axis '" + ax.param + "' needs lo > 0");
    }
    ++provided[ax.param];
    sources.insert(ax.param);
  }
  for (const auto& [name, _] : fixed) {
    ++provided[name];
    sources.insert(name);
  }
  for (const auto& tie : ties) {
    if (!sources.count(tie.source)) {
      throw DomainError("grid tie source '" + tie.source + "' is neither an axis nor fixed");
    }
    ++provided[tie.param];
  }
  std::set<std::string> tie_sources;
  for (const auto& tie : ties) tie_sources.insert(tie.source);
  for (const auto& [name, count] : provided) {
    if (count > 1) throw DomainError("grid parameter '" + name + "' given more than once");
    if (!family_params.count(name) && !tie_sources.count(name)) {
      throw DomainError("grid name '" + name + "' is not a " + std::string(family_name(family)) +
                        " parameter");
    }
  }
  for (const auto& n : names) {
    if (!provided.count(n)) throw DomainError("grid does not set parameter '" + n + "'");
  }
  if (size() > 50'000'000) throw DomainError("grid too large");
  for (std::size_t i = 0; i < size(); ++i) {
    const ParamSet ps = point(i);
    const auto violations = validate(ps);
    if (!violations.empty()) {
      throw DomainError("grid point " + std::to_string(i) + " leaves the valid region: " +
                        violations.front());
    }
  }
}

GridSpec refine(const GridSpec& grid) {
  GridSpec out = grid;
  for (auto& ax : out.axes) ax.points = 2 * (ax.points - 1) + 1;
  return out;
}

GridSpec canonical_grid(FamilyId family) {
  using S = Scale;
  switch (family) {
    case FamilyId::Uniform:
      return {family, {{"b", 1e-2, 1e2, S::Logarithmic, 100}}, {}, {{"a", "b", -1.0, 0.0}}};
    case FamilyId::Exponential:
      return {family, {{"lambda", 1e-3, 1e3, S::Logarithmic, 100}}, {}, {}};
    case FamilyId::Gaussian:
      return {family, {{"mu", -10.0, 10.0, S::Linear, 5}, {"sigma", 1e-2, 1e2, S::Logarithmic, 20}}, {}, {}};
    case FamilyId::StudentT:
      return {family, {{"n", 3.0, 400.0, S::Linear, 398}}, {}, {}};
    case FamilyId::Binomial:
      return {family, {{"p", 1e-6, 0.5, S::Logarithmic, 200}}, {{"n", 1.0}}, {}};
    case FamilyId::Poisson:
      return {family, {{"lambda", 1e-4, 1e2, S::Logarithmic, 200}}, {}, {}};
    case FamilyId::NegBinomial:
      return {family, {{"q", 1e-6, 0.5, S::Logarithmic, 200}}, {{"r", 1.0}}, {{"p", "q", -1.0, 1.0}}};
    case FamilyId::Hypergeometric:
      return {family, {{"N", 2.0, 1e4, S::Logarithmic, 60}}, {{"n", 1.0}}, {{"M", "N", 1.0, -1.0}}};
    case FamilyId::Gamma:
      return {family, {{"alpha", 1e-6, 1e2, S::Logarithmic, 100}}, {{"beta", 1.0}}, {}};
    case FamilyId::Pareto:
      return {family, {{"d", 1e-6, 1e2, S::Logarithmic, 100}}, {{"A", 1.0}}, {{"r", "d", 1.0, 2.0}}};
    case FamilyId::Weibull:
      return {family, {{"alpha", 1e-2, 1e2, S::Logarithmic, 100}}, {{"lambda", 1.0}}, {}};
    case FamilyId::LogNormal:
      return {family, {{"sigma", 1e-2, 10.0, S::Logarithmic, 100}}, {{"alpha", 0.0}}, {}};
    case FamilyId::Beta:
      return {family, {{"q", 1e-6, 1e2, S::Logarithmic, 100}}, {{"p", 1.0}}, {}};
  }
  throw DomainError("unknown family id");
}

McEstimate mc_tail(const ParamSet& ps, double y, std::uint64_t n_samples, std::uint64_t seed) {
  detail::check_mc_args(ps, y, n_samples);
  const Moments m = moments(ps);
  const Sampler sampler(ps);
  const auto chunks = static_cast<std::int64_t>((n_samples + kMcChunk - 1) / kMcChunk);
  std::uint64_t hits = 0;
  FirstError error;
#pragma omp parallel for schedule(dynamic) reduction(+ : hits)
  for (std::int64_t c = 0; c < chunks; ++c) {
    try {
      hits += detail::count_chunk(sampler, m, y, seed, static_cast<std::uint64_t>(c), n_samples);
    } catch (...) {
      error.capture();
    }
  }
  error.rethrow();
  return detail::make_estimate(hits, n_samples, seed);
}

InfimumEstimate grid_infimum(double y, const GridSpec& grid, const SeriesConfig& cfg) {
  grid.check();
  const auto n = static_cast<std::int64_t>(grid.size());
  std::vector<double> values(static_cast<std::size_t>(n));
  FirstError error;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      values[i] = tail_probability(grid.point(static_cast<std::size_t>(i)), y, cfg).probability;
    } catch (...) {
      error.capture();
    }
  }
  error.rethrow();
  const std::size_t best = detail::argmin_index(values);
  return {values[best], grid.point(best), grid};
}

Integral integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                   int max_intervals) {
  if (!(abs_tol > 0.0)) throw DomainError("integrate needs a positive tolerance");
  if (a == b) return {0.0, 0.0};
  std::priority_queue<Piece> heap;
  Piece first = kronrod(f, a, b);
  double value = first.value;
  double error = first.error;
  heap.push(first);
  int intervals = 1;
  while (error > abs_tol) {
    if (intervals >= max_intervals) {
      throw ConvergenceError("adaptive quadrature exceeded its interval budget");
    }
    const Piece worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Piece left = kronrod(f, worst.a, mid);
    const Piece right = kronrod(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Re-sum to shed the drift of the running updates.
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  return {value, error};
}

double quad_student_cdf(std::int64_t n, double x, double abs_tol) {
  if (n < 1) throw DomainError("quad_student_cdf needs n >= 1");
  if (std::isnan(x)) throw DomainError("quad_student_cdf: NaN argument");
  if (x == 0.0) return 0.5;
  const double nd = static_cast<double>(n);
  const double log_norm = std::lgamma(0.5 * (nd + 1.0)) - std::lgamma(0.5 * nd) - 0.5 * std::log(nd * M_PI);
  auto density = [&](double t) {
    return std::exp(log_norm - 0.5 * (nd + 1.0) * std::log1p(t * t / nd));
  };
  const double half = integrate_dyadic(density, std::min(std::abs(x), 1e300), abs_tol);
  return std::clamp(x > 0 ? 0.5 + half : 0.5 - half, 0.0, 1.0);
}

double quad_normal_two_sided_tail(double y, double abs_tol) {
  if (!(y > 0.0)) throw DomainError("quad_normal_two_sided_tail needs y > 0");
  auto phi = [](double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * M_PI); };
  return 1.0 - 2.0 * integrate_dyadic(phi, y, 0.5 * abs_tol);
}

bool within_binomial_sigmas(const McEstimate& mc, double exact, double k) {
  if (exact == 0.0) return mc.estimate == 0.0;
  const double sigma = std::sqrt(exact * (1.0 - exact) / static_cast<double>(mc.n_samples));
  return std::abs(mc.estimate - exact) <= k * sigma;
}

}  // namespace anticonc::oracle
