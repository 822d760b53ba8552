#include "anticonc/family.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "anticonc/errors.hpp"

namespace anticonc {

namespace {

constexpr std::array<std::string_view, 13> kNames = {
    "uniform",  "exponential", "gaussian", "student-t", "binomial", "poisson", "neg-binomial",
    "hypergeometric", "gamma", "pareto", "weibull", "log-normal", "beta"};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

class Violations {
 public:
  void require(bool ok, std::string message) {
    if (!ok) list_.push_back(std::move(message));
  }
  void finite(double v, const char* name) {
    require(std::isfinite(v), std::string(name) + " must be finite");
  }
  std::vector<std::string> take() { return std::move(list_); }

 private:
  std::vector<std::string> list_;
};

}  // namespace

std::string_view family_name(FamilyId id) { return kNames.at(static_cast<std::size_t>(id)); }

FamilyId parse_family(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<FamilyId>(i);
  }
  throw DomainError("unknown family '" + std::string(name) + "'");
}

bool is_discrete(FamilyId id) {
  switch (id) {
    case FamilyId::Binomial:
    case FamilyId::Poisson:
    case FamilyId::NegBinomial:
    case FamilyId::Hypergeometric:
      return true;
    default:
      return false;
  }
}

std::vector<std::string> param_names(FamilyId id) {
  switch (id) {
    case FamilyId::Uniform: return {"a", "b"};
    case FamilyId::Exponential: return {"lambda"};
    case FamilyId::Gaussian: return {"mu", "sigma"};
    case FamilyId::StudentT: return {"n"};
    case FamilyId::Binomial: return {"n", "p"};
    case FamilyId::Poisson: return {"lambda"};
    case FamilyId::NegBinomial: return {"r", "p"};
    case FamilyId::Hypergeometric: return {"M", "N", "n"};
    case FamilyId::Gamma: return {"alpha", "beta"};
    case FamilyId::Pareto: return {"r", "A"};
    case FamilyId::Weibull: return {"alpha", "lambda"};
    case FamilyId::LogNormal: return {"alpha", "sigma"};
    case FamilyId::Beta: return {"p", "q"};
  }
  throw DomainError("unknown family id");
}

std::vector<std::pair<std::string, double>> param_values(const ParamSet& ps) {
  const auto names = param_names(family_of(ps));
  const std::vector<double> vals = std::visit(
      Overloaded{
          [](const params::Uniform& u) { return std::vector<double>{u.a, u.b}; },
          [](const params::Exponential& e) { return std::vector<double>{e.lambda}; },
          [](const params::Gaussian& g) { return std::vector<double>{g.mu, g.sigma}; },
          [](const params::StudentT& t) { return std::vector<double>{static_cast<double>(t.n)}; },
          [](const params::Binomial& b) {
            return std::vector<double>{static_cast<double>(b.n), b.p};
          },
          [](const params::Poisson& p) { return std::vector<double>{p.lambda}; },
          [](const params::NegBinomial& nb) { return std::vector<double>{nb.r, nb.p}; },
          [](const params::Hypergeometric& h) {
            return std::vector<double>{static_cast<double>(h.M), static_cast<double>(h.N),
                                       static_cast<double>(h.n)};
          },
          [](const params::Gamma& g) { return std::vector<double>{g.alpha, g.beta}; },
          [](const params::Pareto& p) { return std::vector<double>{p.r, p.A}; },
          [](const params::Weibull& w) { return std::vector<double>{w.alpha, w.lambda}; },
          [](const params::LogNormal& l) { return std::vector<double>{l.alpha, l.sigma}; },
          [](const params::Beta& b) { return std::vector<double>{b.p, b.q}; },
      },
      ps);
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < names.size(); ++i) out.emplace_back(names[i], vals[i]);
  return out;
}

ParamSet make_params(FamilyId id, const std::map<std::string, double>& values, bool round_integers) {
  const auto names = param_names(id);
  for (const auto& [key, _] : values) {
    if (std::find(names.begin(), names.end(), key) == names.end()) {
      throw DomainError(std::string(family_name(id)) + " has no parameter '" + key + "'");
    }
  }
  auto real = [&](const char* name) {
    const auto it = values.find(name);
    if (it == values.end()) {
      throw DomainError(std::string(family_name(id)) + " needs parameter '" + name + "'");
    }
    return it->second;
  };
  auto integer = [&](const char* name) -> std::int64_t {
    double v = real(name);
    if (round_integers) v = std::round(v);
    if (!std::isfinite(v) || std::floor(v) != v || std::abs(v) > 9.0e15) {
      throw DomainError(std::string("parameter '") + name + "' must be an integer");
    }
    return static_cast<std::int64_t>(v);
  };
  switch (id) {
    case FamilyId::Uniform: return params::Uniform{real("a"), real("b")};
    case FamilyId::Exponential: return params::Exponential{real("lambda")};
    case FamilyId::Gaussian: return params::Gaussian{real("mu"), real("sigma")};
    case FamilyId::StudentT: return params::StudentT{integer("n")};
    case FamilyId::Binomial: return params::Binomial{integer("n"), real("p")};
    case FamilyId::Poisson: return params::Poisson{real("lambda")};
    case FamilyId::NegBinomial: return params::NegBinomial{real("r"), real("p")};
    case FamilyId::Hypergeometric:
      return params::Hypergeometric{integer("M"), integer("N"), integer("n")};
    case FamilyId::Gamma: return params::Gamma{real("alpha"), real("beta")};
    case FamilyId::Pareto: return params::Pareto{real("r"), real("A")};
    case FamilyId::Weibull: return params::Weibull{real("alpha"), real("lambda")};
    case FamilyId::LogNormal: return params::LogNormal{real("alpha"), real("sigma")};
    case FamilyId::Beta: return params::Beta{real("p"), real("q")};
  }
  throw DomainError("unknown family id");
}

std::vector<std::string> validate(const ParamSet& ps) {
  Violations v;
  std::visit(
      Overloaded{
          [&](const params::Uniform& u) {
            v.finite(u.a, "a");
            v.finite(u.b, "b");
            v.require(u.a < u.b, "a must be less than b");
          },
          [&](const params::Exponential& e) {
            v.finite(e.lambda, "lambda");
            v.require(e.lambda > 0, "lambda must be positive");
          },
          [&](const params::Gaussian& g) {
            v.finite(g.mu, "mu");
            v.finite(g.sigma, "sigma");
            v.require(g.sigma > 0, "sigma must be positive");
          },
          [&](const params::StudentT& t) { v.require(t.n >= 3, "n must be >= 3"); },
          [&](const params::Binomial& b) {
            v.require(b.n >= 1, "n must be >= 1");
            v.require(b.p > 0 && b.p < 1, "p must lie in (0, 1)");
          },
          [&](const params::Poisson& p) {
            v.finite(p.lambda, "lambda");
            v.require(p.lambda > 0, "lambda must be positive");
          },
          [&](const params::NegBinomial& nb) {
            v.finite(nb.r, "r");
            v.require(nb.r > 0, "r must be positive");
            v.require(nb.p > 0 && nb.p < 1, "p must lie in (0, 1)");
          },
          [&](const params::Hypergeometric& h) {
            v.require(h.M >= 1, "M must be a positive integer");
            v.require(h.N >= 1, "N must be a positive integer");
            v.require(h.n >= 1, "n must be a positive integer");
            v.require(h.M <= h.N, "M must not exceed N");
            v.require(h.n <= h.N, "n must not exceed N");
            v.require(h.M < h.N && h.n < h.N, "M < N and n < N are needed for positive variance");
          },
          [&](const params::Gamma& g) {
            v.finite(g.alpha, "alpha");
            v.finite(g.beta, "beta");
            v.require(g.alpha > 0, "alpha must be positive");
            v.require(g.beta > 0, "beta must be positive");
          },
          [&](const params::Pareto& p) {
            v.finite(p.r, "r");
            v.finite(p.A, "A");
            v.require(p.r > 2, "r must exceed 2");
            v.require(p.A > 0, "A must be positive");
          },
          [&](const params::Weibull& w) {
            v.finite(w.alpha, "alpha");
            v.finite(w.lambda, "lambda");
            v.require(w.alpha > 0, "alpha must be positive");
            v.require(w.lambda > 0, "lambda must be positive");
          },
          [&](const params::LogNormal& l) {
            v.finite(l.alpha, "alpha");
            v.finite(l.sigma, "sigma");
            v.require(l.sigma > 0, "sigma must be positive");
          },
          [&](const params::Beta& b) {
            v.finite(b.p, "p");
            v.finite(b.q, "q");
            v.require(b.p > 0, "p must be positive");
            v.require(b.q > 0, "q must be positive");
          },
      },
      ps);
  return v.take();
}

void require_valid(const ParamSet& ps) {
  auto violations = validate(ps);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << family_name(family_of(ps)) << " parameters invalid:";
  for (const auto& s : violations) msg << ' ' << s << ';';
  throw DomainError(msg.str());
}

}  // namespace anticonc
