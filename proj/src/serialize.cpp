#include "anticonc/serialize.hpp"

#include <cstdio>

#include "anticonc/errors.hpp"

namespace anticonc {

namespace {

bool is_integer_field(FamilyId family, const std::string& name) {
  switch (family) {
    case FamilyId::StudentT:
    case FamilyId::Binomial:
      return name == "n";
    case FamilyId::Hypergeometric:
      return true;
    default:
      return false;
  }
}

template <class F>
auto json_guard(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string(what) + ": " + e.what());
  }
}

const char* scale_name(oracle::Scale s) { return s == oracle::Scale::Linear ? "linear" : "log"; }

oracle::Scale parse_scale(const std::string& s) {
  if (s == "linear") return oracle::Scale::Linear;
  if (s == "log" || s == "logarithmic") return oracle::Scale::Logarithmic;
  throw DomainError("grid scale must be 'linear' or 'log', got '" + s + "'");
}

}  // namespace

Json params_to_json(const ParamSet& ps) {
  const FamilyId family = family_of(ps);
  Json out = Json::object();
  for (const auto& [name, value] : param_values(ps)) {
    if (is_integer_field(family, name)) {
      out[name] = static_cast<std::int64_t>(value);
    } else {
      out[name] = value;
    }
  }
  return out;
}

Json to_json(const ParamSet& ps) {
  return {{"family", std::string(family_name(family_of(ps)))}, {"params", params_to_json(ps)}};
}

Json to_json(const TailResult& t) {
  return {{"probability", t.probability},
          {"method", std::string(method_name(t.method))},
          {"abs_error_bound", t.abs_error_bound}};
}

Json to_json(const AValue& a) {
  Json detail = nullptr;
  if (a.detail) detail = {{"n0", a.detail->n0}, {"argmax_n", a.detail->argmax_n}};
  return {{"family", std::string(family_name(a.family))}, {"y", a.y}, {"value", a.value}, {"detail", detail}};
}

Json to_json(const Witness& w) {
  return {{"family", std::string(family_name(w.family))},
          {"y", w.y},
          {"epsilon", w.epsilon},
          {"params", params_to_json(w.params)},
          {"achieved_tail", w.achieved_tail}};
}

Json to_json(const oracle::McEstimate& mc) {
  return {{"estimate", mc.estimate}, {"std_err", mc.std_err}, {"n_samples", mc.n_samples}, {"seed", mc.seed}};
}

Json to_json(const oracle::GridSpec& grid) {
  Json axes = Json::array();
  for (const auto& ax : grid.axes) {
    axes.push_back({{"param", ax.param}, {"lo", ax.lo}, {"hi", ax.hi}, {"scale", scale_name(ax.scale)},
                    {"points", ax.points}});
  }
  Json ties = Json::array();
  for (const auto& t : grid.ties) {
    ties.push_back({{"param", t.param}, {"source", t.source}, {"factor", t.factor}, {"offset", t.offset}});
  }
  return {{"family", std::string(family_name(grid.family))}, {"axes", axes}, {"fixed", grid.fixed}, {"ties", ties}};
}

Json to_json(const oracle::InfimumEstimate& inf) {
  return {{"value", inf.value}, {"argmin", to_json(inf.argmin)}, {"grid", to_json(inf.grid)}};
}

ParamSet params_from_json(FamilyId family, const Json& params) {
  if (!params.is_object()) throw DomainError("params must be a JSON object");
  std::map<std::string, double> values;
  for (const auto& [key, value] : params.items()) {
    if (!value.is_number()) throw DomainError("parameter '" + key + "' must be a number");
    values[key] = value.get<double>();
  }
  return make_params(family, values, false);
}

ParamSet param_set_from_json(const Json& doc) {
  return json_guard("ParamSet JSON", [&] {
    return params_from_json(parse_family(doc.at("family").get<std::string>()), doc.at("params"));
  });
}

oracle::GridSpec grid_from_json(const Json& doc) {
  return json_guard("GridSpec JSON", [&] {
    for (const auto& [key, _] : doc.items()) {
      if (key != "family" && key != "axes" && key != "fixed" && key != "ties") {
        throw DomainError("unknown GridSpec key '" + key + "'");
      }
    }
    oracle::GridSpec grid{parse_family(doc.at("family").get<std::string>()), {}, {}, {}};
    for (const auto& ax : doc.value("axes", Json::array())) {
      grid.axes.push_back({ax.at("param").get<std::string>(), ax.at("lo").get<double>(),
                           ax.at("hi").get<double>(), parse_scale(ax.value("scale", std::string("linear"))),
                           ax.at("points").get<int>()});
    }
    if (doc.contains("fixed")) grid.fixed = doc.at("fixed").get<std::map<std::string, double>>();
    for (const auto& t : doc.value("ties", Json::array())) {
      grid.ties.push_back({t.at("param").get<std::string>(), t.at("source").get<std::string>(),
                           t.value("factor", 1.0), t.value("offset", 0.0)});
    }
    return grid;
  });
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace anticonc
