#pragma once

#include <string>

#include <json.hpp>

#include "anticonc/anticoncentration.hpp"
#include "anticonc/distributions.hpp"
#include "anticonc/family.hpp"
#include "anticonc/oracle.hpp"

namespace anticonc {

using Json = nlohmann::json;

/// Parameter fields only, integers emitted as JSON integers.
Json params_to_json(const ParamSet& ps);
/// {"family": "<kebab-case>", "params": {...}}
Json to_json(const ParamSet& ps);
Json to_json(const TailResult& t);
/// {"family", "y", "value", "detail"}; detail is null except for Student's t.
Json to_json(const AValue& a);
/// {"family", "y", "epsilon", "params", "achieved_tail"}
Json to_json(const Witness& w);
Json to_json(const oracle::McEstimate& mc);
Json to_json(const oracle::GridSpec& grid);
Json to_json(const oracle::InfimumEstimate& inf);

/// Parameter object for a known family; integer fields must be integral.
ParamSet params_from_json(FamilyId family, const Json& params);
/// Inverse of to_json(ParamSet).
ParamSet param_set_from_json(const Json& doc);
/// {"family", "axes": [{"param", "lo", "hi", "scale": "linear"|"log", "points"}],
///  "fixed": {...}, "ties": [{"param", "source", "factor", "offset"}]}
oracle::GridSpec grid_from_json(const Json& doc);

/// %.17g: 17 significant digits, parses back to the same double.
std::string format_double(double v);

}  // namespace anticonc
