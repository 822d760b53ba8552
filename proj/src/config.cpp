#include "anticonc/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "anticonc/errors.hpp"

namespace anticonc {

void SeriesConfig::check() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("rel_tol must lie in (0, 1)");
  if (max_terms < 1) throw DomainError("max_terms must be at least 1");
}

void NumericConfig::check() const {
  series.check();
  if (!(quad_tol > 0.0 && quad_tol < 1.0)) throw DomainError("quad_tol must lie in (0, 1)");
  if (mc_samples < 1000) throw DomainError("mc_samples must be at least 1000");
}

NumericConfig parse_config(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DomainError("config must be a JSON object");

  NumericConfig cfg;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "rel_tol") {
        cfg.series.rel_tol = value.get<double>();
      } else if (key == "max_terms") {
        cfg.series.max_terms = value.get<long>();
      } else if (key == "quad_tol") {
        cfg.quad_tol = value.get<double>();
      } else if (key == "mc_samples") {
        cfg.mc_samples = value.get<std::uint64_t>();
      } else if (key == "seed") {
        cfg.seed = value.get<std::uint64_t>();
      } else {
        throw DomainError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::type_error& e) {
    throw DomainError(std::string("config value has the wrong type: ") + e.what());
  }
  cfg.check();
  return cfg;
}

NumericConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

NumericConfig resolve_config(const std::optional<std::string>& path) {
  if (path) return load_config_file(*path);
  if (const char* env = std::getenv("ANTICONC_CONFIG"); env != nullptr && *env != '\0') {
    return load_config_file(env);
  }
  return NumericConfig{};
}

}  // namespace anticonc
