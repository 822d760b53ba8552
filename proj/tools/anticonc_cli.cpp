// anticonc: evaluate anti-concentration curves, tails, witnesses and the
// verification suites from the command line.
//
// Exit codes: 0 success, 1 verification or search failure, 2 usage or
// validation error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "anticonc/anticoncentration.hpp"
#include "anticonc/config.hpp"
#include "anticonc/distributions.hpp"
#include "anticonc/errors.hpp"
#include "anticonc/oracle.hpp"
#include "anticonc/serialize.hpp"
#include "anticonc/verify.hpp"

namespace {

using namespace anticonc;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Globals {
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;

  NumericConfig config() const {
    NumericConfig cfg = resolve_config(config_path);
    if (seed) cfg.seed = *seed;
    return cfg;
  }
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

// Accepts inline JSON or @path.
Json read_json_arg(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw DomainError("cannot open '" + arg.substr(1) + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("invalid JSON: ") + e.what());
  }
}

// ------------------------------------------------------------------ curve

struct CurveArgs {
  std::string family;
  double y_min = 0.0;
  double y_max = 0.0;
  int steps = 0;
  std::string format = "csv";
  bool numeric_fallback = false;
};

struct CurveRow {
  double y;
  double value;
  std::string detail;
  Json detail_json;
};

int cmd_curve(const CurveArgs& args, const Globals& g) {
  const NumericConfig cfg = g.config();
  const FamilyId family = parse_family(args.family);
  if (!(args.y_min > 0.0) || !(args.y_min < args.y_max) || !std::isfinite(args.y_max)) {
    throw DomainError("need 0 < y-min < y-max");
  }
  const double limit = student_t_y_limit();
  if (family == FamilyId::StudentT && !(args.y_max < limit) && !args.numeric_fallback) {
    throw DomainError("Student's t closed form needs y < sqrt(6)/2 = " + format_double(limit) +
                      "; pass --numeric-fallback for a grid estimate beyond it");
  }

  std::vector<CurveRow> rows;
  const double span = args.y_max - args.y_min;
  for (int i = 0; i < args.steps; ++i) {
    const double y = i + 1 == args.steps ? args.y_max : args.y_min + span * i / (args.steps - 1);
    CurveRow row{y, 0.0, "", nullptr};
    if (classify(family) == Classification::ZeroInfimum) {
      row.detail = "zero-infimum; " + std::string(witness_construction(family));
      row.detail_json = {{"classification", "zero-infimum"}, {"construction", witness_construction(family)}};
    } else if (family == FamilyId::StudentT && !(y < limit)) {
      const auto inf = oracle::grid_infimum(y, oracle::canonical_grid(family), cfg.series);
      row.value = inf.value;
      const auto n = std::get<params::StudentT>(inf.argmin).n;
      row.detail = "numeric grid infimum over 3 <= n <= 400, not a closed form; argmin_n=" + std::to_string(n);
      row.detail_json = {{"numeric", true}, {"argmin_n", n}};
    } else {
      const AValue a = closed_form(family, y, cfg.series);
      row.value = a.value;
      if (a.detail) {
        row.detail = "n0=" + std::to_string(a.detail->n0) + ";argmax_n=" + std::to_string(a.detail->argmax_n);
        row.detail_json = to_json(a)["detail"];
      }
    }
    rows.push_back(std::move(row));
  }

  if (args.format == "json") {
    Json out = Json::array();
    for (const auto& r : rows) {
      out.push_back({{"family", args.family}, {"y", r.y}, {"value", r.value}, {"detail", r.detail_json}});
    }
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "y,value,family,detail\n";
    for (const auto& r : rows) {
      std::cout << format_double(r.y) << ',' << format_double(r.value) << ',' << args.family << ','
                << csv_field(r.detail) << '\n';
    }
  }
  return 0;
}

// ------------------------------------------------------------ tail and mc

ParamSet parse_params_arg(const std::string& family, const std::string& params) {
  const ParamSet ps = params_from_json(parse_family(family), read_json_arg(params));
  require_valid(ps);
  return ps;
}

int cmd_tail(const std::string& family, const std::string& params, double y, const Globals& g) {
  const NumericConfig cfg = g.config();
  const ParamSet ps = parse_params_arg(family, params);
  Json out = to_json(ps);
  out["y"] = y;
  out.update(to_json(tail_probability(ps, y, cfg.series)));
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_mc(const std::string& family, const std::string& params, double y, std::optional<std::uint64_t> samples,
           const Globals& g) {
  const NumericConfig cfg = g.config();
  const ParamSet ps = parse_params_arg(family, params);
  const auto est = oracle::mc_tail(ps, y, samples.value_or(cfg.mc_samples), cfg.seed);
  Json out = to_json(ps);
  out["y"] = y;
  out.update(to_json(est));
  std::cout << out.dump(2) << '\n';
  return 0;
}

// ---------------------------------------------------------------- witness

int cmd_witness(const std::string& family, double y, double epsilon, const Globals& g) {
  const NumericConfig cfg = g.config();
  const FamilyId id = parse_family(family);
  const Witness w = witness_parameter(id, y, epsilon, {}, cfg.series);
  std::cerr << family << ": " << witness_construction(id) << '\n';
  std::cout << to_json(w).dump(2) << '\n';
  return 0;
}

// --------------------------------------------------------------- infimum

int cmd_infimum(const std::optional<std::string>& grid_arg, const std::optional<std::string>& family,
                double y, int refinements, const Globals& g) {
  const NumericConfig cfg = g.config();
  if (grid_arg.has_value() == family.has_value()) throw DomainError("give exactly one of --grid or --family");
  oracle::GridSpec grid = grid_arg ? grid_from_json(read_json_arg(*grid_arg)) : oracle::canonical_grid(parse_family(*family));
  for (int i = 0; i < refinements; ++i) grid = oracle::refine(grid);
  std::cout << to_json(oracle::grid_infimum(y, grid, cfg.series)).dump(2) << '\n';
  return 0;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const std::string& suite, std::optional<std::uint64_t> samples, const Globals& g) {
  NumericConfig cfg = g.config();
  if (samples) cfg.mc_samples = *samples;
  const auto results = verify::run_suite(suite, cfg);
  std::size_t failed = 0;
  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.suite.size() + r.name.size() + 3);
  for (const auto& r : results) {
    const std::string name = r.suite + " / " + r.name;
    std::printf("%-4s  %-*s  %s\n", r.passed ? "PASS" : "FAIL", static_cast<int>(width), name.c_str(),
                r.detail.c_str());
    if (!r.passed) ++failed;
  }
  std::printf("%zu checks, %zu failed\n", results.size(), failed);
  return failed == 0 ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anti-concentration function A(y) for thirteen distribution families"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config_path, "NumericConfig JSON file (default: $ANTICONC_CONFIG)");

  CurveArgs curve;
  auto* curve_cmd = app.add_subcommand("curve", "A(y) on an evenly spaced y grid");
  curve_cmd->add_option("--family", curve.family)->required();
  curve_cmd->add_option("--y-min", curve.y_min)->required();
  curve_cmd->add_option("--y-max", curve.y_max)->required();
  curve_cmd->add_option("--steps", curve.steps)->required()->check(CLI::Range(2, 10'000'000));
  curve_cmd->add_option("--format", curve.format)->check(CLI::IsMember({"csv", "json"}));
  curve_cmd->add_flag("--numeric-fallback", curve.numeric_fallback,
                      "Student's t beyond sqrt(6)/2: grid estimate instead of an error");

  std::string family, params;
  double y = 0.0, epsilon = 0.0;
  std::optional<std::uint64_t> samples;
  auto* tail_cmd = app.add_subcommand("tail", "Exact standardized tail at one parameter point");
  tail_cmd->add_option("--family", family)->required();
  tail_cmd->add_option("--params", params, "JSON object or @file")->required();
  tail_cmd->add_option("--y", y)->required();

  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo estimate of the standardized tail");
  mc_cmd->add_option("--family", family)->required();
  mc_cmd->add_option("--params", params, "JSON object or @file")->required();
  mc_cmd->add_option("--y", y)->required();
  mc_cmd->add_option("--samples", samples);
  mc_cmd->add_option("--seed", g.seed);

  auto* witness_cmd = app.add_subcommand("witness", "Parameter point with tail <= epsilon");
  witness_cmd->add_option("--family", family)->required();
  witness_cmd->add_option("--y", y)->required();
  witness_cmd->add_option("--epsilon", epsilon)->required();

  std::optional<std::string> grid_arg, grid_family;
  int refinements = 0;
  auto* inf_cmd = app.add_subcommand("infimum", "Brute-force infimum over a parameter grid");
  inf_cmd->add_option("--grid", grid_arg, "GridSpec JSON or @file");
  inf_cmd->add_option("--family", grid_family, "use the family's canonical grid");
  inf_cmd->add_option("--y", y)->required();
  inf_cmd->add_option("--refine", refinements)->check(CLI::Range(0, 6));

  std::string suite;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd->add_option("suite", suite)->required()->check(CLI::IsMember(verify::suite_names()));
  verify_cmd->add_option("--seed", g.seed);
  verify_cmd->add_option("--samples", samples, "Monte Carlo samples per check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*curve_cmd) return cmd_curve(curve, g);
    if (*tail_cmd) return cmd_tail(family, params, y, g);
    if (*mc_cmd) return cmd_mc(family, params, y, samples, g);
    if (*witness_cmd) return cmd_witness(family, y, epsilon, g);
    if (*inf_cmd) return cmd_infimum(grid_arg, grid_family, y, refinements, g);
    if (*verify_cmd) return cmd_verify(suite, samples, g);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
