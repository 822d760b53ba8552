#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "anticonc/config.hpp"
#include "anticonc/family.hpp"
#include "anticonc/random.hpp"

namespace anticonc::verify {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed;
  std::string detail;
};

/// specfun, closed-forms, witnesses, oracles, properties, all.
std::vector<std::string> suite_names();

/// Runs one suite ("all" runs every suite in order). Throws DomainError for an
/// unknown suite name; exceptions inside a check are reported as failures.
std::vector<CheckResult> run_suite(std::string_view suite, const NumericConfig& cfg);

/// Random valid parameter point; the ranges are wide but keep every moment
/// and tail computation well inside double range.
ParamSet random_params(FamilyId family, RandomStream& rng);

/// One fixed, moderate parameter point per family (kAllFamilies order).
std::vector<ParamSet> verification_panel();

}  // namespace anticonc::verify
