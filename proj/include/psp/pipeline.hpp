#pragma once

#include <json.hpp>

#include "psp/bounds.hpp"
#include "psp/psp.hpp"

namespace psp {

// check: parse -> validate -> drop zero components -> SCC-wise consistency.
// exit codes: 0 consistent, 1 inconsistent, 2 usage/validation error
struct CheckOutcome {
  int exit_code = 2;
  nlohmann::json json;
};
CheckOutcome pipeline_check(const Psp& f);

// bounds: parse -> validate -> drop zero components -> normal form ->
// certified bounds -> report on the original variables (the added normal-form
// variable is stripped, removed components are reported as [0, 0]).
struct BoundsOutcome {
  int exit_code = 2;
  nlohmann::json json;
};
BoundsOutcome pipeline_bounds(const Psp& f, const Rational& epsilon, const BoundsConfig& cfg, int display_digits);

}  // namespace psp
