#pragma once

#include <functional>
#include <optional>
#include <stdexcept>

#include "psp/approx.hpp"

namespace psp {

// Schedule for floating assignments: candidates are computed at `start` bits
// and the precision doubles on every rejected candidate up to `cap`.
struct PrecisionConfig {
  mpfr_prec_t start = 53;
  mpfr_prec_t cap = 1 << 16;

  // PSP_PRECISION_START / PSP_PRECISION_CAP override the defaults
  static PrecisionConfig from_env();
};

struct precision_cap_error : std::runtime_error {
  mpfr_prec_t cap;
  explicit precision_cap_error(mpfr_prec_t c)
      : std::runtime_error("floating assignment still rejected at the precision cap (" + std::to_string(c) +
                           " bits); the predicate may not hold at the exact value"),
        cap(c) {}
};

struct iteration_limit_error : std::runtime_error {
  long limit;
  explicit iteration_limit_error(long l)
      : std::runtime_error("iteration limit " + std::to_string(l) + " reached"), limit(l) {}
};

// Floating assignment: compute a candidate at increasing precision until the
// exact predicate accepts it. `compute` may return nullopt (e.g. a numerically
// singular linear system at this precision), which counts as a rejection.
// `accept` must decide by exact arithmetic on the candidate's rational image.
ApproxVec run_floating_assignment(const PrecisionConfig& cfg,
                                  const std::function<std::optional<ApproxVec>(mpfr_prec_t)>& compute,
                                  const std::function<bool(const ApproxVec&)>& accept);

}  // namespace psp
