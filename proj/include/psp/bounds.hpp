#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "psp/adaptive.hpp"
#include "psp/psp.hpp"

namespace psp {

struct BoundsConfig {
  PrecisionConfig prec{};
  long max_iterations = 1000000;  // safety guard; the loop terminates on its own
  bool keep_trace = false;
};

// Strict pre-fixed point: zeros < x < f(x) < ones under exact arithmetic.
// pre: perfectly superlinear, least fixed point positive everywhere.
// Finishes within dim(f) rounds.
ApproxVec compute_strict_prefix(const Psp& f, const BoundsConfig& cfg = {});

// One Newton step x + (Id - f'(x))^{-1}(f(x) - x) computed at `prec` bits;
// nullopt when the linear system is numerically singular at this precision.
// pre: zeros < x < f(x).
std::optional<ApproxVec> newton_step(const Psp& f, const ApproxVec& x, mpfr_prec_t prec);

struct BoundsReport {
  ApproxVec lb, ub;  // lb < f(lb) and f(ub) <= ub hold exactly: checkable certificates
  long iterations = 0;
  Rational epsilon;
  std::vector<std::pair<ApproxVec, ApproxVec>> trace;  // per-iteration (lb, ub) when requested
  std::vector<int> consistent_vars;                    // marked by the sound (incomplete) sweep
};

// Certified bounds lb <= mu_f <= ub with ub - lb <= epsilon componentwise.
// Lower bounds advance by two inexact Newton steps per iteration, upper
// bounds by two applications of f plus a per-SCC descent from ones; every
// accepted value passes an exact strict-inequality test.
// pre: perfectly superlinear, least fixed point positive everywhere, eps > 0.
BoundsReport calc_bounds(const Psp& f, const Rational& epsilon, const BoundsConfig& cfg = {});

// Bottom-up sweep marking components proven to have least-fixed-point value 1:
// an SCC S qualifies when f'_SS(ones) (ones - lb_S) <= ones - lb_S exactly and
// everything below S is marked. Sound but not complete.
std::vector<int> mark_consistent(const Psp& f, const BoundsReport& report);

}  // namespace psp
