#include "psp/adaptive.hpp"

#include <algorithm>
#include <cstdlib>

namespace psp {

PrecisionConfig PrecisionConfig::from_env() {
  PrecisionConfig cfg;
  if (const char* s = std::getenv("PSP_PRECISION_START")) {
    long v = std::atol(s);
    if (v >= MPFR_PREC_MIN) cfg.start = static_cast<mpfr_prec_t>(v);
  }
  if (const char* s = std::getenv("PSP_PRECISION_CAP")) {
    long v = std::atol(s);
    if (v >= MPFR_PREC_MIN) cfg.cap = static_cast<mpfr_prec_t>(v);
  }
  if (cfg.cap < cfg.start) cfg.cap = cfg.start;
  return cfg;
}

ApproxVec run_floating_assignment(const PrecisionConfig& cfg,
                                  const std::function<std::optional<ApproxVec>(mpfr_prec_t)>& compute,
                                  const std::function<bool(const ApproxVec&)>& accept) {
  mpfr_prec_t prec = cfg.start > cfg.cap ? cfg.cap : cfg.start;
  while (true) {
    std::optional<ApproxVec> cand = compute(prec);
    if (cand) {
      bool finite = true;
      for (const Float& x : *cand)
        if (!x.is_finite()) finite = false;  // counts as a rejection, like a failed predicate
      if (finite && accept(*cand)) return std::move(*cand);
    }
    if (prec >= cfg.cap) throw precision_cap_error(cfg.cap);
    prec = std::min<mpfr_prec_t>(prec * 2, cfg.cap);
  }
}

}  // namespace psp
