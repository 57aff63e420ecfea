#pragma once

#include <mpfr.h>

#include <string>
#include <vector>

#include "psp/rational.hpp"

namespace psp {

enum class Round { Nearest, Down, Up };

mpfr_rnd_t to_mpfr(Round r);

// Arbitrary-precision binary float. Every finite value is a dyadic rational
// and converts exactly back to Rational, which is what the exact predicate
// checks rely on.
class Float {
 public:
  Float();
  Float(const Float& o);
  Float(Float&& o) noexcept;
  Float& operator=(const Float& o);
  Float& operator=(Float&& o) noexcept;
  ~Float();

  static Float of_long(long v);  // exact
  static Float of_rational(const Rational& q, mpfr_prec_t prec, Round r = Round::Nearest);
  Rational to_rational() const;  // exact

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  int cmp(const Float& o) const { return mpfr_cmp(v_, o.v_); }
  int cmp_long(long o) const { return mpfr_cmp_si(v_, o); }
  bool operator==(const Float& o) const { return cmp(o) == 0; }
  bool operator<(const Float& o) const { return cmp(o) < 0; }

  // "m/2^k", "m*2^k" or a plain integer; exact
  std::string exact_string() const;
  // round-to-nearest decimal rendering for logs
  std::string str(int significant_digits = 17) const;

  static Float add(const Float& a, const Float& b, mpfr_prec_t prec, Round r = Round::Nearest);
  static Float sub(const Float& a, const Float& b, mpfr_prec_t prec, Round r = Round::Nearest);
  static Float mul(const Float& a, const Float& b, mpfr_prec_t prec, Round r = Round::Nearest);
  static Float div(const Float& a, const Float& b, mpfr_prec_t prec, Round r = Round::Nearest);
  static Float neg(const Float& a);
  static Float abs(const Float& a);
  static Float round_to(const Float& a, mpfr_prec_t prec, Round r);

  const mpfr_t& raw() const { return v_; }

 private:
  mpfr_t v_;
};

// Vector of adaptive-precision floats; finite entries only.
using ApproxVec = std::vector<Float>;

ApproxVec approx_const(size_t n, long value);
RationalVec to_rational_vec(const ApproxVec& x);

}  // namespace psp
