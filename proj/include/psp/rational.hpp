#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace psp {

// Exact arbitrary-precision rational, kept in canonical form by GMP.
using Rational = mpq_class;

Rational rat(long num, long den = 1);

// Parses "2", "0.830" or "83/100" into an exact rational.
// Decimal literals are converted exactly (0.830 -> 83/100), never rounded.
Rational parse_rational(const std::string& text);

// Shortest exact decimal if the denominator is of the form 2^a*5^b,
// otherwise "p/q".
std::string rational_to_string(const Rational& q);

// Decimal string with `digits` fractional digits, rounded toward -inf / +inf.
std::string decimal_floor(const Rational& q, int digits);
std::string decimal_ceil(const Rational& q, int digits);

using RationalVec = std::vector<Rational>;

struct RationalMat {
  int n = 0;
  std::vector<Rational> a;  // row-major, n*n

  RationalMat() = default;
  explicit RationalMat(int dim) : n(dim), a(static_cast<size_t>(dim) * dim, Rational(0)) {}

  Rational& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  const Rational& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

  static RationalMat identity(int dim);
};

RationalVec rational_vec(int n, const Rational& value);
RationalVec mat_vec(const RationalMat& m, const RationalVec& x);

// componentwise x_i <= y_i
bool vec_le(const RationalVec& x, const RationalVec& y);
// componentwise x_i < y_i
bool vec_lt_strict(const RationalVec& x, const RationalVec& y);
// x <= y and x != y
bool vec_lt(const RationalVec& x, const RationalVec& y);

}  // namespace psp
