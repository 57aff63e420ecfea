#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "psp/approx.hpp"
#include "psp/rational.hpp"

namespace psp {

// coeff * prod X_v^e, with variables sorted by index and exponents >= 1.
// An empty variable list is the constant term.
struct Monomial {
  Rational coeff;
  std::vector<std::pair<int, int>> vars;

  Monomial() : coeff(0) {}
  Monomial(Rational c, std::vector<std::pair<int, int>> v) : coeff(std::move(c)), vars(std::move(v)) {}

  int degree() const;
  bool is_constant() const { return vars.empty(); }
  bool mentions(int var) const;
  int exponent_of(int var) const;
};

struct Polynomial {
  std::vector<Monomial> monomials;

  // sorts variable lists, merges duplicate monomials, drops zero coefficients
  static Polynomial make(std::vector<Monomial> ms);

  int degree() const;
  Rational coefficient_sum() const;
  bool has_constant_term() const;
  bool mentions(int var) const;
  bool empty() const { return monomials.empty(); }

  Rational eval(const RationalVec& x) const;
  // partial derivative w.r.t. `var`, evaluated at x
  Rational eval_derivative(int var, const RationalVec& x) const;
  Float eval_approx(const ApproxVec& x, mpfr_prec_t prec, Round r = Round::Nearest) const;
  Float eval_derivative_approx(int var, const ApproxVec& x, mpfr_prec_t prec, Round r = Round::Nearest) const;
};

// A system X_i = f_i(X_1..X_n) of polynomials with positive coefficients;
// valid instances have coefficient sums <= 1 per polynomial.
struct Psp {
  std::vector<std::string> names;
  std::vector<Polynomial> polys;

  int dim() const { return static_cast<int>(polys.size()); }
};

struct Violation {
  int poly = -1;
  std::string name;
  Rational coefficient_sum;
  bool nonpositive_coefficient = false;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// ok iff every polynomial has strictly positive coefficients summing to <= 1
ValidationReport validate(const Psp& f);

RationalVec eval(const Psp& f, const RationalVec& x);
RationalMat jacobian(const Psp& f, const RationalVec& x);

// Inexact counterparts; every elementary operation is rounded at `prec` bits.
ApproxVec eval_approx(const Psp& f, const ApproxVec& x, mpfr_prec_t prec, Round r = Round::Nearest);
std::vector<Float> jacobian_approx(const Psp& f, const ApproxVec& x, mpfr_prec_t prec);  // row-major

// PSP over `keep` obtained by deleting the other polynomials and substituting
// the `fixed` constants; every foreign variable occurring in a kept polynomial
// must be covered by `fixed`.
Psp restrict_to(const Psp& f, const std::vector<int>& keep, const std::map<int, Rational>& fixed);

}  // namespace psp
