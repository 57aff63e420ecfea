#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "psp/psp.hpp"

namespace psp {

// h_n = (0.5 X1^2 + 0.1 Xn^2 + 0.4,
//        0.01 X1^2 + 0.5 X2 + 0.49, ..., 0.01 X_{n-1}^2 + 0.5 Xn + 0.49)
Psp gen_hn(int n);

// p with h_n(p) < p componentwise: p_i = 1 - 0.02^(n+i-1)
RationalVec hn_witness(int n);

// Supplies the escape probability l(xi) and the collision density R(xi, eta)
// of a neutron born in a ball; values must be nonnegative rationals.
class NeutronKernel {
 public:
  virtual ~NeutronKernel() = default;
  virtual Rational escape(const Rational& xi) const = 0;
  virtual Rational collision(const Rational& xi, const Rational& eta) const = 0;
  virtual std::string name() const = 0;
};

// Built-in smooth surrogate: collisions concentrated near the birth point,
// R(xi,eta) = 1/(2*(1+(xi-eta)^2)), and escape as the exact complement of
// the discretized collision mass, so a neutron either collides in the ball
// or leaves it. It is NOT a transport-theoretic kernel; it only mimics the
// shape of one.
class SurrogateKernel final : public NeutronKernel {
 public:
  SurrogateKernel(Rational radius, int segments);
  Rational escape(const Rational& xi) const override;
  Rational collision(const Rational& xi, const Rational& eta) const override;
  std::string name() const override { return "surrogate"; }

 private:
  Rational d_;
  int segments_;
};

// Analytic calibration family: constant R = 50n/(61(n+1)) and
// l = 1 - 50D/61 make the Jacobian at ones the constant matrix with spectral
// radius exactly D, so the system is consistent iff D <= 1. Defined for
// 0 < D <= 61/50.
class ToyCriticalKernel final : public NeutronKernel {
 public:
  ToyCriticalKernel(Rational radius, int segments);
  Rational escape(const Rational& xi) const override;
  Rational collision(const Rational& xi, const Rational& eta) const override;
  std::string name() const override { return "toy"; }

 private:
  Rational d_;
  int segments_;
};

// Tabulated kernel read from a file with an `xi,l` section and an
// `xi,eta,R` section; grid points must match the requested discretization.
class TableKernel final : public NeutronKernel {
 public:
  static TableKernel load(std::istream& in);
  static TableKernel load_file(const std::string& path);
  Rational escape(const Rational& xi) const override;
  Rational collision(const Rational& xi, const Rational& eta) const override;
  std::string name() const override { return "file"; }

 private:
  std::map<Rational, Rational> l_;
  std::map<std::pair<Rational, Rational>, Rational> r_;
};

struct NeutronModel {
  Psp psp;
  // rows whose coefficient sum exceeded 1 before clamping, with the exact
  // factor applied to the non-constant coefficients
  std::vector<std::pair<int, Rational>> clamped;
};

// Discretizes Q(xi) = l(xi) + integral of R(xi,eta) f(Q(eta)) over [0, D]
// on the grid xi_j = jD/n with weights D/n, using the quartic collision
// generating function 0.025 + 0.830x + 0.07x^2 + 0.05x^3 + 0.025x^4.
NeutronModel gen_neutron(const Rational& radius, int segments, const NeutronKernel& kernel);

using KernelFactory = std::function<std::unique_ptr<NeutronKernel>(const Rational& radius)>;
KernelFactory make_kernel_factory(const std::string& spec, int segments);  // "builtin"|"surrogate"|"toy"|"file:PATH"

struct CriticalStep {
  Rational radius;
  bool consistent;
  double millis;
};

struct CriticalResult {
  Rational lo, hi;  // lo consistent, hi inconsistent, hi - lo <= tol
  std::vector<CriticalStep> steps;
};

// Bisection on the radius between a consistent lo and an inconsistent hi.
CriticalResult critical_radius(int segments, const KernelFactory& kernel_at, Rational lo, Rational hi,
                               const Rational& tol);

}  // namespace psp
