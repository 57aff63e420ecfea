#include "psp/psp.hpp"

#include <algorithm>
#include <stdexcept>

namespace psp {

int Monomial::degree() const {
  int d = 0;
  for (const auto& [v, e] : vars) d += e;
  return d;
}

bool Monomial::mentions(int var) const {
  for (const auto& [v, e] : vars)
    if (v == var) return true;
  return false;
}

int Monomial::exponent_of(int var) const {
  for (const auto& [v, e] : vars)
    if (v == var) return e;
  return 0;
}

Polynomial Polynomial::make(std::vector<Monomial> ms) {
  for (Monomial& m : ms) {
    std::sort(m.vars.begin(), m.vars.end());
    // collapse repeated variables into one exponent
    std::vector<std::pair<int, int>> packed;
    for (const auto& [v, e] : m.vars) {
      if (e <= 0) throw std::invalid_argument("monomial exponent must be >= 1");
      if (!packed.empty() && packed.back().first == v)
        packed.back().second += e;
      else
        packed.emplace_back(v, e);
    }
    m.vars = std::move(packed);
  }
  std::sort(ms.begin(), ms.end(), [](const Monomial& a, const Monomial& b) { return a.vars < b.vars; });
  std::vector<Monomial> merged;
  for (Monomial& m : ms) {
    if (!merged.empty() && merged.back().vars == m.vars)
      merged.back().coeff += m.coeff;
    else
      merged.push_back(std::move(m));
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Monomial& m) { return m.coeff == 0; }),
               merged.end());
  Polynomial p;
  p.monomials = std::move(merged);
  return p;
}

int Polynomial::degree() const {
  int d = 0;
  for (const Monomial& m : monomials) d = std::max(d, m.degree());
  return d;
}

Rational Polynomial::coefficient_sum() const {
  Rational s = 0;
  for (const Monomial& m : monomials) s += m.coeff;
  return s;
}

bool Polynomial::has_constant_term() const {
  for (const Monomial& m : monomials)
    if (m.is_constant()) return true;
  return false;
}

bool Polynomial::mentions(int var) const {
  for (const Monomial& m : monomials)
    if (m.mentions(var)) return true;
  return false;
}

Rational Polynomial::eval(const RationalVec& x) const {
  Rational acc = 0;
  for (const Monomial& m : monomials) {
    Rational t = m.coeff;
    for (const auto& [v, e] : m.vars)
      for (int k = 0; k < e; ++k) t *= x[v];
    acc += t;
  }
  return acc;
}

Rational Polynomial::eval_derivative(int var, const RationalVec& x) const {
  Rational acc = 0;
  for (const Monomial& m : monomials) {
    int e = m.exponent_of(var);
    if (e == 0) continue;
    Rational t = m.coeff * e;
    for (const auto& [v, k] : m.vars) {
      int reps = (v == var) ? k - 1 : k;
      for (int i = 0; i < reps; ++i) t *= x[v];
    }
    acc += t;
  }
  return acc;
}

Float Polynomial::eval_approx(const ApproxVec& x, mpfr_prec_t prec, Round r) const {
  Float acc = Float::of_long(0);
  for (const Monomial& m : monomials) {
    Float t = Float::of_rational(m.coeff, prec, r);
    for (const auto& [v, e] : m.vars)
      for (int k = 0; k < e; ++k) t = Float::mul(t, x[v], prec, r);
    acc = Float::add(acc, t, prec, r);
  }
  return acc;
}

Float Polynomial::eval_derivative_approx(int var, const ApproxVec& x, mpfr_prec_t prec, Round r) const {
  Float acc = Float::of_long(0);
  for (const Monomial& m : monomials) {
    int e = m.exponent_of(var);
    if (e == 0) continue;
    Float t = Float::of_rational(m.coeff * e, prec, r);
    for (const auto& [v, k] : m.vars) {
      int reps = (v == var) ? k - 1 : k;
      for (int i = 0; i < reps; ++i) t = Float::mul(t, x[v], prec, r);
    }
    acc = Float::add(acc, t, prec, r);
  }
  return acc;
}

ValidationReport validate(const Psp& f) {
  ValidationReport rep;
  for (int i = 0; i < f.dim(); ++i) {
    bool nonpositive = false;
    for (const Monomial& m : f.polys[i].monomials)
      if (m.coeff <= 0) nonpositive = true;
    Rational sum = f.polys[i].coefficient_sum();
    if (nonpositive || sum > 1) {
      Violation v;
      v.poly = i;
      v.name = f.names[i];
      v.coefficient_sum = sum;
      v.nonpositive_coefficient = nonpositive;
      rep.violations.push_back(std::move(v));
    }
  }
  return rep;
}

RationalVec eval(const Psp& f, const RationalVec& x) {
  if (static_cast<int>(x.size()) != f.dim()) throw std::invalid_argument("eval: dimension mismatch");
  RationalVec y;
  y.reserve(x.size());
  for (const Polynomial& p : f.polys) y.push_back(p.eval(x));
  return y;
}

RationalMat jacobian(const Psp& f, const RationalVec& x) {
  if (static_cast<int>(x.size()) != f.dim()) throw std::invalid_argument("jacobian: dimension mismatch");
  RationalMat j(f.dim());
  for (int i = 0; i < f.dim(); ++i)
    for (int c = 0; c < f.dim(); ++c) j.at(i, c) = f.polys[i].eval_derivative(c, x);
  return j;
}

ApproxVec eval_approx(const Psp& f, const ApproxVec& x, mpfr_prec_t prec, Round r) {
  if (static_cast<int>(x.size()) != f.dim()) throw std::invalid_argument("eval_approx: dimension mismatch");
  ApproxVec y;
  y.reserve(x.size());
  for (const Polynomial& p : f.polys) y.push_back(p.eval_approx(x, prec, r));
  return y;
}

std::vector<Float> jacobian_approx(const Psp& f, const ApproxVec& x, mpfr_prec_t prec) {
  int n = f.dim();
  std::vector<Float> j(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < n; ++c) j[static_cast<size_t>(i) * n + c] = f.polys[i].eval_derivative_approx(c, x, prec);
  return j;
}

Psp restrict_to(const Psp& f, const std::vector<int>& keep, const std::map<int, Rational>& fixed) {
  if (keep.empty()) throw std::invalid_argument("restrict_to: empty variable set");
  std::map<int, int> new_index;
  for (size_t k = 0; k < keep.size(); ++k) new_index[keep[k]] = static_cast<int>(k);

  Psp out;
  for (int v : keep) {
    out.names.push_back(f.names[v]);
    std::vector<Monomial> ms;
    for (const Monomial& m : f.polys[v].monomials) {
      Monomial nm;
      nm.coeff = m.coeff;
      for (const auto& [w, e] : m.vars) {
        auto it = new_index.find(w);
        if (it != new_index.end()) {
          nm.vars.emplace_back(it->second, e);
          continue;
        }
        auto fx = fixed.find(w);
        if (fx == fixed.end())
          throw std::invalid_argument("restrict_to: variable '" + f.names[w] + "' is neither kept nor fixed");
        for (int k = 0; k < e; ++k) nm.coeff *= fx->second;
      }
      if (nm.coeff != 0) ms.push_back(std::move(nm));
    }
    out.polys.push_back(Polynomial::make(std::move(ms)));
  }
  return out;
}

}  // namespace psp
