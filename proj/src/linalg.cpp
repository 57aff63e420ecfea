#include "psp/linalg.hpp"

#include <cassert>
#include <stdexcept>
#include <vector>

namespace psp {

namespace {

// Fraction-free (Bareiss) elimination on a row-scaled integer copy of the
// system: intermediate entries are minors of the input, so they stay small
// and no gcd canonicalization happens in the hot loop. First-nonzero
// pivoting; rank deficiencies leave free columns behind.
struct Echelon {
  int n = 0;
  std::vector<mpz_class> a;    // n*n, upper echelon after run()
  std::vector<mpz_class> rhs;  // carried column, same row scaling
  std::vector<int> pivot_col;  // per pivot row
  bool carry_rhs = false;
  OpCount ops;

  mpz_class& at(int r, int c) { return a[static_cast<size_t>(r) * n + c]; }
  const mpz_class& at(int r, int c) const { return a[static_cast<size_t>(r) * n + c]; }

  void load(const RationalMat& m, const RationalVec* b) {
    n = m.n;
    a.assign(static_cast<size_t>(n) * n, mpz_class(0));
    carry_rhs = b != nullptr;
    rhs.assign(carry_rhs ? n : 0, mpz_class(0));
    for (int r = 0; r < n; ++r) {
      mpz_class scale = 1;
      for (int c = 0; c < n; ++c) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), m.at(r, c).get_den().get_mpz_t());
      if (carry_rhs) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), (*b)[r].get_den().get_mpz_t());
      for (int c = 0; c < n; ++c) {
        const Rational& q = m.at(r, c);
        if (q != 0) {
          at(r, c) = q.get_num() * (scale / q.get_den());
          ++ops.muls;
        }
      }
      if (carry_rhs && (*b)[r] != 0) {
        rhs[r] = (*b)[r].get_num() * (scale / (*b)[r].get_den());
        ++ops.muls;
      }
    }
  }

  void run() {
    mpz_class prev = 1;
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
      int p = -1;
      for (int r = row; r < n; ++r)
        if (at(r, col) != 0) {
          p = r;
          break;
        }
      if (p < 0) continue;
      if (p != row) {
        for (int c = 0; c < n; ++c) std::swap(at(p, c), at(row, c));
        if (carry_rhs) std::swap(rhs[p], rhs[row]);
      }
      const mpz_class pivot = at(row, col);
      for (int r = row + 1; r < n; ++r) {
        const mpz_class factor = at(r, col);
        for (int c = col + 1; c < n; ++c) {
          if (at(row, c) == 0 && at(r, c) == 0) continue;
          mpz_class t = pivot * at(r, c) - factor * at(row, c);
          mpz_divexact(at(r, c).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
          ops.muls += 2;
          ++ops.adds;
          ++ops.divs;
        }
        if (carry_rhs) {
          mpz_class t = pivot * rhs[r] - factor * rhs[row];
          mpz_divexact(rhs[r].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
          ops.muls += 2;
          ++ops.adds;
          ++ops.divs;
        }
        at(r, col) = 0;
      }
      prev = pivot;
      pivot_col.push_back(col);
      ++row;
    }
  }

  bool full_rank() const { return static_cast<int>(pivot_col.size()) == n; }

  // back-substitution over the echelon rows for a vector with fixed values
  // in the free columns
  RationalVec back_substitute(const std::vector<Rational>& free_values, bool use_rhs, OpCount& out_ops) const {
    RationalVec x(n, Rational(0));
    std::vector<char> is_pivot(n, 0);
    for (int c : pivot_col) is_pivot[c] = 1;
    for (int c = 0; c < n; ++c)
      if (!is_pivot[c]) x[c] = free_values[c];
    for (int r = static_cast<int>(pivot_col.size()) - 1; r >= 0; --r) {
      int pc = pivot_col[r];
      Rational s = use_rhs ? Rational(rhs[r]) : Rational(0);
      for (int c = pc + 1; c < n; ++c) {
        if (at(r, c) == 0 || x[c] == 0) continue;
        s -= Rational(at(r, c)) * x[c];
        ++out_ops.muls;
        ++out_ops.adds;
      }
      x[pc] = s / Rational(at(r, pc));
      ++out_ops.divs;
    }
    return x;
  }
};

}  // namespace

std::optional<RationalVec> solve(const RationalMat& a, const RationalVec& b, OpCount* ops) {
  if (static_cast<int>(b.size()) != a.n) throw std::invalid_argument("solve: dimension mismatch");
  Echelon e;
  e.load(a, &b);
  e.run();
  if (ops) ops->merge(e.ops);
  if (!e.full_rank()) return std::nullopt;
  OpCount back;
  RationalVec x = e.back_substitute(std::vector<Rational>(a.n, Rational(0)), true, back);
  if (ops) ops->merge(back);
  return x;
}

std::optional<RationalVec> kernel_vector(const RationalMat& m, OpCount* ops) {
  Echelon e;
  e.load(m, nullptr);
  e.run();
  if (ops) ops->merge(e.ops);
  if (e.full_rank()) return std::nullopt;
  // set the first free column to 1, the other free columns to 0
  std::vector<char> is_pivot(m.n, 0);
  for (int c : e.pivot_col) is_pivot[c] = 1;
  std::vector<Rational> free_values(m.n, Rational(0));
  for (int c = 0; c < m.n; ++c)
    if (!is_pivot[c]) {
      free_values[c] = 1;
      break;
    }
  OpCount back;
  RationalVec v = e.back_substitute(free_values, false, back);
  if (ops) ops->merge(back);
  return v;
}

namespace {

#ifndef NDEBUG
bool nonnegative_and_irreducible(const RationalMat& a) {
  int n = a.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (a.at(i, j) < 0) return false;
  // strong connectivity of the nonzero pattern, checked from every vertex
  for (int s = 0; s < n; ++s) {
    std::vector<char> seen(n, 0);
    std::vector<int> work{s};
    seen[s] = 1;
    while (!work.empty()) {
      int v = work.back();
      work.pop_back();
      for (int w = 0; w < n; ++w)
        if (!seen[w] && a.at(v, w) != 0) {
          seen[w] = 1;
          work.push_back(w);
        }
    }
    for (int w = 0; w < n; ++w)
      if (!seen[w]) return false;
  }
  return true;
}
#endif

}  // namespace

bool spectral_radius_le_one(const RationalMat& a, OpCount* ops) {
#ifndef NDEBUG
  assert(nonnegative_and_irreducible(a) && "spectral_radius_le_one needs a nonnegative irreducible matrix");
#endif
  int n = a.n;
  RationalMat m = RationalMat::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) -= a.at(i, j);

  if (auto v = kernel_vector(m, ops)) {
    bool all_pos = true, all_neg = true;
    for (const Rational& x : *v) {
      if (!(x > 0)) all_pos = false;
      if (!(x < 0)) all_neg = false;
    }
    return all_pos || all_neg;
  }

  auto x = solve(m, rational_vec(n, 1), ops);
  if (!x) throw std::logic_error("trivial kernel but singular system");
  for (const Rational& xi : *x)
    if (xi < 1) return false;
  RationalVec ax = mat_vec(a, *x);
  if (ops) {
    ops->muls += static_cast<unsigned long long>(n) * n;
    ops->adds += static_cast<unsigned long long>(n) * n;
  }
  return vec_lt(ax, *x);
}

}  // namespace psp
