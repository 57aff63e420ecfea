#pragma once

#include <optional>

#include "psp/rational.hpp"

namespace psp {

// rational field operations spent in elimination; the decision procedures
// stay within O(n^3) of them
struct OpCount {
  unsigned long long adds = 0;
  unsigned long long muls = 0;
  unsigned long long divs = 0;
  unsigned long long total() const { return adds + muls + divs; }
  void merge(const OpCount& o) {
    adds += o.adds;
    muls += o.muls;
    divs += o.divs;
  }
};

// exact Gaussian elimination with first-nonzero pivoting;
// nullopt means A is singular
std::optional<RationalVec> solve(const RationalMat& a, const RationalVec& b, OpCount* ops = nullptr);

// some exact nonzero v with M v = 0, or nullopt when the kernel is trivial
std::optional<RationalVec> kernel_vector(const RationalMat& m, OpCount* ops = nullptr);

// Decides rho(A) <= 1 for a nonnegative irreducible A without computing
// eigenvalues: a nontrivial kernel vector of Id - A answers by its sign
// pattern, otherwise the unique solution of (Id - A)x = ones answers by
// x >= ones and Ax < x. The precondition is checked when NDEBUG is not set.
bool spectral_radius_le_one(const RationalMat& a, OpCount* ops = nullptr);

}  // namespace psp
