#pragma once

#include <vector>

#include "psp/psp.hpp"

namespace psp {

// classification of the SCC's restriction (foreign variables set to 1)
enum class SccKind { Constant, Linear, Superlinear, PurelySuperlinear };

struct SccDecomposition {
  // bottom-first: for every dependence edge i -> j across components,
  // the SCC of j is stored before the SCC of i
  std::vector<std::vector<int>> sccs;
  std::vector<SccKind> kind;
  std::vector<int> scc_of;  // variable index -> position in sccs
};

// edge i -> j iff X_j occurs in f_i (the partial derivative is not identically 0)
std::vector<std::vector<int>> direct_deps(const Psp& f);

SccDecomposition scc_decompose(const Psp& f);

// non-constant and a single SCC; equivalently, the Jacobian at ones is irreducible
bool is_scpsp(const Psp& f);

// restriction of f to one SCC with all foreign variables set to 1
Psp scc_restriction(const Psp& f, const std::vector<int>& scc);

struct ZeroRemoval {
  Psp psp;                   // system over the surviving variables
  std::vector<int> removed;  // original indices with (mu_f)_i = 0
  std::vector<int> kept;     // original indices of psp's variables, in order
  bool all_removed() const { return psp.dim() == 0; }
};

// Round-robin marking on monomial structure: a component stays iff its
// polynomial has a constant term or a monomial over surviving variables only.
// Dead variables are substituted by 0, i.e. monomials containing them vanish.
ZeroRemoval remove_zero_components(const Psp& f);

}  // namespace psp
