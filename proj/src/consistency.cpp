#include "psp/consistency.hpp"

#include <stdexcept>

#include "psp/depgraph.hpp"

namespace psp {

bool scpsp_consistent(const Psp& f, OpCount* ops) {
  if (!is_scpsp(f)) throw std::invalid_argument("scpsp_consistent: not an scPSP");
  // ones must be a fixed point at all (coefficient sums exactly 1); only then
  // does the spectral-radius criterion decide whether it is the least one
  for (const Polynomial& p : f.polys)
    if (p.coefficient_sum() != 1) return false;
  RationalMat a = jacobian(f, rational_vec(f.dim(), 1));
  return spectral_radius_le_one(a, ops);
}

ConsistencyVerdict check_consistency(const Psp& f, OpCount* ops) {
  if (!validate(f).ok()) throw std::invalid_argument("check_consistency: invalid PSP");
  {
    ZeroRemoval zr = remove_zero_components(f);
    if (!zr.removed.empty())
      throw std::invalid_argument("check_consistency: zero components present; remove them first");
  }

  SccDecomposition d = scc_decompose(f);
  RationalVec ones = rational_vec(f.dim(), 1);
  for (size_t s = 0; s < d.sccs.size(); ++s) {
    const std::vector<int>& scc = d.sccs[s];
    // lower SCCs are already known consistent, so evaluating at global ones
    // is the restriction value; the SCC can only be consistent if ones is a
    // fixed point of it, i.e. every row evaluates to exactly 1
    bool scc_ok = true;
    for (int v : scc)
      if (f.polys[v].eval(ones) != 1) scc_ok = false;
    if (scc_ok && d.kind[s] != SccKind::Constant) {
      // restriction is an scPSP; its Jacobian at ones is the SCC block of f'(ones)
      Psp g = scc_restriction(f, scc);
      RationalMat a = jacobian(g, rational_vec(g.dim(), 1));
      scc_ok = spectral_radius_le_one(a, ops);
    }
    if (!scc_ok) return ConsistencyVerdict{false, scc};
  }
  return ConsistencyVerdict{true, {}};
}

}  // namespace psp
