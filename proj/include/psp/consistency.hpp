#pragma once

#include <vector>

#include "psp/linalg.hpp"
#include "psp/psp.hpp"

namespace psp {

// rho(f'(ones)) <= 1 test for a single-SCC system; pre: is_scpsp(f)
bool scpsp_consistent(const Psp& f, OpCount* ops = nullptr);

struct ConsistencyVerdict {
  bool consistent = false;
  std::vector<int> witness_scc;  // first failing bottom SCC, empty when consistent
};

// SCC-wise consistency of the whole system (is the least fixed point all
// ones). Bottom SCCs are decided first; a consistent SCC is substituted by 1
// and each polynomial is processed once. pre: validated, zero components
// already removed.
ConsistencyVerdict check_consistency(const Psp& f, OpCount* ops = nullptr);

}  // namespace psp
