#pragma once

#include <string>

#include "psp/psp.hpp"

namespace psp {

struct NormalForm {
  Psp psp;
  int aux_var = -1;  // index of the added variable; original indices are unchanged
};

bool is_purely_superlinear(const Psp& f);

// purely superlinear, every variable depends directly on itself, and every
// superlinear SCC is purely superlinear
bool is_perfectly_superlinear(const Psp& f);

// Equivalent perfectly superlinear system with one extra variable T whose
// equation is T = 1/3*T^2 + 2/3 (least solution 1). The least fixed point on
// the original variables is preserved. pre: valid, zero components removed.
NormalForm make_perfectly_superlinear(const Psp& f);

}  // namespace psp
