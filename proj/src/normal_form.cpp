#include "psp/normal_form.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "psp/depgraph.hpp"

namespace psp {

bool is_purely_superlinear(const Psp& f) {
  for (const Polynomial& p : f.polys)
    if (p.degree() < 2) return false;
  return true;
}

bool is_perfectly_superlinear(const Psp& f) {
  if (!is_purely_superlinear(f)) return false;
  for (int i = 0; i < f.dim(); ++i)
    if (!f.polys[i].mentions(i)) return false;
  SccDecomposition d = scc_decompose(f);
  for (SccKind k : d.kind)
    if (k == SccKind::Superlinear) return false;  // superlinear but not purely
  return true;
}

namespace {

// restricted degree of f_i inside its SCC (foreign variables count as 1)
int degree_within(const Polynomial& p, const std::vector<char>& inside) {
  int deg = 0;
  for (const Monomial& m : p.monomials) {
    int d = 0;
    for (const auto& [v, e] : m.vars)
      if (inside[v]) d += e;
    deg = std::max(deg, d);
  }
  return deg;
}

// replace one occurrence of X_j in the first monomial of f_i that contains it:
// m = X_j * mt becomes 0.5*m + 0.5*f_j*mt
void substitute_occurrence(Psp& f, int i, int j) {
  std::vector<Monomial> out;
  bool done = false;
  for (const Monomial& m : f.polys[i].monomials) {
    if (!done && m.mentions(j)) {
      done = true;
      Monomial kept = m;
      kept.coeff /= 2;
      out.push_back(kept);
      Monomial stem = m;  // mt = m / X_j
      for (auto& [v, e] : stem.vars)
        if (v == j) --e;
      stem.vars.erase(std::remove_if(stem.vars.begin(), stem.vars.end(),
                                     [](const std::pair<int, int>& ve) { return ve.second == 0; }),
                      stem.vars.end());
      for (const Monomial& mj : f.polys[j].monomials) {
        Monomial prod;
        prod.coeff = stem.coeff / 2 * mj.coeff;
        prod.vars = stem.vars;
        for (const auto& ve : mj.vars) prod.vars.push_back(ve);
        out.push_back(std::move(prod));
      }
    } else {
      out.push_back(m);
    }
  }
  if (!done) throw std::logic_error("substitute_occurrence: no monomial mentions the variable");
  f.polys[i] = Polynomial::make(std::move(out));
}

}  // namespace

NormalForm make_perfectly_superlinear(const Psp& f) {
  if (!validate(f).ok()) throw std::invalid_argument("make_perfectly_superlinear: invalid PSP");
  {
    ZeroRemoval zr = remove_zero_components(f);
    if (!zr.removed.empty())
      throw std::invalid_argument("make_perfectly_superlinear: zero components present");
  }

  int n = f.dim();
  NormalForm nf;
  nf.psp = f;
  nf.aux_var = n;

  std::set<std::string> used(f.names.begin(), f.names.end());
  std::string aux_name = "T";
  while (used.count(aux_name)) aux_name += "_";
  nf.psp.names.push_back(aux_name);
  nf.psp.polys.push_back(Polynomial::make({Monomial(rat(1, 3), {{n, 2}}), Monomial(rat(2, 3), {})}));

  Psp& g = nf.psp;

  // make every original component superlinear: pad its first monomial with
  // enough factors of T (one for a linear monomial, two for a constant)
  for (int i = 0; i < n; ++i) {
    if (g.polys[i].degree() >= 2) continue;
    std::vector<Monomial> ms = g.polys[i].monomials;
    int missing = 2 - ms.front().degree();
    ms.front().vars.emplace_back(n, missing);
    g.polys[i] = Polynomial::make(std::move(ms));
  }

  // turn superlinear SCCs into purely superlinear ones by substitution steps
  for (int guard = 0; guard <= 2 * (n + 1); ++guard) {
    SccDecomposition d = scc_decompose(g);
    int target_scc = -1;
    for (size_t s = 0; s < d.sccs.size(); ++s)
      if (d.kind[s] == SccKind::Superlinear) {
        target_scc = static_cast<int>(s);
        break;
      }
    if (target_scc < 0) break;
    const std::vector<int>& scc = d.sccs[target_scc];
    std::vector<char> inside(g.dim(), 0);
    for (int v : scc) inside[v] = 1;

    int pick_i = -1, pick_j = -1;
    for (int i : scc) {
      if (degree_within(g.polys[i], inside) != 1) continue;
      for (int j : scc) {
        if (degree_within(g.polys[j], inside) < 2) continue;
        if (!g.polys[i].mentions(j)) continue;
        pick_i = i;
        pick_j = j;
        break;
      }
      if (pick_i >= 0) break;
    }
    if (pick_i < 0) throw std::logic_error("superlinear SCC without a substitutable pair");
    substitute_occurrence(g, pick_i, pick_j);
  }

  // Self-dependence: mix 0.5*f_v + 0.5*X_v unless the polynomial already has
  // a monomial in X_v alone. A self-occurrence mixed with other variables is
  // not enough: the strict-prefix and upper-bound assignments need a
  // self-term whose value strictly follows X_v even while other components
  // sit at 0 or 1, otherwise their strict acceptance tests can be
  // unsatisfiable at the exact value.
  for (int v = 0; v < g.dim(); ++v) {
    bool pure_self_power = false;
    for (const Monomial& m : g.polys[v].monomials)
      if (m.vars.size() == 1 && m.vars[0].first == v) pure_self_power = true;
    if (pure_self_power) continue;
    std::vector<Monomial> ms;
    for (const Monomial& m : g.polys[v].monomials) {
      Monomial halved = m;
      halved.coeff /= 2;
      ms.push_back(std::move(halved));
    }
    ms.push_back(Monomial(rat(1, 2), {{v, 1}}));
    g.polys[v] = Polynomial::make(std::move(ms));
  }

  if (!is_perfectly_superlinear(g)) throw std::logic_error("normal form construction failed structural check");
  if (!validate(g).ok()) throw std::logic_error("normal form broke PSP validity");
  return nf;
}

}  // namespace psp
