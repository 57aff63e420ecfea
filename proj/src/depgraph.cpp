#include "psp/depgraph.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace psp {

std::vector<std::vector<int>> direct_deps(const Psp& f) {
  std::vector<std::vector<int>> adj(f.dim());
  for (int i = 0; i < f.dim(); ++i) {
    std::vector<char> seen(f.dim(), 0);
    for (const Monomial& m : f.polys[i].monomials)
      for (const auto& [v, e] : m.vars) seen[v] = 1;
    for (int j = 0; j < f.dim(); ++j)
      if (seen[j]) adj[i].push_back(j);
  }
  return adj;
}

namespace {

// iterative Tarjan; emits SCCs with dependencies before dependents
struct Tarjan {
  std::vector<std::vector<int>> adj;
  std::vector<int> index, low, stack;
  std::vector<char> on_stack;
  std::vector<std::vector<int>> sccs;
  int counter = 0;

  explicit Tarjan(std::vector<std::vector<int>> a)
      : adj(std::move(a)), index(adj.size(), -1), low(adj.size(), 0), on_stack(adj.size(), 0) {}

  void run() {
    for (int v = 0; v < static_cast<int>(adj.size()); ++v)
      if (index[v] < 0) visit(v);
  }

  void visit(int root) {
    struct Frame {
      int v;
      size_t next_edge;
    };
    std::vector<Frame> frames{{root, 0}};
    while (!frames.empty()) {
      size_t top = frames.size() - 1;  // index, not a reference: pushes reallocate
      int v = frames[top].v;
      if (frames[top].next_edge == 0) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = 1;
      }
      bool descended = false;
      while (frames[top].next_edge < adj[v].size()) {
        int w = adj[v][frames[top].next_edge++];
        if (index[w] < 0) {
          frames.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], index[w]);
      }
      if (descended) continue;
      if (low[v] == index[v]) {
        std::vector<int> scc;
        while (true) {
          int w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          scc.push_back(w);
          if (w == v) break;
        }
        std::sort(scc.begin(), scc.end());
        sccs.push_back(std::move(scc));
      }
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
    }
  }
};

}  // namespace

Psp scc_restriction(const Psp& f, const std::vector<int>& scc) {
  std::map<int, Rational> fixed;
  std::vector<char> inside(f.dim(), 0);
  for (int v : scc) inside[v] = 1;
  for (int i = 0; i < f.dim(); ++i)
    if (!inside[i]) fixed[i] = 1;
  return restrict_to(f, scc, fixed);
}

SccDecomposition scc_decompose(const Psp& f) {
  Tarjan t(direct_deps(f));
  t.run();
  SccDecomposition d;
  d.sccs = std::move(t.sccs);
  d.scc_of.assign(f.dim(), -1);
  for (size_t s = 0; s < d.sccs.size(); ++s)
    for (int v : d.sccs[s]) d.scc_of[v] = static_cast<int>(s);
  d.kind.reserve(d.sccs.size());
  for (const auto& scc : d.sccs) {
    Psp g = scc_restriction(f, scc);
    int deg = 0;
    bool purely = true;
    for (const Polynomial& p : g.polys) {
      deg = std::max(deg, p.degree());
      if (p.degree() < 2) purely = false;
    }
    if (deg == 0)
      d.kind.push_back(SccKind::Constant);
    else if (deg == 1)
      d.kind.push_back(SccKind::Linear);
    else
      d.kind.push_back(purely ? SccKind::PurelySuperlinear : SccKind::Superlinear);
  }
  return d;
}

bool is_scpsp(const Psp& f) {
  if (f.dim() == 0) return false;
  bool constant = true;
  for (const Polynomial& p : f.polys)
    if (p.degree() > 0) constant = false;
  if (constant) return false;
  return scc_decompose(f).sccs.size() == 1;
}

ZeroRemoval remove_zero_components(const Psp& f) {
  int n = f.dim();
  std::vector<char> alive(n, 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      if (alive[i]) continue;
      for (const Monomial& m : f.polys[i].monomials) {
        bool all_alive = true;
        for (const auto& [v, e] : m.vars)
          if (!alive[v]) all_alive = false;
        if (all_alive) {  // constant monomials qualify vacuously
          alive[i] = 1;
          changed = true;
          break;
        }
      }
    }
  }

  ZeroRemoval out;
  for (int i = 0; i < n; ++i)
    (alive[i] ? out.kept : out.removed).push_back(i);
  if (out.kept.empty()) return out;

  std::vector<int> new_index(n, -1);
  for (size_t k = 0; k < out.kept.size(); ++k) new_index[out.kept[k]] = static_cast<int>(k);
  for (int v : out.kept) {
    out.psp.names.push_back(f.names[v]);
    std::vector<Monomial> ms;
    for (const Monomial& m : f.polys[v].monomials) {
      bool keep = true;
      Monomial nm;
      nm.coeff = m.coeff;
      for (const auto& [w, e] : m.vars) {
        if (new_index[w] < 0) {
          keep = false;  // contains a zero variable
          break;
        }
        nm.vars.emplace_back(new_index[w], e);
      }
      if (keep) ms.push_back(std::move(nm));
    }
    out.psp.polys.push_back(Polynomial::make(std::move(ms)));
  }
  return out;
}

}  // namespace psp
