#include "psp/bounds.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "psp/depgraph.hpp"
#include "psp/normal_form.hpp"

namespace psp {

namespace {

// LU solve with partial pivoting, every operation rounded at `prec`;
// nullopt on a zero pivot
std::optional<ApproxVec> solve_approx(int n, std::vector<Float> a, ApproxVec b, mpfr_prec_t prec) {
  auto at = [&](int i, int j) -> Float& { return a[static_cast<size_t>(i) * n + j]; };
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (Float::abs(at(p, c)) < Float::abs(at(r, c))) p = r;
    if (at(p, c).sign() == 0) return std::nullopt;
    if (p != c) {
      for (int k = c; k < n; ++k) std::swap(at(p, k), at(c, k));
      std::swap(b[p], b[c]);
    }
    for (int r = c + 1; r < n; ++r) {
      if (at(r, c).sign() == 0) continue;
      Float factor = Float::div(at(r, c), at(c, c), prec);
      for (int k = c + 1; k < n; ++k)
        at(r, k) = Float::sub(at(r, k), Float::mul(factor, at(c, k), prec), prec);
      b[r] = Float::sub(b[r], Float::mul(factor, b[c], prec), prec);
      at(r, c) = Float::of_long(0);
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    Float s = b[r];
    for (int k = r + 1; k < n; ++k) s = Float::sub(s, Float::mul(at(r, k), b[k], prec), prec);
    b[r] = Float::div(s, at(r, r), prec);
  }
  return b;
}

bool all_positive(const ApproxVec& x) {
  for (const Float& v : x)
    if (v.sign() <= 0) return false;
  return true;
}

}  // namespace

std::optional<ApproxVec> newton_step(const Psp& f, const ApproxVec& x, mpfr_prec_t prec) {
  int n = f.dim();
  ApproxVec fx = eval_approx(f, x, prec);
  std::vector<Float> j = jacobian_approx(f, x, prec);
  // M = Id - f'(x), rhs = f(x) - x
  std::vector<Float> m(static_cast<size_t>(n) * n);
  ApproxVec rhs(n);
  Float one = Float::of_long(1);
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < n; ++c) {
      const Float& jic = j[static_cast<size_t>(i) * n + c];
      m[static_cast<size_t>(i) * n + c] = (i == c) ? Float::sub(one, jic, prec) : Float::neg(jic);
    }
    rhs[i] = Float::sub(fx[i], x[i], prec);
  }
  std::optional<ApproxVec> delta = solve_approx(n, std::move(m), std::move(rhs), prec);
  if (!delta) return std::nullopt;
  ApproxVec y(n);
  for (int i = 0; i < n; ++i) y[i] = Float::add(x[i], (*delta)[i], prec);
  return y;
}

ApproxVec compute_strict_prefix(const Psp& f, const BoundsConfig& cfg) {
  if (!is_perfectly_superlinear(f))
    throw std::invalid_argument("compute_strict_prefix: system is not perfectly superlinear");
  int n = f.dim();
  ApproxVec x = approx_const(n, 0);
  for (int round = 0; round <= n + 1; ++round) {
    if (all_positive(x)) return x;
    RationalVec xq = to_rational_vec(x);
    RationalVec fx = eval(f, xq);
    std::vector<int> pos;
    for (int i = 0; i < n; ++i)
      if (fx[i] > 0) pos.push_back(i);
    if (pos.empty())
      throw std::invalid_argument("compute_strict_prefix: least fixed point is zero somewhere");

    ApproxVec accepted = run_floating_assignment(
        cfg.prec,
        [&](mpfr_prec_t prec) -> std::optional<ApproxVec> {
          ApproxVec w = eval_approx(f, x, prec);
          ApproxVec cand;
          cand.reserve(pos.size());
          for (int i : pos) cand.push_back(w[i]);
          return cand;
        },
        [&](const ApproxVec& cand) {
          RationalVec y(n, Rational(0));
          for (size_t k = 0; k < pos.size(); ++k) {
            y[pos[k]] = cand[k].to_rational();
            if (!(y[pos[k]] > 0)) return false;
          }
          RationalVec fy = eval(f, y);
          for (int i : pos)
            if (!(y[i] < fy[i] && fy[i] < 1)) return false;
          return true;
        });

    ApproxVec next = approx_const(n, 0);
    for (size_t k = 0; k < pos.size(); ++k) next[pos[k]] = accepted[k];
    x = std::move(next);
  }
  throw std::logic_error("compute_strict_prefix: no strict pre-fixed point within dim rounds");
}

namespace {

struct SccContext {
  SccDecomposition dec;
  std::vector<int> superlinear;     // SCC indices with a superlinear restriction
  std::vector<RationalMat> jac_ss;  // per superlinear SCC: f'_SS(ones)
  std::vector<Rational> max_f_two;  // per superlinear SCC: max_{i in S} f_i(twos)
};

SccContext scc_context(const Psp& f) {
  SccContext ctx;
  ctx.dec = scc_decompose(f);
  RationalVec ones = rational_vec(f.dim(), 1);
  RationalVec twos = rational_vec(f.dim(), 2);
  RationalMat j1 = jacobian(f, ones);
  RationalVec f2 = eval(f, twos);
  for (size_t s = 0; s < ctx.dec.sccs.size(); ++s) {
    if (ctx.dec.kind[s] != SccKind::Superlinear && ctx.dec.kind[s] != SccKind::PurelySuperlinear) continue;
    const auto& scc = ctx.dec.sccs[s];
    RationalMat block(static_cast<int>(scc.size()));
    for (size_t a = 0; a < scc.size(); ++a)
      for (size_t b = 0; b < scc.size(); ++b) block.at(static_cast<int>(a), static_cast<int>(b)) = j1.at(scc[a], scc[b]);
    Rational mx = f2[scc[0]];
    for (int v : scc) mx = std::max(mx, f2[v]);
    ctx.superlinear.push_back(static_cast<int>(s));
    ctx.jac_ss.push_back(std::move(block));
    ctx.max_f_two.push_back(mx);
  }
  return ctx;
}

bool gap_within(const ApproxVec& ub, const ApproxVec& lb, const Rational& eps) {
  for (size_t i = 0; i < ub.size(); ++i)
    if (ub[i].to_rational() - lb[i].to_rational() > eps) return false;
  return true;
}

}  // namespace

BoundsReport calc_bounds(const Psp& f, const Rational& epsilon, const BoundsConfig& cfg) {
  if (epsilon <= 0) throw std::invalid_argument("calc_bounds: epsilon must be positive");
  if (!is_perfectly_superlinear(f))
    throw std::invalid_argument("calc_bounds: system is not perfectly superlinear");

  int n = f.dim();
  SccContext ctx = scc_context(f);
  Float one = Float::of_long(1);

  BoundsReport rep;
  rep.epsilon = epsilon;
  rep.lb = compute_strict_prefix(f, cfg);
  rep.ub = approx_const(n, 1);

  // The lower bound gains accuracy at least quadratically (each accepted
  // value beats one exact Newton step), so its acceptance window squares
  // every iteration and the needed precision doubles. Long runs are driven
  // by the linearly converging upper bound; refining the lower bound past
  // a budget far beyond epsilon only burns precision, so once the budget is
  // reached the current certified bound is kept for the remaining rounds.
  mpfr_prec_t lb_budget;
  {
    long eps_bits = static_cast<long>(mpz_sizeinbase(epsilon.get_den().get_mpz_t(), 2)) -
                    static_cast<long>(mpz_sizeinbase(epsilon.get_num().get_mpz_t(), 2)) + 2;
    if (eps_bits < 1) eps_bits = 1;
    lb_budget = std::max<mpfr_prec_t>(4096, 16 * eps_bits);
    lb_budget = std::min<mpfr_prec_t>(lb_budget, cfg.prec.cap);
  }
  PrecisionConfig lb_prec = cfg.prec;
  lb_prec.cap = lb_budget;
  bool lb_saturated = false;

  while (!gap_within(rep.ub, rep.lb, epsilon)) {
    if (++rep.iterations > cfg.max_iterations) throw iteration_limit_error(cfg.max_iterations);

    // lower bound: accept an inexact N(N(lb)) that beats the linearization at lb
    if (!lb_saturated) try {
      RationalVec lbq = to_rational_vec(rep.lb);
      RationalVec f_lb = eval(f, lbq);
      RationalMat j_lb = jacobian(f, lbq);
      ApproxVec accepted = run_floating_assignment(
          lb_prec,
          [&](mpfr_prec_t prec) -> std::optional<ApproxVec> {
            std::optional<ApproxVec> z1 = newton_step(f, rep.lb, prec);
            if (!z1) return std::nullopt;
            std::optional<ApproxVec> z2 = newton_step(f, *z1, prec);
            if (!z2) return std::nullopt;
            // Candidates aim a quarter of the observed step gap below the
            // double step, i.e. they converge to (z1 + 3*z2)/4. That point
            // still satisfies the acceptance test strictly (it lies above the
            // one-step value, and tangent-line convexity gives
            // f(x) - x >= (f(z1) - z1)/4 there), so the assignment terminates.
            // Without the pull-back every accepted bound inherits the full
            // working precision and the window of the next iteration forces
            // about four times the precision instead of twice.
            ApproxVec cand(n);
            for (int i = 0; i < n; ++i) {
              Float gap = Float::sub((*z2)[i], (*z1)[i], prec);
              Float margin = Float::of_long(0);
              if (gap.sign() > 0) margin = Float::mul(gap, Float::of_rational(rat(1, 4), prec), prec);
              cand[i] = Float::sub((*z2)[i], margin, prec, Round::Down);
            }
            return cand;
          },
          [&](const ApproxVec& cand) {
            RationalVec x = to_rational_vec(cand);
            for (int i = 0; i < n; ++i) {
              Rational lin = f_lb[i];
              for (int c = 0; c < n; ++c)
                if (j_lb.at(i, c) != 0) lin += j_lb.at(i, c) * (x[c] - lbq[c]);
              if (!(lin < x[i])) return false;
            }
            RationalVec fx = eval(f, x);
            for (int i = 0; i < n; ++i)
              if (!(x[i] < fx[i] && fx[i] < 1)) return false;
            return true;
          });
#ifndef NDEBUG
      for (int i = 0; i < n; ++i) assert(rep.lb[i].to_rational() < accepted[i].to_rational());
#endif
      rep.lb = std::move(accepted);
    } catch (const precision_cap_error&) {
      if (lb_budget >= cfg.prec.cap) throw;
      // the same window will reject the same ladder next time, so stop trying
      lb_saturated = true;
    }

    // upper bound: exact split into pinned (f_i(ub) = 1) and improvable components
    RationalVec ubq = to_rational_vec(rep.ub);
    RationalVec f_ub = eval(f, ubq);
    std::vector<int> pos;
    for (int i = 0; i < n; ++i)
      if (f_ub[i] < 1) pos.push_back(i);

    ApproxVec y = approx_const(n, 1);
    if (!pos.empty()) {
      ApproxVec accepted = run_floating_assignment(
          cfg.prec,
          [&](mpfr_prec_t prec) -> std::optional<ApproxVec> {
            ApproxVec w = eval_approx(f, rep.ub, prec);
            ApproxVec ffw = eval_approx(f, w, prec);
            ApproxVec cand;
            cand.reserve(pos.size());
            for (int i : pos) cand.push_back(ffw[i]);
            return cand;
          },
          [&](const ApproxVec& cand) {
            RationalVec yq(n, Rational(1));
            for (size_t k = 0; k < pos.size(); ++k) yq[pos[k]] = cand[k].to_rational();
            RationalVec fy = eval(f, yq);
            for (size_t k = 0; k < pos.size(); ++k) {
              int i = pos[k];
              if (!(fy[i] < yq[i] && yq[i] < f_ub[i])) return false;
            }
            return true;
          });
      for (size_t k = 0; k < pos.size(); ++k) y[pos[k]] = accepted[k];
    }

    // descent from ones for superlinear SCCs still pinned there, driven by lb
    RationalVec lbq = to_rational_vec(rep.lb);
    for (size_t si = 0; si < ctx.superlinear.size(); ++si) {
      const std::vector<int>& scc = ctx.dec.sccs[ctx.superlinear[si]];
      bool pinned = true;
      for (int v : scc)
        if (y[v].cmp_long(1) != 0) pinned = false;
      if (!pinned) continue;

      size_t k = scc.size();
      RationalVec t(k);
      for (size_t a = 0; a < k; ++a) t[a] = 1 - lbq[scc[a]];
      RationalVec jt = mat_vec(ctx.jac_ss[si], t);
      bool expanding = true;
      for (size_t a = 0; a < k; ++a)
        if (!(jt[a] > t[a])) expanding = false;
      if (!expanding) continue;

      Rational num = jt[0] - t[0];
      for (size_t a = 1; a < k; ++a) {
        Rational diff = jt[a] - t[a];
        num = std::min(num, diff);
      }
      Rational r = num / (2 * ctx.max_f_two[si]);
      r = std::min(r, Rational(1));

      ApproxVec accepted = run_floating_assignment(
          cfg.prec,
          [&](mpfr_prec_t prec) -> std::optional<ApproxVec> {
            Float rf = Float::of_rational(r, prec);
            ApproxVec cand;
            cand.reserve(k);
            for (size_t a = 0; a < k; ++a) {
              Float tf = Float::of_rational(t[a], prec);
              cand.push_back(Float::sub(one, Float::mul(rf, tf, prec), prec));
            }
            return cand;
          },
          [&](const ApproxVec& cand) {
            RationalVec yq(n, Rational(1));
            for (int i = 0; i < n; ++i) yq[i] = y[i].to_rational();
            for (size_t a = 0; a < k; ++a) yq[scc[a]] = cand[a].to_rational();
            RationalVec fy = eval(f, yq);
            for (size_t a = 0; a < k; ++a) {
              int i = scc[a];
              if (!(fy[i] < yq[i] && yq[i] < 1)) return false;
            }
            return true;
          });
      for (size_t a = 0; a < k; ++a) y[scc[a]] = accepted[a];
    }

#ifndef NDEBUG
    {
      // monotone bracketing and the post-fixed certificate
      RationalVec yq = to_rational_vec(y);
      RationalVec fy = eval(f, yq);
      for (int i = 0; i < n; ++i) {
        assert(fy[i] <= yq[i]);
        assert(yq[i] <= ubq[i]);
        assert(lbq[i] < yq[i]);
      }
    }
#endif
    rep.ub = std::move(y);
    if (cfg.keep_trace) rep.trace.emplace_back(rep.lb, rep.ub);
  }

  rep.consistent_vars = mark_consistent(f, rep);
  return rep;
}

std::vector<int> mark_consistent(const Psp& f, const BoundsReport& report) {
  SccDecomposition d = scc_decompose(f);
  std::vector<std::vector<int>> deps = direct_deps(f);
  RationalMat j1 = jacobian(f, rational_vec(f.dim(), 1));
  RationalVec lbq = to_rational_vec(report.lb);

  std::vector<char> scc_marked(d.sccs.size(), 0);
  std::vector<int> marked_vars;
  for (size_t s = 0; s < d.sccs.size(); ++s) {
    const std::vector<int>& scc = d.sccs[s];
    bool deps_ok = true;
    for (int v : scc)
      for (int w : deps[v])
        if (d.scc_of[w] != static_cast<int>(s) && !scc_marked[d.scc_of[w]]) deps_ok = false;
    if (!deps_ok) continue;

    // the argument needs a strictly positive t = ones - lb_S and a
    // non-constant restriction; both hold for bounds on perfectly
    // superlinear systems, but stay sound regardless
    if (d.kind[s] == SccKind::Constant) continue;
    bool contracting = true;
    for (size_t a = 0; a < scc.size() && contracting; ++a) {
      if (!(lbq[scc[a]] < 1)) contracting = false;
    }
    for (size_t a = 0; a < scc.size() && contracting; ++a) {
      Rational row = 0;
      for (size_t b = 0; b < scc.size(); ++b) row += j1.at(scc[a], scc[b]) * (1 - lbq[scc[b]]);
      if (row > 1 - lbq[scc[a]]) contracting = false;
    }
    if (!contracting) continue;

    scc_marked[s] = 1;
    for (int v : scc) marked_vars.push_back(v);
  }
  std::sort(marked_vars.begin(), marked_vars.end());
  return marked_vars;
}

}  // namespace psp
