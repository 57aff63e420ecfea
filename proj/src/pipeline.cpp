#include "psp/pipeline.hpp"

#include "psp/consistency.hpp"
#include "psp/depgraph.hpp"
#include "psp/format.hpp"
#include "psp/normal_form.hpp"

namespace psp {

namespace {

nlohmann::json violations_json(const ValidationReport& rep) {
  nlohmann::json out = nlohmann::json::array();
  for (const Violation& v : rep.violations) {
    nlohmann::json item;
    item["variable"] = v.name;
    item["coefficient_sum"] = v.coefficient_sum.get_str();
    if (v.nonpositive_coefficient) item["nonpositive_coefficient"] = true;
    out.push_back(std::move(item));
  }
  return out;
}

}  // namespace

CheckOutcome pipeline_check(const Psp& f) {
  CheckOutcome out;
  out.json["command"] = "check";
  out.json["variables"] = f.dim();

  ValidationReport val = validate(f);
  if (!val.ok()) {
    out.json["error"] = "not a valid system: coefficient sums must stay within 1 and coefficients positive";
    out.json["violations"] = violations_json(val);
    out.exit_code = 2;
    return out;
  }

  ZeroRemoval zr = remove_zero_components(f);
  nlohmann::json removed = nlohmann::json::array();
  for (int v : zr.removed) removed.push_back(f.names[v]);
  out.json["removed_zero_vars"] = std::move(removed);

  OpCount ops;
  bool consistent;
  if (zr.all_removed()) {
    consistent = false;  // every component has value 0
  } else {
    ConsistencyVerdict verdict = check_consistency(zr.psp, &ops);
    consistent = verdict.consistent && zr.removed.empty();
    if (!verdict.consistent) {
      nlohmann::json witness = nlohmann::json::array();
      for (int v : verdict.witness_scc) witness.push_back(zr.psp.names[v]);
      out.json["witness_scc"] = std::move(witness);
    }
  }
  out.json["verdict"] = consistent ? "consistent" : "inconsistent";
  out.json["op_count"] = ops.total();
  out.exit_code = consistent ? 0 : 1;
  return out;
}

BoundsOutcome pipeline_bounds(const Psp& f, const Rational& epsilon, const BoundsConfig& cfg, int display_digits) {
  BoundsOutcome out;
  out.json["command"] = "bounds";
  if (epsilon <= 0) {
    out.json["error"] = "epsilon must be positive";
    return out;
  }
  out.json["epsilon"] = epsilon.get_str();

  ValidationReport val = validate(f);
  if (!val.ok()) {
    out.json["error"] = "not a valid system: coefficient sums must stay within 1 and coefficients positive";
    out.json["violations"] = violations_json(val);
    return out;
  }

  ZeroRemoval zr = remove_zero_components(f);
  nlohmann::json removed = nlohmann::json::array();
  for (int v : zr.removed) removed.push_back(f.names[v]);
  out.json["removed_zero_vars"] = std::move(removed);

  nlohmann::json bounds = nlohmann::json::object();
  nlohmann::json evidence = nlohmann::json::array();
  for (int v : zr.removed) {
    bounds[f.names[v]] = {{"lb", "0"}, {"ub", "0"}, {"lb_exact", "0"}, {"ub_exact", "0"}};
    evidence.push_back(f.names[v]);
  }

  if (zr.all_removed()) {
    out.json["bounds"] = std::move(bounds);
    out.json["inconsistent_evidence"] = std::move(evidence);
    out.json["consistent_vars"] = nlohmann::json::array();
    out.json["iterations"] = 0;
    out.exit_code = 0;
    return out;
  }

  NormalForm nf = make_perfectly_superlinear(zr.psp);
  BoundsReport rep;
  try {
    rep = calc_bounds(nf.psp, epsilon, cfg);
  } catch (const precision_cap_error& e) {
    out.json["error"] = e.what();
    out.json["error_kind"] = "precision_cap";
    return out;
  } catch (const iteration_limit_error& e) {
    out.json["error"] = e.what();
    out.json["error_kind"] = "iteration_limit";
    return out;
  }

  // the emitted certificates are on the normal-form system; re-check them
  {
    RationalVec lbq = to_rational_vec(rep.lb), ubq = to_rational_vec(rep.ub);
    RationalVec flb = eval(nf.psp, lbq), fub = eval(nf.psp, ubq);
    bool lb_ok = vec_lt_strict(lbq, flb);
    bool ub_ok = vec_le(fub, ubq);
    out.json["certified"] = {{"lb_strict_prefix", lb_ok}, {"ub_postfixed", ub_ok}};
    if (!lb_ok || !ub_ok) {
      out.json["error"] = "internal: certificate re-check failed";
      return out;
    }
  }

  // map original variable -> index in the normal-form system
  std::vector<char> marked(nf.psp.dim(), 0);
  for (int v : rep.consistent_vars) marked[v] = 1;
  nlohmann::json consistent_vars = nlohmann::json::array();
  for (size_t k = 0; k < zr.kept.size(); ++k) {
    int original = zr.kept[k];
    const std::string& name = f.names[original];
    Rational lbq = rep.lb[k].to_rational();
    Rational ubq = rep.ub[k].to_rational();
    bounds[name] = {{"lb", decimal_floor(lbq, display_digits)},
                    {"ub", decimal_ceil(ubq, display_digits)},
                    {"lb_exact", rep.lb[k].exact_string()},
                    {"ub_exact", rep.ub[k].exact_string()}};
    if (ubq < 1) evidence.push_back(name);
    if (marked[static_cast<int>(k)]) consistent_vars.push_back(name);
  }
  out.json["bounds"] = std::move(bounds);
  out.json["inconsistent_evidence"] = std::move(evidence);
  out.json["consistent_vars"] = std::move(consistent_vars);
  out.json["iterations"] = rep.iterations;

  // everything needed to re-check the certificates independently
  nlohmann::json cert;
  cert["system"] = print_psp(nf.psp);
  nlohmann::json lb_exact = nlohmann::json::object(), ub_exact = nlohmann::json::object();
  for (int i = 0; i < nf.psp.dim(); ++i) {
    lb_exact[nf.psp.names[i]] = rep.lb[i].exact_string();
    ub_exact[nf.psp.names[i]] = rep.ub[i].exact_string();
  }
  cert["lb"] = std::move(lb_exact);
  cert["ub"] = std::move(ub_exact);
  out.json["certificate"] = std::move(cert);

  if (cfg.keep_trace) {
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& [lb, ub] : rep.trace) {
      nlohmann::json step;
      for (size_t k = 0; k < zr.kept.size(); ++k) {
        const std::string& name = f.names[zr.kept[k]];
        step[name] = {{"lb", lb[k].str(20)}, {"ub", ub[k].str(20)}};
      }
      trace.push_back(std::move(step));
    }
    out.json["trace"] = std::move(trace);
  }

  out.exit_code = 0;
  return out;
}

}  // namespace psp
