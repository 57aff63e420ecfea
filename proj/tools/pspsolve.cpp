#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

#include "psp/consistency.hpp"
#include "psp/format.hpp"
#include "psp/models.hpp"
#include "psp/pipeline.hpp"

namespace {

using nlohmann::json;

struct OutputOptions {
  std::string format = "json";
};

void emit(const json& j, const OutputOptions& opts, const std::string& summary) {
  if (opts.format == "text") {
    std::cout << summary << "\n";
  } else {
    std::cout << j.dump(2) << "\n";
    if (!summary.empty()) std::cerr << summary << "\n";
  }
}

int emit_error(const std::string& message, const OutputOptions& opts, const std::string& command) {
  json j;
  j["command"] = command;
  j["error"] = message;
  emit(j, opts, "error: " + message);
  return 2;
}

psp::BoundsConfig bounds_config(long prec_start, long prec_cap, long max_iters, bool trace) {
  psp::BoundsConfig cfg;
  cfg.prec = psp::PrecisionConfig::from_env();
  if (prec_start > 0) cfg.prec.start = prec_start;
  if (prec_cap > 0) cfg.prec.cap = prec_cap;
  if (cfg.prec.cap < cfg.prec.start) cfg.prec.cap = cfg.prec.start;
  if (max_iters > 0) cfg.max_iterations = max_iters;
  cfg.keep_trace = trace;
  return cfg;
}

std::string check_summary(const json& j) {
  std::string s = "verdict: " + j.value("verdict", "?");
  if (j.contains("witness_scc")) {
    s += "  (witness SCC:";
    for (const auto& v : j["witness_scc"]) s += " " + v.get<std::string>();
    s += ")";
  }
  return s;
}

std::string bounds_summary(const json& j) {
  if (j.contains("error")) return "error: " + j["error"].get<std::string>();
  std::string s = "iterations: " + std::to_string(j.value("iterations", 0));
  if (j.contains("bounds"))
    for (auto it = j["bounds"].begin(); it != j["bounds"].end(); ++it)
      s += "\n  " + it.key() + " in [" + (*it)["lb"].get<std::string>() + ", " + (*it)["ub"].get<std::string>() + "]";
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pspsolve: consistency checks and certified bounds for probabilistic systems of polynomials"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  OutputOptions opts;
  app.add_option("--format", opts.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  std::string input_file;
  std::string epsilon_str = "1/1000000";
  long prec_start = 0, prec_cap = 0, max_iters = 0;
  int digits = 12;
  bool trace = false;

  CLI::App* check = app.add_subcommand("check", "decide whether the least fixed point is all ones");
  check->add_option("file", input_file, "system file")->required();

  CLI::App* bounds = app.add_subcommand("bounds", "certified lower/upper bounds on the least fixed point");
  bounds->add_option("file", input_file, "system file")->required();
  bounds->add_option("--epsilon", epsilon_str, "target width of the bracket (rational or decimal)");
  bounds->add_option("--digits", digits, "display digits for the outward-rounded decimals");
  bounds->add_option("--precision-start", prec_start, "initial float precision in bits");
  bounds->add_option("--precision-cap", prec_cap, "hard precision cap in bits");
  bounds->add_option("--max-iters", max_iters, "iteration guard");
  bounds->add_flag("--trace", trace, "include the per-iteration bracket in the report");

  std::string model, kernel_spec = "builtin", radius_str = "2";
  int segments = 20, hn_n = 2;
  CLI::App* gen = app.add_subcommand("gen", "emit a built-in model as a system file");
  gen->add_option("model", model, "hn or neutron")->required();
  gen->add_option("--n", hn_n, "hn: number of variables; neutron: number of segments");
  gen->add_option("--D", radius_str, "neutron: ball radius (rational or decimal)");
  gen->add_option("--kernel", kernel_spec, "neutron: builtin|surrogate|toy|file:PATH");

  std::string lo_str = "1/2", hi_str = "9/8", tol_str = "1/100";
  CLI::App* critical = app.add_subcommand("critical", "locate the consistency flip radius by bisection");
  critical->add_option("--n", segments, "number of segments");
  critical->add_option("--kernel", kernel_spec, "builtin|surrogate|toy");
  critical->add_option("--lo", lo_str, "consistent end of the bracket");
  critical->add_option("--hi", hi_str, "inconsistent end of the bracket");
  critical->add_option("--tol", tol_str, "target bracket width");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage errors share the error exit code
  }

  try {
    if (check->parsed()) {
      psp::Psp f;
      try {
        f = psp::load_psp_file(input_file);
      } catch (const std::exception& e) {
        return emit_error(e.what(), opts, "check");
      }
      psp::CheckOutcome out = psp::pipeline_check(f);
      emit(out.json, opts, check_summary(out.json));
      return out.exit_code;
    }

    if (bounds->parsed()) {
      psp::Psp f;
      psp::Rational eps;
      try {
        f = psp::load_psp_file(input_file);
        eps = psp::parse_rational(epsilon_str);
      } catch (const std::exception& e) {
        return emit_error(e.what(), opts, "bounds");
      }
      psp::BoundsOutcome out =
          psp::pipeline_bounds(f, eps, bounds_config(prec_start, prec_cap, max_iters, trace), digits);
      emit(out.json, opts, bounds_summary(out.json));
      return out.exit_code;
    }

    if (gen->parsed()) {
      if (model == "hn") {
        if (hn_n < 2) return emit_error("hn needs --n >= 2", opts, "gen");
        std::cout << psp::print_psp(psp::gen_hn(hn_n));
        return 0;
      }
      if (model == "neutron") {
        psp::Rational d = psp::parse_rational(radius_str);
        auto factory = psp::make_kernel_factory(kernel_spec, hn_n);
        psp::NeutronModel m = psp::gen_neutron(d, hn_n, *factory(d));
        std::cout << psp::print_psp(m.psp);
        for (const auto& [row, factor] : m.clamped)
          std::cerr << "# note: row Q" << row << " rescaled by " << psp::rational_to_string(factor)
                    << " to keep the coefficient sum at 1\n";
        return 0;
      }
      return emit_error("unknown model '" + model + "' (expected hn or neutron)", opts, "gen");
    }

    if (critical->parsed()) {
      psp::Rational lo = psp::parse_rational(lo_str), hi = psp::parse_rational(hi_str),
                    tol = psp::parse_rational(tol_str);
      auto factory = psp::make_kernel_factory(kernel_spec, segments);
      psp::CriticalResult res = psp::critical_radius(segments, factory, lo, hi, tol);
      json j;
      j["command"] = "critical";
      j["kernel"] = kernel_spec;
      j["segments"] = segments;
      j["tol"] = tol.get_str();
      j["interval"] = {{"lo", psp::rational_to_string(res.lo)}, {"hi", psp::rational_to_string(res.hi)}};
      json steps = json::array();
      for (const auto& s : res.steps)
        steps.push_back({{"D", psp::rational_to_string(s.radius)},
                         {"verdict", s.consistent ? "consistent" : "inconsistent"},
                         {"millis", s.millis}});
      j["steps"] = std::move(steps);
      emit(j, opts,
           "critical radius in [" + psp::rational_to_string(res.lo) + ", " + psp::rational_to_string(res.hi) + "]");
      return 0;
    }
  } catch (const std::exception& e) {
    return emit_error(e.what(), opts, app.get_subcommands().empty() ? "" : app.get_subcommands()[0]->get_name());
  }
  return 2;
}
