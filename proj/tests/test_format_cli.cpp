#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "psp/format.hpp"
#include "psp/models.hpp"
#include "psp/pipeline.hpp"
#include "test_support.hpp"

using namespace psp;
using nlohmann::json;

TEST_CASE("parser accepts fractions, decimals, powers and comments") {
  Psp f = parse_psp(
      "# tiny system\n"
      "A = 1/2*A*B + 0.25 + 1/4  # trailing comment\n"
      "B = 0.5*B^2 + 0.5\n");
  REQUIRE(f.dim() == 2);
  CHECK(f.polys[0].coefficient_sum() == 1);
  CHECK(f.polys[0].monomials.size() == 2);  // the two constants merged

  CHECK_THROWS_AS(parse_psp("A = 0.5*C\n"), ParseError);     // C undefined
  CHECK_THROWS_AS(parse_psp("A = \n"), ParseError);          // empty right side
  CHECK_THROWS_AS(parse_psp("A = 0.5A\n"), ParseError);      // missing '*'
  CHECK_THROWS_AS(parse_psp("A = 0.5*A\nA = 1\n"), ParseError);  // duplicate
  try {
    parse_psp("A = 0.5*A\nB = what\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("print/parse round trip is the identity on generated models") {
  for (int n : {2, 5, 9}) {
    Psp h = gen_hn(n);
    Psp again = parse_psp(print_psp(h));
    CHECK(print_psp(again) == print_psp(h));
    CHECK(again.names == h.names);
  }
  Rational d = parse_rational("3/2");
  SurrogateKernel k(d, 5);
  Psp m = gen_neutron(d, 5, k).psp;
  CHECK(print_psp(parse_psp(print_psp(m))) == print_psp(m));
}

TEST_CASE("pipeline check: verdicts and exit codes") {
  CheckOutcome ok = pipeline_check(testing::intro_system());
  CHECK(ok.exit_code == 0);
  CHECK(ok.json["verdict"] == "consistent");

  CheckOutcome bad = pipeline_check(gen_hn(10));
  CHECK(bad.exit_code == 1);
  CHECK(bad.json["verdict"] == "inconsistent");
  CHECK(bad.json["witness_scc"].size() == 10);
  CHECK(bad.json["op_count"].get<long long>() > 0);

  // zero components force inconsistency and are reported
  CheckOutcome zero = pipeline_check(parse_psp("X1 = 1*X1\n"));
  CHECK(zero.exit_code == 1);
  CHECK(zero.json["removed_zero_vars"] == json::array({"X1"}));

  CheckOutcome invalid = pipeline_check(parse_psp("X1 = 0.6*X1 + 0.6\n"));
  CHECK(invalid.exit_code == 2);
}

TEST_CASE("pipeline bounds: report shape, stripping and removed components") {
  Psp h = parse_psp("X = 0.75*X^2 + 0.25\n");
  BoundsOutcome out = pipeline_bounds(h, rat(1, 10000), {}, 12);
  REQUIRE(out.exit_code == 0);
  CHECK(out.json["bounds"].contains("X"));
  CHECK_FALSE(out.json["bounds"].contains("T"));  // normal-form helper stripped
  CHECK(out.json["certificate"]["system"].get<std::string>().find("T") != std::string::npos);
  CHECK(out.json["certified"]["lb_strict_prefix"] == true);
  CHECK(out.json["certified"]["ub_postfixed"] == true);
  Rational lb = parse_rational(out.json["bounds"]["X"]["lb"].get<std::string>());
  Rational ub = parse_rational(out.json["bounds"]["X"]["ub"].get<std::string>());
  CHECK(lb <= rat(1, 3));
  CHECK(rat(1, 3) <= ub);

  BoundsOutcome degenerate = pipeline_bounds(parse_psp("X1 = 1*X1\n"), rat(1, 100), {}, 6);
  CHECK(degenerate.exit_code == 0);
  CHECK(degenerate.json["bounds"]["X1"]["lb"] == "0");
  CHECK(degenerate.json["bounds"]["X1"]["ub"] == "0");

  // partial removal: X2 dies, X1 degrades to the constant 1/2
  BoundsOutcome partial = pipeline_bounds(parse_psp("X1 = 0.5*X2 + 0.5\nX2 = 1*X1*X2\n"), rat(1, 64), {}, 6);
  REQUIRE(partial.exit_code == 0);
  CHECK(partial.json["removed_zero_vars"] == json::array({"X2"}));
  CHECK(partial.json["bounds"]["X2"]["ub"] == "0");
  Rational plb = parse_rational(partial.json["bounds"]["X1"]["lb"].get<std::string>());
  Rational pub = parse_rational(partial.json["bounds"]["X1"]["ub"].get<std::string>());
  CHECK(plb <= rat(1, 2));
  CHECK(rat(1, 2) <= pub);

  BoundsOutcome usage = pipeline_bounds(h, Rational(0), {}, 6);
  CHECK(usage.exit_code == 2);
}

TEST_CASE("nearly-consistent benchmark: upper bound escapes and is reported as evidence") {
  BoundsOutcome out = pipeline_bounds(gen_hn(20), rat(1, 1000), {}, 12);
  REQUIRE(out.exit_code == 0);
  CHECK(out.json["inconsistent_evidence"].size() == 20);  // every component certified below 1
  CHECK(out.json["consistent_vars"].empty());
  // the certified values sit less than 1e-3 apart even though the displayed
  // outward-rounded decimals both look like 1
  Rational lb = parse_rational(out.json["bounds"]["X1"]["lb"].get<std::string>());
  CHECK(lb > 1 - rat(1, 1000));
}

TEST_CASE("neutron bounds run end to end on the surrogate") {
  Rational d = parse_rational("3");
  SurrogateKernel k(d, 8);
  NeutronModel m = gen_neutron(d, 8, k);
  BoundsOutcome out = pipeline_bounds(m.psp, rat(1, 10000), {}, 12);
  REQUIRE(out.exit_code == 0);
  // supercritical ball: every extinction probability certified below 1
  CHECK(out.json["inconsistent_evidence"].size() == 9);
  Rational lb = parse_rational(out.json["bounds"]["Q0"]["lb"].get<std::string>());
  Rational ub = parse_rational(out.json["bounds"]["Q0"]["ub"].get<std::string>());
  CHECK(lb > rat(1, 2));
  CHECK(ub < 1);
  CHECK(ub - lb <= rat(1, 10000) + rat(2, 1000000000000));  // display rounding slack
}

TEST_CASE("malformed inputs raise parse errors, never crashes") {
  const char* garbage[] = {
      "",           "= 1",          "X1 = ",        "X1 = *X1",     "X1 = 0..5*X1",
      "X1 = 1/0",   "X1 = X1^",     "X1 = X1^0",    "X1 = 0.5*X1 +", "X1 = -0.5*X1 + 1",
      "X1 = 0.5*X1 0.5", "X1 == 1", "X1 = 1e5*X1",  "1X = 0.5",     "X1 = 0.5//2*X1"};
  for (const char* text : garbage) CHECK_THROWS_AS(parse_psp(text), ParseError);
}

TEST_CASE("bounds pipeline exposes the trace on request") {
  Psp g = parse_psp("X = 0.5*X^2 + 0.5\n");
  BoundsConfig cfg;
  cfg.keep_trace = true;
  BoundsOutcome out = pipeline_bounds(g, rat(1, 100), cfg, 8);
  REQUIRE(out.exit_code == 0);
  REQUIRE(out.json.contains("trace"));
  CHECK(out.json["trace"].size() >= 2);
  CHECK(out.json["trace"][0].contains("X"));
}

TEST_CASE("decimal rendering rounds outward") {
  CHECK(decimal_floor(rat(1, 3), 4) == "0.3333");
  CHECK(decimal_ceil(rat(1, 3), 4) == "0.3334");
  CHECK(decimal_floor(rat(1, 2), 3) == "0.500");
  CHECK(decimal_ceil(rat(1, 2), 3) == "0.500");
  CHECK(decimal_floor(Rational(0), 2) == "0.00");
  CHECK(rational_to_string(rat(49, 100)) == "0.49");
  CHECK(rational_to_string(rat(1, 3)) == "1/3");
}

#ifdef __unix__
namespace {

struct CommandResult {
  int exit_code;
  std::string out;
};

CommandResult run_cli(const std::string& args) {
  const char* bin = std::getenv("PSPSOLVE_BIN");
  REQUIRE(bin != nullptr);
  std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  int status = pclose(p);
  return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("cli: gen output is byte-deterministic and check exit codes hold") {
  CommandResult gen1 = run_cli("gen hn --n 2");
  CommandResult gen2 = run_cli("gen hn --n 2");
  CHECK(gen1.exit_code == 0);
  CHECK(gen1.out == gen2.out);
  CHECK(gen1.out == print_psp(gen_hn(2)));

  CHECK(run_cli("gen hn --n 1").exit_code == 2);

  std::string dir = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp");
  std::string h100 = dir + "/pspsolve_h100.psp";
  {
    std::ofstream f(h100);
    f << print_psp(gen_hn(100));
  }
  CommandResult check = run_cli("check " + h100);
  CHECK(check.exit_code == 1);
  json j = json::parse(check.out);
  CHECK(j["verdict"] == "inconsistent");

  std::string intro = dir + "/pspsolve_intro.psp";
  {
    std::ofstream f(intro);
    f << print_psp(testing::intro_system());
  }
  CHECK(run_cli("check " + intro).exit_code == 0);

  std::string broken = dir + "/pspsolve_broken.psp";
  {
    std::ofstream f(broken);
    f << "X1 = nope\n";
  }
  CHECK(run_cli("check " + broken).exit_code == 2);

  CommandResult bounds_sci = run_cli("bounds " + intro + " --epsilon 1e-3");
  CHECK(bounds_sci.exit_code == 0);  // scientific epsilon parses exactly

  CommandResult bounds_ok = run_cli("bounds " + intro + " --epsilon 0.001");
  CHECK(bounds_ok.exit_code == 0);
  json jb = json::parse(bounds_ok.out);
  CHECK(jb["bounds"].contains("X1"));

  CommandResult crit = run_cli("critical --kernel toy --n 4 --lo 0.5 --hi 1.125 --tol 0.01");
  CHECK(crit.exit_code == 0);
  json jc = json::parse(crit.out);
  Rational lo = parse_rational(jc["interval"]["lo"].get<std::string>());
  Rational hi = parse_rational(jc["interval"]["hi"].get<std::string>());
  CHECK(lo <= 1);
  CHECK(1 < hi);
  CHECK(hi - lo <= rat(1, 100));
  CHECK(jc["steps"].size() >= 3);

  CHECK(run_cli("critical --kernel toy --n 4 --lo 1.0625 --hi 1.125 --tol 0.01").exit_code == 2);
}
#endif
