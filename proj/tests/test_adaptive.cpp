#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "psp/adaptive.hpp"
#include "psp/bounds.hpp"
#include "test_support.hpp"

using namespace psp;
using testing::psp_from;

TEST_CASE("a predicate true at every approximation accepts the first candidate") {
  PrecisionConfig cfg;
  int calls = 0;
  ApproxVec out = run_floating_assignment(
      cfg,
      [&](mpfr_prec_t prec) -> std::optional<ApproxVec> {
        ++calls;
        return ApproxVec{Float::of_rational(rat(1, 3), prec)};
      },
      [](const ApproxVec& v) { return v[0].to_rational() < 1; });
  CHECK(calls == 1);
  CHECK(out[0].precision() == 53);
}

TEST_CASE("two Newton steps from zero on 0.5X^2+0.5 give exactly 0.75") {
  Psp g = psp_from("X = 0.5*X^2 + 0.5\n");
  ApproxVec zero = approx_const(1, 0);
  auto once = newton_step(g, zero, 53);
  REQUIRE(once);
  CHECK((*once)[0].to_rational() == rat(1, 2));
  auto twice = newton_step(g, *once, 53);
  REQUIRE(twice);
  CHECK((*twice)[0].to_rational() == rat(3, 4));  // dyadic data, so 53 bits are exact here

  // the full floating assignment accepts it: 0.5 + 0*(x-0) < x < f(x) < 1
  RationalVec f0 = eval(g, {Rational(0)});
  PrecisionConfig cfg;
  ApproxVec accepted = run_floating_assignment(
      cfg,
      [&](mpfr_prec_t prec) -> std::optional<ApproxVec> {
        auto y = newton_step(g, zero, prec);
        if (!y) return std::nullopt;
        return newton_step(g, *y, prec);
      },
      [&](const ApproxVec& cand) {
        Rational x = cand[0].to_rational();
        Rational fx = eval(g, {x})[0];
        return f0[0] < x && x < fx && fx < 1;
      });
  CHECK(accepted[0].to_rational() == rat(3, 4));
}

TEST_CASE("an unsatisfiable strict predicate escalates to the cap and reports it") {
  PrecisionConfig cfg;
  cfg.start = 8;
  cfg.cap = 64;
  int calls = 0;
  CHECK_THROWS_AS(run_floating_assignment(
                      cfg,
                      [&](mpfr_prec_t prec) -> std::optional<ApproxVec> {
                        ++calls;
                        return ApproxVec{Float::of_rational(Rational(1), prec)};
                      },
                      [](const ApproxVec& v) {
                        // demands x < f(x) at the fixed point x = 1 of 0.5X^2+0.5
                        Rational x = v[0].to_rational();
                        return x < rat(1, 2) * x * x + rat(1, 2);
                      }),
                  precision_cap_error);
  CHECK(calls == 4);  // 8, 16, 32, 64
}

TEST_CASE("precision schedule is monotone and respects the cap") {
  PrecisionConfig cfg;
  cfg.start = 10;
  cfg.cap = 100;
  std::vector<mpfr_prec_t> seen;
  CHECK_THROWS_AS(run_floating_assignment(
                      cfg,
                      [&](mpfr_prec_t prec) -> std::optional<ApproxVec> {
                        seen.push_back(prec);
                        return std::nullopt;  // like a numerically singular candidate
                      },
                      [](const ApproxVec&) { return true; }),
                  precision_cap_error);
  CHECK(seen == std::vector<mpfr_prec_t>{10, 20, 40, 80, 100});
}

TEST_CASE("exact rational image of floats") {
  CHECK(Float::of_rational(rat(1, 2), 53).to_rational() == rat(1, 2));
  CHECK(Float::of_long(0).to_rational() == 0);
  // nearest 53-bit float to 1/10 is the classic dyadic
  Rational dyadic_tenth(mpz_class("3602879701896397"), mpz_class(1) << 55);
  CHECK(Float::of_rational(rat(1, 10), 53).to_rational() == dyadic_tenth);
}

TEST_CASE("exact_string round-trips dyadics") {
  CHECK(Float::of_rational(rat(1, 2), 53).exact_string() == "1/2^1");
  CHECK(Float::of_long(0).exact_string() == "0");
  CHECK(Float::of_long(3).exact_string() == "3");
}
