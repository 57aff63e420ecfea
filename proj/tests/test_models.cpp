#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "psp/consistency.hpp"
#include "psp/depgraph.hpp"
#include "psp/models.hpp"
#include "test_support.hpp"

using namespace psp;

TEST_CASE("gen_hn matches the closed form") {
  Psp h2 = gen_hn(2);
  CHECK(print_psp(h2) ==
        "X1 = 0.5*X1^2 + 0.1*X2^2 + 0.4\n"
        "X2 = 0.01*X1^2 + 0.5*X2 + 0.49\n");

  Psp h5 = gen_hn(5);
  CHECK(h5.dim() == 5);
  for (int i = 0; i < 5; ++i) CHECK(h5.polys[i].coefficient_sum() == 1);
  CHECK(is_scpsp(h5));
  CHECK_THROWS_AS((void)gen_hn(1), std::invalid_argument);
}

TEST_CASE("hn witness is a strict post-fixed point for every n up to 100") {
  for (int n = 2; n <= 100; ++n) {
    Psp h = gen_hn(n);
    RationalVec p = hn_witness(n);
    CHECK(vec_lt_strict(testing::naive_eval(h, p), p));
  }
}

TEST_CASE("neutron generator: absorbing kernel gives the constant-1 system") {
  struct Absorbing final : NeutronKernel {
    Rational escape(const Rational&) const override { return 1; }
    Rational collision(const Rational&, const Rational&) const override { return 0; }
    std::string name() const override { return "absorbing"; }
  } kernel;
  NeutronModel m = gen_neutron(Rational(3), 1, kernel);
  CHECK(m.psp.dim() == 2);
  CHECK(m.clamped.empty());
  CHECK(validate(m.psp).ok());
  CHECK(check_consistency(m.psp).consistent);  // every Q_j = 1 exactly
}

TEST_CASE("neutron generator: surrogate rows are valid after clamping") {
  for (const char* d : {"1/2", "2", "3", "6"}) {
    Rational radius = parse_rational(d);
    SurrogateKernel k(radius, 8);
    NeutronModel m = gen_neutron(radius, 8, k);
    CHECK(validate(m.psp).ok());
    for (const Polynomial& p : m.psp.polys) CHECK(p.coefficient_sum() <= 1);
    for (const auto& [row, factor] : m.clamped) {
      CHECK(factor > 0);
      CHECK(factor < 1);
      CHECK(m.psp.polys[row].coefficient_sum() == 1);
    }
  }
}

TEST_CASE("surrogate consistency is antitone in the radius") {
  std::vector<bool> verdicts;
  for (const char* d : {"1/2", "1", "2", "3", "6"}) {
    Rational radius = parse_rational(d);
    SurrogateKernel k(radius, 20);
    NeutronModel m = gen_neutron(radius, 20, k);
    verdicts.push_back(check_consistency(m.psp).consistent);
  }
  for (size_t i = 1; i < verdicts.size(); ++i) CHECK(verdicts[i] <= verdicts[i - 1]);
  // the flip sits between D = 2 and D = 3 for this kernel at n = 20
  CHECK(verdicts == std::vector<bool>{true, true, true, false, false});
}

TEST_CASE("toy kernel flips exactly at radius 1") {
  for (int segments : {1, 4, 8}) {
    auto factory = make_kernel_factory("toy", segments);
    auto consistent_at = [&](const Rational& d) {
      NeutronModel m = gen_neutron(d, segments, *factory(d));
      return check_consistency(m.psp).consistent;
    };
    CHECK(consistent_at(rat(1, 2)));
    CHECK(consistent_at(Rational(1)));  // the spectral radius is exactly 1 here
    CHECK_FALSE(consistent_at(1 + rat(1, 64)));
  }
}

TEST_CASE("critical radius search localizes the toy flip") {
  auto factory = make_kernel_factory("toy", 8);
  CriticalResult res = critical_radius(8, factory, rat(1, 2), rat(9, 8), rat(1, 100));
  CHECK(res.hi - res.lo <= rat(1, 100));
  CHECK(res.lo <= 1);
  CHECK(res.hi > 1);

  // tol equal to the bracket width returns it unchanged
  CriticalResult same = critical_radius(8, factory, rat(1, 2), rat(9, 8), rat(9, 8) - rat(1, 2));
  CHECK(same.lo == rat(1, 2));
  CHECK(same.hi == rat(9, 8));

  CHECK_THROWS_AS(critical_radius(8, factory, 1 + rat(1, 32), rat(9, 8), rat(1, 100)), std::invalid_argument);
}

TEST_CASE("kernel tables parse and evaluate exactly") {
  std::istringstream in(
      "# toy table\n"
      "xi,l\n"
      "0,0.5\n"
      "1/2,0.25\n"
      "1,1/8\n"
      "xi,eta,R\n"
      "0,0,0.25\n"
      "0,1/2,0.125\n"
      "0,1,0.125\n"
      "1/2,0,0.125\n"
      "1/2,1/2,0.25\n"
      "1/2,1,0.125\n"
      "1,0,0.125\n"
      "1,1/2,0.125\n"
      "1,1,0.25\n");
  TableKernel k = TableKernel::load(in);
  CHECK(k.escape(rat(1, 2)) == rat(1, 4));
  CHECK(k.collision(Rational(1), rat(1, 2)) == rat(1, 8));
  NeutronModel m = gen_neutron(Rational(1), 2, k);
  CHECK(validate(m.psp).ok());
  CHECK(m.psp.dim() == 3);
  CHECK_THROWS(k.escape(rat(1, 3)));  // off-grid lookups are an error
}
