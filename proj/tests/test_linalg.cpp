#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "psp/linalg.hpp"
#include "test_support.hpp"

using namespace psp;

namespace {

RationalMat mat2(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  RationalMat m(2);
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  m.at(1, 0) = c;
  m.at(1, 1) = d;
  return m;
}

}  // namespace

TEST_CASE("solve: identity, 1x1, 2x2") {
  RationalMat id = RationalMat::identity(3);
  auto x = solve(id, {Rational(1), Rational(1), Rational(1)});
  REQUIRE(x);
  CHECK(*x == rational_vec(3, 1));

  RationalMat half(1);
  half.at(0, 0) = rat(1, 2);  // Id - [[1/2]]
  auto y = solve(half, {Rational(1)});
  REQUIRE(y);
  CHECK((*y)[0] == 2);

  // Id - [[0,2],[2,0]]
  RationalMat m = mat2(1, -2, -2, 1);
  auto z = solve(m, {Rational(1), Rational(1)});
  REQUIRE(z);
  CHECK((*z)[0] == -1);
  CHECK((*z)[1] == -1);

  RationalMat singular = mat2(1, 1, 1, 1);
  CHECK_FALSE(solve(singular, {Rational(1), Rational(1)}));
}

TEST_CASE("kernel_vector") {
  RationalMat zero(1);  // Id - [[1]]
  auto v = kernel_vector(zero);
  REQUIRE(v);
  CHECK((*v)[0] != 0);

  CHECK_FALSE(kernel_vector(RationalMat::identity(4)));

  RationalMat m = mat2(1, -1, -1, 1);
  auto w = kernel_vector(m);
  REQUIRE(w);
  CHECK((*w)[0] == (*w)[1]);  // (1,1) direction
  CHECK((*w)[0] != 0);
}

TEST_CASE("spectral radius decision: examples") {
  RationalMat one(1);
  one.at(0, 0) = 1;
  CHECK(spectral_radius_le_one(one));

  RationalMat three_half(1);
  three_half.at(0, 0) = rat(3, 2);
  CHECK_FALSE(spectral_radius_le_one(three_half));

  RationalMat intro = mat2(rat(1, 2), rat(1, 2), rat(1, 4), rat(1, 2));
  CHECK(spectral_radius_le_one(intro));  // rho ~ 0.854
}

TEST_CASE("solve/kernel products are exact on random matrices") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    RationalMat a(n);
    for (auto& e : a.a) e = rat(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 6));
    RationalVec b;
    for (int i = 0; i < n; ++i) b.push_back(rat(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 6)));
    if (auto x = solve(a, b)) {
      CHECK(mat_vec(a, *x) == b);
    } else {
      auto v = kernel_vector(a);
      REQUIRE(v);  // singular => nontrivial kernel
      bool nonzero = false;
      for (const Rational& e : *v)
        if (e != 0) nonzero = true;
      CHECK(nonzero);
      CHECK(mat_vec(a, *v) == rational_vec(n, 0));
    }
  }
}

TEST_CASE("decision agrees with the power-iteration oracle away from 1") {
  std::mt19937 rng(31);
  int tested = 0;
  while (tested < 40) {
    int n = 1 + static_cast<int>(rng() % 4);
    RationalMat a(n);
    for (auto& e : a.a) e = rat(1 + static_cast<long>(rng() % 24), 16);  // strictly positive => irreducible
    auto est = testing::estimate_rho(a, 256, 20000, rat(1, 100000));
    if (!est) continue;
    if (est->lo <= Rational(1) + rat(1, 1000) && est->hi >= Rational(1) - rat(1, 1000)) continue;  // too close to 1
    ++tested;
    bool expected = est->hi <= 1;
    CHECK(spectral_radius_le_one(a) == expected);
  }
}

TEST_CASE("elimination stays within c*n^3 field operations") {
  std::mt19937 rng(41);
  for (int n : {2, 5, 9, 16}) {
    RationalMat a(n);
    for (auto& e : a.a) e = rat(static_cast<long>(rng() % 9), 1 + static_cast<long>(rng() % 4));
    for (int i = 0; i < n; ++i) a.at(i, i) += 3;  // keep it nonsingular
    OpCount ops;
    auto x = solve(a, rational_vec(n, 1), &ops);
    REQUIRE(x);
    CHECK(ops.total() <= 20ull * n * n * n + 100);
  }
}
