#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "corona_lab/lambda.hpp"

using namespace corona;

namespace {
std::mt19937_64 eng(5);
cxd rnd() {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return cxd(u(eng), u(eng));
}
}  // namespace

TEST_CASE("delta on e1^e2 reproduces the display") {
  // delta_v(e_0 ^ e_1) = v_0 e_1 - v_1 e_0
  LambdaElement x = LambdaElement::basis(2, 0b11);
  const std::array<cxd, 3> v{cxd(2.0, 1.0), cxd(-1.0, 0.5), 0.0};
  const LambdaElement d = delta(v, x);
  CHECK(d.comp[0b10] == v[0]);
  CHECK(d.comp[0b01] == -v[1]);
}

TEST_CASE("delta is nilpotent on 100 random elements (m = 3)") {
  // the cancelling products associate differently, so the residual is a few ulp
  for (int it = 0; it < 100; ++it) {
    LambdaElement x;
    x.m = 3;
    for (std::uint8_t mask = 1; mask < 8; ++mask) x.comp[mask] = rnd();
    const std::array<cxd, 3> v{rnd(), rnd(), rnd()};
    const LambdaElement dd = delta(v, delta(v, x));
    for (std::uint8_t mask = 0; mask < 8; ++mask) CHECK(std::abs(dd.comp[mask]) < 1e-14);
  }
}

TEST_CASE("delta rejects grade-0 input") {
  LambdaElement x;
  x.m = 2;
  x.comp[0] = 1.0;
  const std::array<cxd, 3> v{1.0, 1.0, 0.0};
  CHECK_THROWS_AS(delta(v, x), std::invalid_argument);
}

TEST_CASE("lambda wedge: antisymmetry of generators") {
  const LambdaElement e0 = LambdaElement::basis(3, 0b001);
  const LambdaElement e1 = LambdaElement::basis(3, 0b010);
  CHECK(lambda_wedge(e0, e1).comp[0b011] == cxd(1.0));
  CHECK(lambda_wedge(e1, e0).comp[0b011] == cxd(-1.0));
  CHECK(lambda_wedge(e0, e0).comp[0b001] == cxd(0.0));
}

TEST_CASE("LambdaFieldForm wedge tracks both sign species") {
  const int m = 3, n = 2;
  // a = f e_0 dwb_0 ; b = g e_1 dwb_1
  LambdaFieldForm a(m, n, 1, 1), b(m, n, 1, 1);
  a.add(0b001, 0b01, Field::constant(n, 2.0));
  b.add(0b010, 0b10, Field::constant(n, cxd(0.0, 3.0)));
  const LambdaFieldForm ab = wedge(a, b);
  const LambdaFieldForm ba = wedge(b, a);
  const Point z(2);
  const auto va = ab.eval(z);
  const auto vb = ba.eval(z);
  CHECK(va[0b011].c[0b11] == cxd(0.0, 6.0));
  // two swaps (one per species): signs cancel
  CHECK(vb[0b011].c[0b11] == cxd(0.0, 6.0));
}

TEST_CASE("grade and degree bookkeeping is enforced") {
  LambdaFieldForm a(2, 2, 1, 0);
  CHECK_THROWS_AS(a.add(0b11, 0, Field::constant(2, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(a.add(0b01, 0b1, Field::constant(2, 1.0)), std::invalid_argument);
}
