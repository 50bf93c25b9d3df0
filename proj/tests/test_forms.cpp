#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corona_lab/forms.hpp"

using namespace corona;

TEST_CASE("concat sign: exhaustive small cases") {
  // dw0 ^ dw1 keeps order
  CHECK(concat_sign(0b01, 0b10) == 1);
  // dw1 then dw0 swaps once
  CHECK(concat_sign(0b10, 0b01) == -1);
  // (dw0 dw1) then dw2: no inversions
  CHECK(concat_sign(0b011, 0b100) == 1);
  // dw2 then (dw0 dw1): two inversions
  CHECK(concat_sign(0b100, 0b011) == 1);
  // dw1 then dw0 dw2: one inversion
  CHECK(concat_sign(0b010, 0b101) == -1);
}

TEST_CASE("wedge antisymmetry and associativity") {
  const int n = 3;
  const Form a = Form::dw(n, 0);
  const Form b = Form::dwb(n, 1);
  const Form c = Form::dzb(n, 2);

  const Form ab = wedge(a, b);
  const Form ba = wedge(b, a);
  CHECK(ab.coefficient(0b001, 0b010, 0) == cxd(1.0));
  CHECK(ba.coefficient(0b001, 0b010, 0) == cxd(-1.0));

  const Form left = wedge(wedge(a, b), c);
  const Form right = wedge(a, wedge(b, c));
  CHECK(left.coefficient(0b001, 0b010, 0b100) == right.coefficient(0b001, 0b010, 0b100));

  // squares vanish
  CHECK(wedge(a, a).magnitude() == 0.0);
  Form dbw2(n);  // sum w_j dwb_j with distinct coefficients
  dbw2 += cxd(0.3, 0.1) * Form::dwb(n, 0);
  dbw2 += cxd(-0.2, 0.5) * Form::dwb(n, 1);
  CHECK(wedge(dbw2, dbw2).magnitude() == 0.0);
}

TEST_CASE("z-degree filter and volume contraction") {
  const int n = 2;
  Form k(n);
  // (n, n-1)-in-w piece with no dzb: dw0 dw1 dwb1
  k += wedge(wedge(Form::dw(n, 0), Form::dw(n, 1)), Form::dwb(n, 1));
  // piece with one dzb: dw0 dw1 dzb0
  Form kz = wedge(wedge(Form::dw(n, 0), Form::dw(n, 1)), Form::dzb(n, 0));
  k += kz;

  CHECK(k.z_degree(0).magnitude() == doctest::Approx(1.0));
  CHECK(k.z_degree(1).magnitude() == doctest::Approx(1.0));

  // contract with theta = 2 dwb0: only the first piece completes the volume
  MaskCoefs theta;
  theta.n = n;
  theta.c[0b01] = 2.0;
  const MaskCoefs out = contract_volume(k.z_degree(0), theta);
  // dw0 dw1 dwb1 ^ dwb0 -> reorder dwb0 dwb1 costs one swap
  CHECK(out.c[0] == cxd(-2.0));
}

TEST_CASE("contract keeps dzb components separate") {
  const int n = 2;
  Form k(n);
  k += wedge(wedge(Form::dw(n, 0), Form::dw(n, 1)), Form::dzb(n, 1));  // (2,0) w, dzb1
  MaskCoefs op;
  op.n = n;
  op.c[0b11] = cxd(0.0, 1.0);  // dwb0 dwb1 operand
  const MaskCoefs out = contract_volume(k, op);
  CHECK(out.c[0b10] == cxd(0.0, 1.0));
  CHECK(out.c[0] == cxd(0.0));
}
