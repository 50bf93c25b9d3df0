#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "corona_lab/fields.hpp"
#include "corona_lab/forms.hpp"

using namespace corona;

namespace {
std::mt19937_64 eng(3);

Point random_interior(int n, double rmax = 0.9) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Point p(n);
  double norm = 0.0;
  for (int j = 0; j < n; ++j) {
    p.coord(j) = cxd(g(eng), g(eng));
    norm += std::norm(p[j]);
  }
  const double r = rmax * std::pow(u(eng), 1.0 / (2 * n));
  norm = std::sqrt(norm);
  for (int j = 0; j < n; ++j) p.coord(j) *= r / norm;
  return p;
}
}  // namespace

TEST_CASE("d_holo on polynomials is exact") {
  PolyHolo p(2);
  p.add_term(mi(2, 0), 1.0);  // z1^2
  const Field f = p.to_field();
  const Point z{0.3, 0.0};
  CHECK(d_holo(f, 0, z) == cxd(0.6));
  CHECK(d_holo(PolyHolo::coordinate(2, 1).to_field(), 0, z) == cxd(0.0));
  CHECK_THROWS_AS(d_holo(f, 5, z), std::out_of_range);
}

TEST_CASE("closed-form partials match finite differences") {
  const Point w0{0.4, cxd(0.1, 0.2)};
  const Field f = cauchy_power(w0, 3.0);
  for (int it = 0; it < 20; ++it) {
    const Point z = random_interior(2, 0.8);
    const Jet j = f.jet(z);
    Field fv = Field::value_only(2, [f](const Point& p) { return f.value(p); });
    const Jet jfd = fv.jet(z);
    for (int k = 0; k < 2; ++k) {
      CHECK(std::abs(j.dz[k] - jfd.dz[k]) < 1e-6);
      CHECK(std::abs(j.dzb[k] - jfd.dzb[k]) < 1e-6);
    }
  }
}

TEST_CASE("d_tangential on coordinates") {
  const Field z1 = Field::coordinate(2, 0);
  const Point z{cxd(0.2, 0.1), cxd(-0.3, 0.4)};
  // D_{0,1} z_0 = conj(z_1) * 1 - conj(z_0) * 0
  CHECK(d_tangential(z1, 0, 1, z) == std::conj(z[1]));
  const Field prod = Field::coordinate(2, 0) * Field::coordinate(2, 1);
  const cxd expect = std::conj(z[1]) * z[1] - std::conj(z[0]) * z[0];
  CHECK(std::abs(d_tangential(prod, 0, 1, z) - expect) < 1e-14);
  CHECK_THROWS_AS(d_tangential(z1, 1, 0, z), std::invalid_argument);
}

TEST_CASE("tangential coefficients reproduce the wedge expansion") {
  // coefficients of d phi ^ d|z|^2 equal D_{i,j} phi via the sign table
  PolyHolo p(2);
  p.add_term(mi(1, 1), cxd(0.7, -0.2));
  p.add_term(mi(2, 0), 0.4);
  const Field f = p.to_field();
  for (int it = 0; it < 10; ++it) {
    const Point z = random_interior(2);
    const Jet j = f.jet(z);
    Form dphi(2), dz2(2);
    for (int k = 0; k < 2; ++k) {
      dphi += j.dz[k] * Form::dw(2, k);
      dz2 += std::conj(z[k]) * Form::dw(2, k);
    }
    const Form w = wedge(dphi, dz2);
    const cxd coef = w.coefficient(0b11, 0, 0);
    CHECK(std::abs(coef - d_tangential(f, 0, 1, z)) < 1e-14);
  }
}

TEST_CASE("radial derivative: Euler identity and constants") {
  PolyHolo p(2);
  p.add_term(mi(2, 1), 1.0);  // |alpha| = 3
  const Field f = p.to_field();
  const Point z = random_interior(2);
  CHECK(std::abs(radial(f, z) - 3.0 * f.value(z)) < 1e-13);
  CHECK(std::abs(radial(Field::constant(2, 5.0), z)) == 0.0);
  // Cauchy kernel radial derivative matches finite-difference R
  const Point w0{0.5, 0.2};
  const Field c = cauchy_power(w0, 1.0);
  Field cv = Field::value_only(2, [c](const Point& q) { return c.value(q); });
  CHECK(std::abs(radial(c, z) - radial(cv, z)) < 1e-6);
}

TEST_CASE("radial_lk: identity on constants, eigenvalues on monomials, Cauchy ladder") {
  const Point z = random_interior(2, 0.7);
  const Field one = Field::constant(2, 1.0);
  for (double l : {0.5, 1.0, 2.5})
    for (int k : {1, 2, 3}) CHECK(std::abs(radial_lk(one, l, k, z) - 1.0) < 1e-13);

  PolyHolo p(2);
  p.add_term(mi(1, 2), 1.0);  // |alpha| = 3
  const Field f = p.to_field();
  const double l = 1.5;
  const int k = 3;
  double eig = 1.0;
  for (int j = 0; j < k; ++j) eig *= (l + j + 3.0);
  eig /= pochhammer(l, k);
  CHECK(std::abs(radial_lk(f, l, k, z) - eig * f.value(z)) < 1e-12);

  // iterated first-order radial (value-only, k = 1 repeated) agrees for k = 1
  CHECK(std::abs(radial_lk(f, l, 1, z) - (l * f.value(z) + radial(f, z)) / l) < 1e-13);

  // R_n^{k-n} maps (1-<z,w0>)^{-n} to (1-<z,w0>)^{-k}
  const int n = 2, kk = 3;
  const Point w0{cxd(0.3, 0.3), -0.2};
  const cxd got = radial_lk(cauchy_power(w0, double(n)), double(n), kk - n, z);
  const cxd want = std::pow(1.0 - hdot(z, w0), -double(kk));
  CHECK(std::abs(got - want) < 1e-12);

  CHECK_THROWS_AS(radial_lk(one, -1.0, 1, z), std::invalid_argument);
}

TEST_CASE("radial_lk is linear") {
  const Point z = random_interior(2, 0.6);
  PolyHolo p(2), q(2);
  p.add_term(mi(1, 0), 1.0);
  q.add_term(mi(0, 2), cxd(0.0, 1.0));
  const Field fp = p.to_field(), fq = q.to_field();
  const cxd a(0.7, -0.1), b(1.3, 0.4);
  const cxd lhs = radial_lk(a * fp + b * fq, 2.0, 2, z);
  const cxd rhs = a * radial_lk(fp, 2.0, 2, z) + b * radial_lk(fq, 2.0, 2, z);
  CHECK(std::abs(lhs - rhs) < 1e-13);
}

TEST_CASE("grad_norms") {
  const Field z1 = Field::coordinate(2, 0);
  const Point zero(2);
  const auto [dp, dt] = grad_norms(z1, zero);
  CHECK(dp == 1.0);
  CHECK(dt == 0.0);
  const auto [cp, ct] = grad_norms(Field::constant(2, 2.0), zero);
  CHECK(cp == 0.0);
  CHECK(ct == 0.0);
  // |d_T f| <= 2 |z| |d f| pointwise on random polynomials
  PolyHolo p(2);
  p.add_term(mi(1, 1), 0.5);
  p.add_term(mi(0, 2), cxd(0.2, 0.3));
  const Field f = p.to_field();
  for (int it = 0; it < 50; ++it) {
    const Point z = random_interior(2);
    const auto [a, b] = grad_norms(f, z);
    CHECK(b <= 2.0 * absval(z) * a + 1e-12);
  }
}

TEST_CASE("dbar_fd: holomorphic fields and conjugates") {
  PolyHolo p(2);
  p.add_term(mi(2, 1), cxd(1.0, -0.5));
  const Field f = p.to_field();
  const Point z = random_interior(2, 0.8);
  for (const cxd& v : dbar_fd(f, z, 1e-4)) CHECK(std::abs(v) < 1e-8);

  const Field zb1 = conj(Field::coordinate(2, 0));
  const auto db = dbar_fd(zb1, z, 1e-4);
  CHECK(std::abs(db[0] - 1.0) < 1e-9);
  CHECK(std::abs(db[1]) < 1e-9);

  CHECK_THROWS_AS(dbar_fd(f, scale(0.99999, Point::basis(2, 0)), 1e-3), std::invalid_argument);
}

TEST_CASE("dbar of G_1 for corona data matches the symbolic form") {
  // g = (1 + z1/2, z2/2); G_1 = conj(g_1)/|g|^2
  PolyHolo g1(2), g2(2);
  g1.add_term(mi(0, 0), 1.0);
  g1.add_term(mi(1, 0), 0.5);
  g2.add_term(mi(0, 1), 0.5);
  const Field f1 = g1.to_field(), f2 = g2.to_field();
  const Field mod2 = f1 * conj(f1) + f2 * conj(f2);
  const Field G1 = conj(f1) * recip(mod2);
  for (int it = 0; it < 20; ++it) {
    const Point z = random_interior(2, 0.8);
    const Jet j = G1.jet(z);  // symbolic partials via the jet algebra
    const auto fd = dbar_fd(G1, z, 1e-4);
    for (int k = 0; k < 2; ++k) CHECK(std::abs(j.dzb[k] - fd[k]) < 1e-6);
  }
}
