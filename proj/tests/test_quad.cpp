#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "corona_lab/quad.hpp"

using namespace corona;

namespace {
constexpr double kPi = std::numbers::pi;

cxd sphere_monomial(const Point& zeta, const MultiIndex& a, const MultiIndex& b) {
  cxd v = 1.0;
  for (int j = 0; j < zeta.dim(); ++j) {
    for (int e = 0; e < a.e[j]; ++e) v *= zeta[j];
    for (int e = 0; e < b.e[j]; ++e) v *= std::conj(zeta[j]);
  }
  return v;
}

// int_S |zeta^a|^2 dsigma = 2 pi^n a! / (n-1+|a|)!
double sphere_moment(int n, const MultiIndex& a) {
  double num = 2.0 * std::pow(kPi, n);
  for (int j = 0; j < n; ++j)
    for (int e = 2; e <= a.e[j]; ++e) num *= e;
  double den = 1.0;
  for (int e = 2; e <= n - 1 + a.order(); ++e) den *= e;
  return num / den;
}

// int_B |w^a|^2 (1-|w|^2)^k dnu = pi^n a! k! / (|a|+n+k)!
double ball_moment(int n, const MultiIndex& a, int k) {
  double num = std::pow(kPi, n);
  for (int j = 0; j < n; ++j)
    for (int e = 2; e <= a.e[j]; ++e) num *= e;
  for (int e = 2; e <= k; ++e) num *= e;
  double den = 1.0;
  for (int e = 2; e <= a.order() + n + k; ++e) den *= e;
  return num / den;
}
}  // namespace

TEST_CASE("sphere rule total measure") {
  for (int n = 1; n <= 3; ++n) {
    const QuadratureRule r = sphere_rule(n, 3);
    r.validate();
    CHECK(r.total_weight() == doctest::Approx(sphere_area(n)).epsilon(1e-12));
  }
}

TEST_CASE("sphere rule kills odd monomials and reproduces moments") {
  const QuadratureRule r = sphere_rule(2, 4);
  // odd monomial
  const cxd odd = integrate(r, [](const Point& z) { return z[0]; });
  CHECK(std::abs(odd) < 1e-13);
  const cxd mixed = integrate(r, [](const Point& z) { return z[0] * std::conj(z[1]); });
  CHECK(std::abs(mixed) < 1e-13);
  // |zeta_1|^2 on S^3 integrates to pi^2
  const cxd m1 = integrate(r, [](const Point& z) { return std::norm(z[0]); });
  CHECK(m1.real() == doctest::Approx(kPi * kPi).epsilon(1e-12));
  // higher moments vs closed form
  for (int a1 = 0; a1 <= 3; ++a1)
    for (int a2 = 0; a2 <= 2; ++a2) {
      const MultiIndex a = mi(a1, a2);
      const cxd v = integrate(r, [&](const Point& z) { return sphere_monomial(z, a, a); });
      CHECK(v.real() == doctest::Approx(sphere_moment(2, a)).epsilon(1e-10));
      CHECK(std::abs(v.imag()) < 1e-12);
    }
}

TEST_CASE("sphere rule n=3 moments") {
  const QuadratureRule r = sphere_rule(3, 3);
  const MultiIndex a = mi(1, 1, 1);
  const cxd v = integrate(r, [&](const Point& z) { return sphere_monomial(z, a, a); });
  CHECK(v.real() == doctest::Approx(sphere_moment(3, a)).epsilon(1e-10));
}

TEST_CASE("ball rule: volume and weighted moments") {
  SUBCASE("n=1 disk area and (1-|w|^2) moment") {
    const QuadratureRule r = ball_rule(1, 4);
    r.validate();
    CHECK(r.total_weight() == doctest::Approx(kPi).epsilon(1e-12));
    const cxd v = integrate(r, [](const Point& w) { return cxd(1.0 - abs2(w)); });
    CHECK(v.real() == doctest::Approx(kPi / 2.0).epsilon(1e-12));
  }
  SUBCASE("n=2 volume pi^2/2") {
    const QuadratureRule r = ball_rule(2, 3);
    CHECK(r.total_weight() == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-12));
    // (1-|w|^2)^2 |w_1|^2 moment
    const cxd v = integrate(r, [](const Point& w) {
      const double m2 = 1.0 - abs2(w);
      return cxd(m2 * m2 * std::norm(w[0]));
    });
    CHECK(v.real() == doctest::Approx(ball_moment(2, mi(1, 0), 2)).epsilon(1e-10));
  }
}

TEST_CASE("monte carlo agrees with tensor rules within 3 standard errors") {
  const std::size_t count = 200000;
  const QuadratureRule mc = mc_sphere_rule(2, count, 20240817);
  const QuadratureRule tr = sphere_rule(2, 5);
  // a couple of smooth integrands; standard error estimated from the MC sample
  auto run = [&](auto f) {
    double mean = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < mc.size(); ++i) {
      const double v = f(mc.nodes[i]);
      mean += v;
      sq += v * v;
    }
    mean /= count;
    const double var = sq / count - mean * mean;
    const double se = std::sqrt(var / count) * sphere_area(2);
    const double mc_val = mean * sphere_area(2);
    const double tr_val = integrate(tr, [&](const Point& z) { return cxd(f(z)); }).real();
    CHECK(std::abs(mc_val - tr_val) < 3.0 * se + 1e-9);
  };
  run([](const Point& z) { return std::norm(z[0]); });
  run([](const Point& z) { return std::exp(-abs2(scale(0.5, z))) * (1.0 + z[1].real()); });
  run([](const Point& z) { return 1.0 / std::abs(1.0 - 0.6 * z[0]); });
}

TEST_CASE("fixed seed gives bit-identical Monte Carlo nodes") {
  const QuadratureRule a = mc_ball_rule(2, 5000, 99);
  const QuadratureRule b = mc_ball_rule(2, 5000, 99);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (int j = 0; j < 2; ++j) {
      CHECK(a.nodes[i][j].real() == b.nodes[i][j].real());
      CHECK(a.nodes[i][j].imag() == b.nodes[i][j].imag());
    }
  }
}

TEST_CASE("cap rule: full-sphere focus and small caps") {
  const Point e1 = Point::basis(2, 0);
  const QuadratureRule full = cap_rule(2, e1, 2.0, 3);
  full.validate();
  CHECK(full.total_weight() == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-8));

  // sigma(I_{e1,delta}) ~ delta^2 scaling window for small caps (n = 2)
  const double s1 = cap_rule(2, e1, 0.02, 3).total_weight();
  const double s2 = cap_rule(2, e1, 0.04, 3).total_weight();
  CHECK(s2 / s1 == doctest::Approx(4.0).epsilon(0.05));

  // integrating a power of the distance to the center: compare against the
  // 1-d radial oracle int rho^{a} dsigma(I_rho) for a = -1 on a small cap
  const double delta = 0.05;
  const QuadratureRule cap = cap_rule(2, e1, delta, 4);
  const double mass = integrate(cap, [&](const Point& eta) {
                        return cxd(1.0 / std::abs(1.0 - std::conj(eta[0]))); // distance^{-1}
                      }).real();
  CHECK(mass > 0.0);
  // doubling the cap radius should scale the mass like delta^{n+a} = delta
  const QuadratureRule cap2 = cap_rule(2, e1, 2.0 * delta, 4);
  const double mass2 = integrate(cap2, [&](const Point& eta) {
                         return cxd(1.0 / std::abs(1.0 - std::conj(eta[0])));
                       }).real();
  CHECK(mass2 / mass == doctest::Approx(2.0).epsilon(0.08));
}

TEST_CASE("refinement improves smooth integrands") {
  double prev = 1e9;
  const double target = kPi * kPi; // |zeta1|^2 moment
  for (int level : {2, 4, 6}) {
    const QuadratureRule r = sphere_rule(2, level);
    const double v = integrate(r, [](const Point& z) {
                       return cxd(std::norm(z[0]) + 0.3 * std::cos(z[1].real()));
                     }).real();
    (void)v;
    const double err = std::abs(integrate(r, [](const Point& z) {
                                  return cxd(std::norm(z[0]));
                                }).real() - target);
    CHECK(err <= prev + 1e-14);
    prev = err;
  }
}

TEST_CASE("integrate reports the failing node") {
  const QuadratureRule r = sphere_rule(1, 2);
  CHECK_THROWS_WITH_AS(
      integrate(r, [](const Point&) -> cxd { throw std::runtime_error("boom"); }),
      doctest::Contains("node"), std::runtime_error);
  CHECK_THROWS_AS(integrate(QuadratureRule{}, [](const Point&) { return cxd(0.0); }),
                  std::invalid_argument);
}
