#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "corona_lab/carleson.hpp"
#include "corona_lab/spaces.hpp"

using namespace corona;

namespace {
const Point e1 = Point::basis(2, 0);

std::vector<PolyHolo> standard_g() {
  PolyHolo g1(2), g2(2);
  g1.add_term(mi(0, 0), 1.0);
  g1.add_term(mi(1, 0), 0.5);
  g2.add_term(mi(0, 1), 0.5);
  return {g1, g2};
}

std::vector<Point> probe_zs() {
  return {scale(0.9, e1), scale(0.99, e1), scale(0.999, e1)};
}
}  // namespace

TEST_CASE("mu_g_theta density") {
  const Weight one = Weight::constant(2, 1.0);

  SUBCASE("constant generators give the zero measure") {
    PolyHolo c1 = PolyHolo::constant(2, 1.0), c2 = PolyHolo::constant(2, cxd(0.0, 2.0));
    const MeasureField mu = mu_g_theta({c1, c2}, one, 2);
    CHECK(mu.density.value(Point{0.3, 0.2}).real() == 0.0);
  }

  SUBCASE("g = (z1): density matches the hand expansion") {
    const MeasureField mu = mu_g_theta({PolyHolo::coordinate(2, 0)}, one, 3);
    for (const Point& w : {Point{0.3, 0.2}, Point{cxd(0.1, 0.4), cxd(-0.2, 0.3)}}) {
      // |dg| = 1, |d_T g| = |wbar_2|; Theta = 1
      const double expect = (1.0 - abs2(w)) + std::norm(w[1]);
      CHECK(mu.density.value(w).real() == doctest::Approx(expect).epsilon(1e-9));
    }
  }

  SUBCASE("doubling theta doubles the density") {
    const Weight two = Weight::constant(2, 2.0);
    const MeasureField a = mu_g_theta(standard_g(), one, 3);
    const MeasureField b = mu_g_theta(standard_g(), two, 3);
    const Point w{0.4, cxd(0.1, -0.3)};
    CHECK(b.density.value(w).real() ==
          doctest::Approx(2.0 * a.density.value(w).real()).epsilon(1e-9));
  }
}

TEST_CASE("radial density family: stable for t >= 0, divergent for t = -0.5") {
  const Weight one = Weight::constant(2, 1.0);
  auto ratios = [&](double t) {
    const MeasureField mu = MeasureField::radial_power(2, t);
    const CarlesonReport rep = carleson_constant(mu, one, probe_zs(), 1.0, 3);
    std::vector<double> r;
    for (const auto& [z, v] : rep.ratios) r.push_back(v);
    return r;
  };

  SUBCASE("t = 0: bounded ratios, stable across depths") {
    const auto r = ratios(0.0);
    const double hi = std::max({r[0], r[1], r[2]});
    const double lo = std::min({r[0], r[1], r[2]});
    CHECK(hi / lo < 3.0);
  }
  SUBCASE("t = 0.5 and t = 1: ratios shrink toward the boundary (still Carleson)") {
    for (double t : {0.5, 1.0}) {
      const auto r = ratios(t);
      CHECK(r[2] <= r[0] * 1.1);
      CHECK(r[2] >= 0.0);
    }
  }
  SUBCASE("t = -0.5: ratio grows like (1-|z|^2)^{-1/2}") {
    const auto r = ratios(-0.5);
    CHECK(r[1] / r[0] > 2.0);  // one decade deeper: sqrt(10) growth expected
    CHECK(r[2] / r[1] > 2.0);
  }
}

TEST_CASE("mu_{g,theta} is Carleson for the standard generators") {
  const std::vector<PolyHolo> g = standard_g();
  for (double a : {0.0, 0.7}) {
    const Weight th = a == 0.0 ? Weight::constant(2, 1.0) : Weight::power(e1, a);
    const MeasureField mu = mu_g_theta(g, th, 2);
    const CarlesonReport rep = carleson_constant(mu, th, probe_zs(), 1.0, 2);
    std::vector<double> r;
    for (const auto& [z, v] : rep.ratios) r.push_back(v);
    const double hi = std::max({r[0], r[1], r[2]});
    const double lo = std::min({r[0], r[1], r[2]});
    CHECK(lo > 0.0);
    CHECK(hi / lo < 5.0);
  }
}

TEST_CASE("carleson_constant is monotone in the density") {
  const Weight one = Weight::constant(2, 1.0);
  const MeasureField small = MeasureField::radial_power(2, 1.0);
  // pointwise larger density
  const MeasureField big(2, Field::value_only(2, [](const Point& w) {
                           return cxd(1.0 + 2.0 * (1.0 - abs2(w)) * 0.0 + 1.0);
                         }));
  const std::vector<Point> zs = {scale(0.9, e1), scale(0.97, e1)};
  const double cs = carleson_constant(small, one, zs, 1.0, 3).constant;
  const double cb = carleson_constant(big, one, zs, 1.0, 3).constant;
  CHECK(cb >= cs);
}

TEST_CASE("embedding check against the f_z family cross-validates the tent condition") {
  const Weight one = Weight::constant(2, 1.0);
  const QuadratureRule sphere = cap_rule(2, e1, 2.0, 4);
  const QuadratureRule ball = focused_ball_rule(2, e1, 3);

  SUBCASE("zero measure embeds with constant 0") {
    const MeasureField zero(2, Field::constant(2, 0.0));
    CHECK(embedding_check(zero, one, 2.0, {Field::constant(2, 1.0)}, ball, sphere, 8) == 0.0);
  }

  SUBCASE("t-family: finite together with the tent constant, divergent for t = -0.5") {
    std::vector<Field> tests;
    tests.push_back(Field::constant(2, 1.0));
    for (double omt : {0.1, 0.01, 0.001}) tests.push_back(cauchy_power(scale(1.0 - omt, e1), 2.0));

    for (double t : {0.0, 0.5, 1.0}) {
      const MeasureField mu = MeasureField::radial_power(2, t);
      const double c = embedding_check(mu, one, 2.0, tests, ball, sphere, 12);
      CHECK(c < 50.0);
    }
    // t = -0.5: ratio grows as the test function concentrates
    const MeasureField bad = MeasureField::radial_power(2, -0.5);
    std::vector<double> growth;
    for (double omt : {0.1, 0.001}) {
      const Field fz = cauchy_power(scale(1.0 - omt, e1), 2.0);
      growth.push_back(embedding_check(bad, one, 2.0, {fz}, ball, sphere, 12));
    }
    CHECK(growth[1] > 4.0 * growth[0]);
  }
}

TEST_CASE("Poisson embedding for mu_{g,theta} (estKw12)") {
  const Weight one = Weight::constant(2, 1.0);
  const MeasureField mu = mu_g_theta(standard_g(), one, 2);
  const QuadratureRule sphere = sphere_rule(2, 3);
  const QuadratureRule ball = ball_rule(2, 2);
  std::vector<Field> data;
  data.push_back(Field::constant(2, 1.0));
  data.push_back(Field::value_only(2, [](const Point& z) { return cxd(1.0 + z[0].real()); }));
  const double c = poisson_embedding_check(mu, one, data, ball, sphere);
  CHECK(c > 0.0);
  CHECK(c < 10.0);
}
