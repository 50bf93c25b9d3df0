#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "corona_lab/fitting.hpp"
#include "corona_lab/weights.hpp"

using namespace corona;

namespace {
const Point e1 = Point::basis(2, 0);

std::vector<Point> probe_ray(double from, double to, int count) {
  std::vector<Point> out;
  for (int i = 0; i < count; ++i) {
    const double u = from + (to - from) * i / (count - 1);
    out.push_back(scale(1.0 - u, e1));  // u = 1 - t
  }
  return out;
}
}  // namespace

TEST_CASE("average of the constant weight is exactly one") {
  const Weight w = Weight::constant(2, 1.0);
  for (const Point& z : {Point(2), scale(0.5, e1), scale(0.99, e1), Point{cxd(0.2, 0.3), 0.4}})
    CHECK(w.average(z, 3) == doctest::Approx(1.0).epsilon(1e-14));
  const Weight w2 = Weight::constant(2, 2.0);
  CHECK(w2.average(scale(0.7, e1), 3) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("power weight average has the boundary exponent a") {
  for (double a : {0.7, -0.5}) {
    const Weight w = Weight::power(e1, a);
    std::vector<double> xs, ys;
    for (double omt : {0.1, 0.01, 0.001}) {
      const double t = 1.0 - omt;
      xs.push_back(std::log(1.0 - t * t));
      ys.push_back(std::log(w.average(scale(t, e1), 4)));
    }
    const double slope = fit_line(xs, ys).slope;
    CHECK(slope == doctest::Approx(a).epsilon(0.12));
  }
}

TEST_CASE("ap_constant: constant weight gives exactly 1, p <= 1 rejected") {
  const Weight w = Weight::constant(2, 1.0);
  const std::vector<Point> samples = probe_ray(0.5, 0.01, 6);
  for (double p : {1.5, 2.0, 3.0}) {
    const ApReport rep = ap_constant(w, p, samples, 3);
    CHECK(rep.constant == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(ap_constant(w, 1.0, samples, 3), std::invalid_argument);
  CHECK_THROWS_AS(ap_constant(w, 2.0, {}, 3), std::invalid_argument);
}

TEST_CASE("Hoelder floor holds at every sample") {
  const Weight w = Weight::power(e1, 0.9);
  for (const Point& z : probe_ray(0.3, 0.001, 8)) {
    const auto [avg, dual] = w.average_pair(z, 2.0, 3);
    CHECK(std::sqrt(avg) * std::sqrt(dual) >= 1.0 - 1e-6);
  }
}

TEST_CASE("A_p duality between theta and its dual weight") {
  const double p = 1.5, pp = 3.0;
  const Weight w = Weight::power(e1, 0.6);
  const Weight wd = w.dual(p);
  const std::vector<Point> samples = probe_ray(0.4, 0.01, 5);
  const double c1 = ap_constant(w, p, samples, 3).constant;
  const double c2 = ap_constant(wd, pp, samples, 3).constant;
  CHECK(c1 == doctest::Approx(c2).epsilon(1e-10));
}

TEST_CASE("p = 2 dual weight is 1/theta pointwise") {
  const Weight w = Weight::power(e1, 0.8);
  const Weight wd = w.dual(2.0);
  for (const Point& zeta :
       {Point{cxd(0.6, 0.0), 0.8}, Point{cxd(0.0, 1.0), 0.0}, Point{-0.28, cxd(0.0, 0.96)}}) {
    const double prod = w.density(zeta) * wd.density(zeta);
    CHECK(prod == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("power weights: A_p estimate stabilizes inside the range, diverges outside") {
  const double p = 2.0;  // range a in (-2, 2) for n = 2
  const std::vector<Point> coarse = probe_ray(0.1, 0.01, 4);
  std::vector<Point> fine = probe_ray(0.1, 0.01, 4);
  for (double u : {1e-3, 1e-4}) fine.push_back(scale(1.0 - u, e1));

  SUBCASE("inside") {
    for (double a : {-1.0, 1.0}) {
      const Weight w = Weight::power(e1, a);
      const double c0 = ap_constant(w, p, coarse, 4).constant;
      const double c1 = ap_constant(w, p, fine, 4).constant;
      CHECK(c1 <= c0 * 3.0);
    }
  }
  SUBCASE("outside") {
    for (double a : {-2.5, 3.0}) {
      const Weight w = Weight::power(e1, a);
      const double c0 = ap_constant(w, p, coarse, 4).constant;
      const double c1 = ap_constant(w, p, fine, 4).constant;
      CHECK(c1 >= 10.0 * c0);
    }
  }
}

TEST_CASE("a1_constant basics and A_1 subset A_p") {
  const Weight one = Weight::constant(2, 1.0);
  std::vector<Point> bd = {e1, Point{cxd(0.0, 1.0), 0.0}, Point{0.6, 0.8},
                           Point{cxd(-0.6, 0.0), cxd(0.0, 0.8)}};
  std::vector<double> radii = {0.0, 0.3, 0.6, 0.9, 0.99};
  CHECK(a1_constant(one, bd, radii, 3) == doctest::Approx(1.0).epsilon(1e-12));

  // maximal function dominates the weight pointwise: constant >= 1
  const Weight bump = Weight::power(e1, -0.4);
  std::vector<Point> bd2 = {Point{cxd(0.0, 1.0), 0.0}, Point{0.6, 0.8}, Point{0.0, 1.0}};
  const double a1 = a1_constant(bump, bd2, radii, 4);
  CHECK(a1 >= 1.0 - 1e-9);
  CHECK(a1 < 100.0);
  // A_1 weight lies in every A_p
  for (double p : {1.5, 2.0, 3.0}) {
    const double c = ap_constant(bump, p, probe_ray(0.1, 1e-4, 6), 4).constant;
    CHECK(c < 20.0);
  }
  // zero-density sample is an error
  const Weight w0 = Weight::power(e1, 1.0);
  CHECK_THROWS_AS(a1_constant(w0, {e1}, radii, 3), std::invalid_argument);
}

TEST_CASE("doubling exponents") {
  std::vector<std::pair<Point, double>> samples;
  for (double r : {0.004, 0.01, 0.03, 0.08, 0.2}) samples.emplace_back(e1, r);

  SUBCASE("Lebesgue doubling of I-balls has lambda = n") {
    const DoublingFit fit = doubling(Weight::constant(2, 1.0), samples, 4);
    CHECK(fit.lambda == doctest::Approx(2.0).epsilon(0.05));
    CHECK(fit.C >= 1.0);
  }
  SUBCASE("power weight centered at the probe point has lambda = n + a") {
    for (double a : {0.8, -0.7}) {
      const DoublingFit fit = doubling(Weight::power(e1, a), samples, 4);
      CHECK(fit.lambda == doctest::Approx(2.0 + a).epsilon(0.07));
    }
  }
  SUBCASE("lambda < np for weights with finite A_p") {
    const double p = 2.0;
    for (double a : {-1.0, 0.5, 1.0}) {
      const DoublingFit fit = doubling(Weight::power(e1, a), samples, 4);
      CHECK(fit.lambda < 2.0 * p + 0.2);
    }
  }
  SUBCASE("degenerate fit is an error") {
    CHECK_THROWS_AS(doubling(Weight::constant(2, 1.0), {{e1, 0.1}}, 3), std::invalid_argument);
  }
}

TEST_CASE("average is continuous along radii") {
  const Weight w = Weight::power(e1, 0.5);
  const Point zeta{0.6, 0.8};
  double prev = w.average(scale(0.50, zeta), 4);
  for (double t : {0.502, 0.5005, 0.5001}) {
    const double cur = w.average(scale(t, zeta), 4);
    CHECK(std::abs(cur - prev) < 0.05 * (std::abs(prev) + 1e-12));
    prev = cur;
  }
}

TEST_CASE("weight specs round-trip through from_spec") {
  WeightSpec s;
  s.kind = WeightSpec::Kind::Product;
  WeightSpec c, pw;
  c.kind = WeightSpec::Kind::Constant;
  c.value = 2.0;
  pw.kind = WeightSpec::Kind::Power;
  pw.exponent = 0.5;
  pw.eta0 = e1;
  s.factors = {c, pw};
  const Weight w = Weight::from_spec(2, s);
  const Point zeta{cxd(0.0, 1.0), 0.0};
  CHECK(w.density(zeta) ==
        doctest::Approx(2.0 * std::pow(std::abs(1.0 - hdot(zeta, e1)), 0.5)).epsilon(1e-12));
  CHECK(w.spec().describe().find("product") == 0);
}
