#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "corona_lab/parallel.hpp"
#include "corona_lab/quad.hpp"

using namespace corona;

TEST_CASE("pairwise sum matches serial accumulation closely") {
  const std::size_t count = 100001;
  auto term = [](std::size_t i) { return std::sin(0.001 * static_cast<double>(i)); };
  const double par = map_reduce<double>(count, term);
  const double ser = map_reduce_serial<double>(count, term);
  CHECK(par == doctest::Approx(ser).epsilon(1e-13));
}

TEST_CASE("tree reduction is bit-identical across thread counts") {
  const std::size_t count = 54321;
  auto term = [](std::size_t i) {
    const double x = static_cast<double>(i) * 1e-3;
    return cxd(std::sin(x) / (1.0 + x), std::cos(3.0 * x));
  };
  omp_set_num_threads(1);
  const cxd one = map_reduce<cxd>(count, term);
  omp_set_num_threads(omp_get_max_threads());
  const cxd many = map_reduce<cxd>(count, term);
  CHECK(one.real() == many.real());
  CHECK(one.imag() == many.imag());
}

TEST_CASE("integrate parallel path equals serial reference within roundoff") {
  const QuadratureRule r = sphere_rule(2, 4);
  auto f = [](const Point& z) { return cxd(std::norm(z[0])) / (1.5 + z[1].real()); };
  const cxd a = integrate(r, f);
  const cxd b = integrate_serial(r, f);
  CHECK(std::abs(a - b) < 1e-12 * std::abs(a));
}
