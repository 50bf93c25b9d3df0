// Times the OpenMP kernel paths against their serial references on a
// representative singular integrand. Run manually: ./bench_reduce [level]
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "corona_lab/kernels.hpp"
#include "corona_lab/parallel.hpp"
#include "corona_lab/quad.hpp"

using namespace corona;
using clock_type = std::chrono::steady_clock;

namespace {
double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}
}  // namespace

int main(int argc, char** argv) {
  const int level = argc > 1 ? std::atoi(argv[1]) : 4;
  const QuadratureRule ball = ball_rule(2, level);
  const Point z{0.7, cxd(0.0, 0.45)};
  const LParams lp{2.0, 3.0, 0.0};
  const Field one = Field::constant(2, 1.0);

  std::printf("nodes: %zu, threads: %d\n", ball.size(), omp_get_max_threads());

  auto term = [&](std::size_t i) {
    return ball.weights[i] * l_kernel(lp, ball.nodes[i], z);
  };

  const int reps = 40;
  // warm up and check agreement
  const double par0 = map_reduce<double>(ball.size(), term);
  const double ser0 = map_reduce_serial<double>(ball.size(), term);
  std::printf("parallel %.15g  serial %.15g  |diff| %.3g\n", par0, ser0, std::abs(par0 - ser0));

  auto t0 = clock_type::now();
  double sink = 0.0;
  for (int r = 0; r < reps; ++r) sink += map_reduce<double>(ball.size(), term);
  const double tp = seconds_since(t0) / reps;

  t0 = clock_type::now();
  for (int r = 0; r < reps; ++r) sink += map_reduce_serial<double>(ball.size(), term);
  const double ts = seconds_since(t0) / reps;

  std::printf("map_reduce (omp):    %8.3f ms/run\n", 1e3 * tp);
  std::printf("map_reduce (serial): %8.3f ms/run\n", 1e3 * ts);
  std::printf("speedup: %.2fx   (sink %g)\n", ts / tp, sink);
  return 0;
}
