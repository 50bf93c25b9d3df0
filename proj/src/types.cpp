#include "corona_lab/types.hpp"

#include <cmath>
#include <cstdio>

namespace corona {

void Point::check_in_ball() const {
  // Small slack so that points produced by arithmetic on ball points
  // (Moebius maps, radius grids) are not rejected for roundoff.
  if (abs2(*this) > 1.0 + 1e-9)
    throw std::invalid_argument("Point: outside the closed unit ball");
}

std::string format_complex(cxd v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", v.real(), v.imag());
  return buf;
}

}  // namespace corona
