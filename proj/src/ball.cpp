#include "corona_lab/ball.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace corona {

namespace {
constexpr double kPi = std::numbers::pi;

double wrap_pi(double a) {
  while (a > kPi) a -= 2.0 * kPi;
  while (a < -kPi) a += 2.0 * kPi;
  return a;
}
}  // namespace

double pseudo_distance(const Point& zeta, const Point& eta) {
  require_same_dim(zeta, eta, "pseudo_distance");
  return std::abs(1.0 - hdot(eta, zeta));
}

NonisotropicBall::NonisotropicBall(Point zeta, double r) : center(std::move(zeta)), radius(r) {
  require_boundary(center, "NonisotropicBall");
  if (!(r > 0.0)) throw std::invalid_argument("NonisotropicBall: radius must be positive");
}

bool in_admissible(const Point& z, const Point& zeta, double alpha) {
  require_same_dim(z, zeta, "in_admissible");
  require_boundary(zeta, "in_admissible");
  if (!(alpha >= 1.0)) throw std::invalid_argument("in_admissible: alpha must be >= 1");
  return std::abs(1.0 - hdot(z, zeta)) < alpha * (1.0 - abs2(z));
}

Tent::Tent(NonisotropicBall b, double alpha) : base(std::move(b)), aperture(alpha) {
  if (!(alpha >= 1.0)) throw std::invalid_argument("Tent: aperture must be >= 1");
}

namespace {

// Given r = |y| with y = <zeta, omega>, the feasible arguments of y satisfy
// cos(theta) >= (a^2 r^2 + 1 - t^2) / (2 a r). The objective
// |1 - conj(c) y| + s sqrt(1 - r^2) is maximized over theta at the feasible
// angle nearest to arg(c) + pi or at an endpoint of the feasible arc.
double best_over_arc(double r, double theta_max, cxd c, double s_perp) {
  const double tail = s_perp * std::sqrt(std::max(0.0, 1.0 - r * r));
  double best = 0.0;
  const double target = wrap_pi(std::arg(c) + kPi);
  for (double th : {-theta_max, theta_max, std::clamp(target, -theta_max, theta_max)}) {
    const cxd y = r * cxd(std::cos(th), std::sin(th));
    best = std::max(best, std::abs(1.0 - std::conj(c) * y) + tail);
  }
  return best;
}

double slice_value(double r, double a, double t, cxd c, double s_perp) {
  if (r <= 0.0) {
    // y = 0 feasible iff 1 <= t
    if (t < 1.0) return -1.0;
    return std::abs(cxd(1.0)) + s_perp;
  }
  const double cos_min = (a * a * r * r + 1.0 - t * t) / (2.0 * a * r);
  if (cos_min > 1.0) return -1.0;  // slice empty
  const double theta_max = std::acos(std::clamp(cos_min, -1.0, 1.0));
  return best_over_arc(r, theta_max, c, s_perp);
}

}  // namespace

double sup_distance_over_slice(double a, const Point& omega, const Point& zeta0, double t) {
  const int n = omega.dim();
  const cxd c = hdot(zeta0, omega);
  const double s_perp = (n >= 2) ? std::sqrt(std::max(0.0, 1.0 - std::norm(c))) : 0.0;

  if (n == 1) {
    // zeta = e^{i theta'} omega; feasibility: |1 - a e^{-i theta'}| <= t
    const double cos_min = (1.0 + a * a - t * t) / (2.0 * a);
    if (cos_min > 1.0) return -1.0;
    const double theta_max = std::acos(std::clamp(cos_min, -1.0, 1.0));
    return best_over_arc(1.0, theta_max, c, 0.0);
  }

  const double r_lo = std::max(0.0, (1.0 - t) / a);
  const double r_hi = std::min(1.0, (1.0 + t) / a);
  if (r_hi < r_lo) return -1.0;

  double best = -1.0, best_r = r_lo;
  const int grid = 256;
  for (int i = 0; i <= grid; ++i) {
    const double r = r_lo + (r_hi - r_lo) * i / grid;
    const double v = slice_value(r, a, t, c, s_perp);
    if (v > best) {
      best = v;
      best_r = r;
    }
  }
  double span = (r_hi - r_lo) / grid;
  for (int round = 0; round < 3; ++round) {
    const double lo = std::max(r_lo, best_r - span), hi = std::min(r_hi, best_r + span);
    for (int i = 0; i <= 32; ++i) {
      const double r = lo + (hi - lo) * i / 32;
      const double v = slice_value(r, a, t, c, s_perp);
      if (v > best) {
        best = v;
        best_r = r;
      }
    }
    span /= 16.0;
  }
  return best;
}

bool in_tent(const Point& w, const Tent& tent) {
  require_same_dim(w, tent.base.center, "in_tent");
  if (absval(w) >= 1.0) throw std::invalid_argument("in_tent: point not in the open ball");
  const double a = absval(w);
  const double t = tent.aperture * (1.0 - a * a);

  if (a == 0.0) {
    // S_0 = { zeta : 1 < alpha }: empty iff alpha <= 1, otherwise the full sphere.
    if (t <= 1.0) return true;
    return tent.base.radius > 2.0;
  }
  if (t <= 1.0 - a) return true;       // admissible preimage empty
  if (t >= 1.0 + a) return tent.base.radius > 2.0;  // preimage is the full sphere

  const Point omega = scale(1.0 / a, w);
  const double m = sup_distance_over_slice(a, omega, tent.base.center, t);
  return m < tent.base.radius;
}

double set_measure(const NonisotropicBall& ball, const QuadratureRule& rule) {
  if (rule.nodes.empty()) throw std::invalid_argument("set_measure: empty rule");
  if (rule.domain != Domain::Sphere || rule.n != ball.center.dim())
    throw std::invalid_argument("set_measure: rule domain does not match the region");
  return integrate(rule, [&](const Point& eta) { return ball.contains(eta) ? cxd(1.0) : cxd(0.0); })
      .real();
}

double set_measure(const Tent& tent, const QuadratureRule& rule) {
  if (rule.nodes.empty()) throw std::invalid_argument("set_measure: empty rule");
  if (rule.domain != Domain::Ball || rule.n != tent.base.center.dim())
    throw std::invalid_argument("set_measure: rule domain does not match the region");
  return integrate(rule, [&](const Point& w) { return in_tent(w, tent) ? cxd(1.0) : cxd(0.0); })
      .real();
}

}  // namespace corona
