#pragma once

#include "corona_lab/quad.hpp"
#include "corona_lab/types.hpp"

namespace corona {

/// |1 - <eta, zeta>|, the nonisotropic quasi-distance.
double pseudo_distance(const Point& zeta, const Point& eta);

/// Boundary ball I_{zeta,r} = { eta : |1 - <eta, zeta>| < r }.
struct NonisotropicBall {
  Point center;  // boundary point
  double radius = 0.0;

  NonisotropicBall(Point zeta, double r);
  bool contains(const Point& eta) const { return pseudo_distance(center, eta) < radius; }
};

/// z in Gamma_{zeta,alpha} iff |1 - <z, zeta>| < alpha (1 - |z|^2).
bool in_admissible(const Point& z, const Point& zeta, double alpha);

/// Tent over a boundary ball: T_alpha(A) = complement of the union of
/// Gamma_alpha(zeta) over zeta outside A.
struct Tent {
  NonisotropicBall base;
  double aperture = 1.0;

  Tent(NonisotropicBall b, double alpha = 1.0);
};

/// Exact largest quasi-distance from zeta0 to the boundary set
/// { zeta : |1 - <w, zeta>| < t }, w = a*omega. Used by in_tent; the 2-d
/// problem reduces to a line search over |<zeta, omega>|.
double sup_distance_over_slice(double a, const Point& omega, const Point& zeta0, double t);

/// Membership in the tent, decided by the analytic criterion: the set
/// { zeta : w in Gamma_alpha(zeta) } must be contained in the base ball.
bool in_tent(const Point& w, const Tent& tent);

/// Quadrature estimate of sigma(I) (rule on the sphere).
double set_measure(const NonisotropicBall& ball, const QuadratureRule& rule);

/// Quadrature estimate of nu(T) (rule on the ball).
double set_measure(const Tent& tent, const QuadratureRule& rule);

}  // namespace corona
