#pragma once

#include <vector>

#include "corona_lab/ball.hpp"
#include "corona_lab/corona.hpp"
#include "corona_lab/fields.hpp"
#include "corona_lab/quad.hpp"
#include "corona_lab/weights.hpp"

namespace corona {

/// Measure on B given by a nonnegative density against nu.
struct MeasureField {
  int n = 2;
  Field density;

  MeasureField(int dim, Field d) : n(dim), density(std::move(d)) {}
  static MeasureField radial_power(int n, double t);  // density (1-|w|^2)^{t-1}
};

/// d mu_{g,theta} = Theta(z) [(1-|z|^2)|dg|^2 + |d_T g|^2] d nu, with
/// |dg| = sum_j |d g_j| over the generators.
MeasureField mu_g_theta(const std::vector<PolyHolo>& g, const Weight& theta, int avg_level);

/// Ball rule concentrated on the Carleson box over I_{zeta, safety*r}:
/// cap nodes times radial nodes with 1-|w|^2 < safety*r.
QuadratureRule tent_local_rule(int n, const Point& zeta, double r, double safety, int level);

/// Full-ball rule with angular nodes focused at a boundary point (for
/// integrands concentrating near zeta0).
QuadratureRule focused_ball_rule(int n, const Point& zeta0, int level);

/// mu(T) with the tent membership predicate applied to the local rule.
double tent_mass(const MeasureField& mu, const Tent& tent, const QuadratureRule& local_rule);

struct CarlesonReport {
  double constant = 0.0;
  std::vector<std::pair<Point, double>> ratios;  // per sampled z: mu(tent_z)/theta(I_z)
};

/// max over sampled interior z of mu(hat I_z) / theta(I_z).
CarlesonReport carleson_constant(const MeasureField& mu, const Weight& theta,
                                 const std::vector<Point>& zs, double aperture, int level);

/// max over test functions of (int |f|^p dmu) / ||f||_{H^p(theta)}^p.
double embedding_check(const MeasureField& mu, const Weight& theta, double p,
                       const std::vector<Field>& tests, const QuadratureRule& ball,
                       const QuadratureRule& sphere, int radii_k);

/// Poisson-extension variant: max of (int |P(phi)|^2 dmu) / ||phi||_{L^2(theta)}^2.
double poisson_embedding_check(const MeasureField& mu, const Weight& theta,
                               const std::vector<Field>& boundary_data,
                               const QuadratureRule& ball, const QuadratureRule& sphere);

}  // namespace corona
