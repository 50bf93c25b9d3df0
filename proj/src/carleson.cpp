#include "corona_lab/carleson.hpp"

#include <cmath>

#include "corona_lab/spaces.hpp"

namespace corona {

MeasureField MeasureField::radial_power(int n, double t) {
  return MeasureField(n, Field::value_only(n, [t](const Point& w) {
                        return cxd(std::pow(1.0 - abs2(w), t - 1.0));
                      }));
}

MeasureField mu_g_theta(const std::vector<PolyHolo>& g, const Weight& theta, int avg_level) {
  if (g.empty()) throw std::invalid_argument("mu_g_theta: no generators");
  const int n = g[0].dim();
  std::vector<Field> gf;
  for (const PolyHolo& p : g) gf.push_back(p.to_field());
  Weight th = theta;  // shared average cache
  Field dens = Field::value_only(n, [gf, th, avg_level, n](const Point& w) {
    double dg = 0.0, dtg = 0.0;
    for (const Field& f : gf) {
      const auto [a, b] = grad_norms(f, w);
      dg += a;
      dtg += b;
    }
    const double m2 = 1.0 - abs2(w);
    return cxd(th.average(w, avg_level) * (m2 * dg * dg + dtg * dtg));
  });
  return MeasureField(n, dens);
}

QuadratureRule tent_local_rule(int n, const Point& zeta, double r, double safety, int level) {
  require_boundary(zeta, "tent_local_rule", 1e-9);
  const double depth = std::min(1.0, safety * r);
  // smooth angular integrands: shallow grading suffices
  const QuadratureRule cap = cap_rule(n, zeta, std::min(2.0, safety * r), level, 6);
  QuadratureRule rule;
  rule.n = n;
  rule.domain = Domain::Ball;
  rule.provenance = "tentlocal(level=" + std::to_string(level) + ",r=" + std::to_string(r) + ")";
  // t = |w|^2 in [1-depth, 1), panels graded toward t = 1
  std::vector<double> ux, uw;
  graded_panels01(depth, level + 1, 10, ux, uw);
  for (std::size_t iu = 0; iu < ux.size(); ++iu) {
    const double t = 1.0 - ux[iu];
    if (t <= 0.0) continue;
    const double rad = std::sqrt(t);
    const double wrad = 0.5 * std::pow(t, n - 1) * uw[iu];
    for (std::size_t is = 0; is < cap.size(); ++is) {
      rule.nodes.push_back(scale(rad, cap.nodes[is]));
      rule.weights.push_back(wrad * cap.weights[is]);
    }
  }
  return rule;
}

QuadratureRule focused_ball_rule(int n, const Point& zeta0, int level) {
  const QuadratureRule cap = cap_rule(n, zeta0, 2.0, level);
  QuadratureRule rule;
  rule.n = n;
  rule.domain = Domain::Ball;
  rule.provenance = "focusedball(level=" + std::to_string(level) + ")";
  std::vector<double> ux, uw;
  graded_panels01(1.0, level + 2, std::max(8, level), ux, uw);
  for (std::size_t iu = 0; iu < ux.size(); ++iu) {
    const double t = 1.0 - ux[iu];
    if (t <= 0.0) continue;
    const double rad = std::sqrt(t);
    const double wrad = 0.5 * std::pow(t, n - 1) * uw[iu];
    for (std::size_t is = 0; is < cap.size(); ++is) {
      rule.nodes.push_back(scale(rad, cap.nodes[is]));
      rule.weights.push_back(wrad * cap.weights[is]);
    }
  }
  return rule;
}

double tent_mass(const MeasureField& mu, const Tent& tent, const QuadratureRule& local_rule) {
  return integrate(local_rule, [&](const Point& w) {
    if (!in_tent(w, tent)) return cxd(0.0);
    return cxd(mu.density.value(w).real());
  }).real();
}

CarlesonReport carleson_constant(const MeasureField& mu, const Weight& theta,
                                 const std::vector<Point>& zs, double aperture, int level) {
  if (zs.empty()) throw std::invalid_argument("carleson_constant: no sampled tents");
  CarlesonReport rep;
  for (const Point& z : zs) {
    const double a = absval(z);
    if (!(a > 0.0) || a >= 1.0)
      throw std::invalid_argument("carleson_constant: samples must be interior and nonzero");
    const Point zeta = scale(1.0 / a, z);
    const double r = 1.0 - a * a;
    const Tent tent(NonisotropicBall(zeta, r), aperture);
    const QuadratureRule local = tent_local_rule(mu.n, zeta, r, 4.0 * aperture, level);
    const double m = tent_mass(mu, tent, local);
    const double tm = theta.ball_mass(zeta, r, level);
    if (!(tm > 0.0)) throw std::runtime_error("carleson_constant: theta(I_z) vanishes");
    rep.ratios.emplace_back(z, m / tm);
    rep.constant = std::max(rep.constant, m / tm);
  }
  return rep;
}

double embedding_check(const MeasureField& mu, const Weight& theta, double p,
                       const std::vector<Field>& tests, const QuadratureRule& ball,
                       const QuadratureRule& sphere, int radii_k) {
  if (tests.empty()) throw std::invalid_argument("embedding_check: no test functions");
  double best = 0.0;
  const std::vector<double> radii = dyadic_radii(radii_k);
  for (const Field& f : tests) {
    const double num = integrate(ball, [&](const Point& w) {
                         return cxd(std::pow(std::abs(f.value(w)), p) * mu.density.value(w).real());
                       }).real();
    const double den = std::pow(hardy_norm(f, p, theta, radii, sphere), p);
    best = std::max(best, num / den);
  }
  return best;
}

double poisson_embedding_check(const MeasureField& mu, const Weight& theta,
                               const std::vector<Field>& boundary_data,
                               const QuadratureRule& ball, const QuadratureRule& sphere) {
  if (boundary_data.empty()) throw std::invalid_argument("poisson_embedding_check: no data");
  double best = 0.0;
  for (const Field& phi : boundary_data) {
    const double num = integrate(ball, [&](const Point& w) {
                         const double pv = poisson_szego(phi, w, sphere);
                         return cxd(pv * pv * mu.density.value(w).real());
                       }).real();
    const double den = integrate(sphere, [&](const Point& zeta) {
                         return cxd(std::norm(phi.value(zeta)) * theta.density(zeta));
                       }).real();
    best = std::max(best, num / den);
  }
  return best;
}

}  // namespace corona
