#include "corona_lab/spaces.hpp"

#include <algorithm>
#include <cmath>

#include "corona_lab/ball.hpp"

namespace corona {

std::vector<double> dyadic_radii(int kmax) {
  std::vector<double> r;
  for (int k = 1; k <= kmax; ++k) r.push_back(1.0 - std::pow(2.0, -k));
  return r;
}

double hardy_norm(const Field& f, double p, const Weight& theta, const std::vector<double>& radii,
                  const QuadratureRule& sphere) {
  if (radii.empty()) throw std::invalid_argument("hardy_norm: empty radius grid");
  double best = 0.0;
  for (double r : radii) {
    if (!(r > 0.0) || r >= 1.0) throw std::invalid_argument("hardy_norm: radius outside (0,1)");
    const double v =
        integrate(sphere, [&](const Point& zeta) {
          return cxd(std::pow(std::abs(f.value(scale(r, zeta))), p) * theta.density(zeta));
        }).real();
    best = std::max(best, v);
  }
  return std::pow(best, 1.0 / p);
}

double morrey_norm(const Field& f, double p, double s,
                   const std::vector<std::pair<Point, double>>& balls, int cap_level) {
  const int n = f.dim();
  if (!(s > 0.0) || s > n / p + 1e-12)
    throw std::invalid_argument("morrey_norm: requires 0 < s <= n/p");
  if (balls.empty()) throw std::invalid_argument("morrey_norm: no sampled balls");
  double best = 0.0;
  for (const auto& [zeta, eps] : balls) {
    const QuadratureRule cap = cap_rule(n, zeta, eps, cap_level);
    const double mass =
        integrate(cap, [&](const Point& eta) { return cxd(std::pow(std::abs(f.value(eta)), p)); })
            .real();
    best = std::max(best, std::pow(eps, s * p - n) * mass);
  }
  return std::pow(best, 1.0 / p);
}

double campanato_norm(const Field& f, double p, double s,
                      const std::vector<std::pair<Point, double>>& balls, int cap_level,
                      const QuadratureRule& sphere) {
  const int n = f.dim();
  if (!(s > -1.0) || s > n / p + 1e-12)
    throw std::invalid_argument("campanato_norm: requires -1 < s <= n/p");
  const double lp =
      std::pow(integrate(sphere, [&](const Point& zeta) {
                 return cxd(std::pow(std::abs(f.value(zeta)), p));
               }).real(),
               1.0 / p);
  double best = 0.0;
  for (const auto& [zeta, eps] : balls) {
    const cxd fz = f.value(zeta);
    const QuadratureRule cap = cap_rule(n, zeta, eps, cap_level);
    const double osc =
        integrate(cap, [&](const Point& eta) { return cxd(std::pow(std::abs(f.value(eta) - fz), p)); })
            .real();
    best = std::max(best, std::pow(eps, s * p - n) * osc);
  }
  return lp + std::pow(best, 1.0 / p);
}

double maximal_admissible(const Field& f, const Point& zeta, double alpha,
                          const std::vector<double>& depths, int cross_level) {
  if (!(alpha > 1.0)) throw std::invalid_argument("maximal_admissible: alpha must exceed 1");
  require_boundary(zeta, "maximal_admissible", 1e-9);
  const int n = f.dim();
  double best = 0.0;
  for (double t : depths) {
    if (!(t >= 0.0) || t >= 1.0) throw std::invalid_argument("maximal_admissible: depth outside [0,1)");
    // cross-section at |z| = t: points t*eta with |1 - t<eta,zeta>| < alpha(1-t^2)
    best = std::max(best, std::abs(f.value(scale(t, zeta)))); // radial point is always admissible
    const double budget = alpha * (1.0 - t * t);
    if (t == 0.0) continue;
    // |1 - t<eta,zeta>| <= (1-t) + t|1-<eta,zeta>| : caps of radius (budget-(1-t))/t meet the section
    const double capr = (budget - (1.0 - t)) / t;
    if (capr <= 0.0) continue;
    const QuadratureRule cap = cap_rule(n, zeta, std::min(2.0, capr), cross_level);
    for (const Point& eta : cap.nodes) {
      const Point z = scale(t, eta);
      if (in_admissible(z, zeta, alpha)) best = std::max(best, std::abs(f.value(z)));
    }
  }
  return best;
}

cxd pairing(const Field& f, const Field& g, const std::vector<double>& radii,
            const QuadratureRule& sphere, double* cauchy_diag) {
  if (radii.empty()) throw std::invalid_argument("pairing: empty radius grid");
  std::vector<double> rs = radii;
  std::sort(rs.begin(), rs.end());
  cxd prev = 0.0, last = 0.0;
  double diag = 0.0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const double r = rs[i];
    last = integrate(sphere, [&](const Point& zeta) {
      const Point z = scale(r, zeta);
      return f.value(z) * std::conj(g.value(z));
    });
    if (i > 0) diag = std::max(diag, std::abs(last - prev));
    prev = last;
  }
  if (cauchy_diag) *cauchy_diag = diag;
  return last;
}

}  // namespace corona
