#pragma once

#include <vector>

#include "corona_lab/fields.hpp"
#include "corona_lab/quad.hpp"
#include "corona_lab/weights.hpp"

namespace corona {

/// Dyadic radius grid 1 - 2^{-k}, k = 1..kmax.
std::vector<double> dyadic_radii(int kmax);

/// sup over the radius grid of the weighted boundary L^p integral, p-th root.
double hardy_norm(const Field& f, double p, const Weight& theta, const std::vector<double>& radii,
                  const QuadratureRule& sphere);

/// Morrey norm: sup over sampled balls (zeta, eps) of
/// (eps^{sp-n} int_{I_{zeta,eps}} |f|^p dsigma)^{1/p}; 0 < s <= n/p.
double morrey_norm(const Field& f, double p, double s,
                   const std::vector<std::pair<Point, double>>& balls, int cap_level);

/// Campanato norm: ||f||_p plus the oscillation sup; -1 < s <= n/p.
double campanato_norm(const Field& f, double p, double s,
                      const std::vector<std::pair<Point, double>>& balls, int cap_level,
                      const QuadratureRule& sphere);

/// Max of |f| over a sampled grid of the admissible region Gamma_{zeta,alpha}.
double maximal_admissible(const Field& f, const Point& zeta, double alpha,
                          const std::vector<double>& depths, int cross_level);

/// Boundary pairing: integral of f_r conj(g_r) at the largest grid radius;
/// cauchy_diag reports the largest step between consecutive grid values.
cxd pairing(const Field& f, const Field& g, const std::vector<double>& radii,
            const QuadratureRule& sphere, double* cauchy_diag = nullptr);

}  // namespace corona
