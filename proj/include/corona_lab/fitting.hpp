#pragma once

#include <vector>

#include "corona_lab/fields.hpp"
#include "corona_lab/types.hpp"

namespace corona {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};

/// Least-squares line through (x_i, y_i); requires >= 2 distinct abscissae.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Slope of log|f(t zeta0)| against -log(1 - t^2) along a boundary ray.
/// Requires at least 3 samples.
double fit_growth_exponent(const Field& f, const Point& zeta0, const std::vector<double>& ts);

struct DecayFit {
  double exponent = 0.0;  // fitted t in  V(eps) ~ A + B eps^t
  double limit = 0.0;     // fitted A (0 when the sequence diverges)
  bool diverging = false;
};

/// Fit V(eps_i) ~ A + B eps_i^t on a decreasing ladder eps_1 > eps_2 > ...
/// When V grows as eps -> 0 the limit is pinned at A = 0 and the exponent is
/// the raw log-log slope (negative). Otherwise A is chosen by a golden-section
/// search minimizing the log-log line-fit residual of |V - A|.
DecayFit fit_power_with_limit(const std::vector<double>& eps, const std::vector<double>& val);

/// Exponent from successive dyadic differences with a 1/k Richardson
/// extrapolation: for V(eps_k) = A + B eps_k^t (eps_k = eps_0 2^{-k}) the
/// step ratios give t exactly; a multiplicative log factor contributes a
/// 1/k bias that the extrapolation removes.
double fit_exponent_richardson(const std::vector<double>& eps, const std::vector<double>& val);

/// Real least squares min ||M c - rhs||_2 via normal equations (small systems).
std::vector<double> solve_least_squares(const std::vector<std::vector<double>>& rows,
                                        const std::vector<double>& rhs, int unknowns);

}  // namespace corona
