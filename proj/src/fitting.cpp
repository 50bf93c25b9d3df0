#include "corona_lab/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace corona {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line: need >= 2 samples");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-14) throw std::invalid_argument("fit_line: degenerate abscissae");
  LineFit f;
  f.slope = (n * sxy - sx * sy) / det;
  f.intercept = (sy - f.slope * sx) / n;
  for (std::size_t i = 0; i < x.size(); ++i)
    f.max_residual = std::max(f.max_residual, std::abs(y[i] - f.slope * x[i] - f.intercept));
  return f;
}

double fit_growth_exponent(const Field& f, const Point& zeta0, const std::vector<double>& ts) {
  if (ts.size() < 3) throw std::invalid_argument("fit_growth_exponent: need >= 3 samples");
  require_boundary(zeta0, "fit_growth_exponent", 1e-9);
  std::vector<double> xs, ys;
  for (double t : ts) {
    const double v = std::abs(f.value(scale(t, zeta0)));
    if (!(v > 0.0)) continue;
    xs.push_back(-std::log(1.0 - t * t));
    ys.push_back(std::log(v));
  }
  if (xs.size() < 3) throw std::invalid_argument("fit_growth_exponent: field vanishes along the ray");
  return fit_line(xs, ys).slope;
}

namespace {
double loglog_residual(const std::vector<double>& eps, const std::vector<double>& val, double limit,
                       double* slope_out) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double d = std::abs(val[i] - limit);
    if (d <= 0.0) return 1e100;
    xs.push_back(std::log(eps[i]));
    ys.push_back(std::log(d));
  }
  const LineFit f = fit_line(xs, ys);
  if (slope_out) *slope_out = f.slope;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - f.slope * xs[i] - f.intercept;
    ss += r * r;
  }
  return ss;
}
}  // namespace

DecayFit fit_power_with_limit(const std::vector<double>& eps, const std::vector<double>& val) {
  if (eps.size() != val.size() || eps.size() < 3)
    throw std::invalid_argument("fit_power_with_limit: need >= 3 samples");
  DecayFit out;

  // ladder is ordered with decreasing eps; detect divergence from the tail
  const double tail = val.back(), prev = val[val.size() - 2];
  if (std::abs(tail) > 1.2 * std::abs(prev) && std::abs(tail) > 1e-12) {
    out.diverging = true;
    out.limit = 0.0;
    loglog_residual(eps, val, 0.0, &out.exponent);
    return out;
  }

  // bracket the limit around the last value with the observed spread
  double spread = 0.0;
  for (double v : val) spread = std::max(spread, std::abs(v - tail));
  spread = std::max(spread, 1e-12 + 1e-9 * std::abs(tail));
  double lo = tail - 2.0 * spread, hi = tail + 2.0 * spread;

  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = loglog_residual(eps, val, x1, nullptr);
  double f2 = loglog_residual(eps, val, x2, nullptr);
  for (int it = 0; it < 120; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = loglog_residual(eps, val, x1, nullptr);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = loglog_residual(eps, val, x2, nullptr);
    }
  }
  out.limit = 0.5 * (a + b);
  loglog_residual(eps, val, out.limit, &out.exponent);
  return out;
}

double fit_exponent_richardson(const std::vector<double>& eps, const std::vector<double>& val) {
  if (eps.size() != val.size() || eps.size() < 4)
    throw std::invalid_argument("fit_exponent_richardson: need >= 4 ladder values");
  for (std::size_t i = 1; i < eps.size(); ++i)
    if (std::abs(eps[i] / eps[i - 1] - 0.5) > 1e-9)
      throw std::invalid_argument("fit_exponent_richardson: ladder must be dyadic");
  std::vector<double> ks, ts;
  for (std::size_t k = 0; k + 2 < eps.size(); ++k) {
    const double d0 = val[k + 1] - val[k];
    const double d1 = val[k + 2] - val[k + 1];
    if (d0 == 0.0 || d1 == 0.0 || d0 * d1 < 0.0) continue;
    ks.push_back(1.0 / static_cast<double>(k + 1));
    ts.push_back(std::log2(std::abs(d0 / d1)));
  }
  if (ts.size() < 2) throw std::invalid_argument("fit_exponent_richardson: degenerate ladder");
  return fit_line(ks, ts).intercept;  // k -> infinity limit of the step ratios
}

std::vector<double> solve_least_squares(const std::vector<std::vector<double>>& rows,
                                        const std::vector<double>& rhs, int unknowns) {
  if (rows.size() != rhs.size() || rows.empty())
    throw std::invalid_argument("solve_least_squares: bad system");
  const int m = unknowns;
  std::vector<std::vector<double>> ata(m, std::vector<double>(m, 0.0));
  std::vector<double> atb(m, 0.0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<int>(rows[r].size()) != m) throw std::invalid_argument("solve_least_squares: row size");
    for (int i = 0; i < m; ++i) {
      atb[i] += rows[r][i] * rhs[r];
      for (int j = 0; j < m; ++j) ata[i][j] += rows[r][i] * rows[r][j];
    }
  }
  // Gaussian elimination with partial pivoting
  std::vector<int> piv(m);
  for (int i = 0; i < m; ++i) piv[i] = i;
  for (int col = 0; col < m; ++col) {
    int best = col;
    for (int r = col + 1; r < m; ++r)
      if (std::abs(ata[r][col]) > std::abs(ata[best][col])) best = r;
    std::swap(ata[col], ata[best]);
    std::swap(atb[col], atb[best]);
    if (std::abs(ata[col][col]) < 1e-13)
      throw std::runtime_error("solve_least_squares: rank-deficient system");
    for (int r = col + 1; r < m; ++r) {
      const double f = ata[r][col] / ata[col][col];
      for (int c = col; c < m; ++c) ata[r][c] -= f * ata[col][c];
      atb[r] -= f * atb[col];
    }
  }
  std::vector<double> x(m);
  for (int r = m - 1; r >= 0; --r) {
    double s = atb[r];
    for (int c = r + 1; c < m; ++c) s -= ata[r][c] * x[c];
    x[r] = s / ata[r][r];
  }
  return x;
}

}  // namespace corona
