#include "corona_lab/quad.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace corona {

namespace {

constexpr double kPi = std::numbers::pi;

// Unitary with first column zeta, applied as matvec. Remaining columns come
// from Gram-Schmidt over standard basis vectors, skipping the pivot coordinate.
struct Unitary {
  int n;
  std::array<std::array<cxd, kMaxDim>, kMaxDim> col{};  // col[j][i]

  Point apply(const std::array<cxd, kMaxDim>& v) const {
    Point p(n);
    for (int i = 0; i < n; ++i) {
      cxd s = 0.0;
      for (int j = 0; j < n; ++j) s += col[j][i] * v[j];
      p.coord(i) = s;
    }
    return p;
  }
};

Unitary frame_at(const Point& zeta) {
  const int n = zeta.dim();
  Unitary u;
  u.n = n;
  for (int i = 0; i < n; ++i) u.col[0][i] = zeta[i];
  int pivot = 0;
  double best = 0.0;
  for (int i = 0; i < n; ++i)
    if (std::abs(zeta[i]) > best) {
      best = std::abs(zeta[i]);
      pivot = i;
    }
  int filled = 1;
  for (int e = 0; e < n && filled < n; ++e) {
    if (e == pivot) continue;
    std::array<cxd, kMaxDim> v{};
    v[e] = 1.0;
    for (int j = 0; j < filled; ++j) {
      cxd proj = 0.0;
      for (int i = 0; i < n; ++i) proj += v[i] * std::conj(u.col[j][i]);
      for (int i = 0; i < n; ++i) v[i] -= proj * u.col[j][i];
    }
    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm += std::norm(v[i]);
    norm = std::sqrt(norm);
    if (norm < 1e-8) throw std::runtime_error("frame_at: degenerate completion");
    for (int i = 0; i < n; ++i) u.col[filled][i] = v[i] / norm;
    ++filled;
  }
  return u;
}

std::vector<double> uniform_angles(int count) {
  std::vector<double> a(count);
  for (int k = 0; k < count; ++k) a[k] = 2.0 * kPi * k / count;
  return a;
}

int angular_count(int level) { return std::max(5, 2 * level + 1); }

}  // namespace

double QuadratureRule::total_weight() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

void QuadratureRule::validate() const {
  if (nodes.size() != weights.size()) throw std::runtime_error("rule: node/weight size mismatch");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(weights[i] > 0.0)) throw std::runtime_error("rule: nonpositive weight");
    const double r = absval(nodes[i]);
    if (domain == Domain::Sphere ? std::abs(r - 1.0) > 1e-9 : r > 1.0 + 1e-12)
      throw std::runtime_error("rule: node outside declared domain");
  }
}

double sphere_area(int n) {
  double f = 1.0;
  for (int k = 2; k < n; ++k) f *= k;
  return 2.0 * std::pow(kPi, n) / f;
}

double ball_volume(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return std::pow(kPi, n) / f;
}

void gauss_legendre01(int count, std::vector<double>& x, std::vector<double>& w) {
  if (count < 1) throw std::invalid_argument("gauss_legendre01: count < 1");
  x.assign(count, 0.0);
  w.assign(count, 0.0);
  const int m = (count + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (count + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < count; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = count * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    // map [-1,1] -> [0,1]
    x[i] = 0.5 * (1.0 - z);
    x[count - 1 - i] = 0.5 * (1.0 + z);
    const double wi = 1.0 / ((1.0 - z * z) * pp * pp);
    w[i] = wi;
    w[count - 1 - i] = wi;
  }
}

void graded_panels01(double hi, int per_panel, int panels, std::vector<double>& x,
                     std::vector<double>& w) {
  std::vector<double> gx, gw;
  gauss_legendre01(per_panel, gx, gw);
  x.clear();
  w.clear();
  double right = hi;
  for (int k = 0; k < panels; ++k) {
    const double left = (k + 1 == panels) ? 0.0 : right * 0.5;
    const double len = right - left;
    for (int i = 0; i < per_panel; ++i) {
      x.push_back(left + len * gx[i]);
      w.push_back(len * gw[i]);
    }
    right = left;
    if (right <= 0.0) break;
  }
}

QuadratureRule sphere_rule(int n, int level) {
  if (level < 1) throw std::invalid_argument("sphere_rule: level must be >= 1");
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("sphere_rule: dimension");
  QuadratureRule rule;
  rule.n = n;
  rule.domain = Domain::Sphere;
  rule.provenance = "tensor(level=" + std::to_string(level) + ")";

  const int m = angular_count(level);
  const std::vector<double> ang = uniform_angles(m);
  const double wang = 2.0 * kPi / m;

  if (n == 1) {
    for (double a : ang) {
      rule.nodes.push_back(Point{cxd(std::cos(a), std::sin(a))});
      rule.weights.push_back(wang);
    }
    return rule;
  }

  std::vector<double> tx, tw;
  gauss_legendre01(level + 2, tx, tw);

  if (n == 2) {
    for (std::size_t it = 0; it < tx.size(); ++it) {
      const double t = tx[it];
      const double r1 = std::sqrt(1.0 - t), r2 = std::sqrt(t);
      for (double a1 : ang)
        for (double a2 : ang) {
          rule.nodes.push_back(Point{cxd(r1 * std::cos(a1), r1 * std::sin(a1)),
                                     cxd(r2 * std::cos(a2), r2 * std::sin(a2))});
          rule.weights.push_back(0.5 * tw[it] * wang * wang);
        }
    }
    return rule;
  }

  // n == 3: zeta = (sqrt(t) zeta', sqrt(1-t) e^{i phi}), dsigma5 = (t/2) dt dphi dsigma3.
  const QuadratureRule inner = sphere_rule(2, level);
  for (std::size_t it = 0; it < tx.size(); ++it) {
    const double t = tx[it];
    const double rs = std::sqrt(t), rc = std::sqrt(1.0 - t);
    for (std::size_t is = 0; is < inner.size(); ++is)
      for (double a : ang) {
        const Point& zp = inner.nodes[is];
        rule.nodes.push_back(
            Point{rs * zp[0], rs * zp[1], cxd(rc * std::cos(a), rc * std::sin(a))});
        rule.weights.push_back(0.5 * t * tw[it] * wang * inner.weights[is]);
      }
  }
  return rule;
}

QuadratureRule ball_rule(int n, int level, int rad_per_panel, int rad_panels) {
  if (level < 1) throw std::invalid_argument("ball_rule: level must be >= 1");
  if (rad_per_panel < 0) rad_per_panel = level + 2;
  if (rad_panels < 0) rad_panels = std::max(6, level);
  const QuadratureRule sph = sphere_rule(n, level);
  QuadratureRule rule;
  rule.n = n;
  rule.domain = Domain::Ball;
  rule.provenance = "tensor(level=" + std::to_string(level) + ",rad=" +
                    std::to_string(rad_per_panel) + "x" + std::to_string(rad_panels) + ")";

  // t = r^2, dnu = (1/2) t^{n-1} dt dsigma; panels graded toward t = 1 resolve
  // (1-|w|^2)^{N-1} kernel factors near the boundary.
  std::vector<double> ux, uw;
  graded_panels01(1.0, rad_per_panel, rad_panels, ux, uw);
  for (std::size_t iu = 0; iu < ux.size(); ++iu) {
    const double t = 1.0 - ux[iu];  // cluster at t = 1
    if (t <= 0.0) continue;
    const double r = std::sqrt(t);
    const double wrad = 0.5 * std::pow(t, n - 1) * uw[iu];
    for (std::size_t is = 0; is < sph.size(); ++is) {
      rule.nodes.push_back(scale(r, sph.nodes[is]));
      rule.weights.push_back(wrad * sph.weights[is]);
    }
  }
  return rule;
}

QuadratureRule cap_rule(int n, const Point& zeta, double delta, int level, int rho_panels) {
  require_boundary(zeta, "cap_rule", 1e-9);
  if (!(delta > 0.0)) throw std::invalid_argument("cap_rule: delta must be positive");
  if (level < 1) throw std::invalid_argument("cap_rule: level must be >= 1");
  delta = std::min(delta, 2.0);

  QuadratureRule rule;
  rule.n = n;
  rule.domain = Domain::Sphere;
  rule.provenance = "cap(level=" + std::to_string(level) + ",delta=" + std::to_string(delta) + ")";

  const int panels = rho_panels;
  const int per_panel = level + 1;

  if (n == 1) {
    // arc |phi| < 2 asin(delta/2), graded toward phi = 0
    const double half = 2.0 * std::asin(0.5 * delta);
    std::vector<double> px, pw;
    graded_panels01(half, per_panel, panels, px, pw);
    for (std::size_t i = 0; i < px.size(); ++i)
      for (int sgn : {-1, 1}) {
        const double a = sgn * px[i];
        rule.nodes.push_back(Point{zeta[0] * cxd(std::cos(a), std::sin(a))});
        rule.weights.push_back(pw[i]);
      }
    return rule;
  }

  // First coordinate in the frame at zeta: eta1 = 1 - rho e^{i beta},
  // dsigma = (1 - |eta1|^2)^{n-2} rho drho dbeta dsigma_{2n-3}.
  const Unitary frame = frame_at(zeta);
  const double beta_c = std::acos(0.5 * delta);

  QuadratureRule tail;  // S^{2n-3} factor
  double wtail_const = 0.0;
  const int m2 = angular_count(level + 2);
  if (n == 2) {
    wtail_const = 2.0 * kPi / m2;
  } else {
    tail = sphere_rule(n - 1, level);
  }

  std::vector<double> bx, bw;  // beta nodes on [0,1] reference
  gauss_legendre01(2 * (level + 2), bx, bw);
  std::vector<double> ux, uw;  // rho panels on (0,1] reference
  graded_panels01(1.0, per_panel, panels, ux, uw);

  auto emit = [&](double beta, double rho, double wbr) {
    const cxd eta1 = 1.0 - rho * cxd(std::cos(beta), std::sin(beta));
    const double m = std::max(0.0, 1.0 - std::norm(eta1));
    const double s = std::sqrt(m);
    const double base = rho * wbr * std::pow(m, n - 2);
    if (!(base > 0.0)) return;
    if (n == 2) {
      for (int k = 0; k < m2; ++k) {
        const double a = 2.0 * kPi * k / m2;
        std::array<cxd, kMaxDim> v{eta1, s * cxd(std::cos(a), std::sin(a))};
        rule.nodes.push_back(frame.apply(v));
        rule.weights.push_back(base * wtail_const);
      }
    } else {
      for (std::size_t k = 0; k < tail.size(); ++k) {
        std::array<cxd, kMaxDim> v{eta1, s * tail.nodes[k][0], s * tail.nodes[k][1]};
        rule.nodes.push_back(frame.apply(v));
        rule.weights.push_back(base * tail.weights[k]);
      }
    }
  };

  // inner band: |beta| <= beta_c, rho in (0, delta)
  if (beta_c > 0.0) {
    for (std::size_t ib = 0; ib < bx.size(); ++ib)
      for (int sgn : {-1, 1}) {
        const double beta = sgn * beta_c * bx[ib];
        const double wbeta = beta_c * bw[ib];
        for (std::size_t iu = 0; iu < ux.size(); ++iu)
          emit(beta, delta * ux[iu], wbeta * delta * uw[iu]);
      }
  }
  // outer band: beta_c < |beta| < pi/2, rho in (0, 2 cos beta)
  const double span = 0.5 * kPi - beta_c;
  if (span > 1e-14) {
    for (std::size_t ib = 0; ib < bx.size(); ++ib)
      for (int sgn : {-1, 1}) {
        const double beta = sgn * (beta_c + span * bx[ib]);
        const double wbeta = span * bw[ib];
        const double rmax = 2.0 * std::cos(std::abs(beta));
        if (rmax <= 0.0) continue;
        for (std::size_t iu = 0; iu < ux.size(); ++iu)
          emit(beta, rmax * ux[iu], wbeta * rmax * uw[iu]);
      }
  }
  return rule;
}

QuadratureRule mc_sphere_rule(int n, std::size_t count, std::uint64_t seed) {
  if (count == 0) throw std::invalid_argument("mc_sphere_rule: empty rule");
  QuadratureRule rule;
  rule.n = n;
  rule.domain = Domain::Sphere;
  rule.provenance = "montecarlo(count=" + std::to_string(count) + ",seed=" + std::to_string(seed) + ")";
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double w = sphere_area(n) / static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::array<cxd, kMaxDim> v{};
    double norm = 0.0;
    for (int j = 0; j < n; ++j) {
      const double a = gauss(eng), b = gauss(eng);
      v[j] = cxd(a, b);
      norm += a * a + b * b;
    }
    norm = std::sqrt(norm);
    Point p(n);
    for (int j = 0; j < n; ++j) p.coord(j) = v[j] / norm;
    rule.nodes.push_back(p);
    rule.weights.push_back(w);
  }
  return rule;
}

QuadratureRule mc_ball_rule(int n, std::size_t count, std::uint64_t seed) {
  QuadratureRule rule = mc_sphere_rule(n, count, seed);
  rule.domain = Domain::Ball;
  std::mt19937_64 eng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double w = ball_volume(n) / static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double r = std::pow(unif(eng), 1.0 / (2.0 * n));
    rule.nodes[i] = scale(r, rule.nodes[i]);
    rule.weights[i] = w;
  }
  return rule;
}

namespace detail {
void rethrow_node_failure(std::size_t node, const std::string& what) {
  throw std::runtime_error("integrate: evaluation failed at node " + std::to_string(node) + ": " + what);
}
}  // namespace detail

}  // namespace corona
