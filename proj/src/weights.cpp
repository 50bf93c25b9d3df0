#include "corona_lab/weights.hpp"

#include <algorithm>
#include <cmath>

namespace corona {

std::string WeightSpec::describe() const {
  switch (kind) {
    case Kind::Constant:
      return "constant(" + std::to_string(value) + ")";
    case Kind::Power:
      return "power(a=" + std::to_string(exponent) + ")";
    case Kind::Product: {
      std::string s = "product(";
      for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? "," : "") + factors[i].describe();
      return s + ")";
    }
  }
  return "?";
}

Weight::Weight(int n, Field density, WeightSpec spec)
    : n_(n), dens_(std::move(density)), spec_(std::move(spec)) {}

Weight Weight::constant(int n, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("Weight::constant: must be positive");
  WeightSpec s;
  s.kind = WeightSpec::Kind::Constant;
  s.value = c;
  return Weight(n, Field::constant(n, c), s);
}

Weight Weight::power(const Point& eta0, double a) {
  require_boundary(eta0, "Weight::power", 1e-9);
  WeightSpec s;
  s.kind = WeightSpec::Kind::Power;
  s.exponent = a;
  s.eta0 = eta0;
  return Weight(eta0.dim(), distance_power(eta0, a), s);
}

Weight Weight::product(const Weight& a, const Weight& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("Weight::product: dimension mismatch");
  WeightSpec s;
  s.kind = WeightSpec::Kind::Product;
  s.factors = {a.spec_, b.spec_};
  return Weight(a.n_, a.dens_ * b.dens_, s);
}

Weight Weight::from_spec(int n, const WeightSpec& spec) {
  switch (spec.kind) {
    case WeightSpec::Kind::Constant:
      return Weight::constant(n, spec.value);
    case WeightSpec::Kind::Power:
      return Weight::power(spec.eta0, spec.exponent);
    case WeightSpec::Kind::Product: {
      if (spec.factors.empty()) return Weight::constant(n, 1.0);
      Weight w = Weight::from_spec(n, spec.factors[0]);
      for (std::size_t i = 1; i < spec.factors.size(); ++i)
        w = Weight::product(w, Weight::from_spec(n, spec.factors[i]));
      return w;
    }
  }
  throw std::invalid_argument("Weight::from_spec: bad kind");
}

double Weight::density(const Point& zeta) const {
  const double v = dens_.value(zeta).real();
  if (v < 0.0) throw std::runtime_error("Weight: negative density sampled");
  return v;
}

void Weight::cap_geometry(const Point& z, Point& zeta, double& r) const {
  const double a = absval(z);
  if (a == 0.0) {
    zeta = Point::basis(n_, 0);
    r = 2.0;  // full sphere
  } else {
    zeta = scale(1.0 / a, z);
    r = std::min(2.0, 1.0 - a * a);
  }
}

double Weight::ball_mass(const Point& zeta, double r, int level) const {
  const QuadratureRule cap = cap_rule(n_, zeta, r, level);
  return integrate(cap, [&](const Point& eta) { return cxd(density(eta)); }).real();
}

double Weight::average(const Point& z, int level) const {
  std::array<double, 2 * kMaxDim + 1> key{};
  for (int j = 0; j < n_; ++j) {
    key[2 * j] = z[j].real();
    key[2 * j + 1] = z[j].imag();
  }
  key[2 * kMaxDim] = level;
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->map.find(key);
    if (it != cache_->map.end()) return it->second;
  }
  Point zeta(n_);
  double r = 0.0;
  cap_geometry(z, zeta, r);
  const QuadratureRule cap = cap_rule(n_, zeta, r, level);
  double mass = 0.0, area = 0.0;
  for (std::size_t i = 0; i < cap.size(); ++i) {
    const double th = density(cap.nodes[i]);
    mass += cap.weights[i] * th;
    area += cap.weights[i];
  }
  const double avg = mass / area;
  std::lock_guard<std::mutex> lock(cache_->mu);
  cache_->map[key] = avg;
  return avg;
}

std::pair<double, double> Weight::average_pair(const Point& z, double p, int level) const {
  if (!(p > 1.0)) throw std::invalid_argument("Weight::average_pair: p must exceed 1");
  const double pp = p / (p - 1.0);
  Point zeta(n_);
  double r = 0.0;
  cap_geometry(z, zeta, r);
  const QuadratureRule cap = cap_rule(n_, zeta, r, level);
  double mass = 0.0, dual_mass = 0.0, area = 0.0;
  for (std::size_t i = 0; i < cap.size(); ++i) {
    const double th = density(cap.nodes[i]);
    mass += cap.weights[i] * th;
    dual_mass += cap.weights[i] * std::pow(th, -pp / p);
    area += cap.weights[i];
  }
  return {mass / area, dual_mass / area};
}

Weight Weight::dual(double p) const {
  if (!(p > 1.0)) throw std::invalid_argument("Weight::dual: p must exceed 1");
  const double pp = p / (p - 1.0);
  WeightSpec s = spec_;  // description kept; exponents of power factors flip
  return Weight(n_, pow_real(dens_, -pp / p), s);
}

ApReport ap_constant(const Weight& theta, double p, const std::vector<Point>& samples, int level) {
  if (!(p > 1.0)) throw std::invalid_argument("ap_constant: requires p > 1");
  if (samples.empty()) throw std::invalid_argument("ap_constant: empty sample set");
  ApReport rep;
  rep.p = p;
  rep.constant = 0.0;
  const double pp = p / (p - 1.0);
  for (const Point& z : samples) {
    const auto [avg, davg] = theta.average_pair(z, p, level);
    const double v = std::pow(avg, 1.0 / p) * std::pow(davg, 1.0 / pp);
    rep.samples.emplace_back(z, v);
    rep.constant = std::max(rep.constant, v);
  }
  return rep;
}

double a1_constant(const Weight& theta, const std::vector<Point>& boundary_samples,
                   const std::vector<double>& radii, int level) {
  if (boundary_samples.empty() || radii.empty())
    throw std::invalid_argument("a1_constant: empty samples");
  double best = 0.0;
  for (const Point& zeta : boundary_samples) {
    const double th = theta.density(zeta);
    if (!(th > 0.0)) throw std::invalid_argument("a1_constant: weight vanishes at a sample");
    double m = 0.0;
    for (double r : radii) m = std::max(m, theta.average(scale(r, zeta), level));
    best = std::max(best, m / th);
  }
  return best;
}

DoublingFit doubling(const Weight& theta, const std::vector<std::pair<Point, double>>& samples,
                     int level) {
  if (samples.size() < 3) throw std::invalid_argument("doubling: need at least 3 (zeta, r) samples");
  std::vector<double> ys;
  for (const auto& [zeta, r] : samples) {
    if (!(r > 0.0) || r > 1.0) throw std::invalid_argument("doubling: radius must lie in (0,1]");
    const double m1 = theta.ball_mass(zeta, r, level);
    const double m2 = theta.ball_mass(zeta, 2.0 * r, level);
    ys.push_back(std::log(m2 / m1));
  }
  DoublingFit fit;
  double mean = 0.0;
  for (double y : ys) mean += y;
  mean /= static_cast<double>(ys.size());
  fit.lambda = mean / std::log(2.0);
  double excess = 0.0;
  for (double y : ys) excess = std::max(excess, y - mean);
  fit.C = std::exp(excess);
  return fit;
}

}  // namespace corona
