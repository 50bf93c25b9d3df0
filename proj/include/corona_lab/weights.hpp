#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "corona_lab/fields.hpp"
#include "corona_lab/quad.hpp"
#include "corona_lab/types.hpp"

namespace corona {

/// Declarative weight description: constant | power(a, eta0) | product.
struct WeightSpec {
  enum class Kind { Constant, Power, Product };
  Kind kind = Kind::Constant;
  double value = 1.0;               // Constant
  double exponent = 0.0;            // Power
  Point eta0;                       // Power
  std::vector<WeightSpec> factors;  // Product

  std::string describe() const;
};

/// Nonnegative weight on the sphere with cached ball averages Theta(z).
class Weight {
public:
  Weight(int n, Field density, WeightSpec spec);

  static Weight constant(int n, double c);
  static Weight power(const Point& eta0, double a);
  static Weight product(const Weight& a, const Weight& b);
  static Weight from_spec(int n, const WeightSpec& spec);

  int dim() const { return n_; }
  const WeightSpec& spec() const { return spec_; }
  double density(const Point& zeta) const;

  /// theta(I_{zeta,r}) by a cap rule of the given level.
  double ball_mass(const Point& zeta, double r, int level) const;

  /// Theta(z) = theta(I_z)/|I_z| where I_z has center z/|z| and radius 1-|z|^2.
  /// Theta(0) is the full-sphere average (the r = 1 convention).
  double average(const Point& z, int level) const;

  /// (Theta(z), Theta'(z)) with theta' = theta^{-p'/p}, both computed on the
  /// same cap nodes so the discrete Hoelder bound Theta^{1/p} Theta'^{1/p'} >= 1
  /// holds exactly.
  std::pair<double, double> average_pair(const Point& z, double p, int level) const;

  /// Dual weight theta^{-p'/p} (exact pointwise density).
  Weight dual(double p) const;

private:
  struct Cache {
    std::mutex mu;
    std::map<std::array<double, 2 * kMaxDim + 1>, double> map;
  };
  void cap_geometry(const Point& z, Point& zeta, double& r) const;

  int n_;
  Field dens_;
  WeightSpec spec_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

struct ApReport {
  double p = 2.0;
  double constant = 1.0;                          // sample-sup estimate of A_p
  std::vector<std::pair<Point, double>> samples;  // per-sample Theta^{1/p} Theta'^{1/p'}
};

/// Sample-sup estimate of eqn-A_p's constant. Requires p > 1, samples nonempty.
ApReport ap_constant(const Weight& theta, double p, const std::vector<Point>& samples, int level);

/// A_1 constant: max over boundary samples of sup_r Theta(r zeta) / theta(zeta).
double a1_constant(const Weight& theta, const std::vector<Point>& boundary_samples,
                   const std::vector<double>& radii, int level);

struct DoublingFit {
  double C = 1.0;
  double lambda = 0.0;
};

/// Fit of log theta(I_{zeta,2r}) - log theta(I_{zeta,r}) = lambda log 2 over the
/// sampled (zeta, r): lambda is the mean ratio exponent, C the worst excess.
DoublingFit doubling(const Weight& theta, const std::vector<std::pair<Point, double>>& samples,
                     int level);

}  // namespace corona
