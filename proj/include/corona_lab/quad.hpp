#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "corona_lab/parallel.hpp"
#include "corona_lab/types.hpp"

namespace corona {

enum class Domain { Sphere, Ball };

/// Weighted node set realizing d(sigma) on S^{2n-1} or d(nu) on B.
struct QuadratureRule {
  int n = 1;
  Domain domain = Domain::Sphere;
  std::string provenance;
  std::vector<Point> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  double total_weight() const;
  void validate() const;  // nodes in domain, positive weights
};

double sphere_area(int n);  // sigma(S^{2n-1}) = 2 pi^n / (n-1)!
double ball_volume(int n);  // nu(B)          =   pi^n / n!

/// Gauss-Legendre nodes/weights on [0,1].
void gauss_legendre01(int count, std::vector<double>& x, std::vector<double>& w);

/// Composite Gauss-Legendre on [0,hi] with panels graded geometrically toward 0.
void graded_panels01(double hi, int per_panel, int panels, std::vector<double>& x,
                     std::vector<double>& w);

/// Tensor rule on S^{2n-1}, exact on monomials zeta^a conj(zeta)^b, |a|+|b| <= 2*level.
QuadratureRule sphere_rule(int n, int level);

/// Tensor rule on B: sphere_rule x radial Gauss panels graded toward |w| = 1,
/// exact on (1-|w|^2)^k * monomial integrands of matching degree. The radial
/// budget (nodes per panel, panel count) defaults from the level but can be
/// set independently to rebalance angular vs radial resolution.
QuadratureRule ball_rule(int n, int level, int rad_per_panel = -1, int rad_panels = -1);

/// Rule for the nonisotropic ball I_{zeta,delta} on the sphere; radial panels are
/// graded geometrically toward the center so that |1 - <eta,zeta>|^a densities
/// integrate accurately. delta = 2 covers the whole sphere, focused at zeta.
/// rho_panels controls the grading depth (fewer panels for smooth densities).
QuadratureRule cap_rule(int n, const Point& zeta, double delta, int level, int rho_panels = 44);

/// Seeded Monte Carlo rules (bit-identical node sets for a fixed seed).
QuadratureRule mc_sphere_rule(int n, std::size_t count, std::uint64_t seed);
QuadratureRule mc_ball_rule(int n, std::size_t count, std::uint64_t seed);

namespace detail {
[[noreturn]] void rethrow_node_failure(std::size_t node, const std::string& what);
}

/// Sum of w_i f(node_i) with deterministic pairwise reduction; terms evaluate in
/// parallel. A throwing integrand aborts with the node identified.
template <class F>
cxd integrate(const QuadratureRule& rule, F&& f) {
  if (rule.nodes.empty()) throw std::invalid_argument("integrate: empty rule");
  const std::size_t count = rule.size();
  std::vector<cxd> buf(count);
  std::size_t bad = count;
  std::string bad_what;
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(count); ++i) {
    const std::size_t k = static_cast<std::size_t>(i);
    try {
      buf[k] = rule.weights[k] * f(rule.nodes[k]);
    } catch (const std::exception& e) {
#pragma omp critical
      if (bad == count) {
        bad = k;
        bad_what = e.what();
      }
    }
  }
  if (bad != count) detail::rethrow_node_failure(bad, bad_what);
  return pairwise_sum(buf);
}

/// Serial reference implementation of integrate (left-to-right accumulation).
template <class F>
cxd integrate_serial(const QuadratureRule& rule, F&& f) {
  if (rule.nodes.empty()) throw std::invalid_argument("integrate: empty rule");
  cxd s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * f(rule.nodes[i]);
  return s;
}

}  // namespace corona
