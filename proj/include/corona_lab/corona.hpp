#pragma once

#include <optional>
#include <vector>

#include "corona_lab/fields.hpp"
#include "corona_lab/kernels.hpp"
#include "corona_lab/lambda.hpp"
#include "corona_lab/quad.hpp"
#include "corona_lab/weights.hpp"

namespace corona {

/// Certified lower bound for inf_B |g| from a cube-lattice scan minus a
/// Lipschitz slack derived from the coefficient norms.
struct InfGCertificate {
  double grid_min = 0.0;
  double lipschitz = 0.0;
  double covering_radius = 0.0;
  double certified = 0.0;  // grid_min - lipschitz * covering_radius
};

InfGCertificate certify_inf_g(const std::vector<PolyHolo>& g, double lattice_step = 0.05);

/// Corona data built from the generators: G_j = conj(g_j)/|g|^2 with exact
/// jets, the dbar G fields, and the Omega forms.
struct CoronaData {
  int m = 2;
  int n = 2;
  std::vector<PolyHolo> g;
  std::vector<Field> g_fields;
  std::vector<Field> G;
  std::vector<std::vector<Field>> dbarG;  // dbarG[j][i] = dbar_i G_j (exact combinator fields)

  ZeroOneForm omega(int i, int j) const;  // G_i dbar G_j - G_j dbar G_i
  /// Omega_123 coefficients: (0,2)-form over dwb pairs (i<j), expanded form.
  Field omega123_coef(int a, int b) const;
};

CoronaData make_corona_data(const std::vector<PolyHolo>& g, double delta_required);

struct CoronaProblem {
  std::vector<PolyHolo> g;
  Field f;  // holomorphic datum
  int n = 2;
  double N = 3.0;
  KernelVariant variant = KernelVariant::PhiDenominator;
  double delta_required = 1e-3;  // inf |g| certification threshold
};

struct VerifyReport {
  double max_reproduction_residual = 0.0;
  std::vector<double> dbar_residual;  // per solution component
  std::vector<double> hardy_ratio;    // per component, when a weight is supplied
  double excluded_weight = 0.0;
};

/// Solver holding the calibrated kernel operator and node caches.
class CoronaSolver {
public:
  CoronaSolver(CoronaProblem problem, KernelConstants constants, QuadratureRule ball);

  const CoronaData& data() const { return data_; }
  const CoronaProblem& problem() const { return problem_; }
  const KernelOperator& op() const { return op_; }
  const InfGCertificate& certificate() const { return cert_; }

  /// Explicit two-generator operator: F = G f + g_perp K(Omega f), g_perp = (g2, -g1).
  std::vector<cxd> t2_solve(const Point& z) const;

  /// Koszul operator sum_k (-1)^k (delta_g K)^k (f G ^ (dbar G)^k); m <= 3, n <= 2.
  std::vector<cxd> koszul_solve(const Point& z) const;

  VerifyReport verify(const std::vector<Point>& residual_samples,
                      const std::vector<Point>& dbar_samples, double fd_step,
                      const Weight* theta = nullptr, double p = 2.0,
                      const QuadratureRule* sphere = nullptr, int radii_k = 8) const;

private:
  std::vector<cxd> koszul_term(int k, const Point& z) const;
  const std::vector<std::array<MaskCoefs, 8>>& stage_nodes(int k) const;

  CoronaProblem problem_;
  CoronaData data_;
  KernelOperator op_;
  InfGCertificate cert_;
  std::vector<MaskCoefs> omega_f_nodes_;  // m = 2 fast path
  // lazily materialized caches for k >= 2 composition stages
  mutable std::vector<std::vector<std::array<MaskCoefs, 8>>> stage_cache_;
  mutable std::vector<int> stage_ready_;
};

/// f G ^ (dbar G)^k as a Lambda-valued (0,k)-form with Field coefficients.
LambdaFieldForm koszul_operand(const CoronaData& data, const Field& f, int k);

/// Envelope of the k-term coefficient bound: (1-|w|^2)^{1/2-k/2}
/// [(1-|w|^2)|dg|^2 + |d_T g|^2] with |dg| = sum_j |d g_j|.
double decompforms_envelope(const CoronaData& data, int k, const Point& w);

/// Largest coefficient magnitude of f G ^ (dbar G)^k at w.
double koszul_operand_magnitude(const CoronaData& data, const Field& f, int k, const Point& w);

/// Quadrature value of the estcoef majorant at a boundary point.
double estcoef_envelope(const CoronaData& data, const Field& f, const Point& zeta,
                        const QuadratureRule& ball);

}  // namespace corona
