#pragma once

#include <string>
#include <vector>

#include "corona_lab/fields.hpp"
#include "corona_lab/forms.hpp"
#include "corona_lab/quad.hpp"

namespace corona {

/// phi(w,z) = |1-<w,z>|^2 - (1-|w|^2)(1-|z|^2), evaluated through the
/// numerically stable product form |<w-z,w>|^2 + (1-|w|^2)|w-z|^2.
double phi(const Point& w, const Point& z);
double phi_reference(const Point& w, const Point& z);  // the difference form

/// Ball automorphism phi_w exchanging w and 0.
Point moebius(const Point& w, const Point& z);

struct LParams {
  double N = 1.0;
  double M = 0.0;
  double L = 0.0;
};

double kernel_type(int n, const LParams& p);  // n + N - M - 2L

/// L^N_{M,L}(w,z) = (1-|w|^2)^{N-1} / (|1-<z,w>|^M phi(w,z)^L).
double l_kernel(const LParams& p, const Point& w, const Point& z);

/// Quadrature value of the L-operator; nodes with phi < 1e-14 are skipped when
/// L > 0 and their weight is reported through excluded_weight.
cxd l_apply(const LParams& p, const Field& psi, const QuadratureRule& ball, const Point& z,
            double* excluded_weight = nullptr);

/// Two transcriptions of the solving kernel: one with the boundary-compatible
/// denominator (1-<z,w>)^{n+N} (1-<w,z>)^{n-k}, one with (1-<z,w>)^{N+k} phi^{n-k}.
enum class KernelVariant { BoundaryCompatible, PhiDenominator };

std::string variant_name(KernelVariant v);
KernelVariant variant_from_name(const std::string& s);

/// The three-part split of the kernel: terms carrying no tagged factor, terms
/// built with a dbar|w|^2 factor, terms built with a dbar|z|^2 factor (tagged
/// 1-forms are kept wedged in).
struct KernelDecomposition {
  Form plain;
  Form with_dbw2;
  Form with_dbz2;
  KernelDecomposition(int n) : plain(n), with_dbw2(n), with_dbz2(n) {}
  Form total() const {
    Form t = plain;
    t += with_dbw2;
    t += with_dbz2;
    return t;
  }
};

/// k-th summand of K^N at (w,z), without the constant c_{k,N}. Products with
/// more than z_cap dzb factors are dropped during expansion (z_cap < 0: keep all).
KernelDecomposition kernel_summand(int n, double N, int k, KernelVariant var, const Point& w,
                                   const Point& z, int z_cap = -1);

/// Calibrated constants, persisted as a key-value text artifact.
struct KernelConstants {
  int n = 2;
  double N = 3.0;
  KernelVariant variant = KernelVariant::PhiDenominator;
  std::string rule_signature;
  int version = 1;
  std::vector<double> ck;
  double q1_constant = 1.0;
  double residual = -1.0;
  double excl_radius = -1.0;  // diagonal exclusion used during calibration
  double fd_step = -1.0;      // finite-difference step used during calibration

  void save(const std::string& path) const;
  static KernelConstants load(const std::string& path);
};

std::string rule_signature(const QuadratureRule& rule);

/// Assembled kernel restricted to z-degree q (a (0,q)-form in z and an
/// (n, n-q-1)-form in w).
Form kq_kernel(const KernelConstants& kc, int q, const Point& w, const Point& z);
KernelDecomposition kq_kernel_decomposed(const KernelConstants& kc, int q, const Point& w,
                                         const Point& z);

/// Values of a (0,q+1)-form in w at the rule nodes (mask-indexed coefficients).
std::vector<MaskCoefs> cache_01(const ZeroOneForm& theta, const QuadratureRule& ball);

/// Quadrature application of the q-component of K^N to cached operand values.
///
/// Nodes inside a small ball around z are excluded (in addition to the
/// phi < 1e-14 machine guard). The kernel is odd around the diagonal to
/// leading order, so the exclusion error is O(radius^2), while the moving
/// exclusion ball carries the diagonal dbar-current: finite differences of
/// the output with steps larger than the radius see the true dbar.
class KernelOperator {
public:
  KernelOperator(KernelConstants kc, QuadratureRule ball, double excl_radius = -1.0);

  const KernelConstants& constants() const { return kc_; }
  const QuadratureRule& rule() const { return ball_; }
  double exclusion_radius() const { return excl_; }

  /// Node-count-based default: ~2 typical node spacings.
  static double default_exclusion(const QuadratureRule& ball);

  MaskCoefs apply(int q, const std::vector<MaskCoefs>& operand, const Point& z,
                  double* excluded_weight = nullptr) const;
  /// Single k-summand with unit constant (used by calibration).
  MaskCoefs apply_summand(int k, int q, const std::vector<MaskCoefs>& operand,
                          const Point& z) const;

private:
  KernelConstants kc_;
  QuadratureRule ball_;
  double excl_;
};

/// u(z) = K^N_0(theta)(z) for a (0,1)-form theta.
cxd solve_dbar_01(const KernelOperator& op, const std::vector<MaskCoefs>& theta_nodes,
                  const Point& z, double* excluded_weight = nullptr);

struct QSplit {
  cxd q1 = 0.0;
  double q2_bound = 0.0;
};

/// Prop-KN1-style split at a boundary point: the antiholomorphic sum Q^{N,1}
/// and the numeric value of the majorant bounding Q^{N,2}(d theta).
QSplit q_split(const KernelConstants& kc, const ZeroOneForm& theta, const Point& zeta,
               const QuadratureRule& ball);

/// Interior evaluation of the Q^{N,1} display (antiholomorphic in z).
cxd q1_value(const KernelConstants& kc, const ZeroOneForm& theta, const Point& z,
             const QuadratureRule& ball);

/// Projections normalized so that constants reproduce: the kernel integral is
/// divided by the rule's total weight.
cxd cauchy_project(const Field& psi, const Point& z, const QuadratureRule& sphere);
double poisson_szego(const Field& psi, const Point& z, const QuadratureRule& sphere);

/// dbar-exact test datum: a potential with closed-form dbar coefficients.
struct CalibrationInput {
  Field potential;
  ZeroOneForm dbar;
};

/// Least-squares choice of c_{k,N} minimizing the dbar-reproduction residual
/// of K^N_0 over the test data; throws if the residual exceeds 0.1 or the
/// system is rank-deficient. The finite-difference step must exceed the
/// operator's exclusion radius (both default from the rule density).
KernelConstants calibrate(int n, double N, KernelVariant var,
                          const std::vector<CalibrationInput>& tests, const QuadratureRule& ball,
                          const std::vector<Point>& z_samples, double fd_step = -1.0,
                          double excl_radius = -1.0);

/// Max dbar-reproduction error of the calibrated solver on one test form.
double dbar_residual(const KernelOperator& op, const CalibrationInput& test,
                     const std::vector<Point>& z_samples, double fd_step = -1.0);

/// Overall constant of the Q^{N,1} display, fitted so that Q^{N,1}(theta)
/// matches K^N_0(theta) at the given boundary samples in least squares.
double calibrate_q1(const KernelOperator& op, const ZeroOneForm& theta,
                    const std::vector<Point>& boundary_samples);

/// Default finite-difference step for quadrature-produced solutions.
double default_operator_fd_step(const QuadratureRule& ball);

}  // namespace corona
