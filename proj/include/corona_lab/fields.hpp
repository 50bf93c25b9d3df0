#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "corona_lab/types.hpp"

namespace corona {

/// Value and first-order partials of a scalar function at a point.
struct Jet {
  int n = 1;
  cxd v{};
  std::array<cxd, kMaxDim> dz{};   // d/dz_j
  std::array<cxd, kMaxDim> dzb{};  // d/dzbar_j
};

Jet jet_const(int n, cxd c);
Jet jet_add(const Jet& a, const Jet& b);
Jet jet_sub(const Jet& a, const Jet& b);
Jet jet_mul(const Jet& a, const Jet& b);
Jet jet_conj(const Jet& a);
Jet jet_recip(const Jet& a);
Jet jet_scale(cxd s, const Jet& a);
Jet jet_pow_real(const Jet& a, double p);  // a real-positive valued

/// Evaluable scalar field on the closed ball. Fields constructed from the
/// closed-form builders carry exact first-order partials; value-only fields
/// fall back to central finite differences with step h.
class Field {
public:
  Field() = default;

  static Field from_jet(int n, std::function<Jet(const Point&)> fn);
  static Field value_only(int n, std::function<cxd(const Point&)> fn, double h = 1e-4);
  static Field constant(int n, cxd c);
  static Field coordinate(int n, int j);

  int dim() const { return n_; }
  bool exact_derivs() const { return exact_; }
  double fd_step() const { return h_; }

  cxd value(const Point& z) const;
  cxd operator()(const Point& z) const { return value(z); }
  Jet jet(const Point& z) const;

  // (a I + R) f when f belongs to a family closed under the radial derivative
  // (polynomials, Cauchy powers and their linear combinations).
  bool has_radial_ladder() const { return static_cast<bool>(shift_); }
  Field radial_shift(cxd a) const;

  friend Field operator+(const Field& a, const Field& b);
  friend Field operator-(const Field& a, const Field& b);
  friend Field operator*(const Field& a, const Field& b);
  friend Field operator*(cxd s, const Field& a);
  friend Field conj(const Field& a);
  friend Field recip(const Field& a);
  friend Field pow_real(const Field& a, double p);

  using ShiftFn = std::function<Field(cxd)>;
  void set_radial_ladder(ShiftFn fn) { shift_ = std::make_shared<ShiftFn>(std::move(fn)); }

private:
  int n_ = 0;
  bool exact_ = false;
  double h_ = 1e-4;
  std::function<Jet(const Point&)> jet_;
  std::function<cxd(const Point&)> val_;
  std::shared_ptr<ShiftFn> shift_;
};

/// Holomorphic polynomial with exact derivatives of every order.
class PolyHolo {
public:
  explicit PolyHolo(int n) : n_(n) {}
  static PolyHolo constant(int n, cxd c);
  static PolyHolo coordinate(int n, int j);
  static PolyHolo monomial(int n, const MultiIndex& a, cxd c);

  int dim() const { return n_; }
  const std::map<MultiIndex, cxd>& coefficients() const { return coef_; }
  void add_term(const MultiIndex& a, cxd c);

  cxd value(const Point& z) const;
  Jet jet(const Point& z) const;

  PolyHolo derivative(int j) const;
  PolyHolo radial_shift(cxd a) const;  // (a I + R) p

  double coef_abs_sum() const;    // sup bound over the closed ball
  double gradient_bound() const;  // sum |c_a| |a|, Lipschitz constant on the closed ball

  PolyHolo operator+(const PolyHolo& o) const;
  PolyHolo operator*(const PolyHolo& o) const;
  PolyHolo scaled(cxd s) const;

  Field to_field() const;

private:
  int n_;
  std::map<MultiIndex, cxd> coef_;
};

/// (1 - <z, w0>)^{-beta}; exact jets and radial ladder.
Field cauchy_power(const Point& w0, double beta);

/// |1 - <z, eta0>|^a (real-valued); exact jets away from the singular point.
Field distance_power(const Point& eta0, double a);

/// (0,1)-form: n coefficient fields of dzbar_1..dzbar_n.
struct ZeroOneForm {
  std::vector<Field> comp;
  int dim() const { return static_cast<int>(comp.size()); }
  double pointwise_norm(const Point& z) const;
};

// ---- differential operators (indices 0-based) -------------------------------

cxd d_holo(const Field& f, int j, const Point& z);
cxd d_tangential(const Field& f, int i, int j, const Point& z);  // zbar_j D_i - zbar_i D_j, i < j
cxd radial(const Field& f, const Point& z);                      // sum z_j D_j f

/// R_l^k = Gamma(l)/Gamma(l+k) ((l+k-1)I+R)...(lI+R) applied at z. Exact for
/// ladder fields; k = 1 supported for any field via its jet.
cxd radial_lk(const Field& f, double l, int k, const Point& z);

/// (|df|, |d_T f|): sums of moduli of D_j f and D_{i,j} f.
std::pair<double, double> grad_norms(const Field& f, const Point& z);

/// Central finite-difference dbar coefficients at z (independent oracle).
std::vector<cxd> dbar_fd(const Field& f, const Point& z, double h = 1e-4);

double pochhammer(double l, int k);

}  // namespace corona
