#include "corona_lab/fields.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace corona {

namespace {
int same_dim(const Jet& a, const Jet& b) {
  if (a.n != b.n) throw std::invalid_argument("jet arithmetic: dimension mismatch");
  return a.n;
}
}  // namespace

Jet jet_const(int n, cxd c) {
  Jet j;
  j.n = n;
  j.v = c;
  return j;
}

Jet jet_add(const Jet& a, const Jet& b) {
  Jet j = a;
  same_dim(a, b);
  j.v += b.v;
  for (int k = 0; k < a.n; ++k) {
    j.dz[k] += b.dz[k];
    j.dzb[k] += b.dzb[k];
  }
  return j;
}

Jet jet_sub(const Jet& a, const Jet& b) { return jet_add(a, jet_scale(-1.0, b)); }

Jet jet_mul(const Jet& a, const Jet& b) {
  Jet j;
  j.n = same_dim(a, b);
  j.v = a.v * b.v;
  for (int k = 0; k < a.n; ++k) {
    j.dz[k] = a.dz[k] * b.v + a.v * b.dz[k];
    j.dzb[k] = a.dzb[k] * b.v + a.v * b.dzb[k];
  }
  return j;
}

Jet jet_conj(const Jet& a) {
  Jet j;
  j.n = a.n;
  j.v = std::conj(a.v);
  for (int k = 0; k < a.n; ++k) {
    j.dz[k] = std::conj(a.dzb[k]);
    j.dzb[k] = std::conj(a.dz[k]);
  }
  return j;
}

Jet jet_scale(cxd s, const Jet& a) {
  Jet j = a;
  j.v *= s;
  for (int k = 0; k < a.n; ++k) {
    j.dz[k] *= s;
    j.dzb[k] *= s;
  }
  return j;
}

Jet jet_recip(const Jet& a) {
  Jet j;
  j.n = a.n;
  const cxd inv = 1.0 / a.v;
  j.v = inv;
  const cxd m = -inv * inv;
  for (int k = 0; k < a.n; ++k) {
    j.dz[k] = m * a.dz[k];
    j.dzb[k] = m * a.dzb[k];
  }
  return j;
}

Jet jet_pow_real(const Jet& a, double p) {
  Jet j;
  j.n = a.n;
  const double x = a.v.real();
  if (!(x > 0.0)) throw std::domain_error("jet_pow_real: base not positive");
  j.v = std::pow(x, p);
  const cxd m = p * std::pow(x, p - 1.0);
  for (int k = 0; k < a.n; ++k) {
    j.dz[k] = m * a.dz[k];
    j.dzb[k] = m * a.dzb[k];
  }
  return j;
}

// ---- Field ------------------------------------------------------------------

Field Field::from_jet(int n, std::function<Jet(const Point&)> fn) {
  Field f;
  f.n_ = n;
  f.exact_ = true;
  f.jet_ = std::move(fn);
  return f;
}

Field Field::value_only(int n, std::function<cxd(const Point&)> fn, double h) {
  Field f;
  f.n_ = n;
  f.exact_ = false;
  f.h_ = h;
  f.val_ = std::move(fn);
  return f;
}

Field Field::constant(int n, cxd c) {
  Field f = from_jet(n, [n, c](const Point&) { return jet_const(n, c); });
  f.set_radial_ladder([n, c](cxd a) { return Field::constant(n, a * c); });
  return f;
}

Field Field::coordinate(int n, int j) {
  if (j < 0 || j >= n) throw std::out_of_range("Field::coordinate: index");
  return PolyHolo::coordinate(n, j).to_field();
}

cxd Field::value(const Point& z) const {
  if (val_) return val_(z);
  return jet_(z).v;
}

Jet Field::jet(const Point& z) const {
  if (jet_) return jet_(z);
  // finite-difference fallback
  Jet j;
  j.n = n_;
  j.v = val_(z);
  const double h = h_;
  for (int k = 0; k < n_; ++k) {
    Point zp = z, zm = z;
    zp.coord(k) += h;
    zm.coord(k) -= h;
    const cxd fx = (val_(zp) - val_(zm)) / (2.0 * h);
    zp = z;
    zm = z;
    zp.coord(k) += cxd(0.0, h);
    zm.coord(k) -= cxd(0.0, h);
    const cxd fy = (val_(zp) - val_(zm)) / (2.0 * h);
    j.dz[k] = 0.5 * (fx - cxd(0.0, 1.0) * fy);
    j.dzb[k] = 0.5 * (fx + cxd(0.0, 1.0) * fy);
  }
  return j;
}

Field Field::radial_shift(cxd a) const {
  if (shift_) return (*shift_)(a);
  // generic (aI + R)f via the jet of f; the result is value-only
  Field self = *this;
  return Field::value_only(n_, [self, a](const Point& z) {
    const Jet j = self.jet(z);
    cxd s = a * j.v;
    for (int k = 0; k < j.n; ++k) s += z[k] * j.dz[k];
    return s;
  });
}

namespace {
Field combine(const Field& a, const Field& b, Jet (*op)(const Jet&, const Jet&)) {
  if (a.dim() != b.dim()) throw std::invalid_argument("field arithmetic: dimension mismatch");
  return Field::from_jet(a.dim(), [a, b, op](const Point& z) { return op(a.jet(z), b.jet(z)); });
}
}  // namespace

Field operator+(const Field& a, const Field& b) {
  Field f = combine(a, b, jet_add);
  if (a.has_radial_ladder() && b.has_radial_ladder()) {
    Field ca = a, cb = b;
    f.set_radial_ladder([ca, cb](cxd t) { return ca.radial_shift(t) + cb.radial_shift(t); });
  }
  return f;
}

Field operator-(const Field& a, const Field& b) { return combine(a, b, jet_sub); }

Field operator*(const Field& a, const Field& b) { return combine(a, b, jet_mul); }

Field operator*(cxd s, const Field& a) {
  Field f = Field::from_jet(a.dim(), [s, a](const Point& z) { return jet_scale(s, a.jet(z)); });
  if (a.has_radial_ladder()) {
    Field ca = a;
    f.set_radial_ladder([s, ca](cxd t) { return s * ca.radial_shift(t); });
  }
  return f;
}

Field conj(const Field& a) {
  return Field::from_jet(a.dim(), [a](const Point& z) { return jet_conj(a.jet(z)); });
}

Field recip(const Field& a) {
  return Field::from_jet(a.dim(), [a](const Point& z) { return jet_recip(a.jet(z)); });
}

Field pow_real(const Field& a, double p) {
  return Field::from_jet(a.dim(), [a, p](const Point& z) { return jet_pow_real(a.jet(z), p); });
}

// ---- PolyHolo ---------------------------------------------------------------

PolyHolo PolyHolo::constant(int n, cxd c) {
  PolyHolo p(n);
  p.add_term(mi(0), c);
  return p;
}

PolyHolo PolyHolo::coordinate(int n, int j) {
  if (j < 0 || j >= n) throw std::out_of_range("PolyHolo::coordinate: index");
  PolyHolo p(n);
  MultiIndex a;
  a.e[j] = 1;
  p.add_term(a, 1.0);
  return p;
}

PolyHolo PolyHolo::monomial(int n, const MultiIndex& a, cxd c) {
  PolyHolo p(n);
  p.add_term(a, c);
  return p;
}

void PolyHolo::add_term(const MultiIndex& a, cxd c) {
  for (int j = n_; j < kMaxDim; ++j)
    if (a.e[j] != 0) throw std::invalid_argument("PolyHolo: exponent beyond dimension");
  coef_[a] += c;
}

cxd PolyHolo::value(const Point& z) const {
  cxd s = 0.0;
  for (const auto& [a, c] : coef_) {
    cxd m = c;
    for (int j = 0; j < n_; ++j)
      for (int e = 0; e < a.e[j]; ++e) m *= z[j];
    s += m;
  }
  return s;
}

Jet PolyHolo::jet(const Point& z) const {
  Jet j;
  j.n = n_;
  j.v = value(z);
  for (int k = 0; k < n_; ++k) j.dz[k] = derivative(k).value(z);
  return j;
}

PolyHolo PolyHolo::derivative(int j) const {
  if (j < 0 || j >= n_) throw std::out_of_range("PolyHolo::derivative: index");
  PolyHolo d(n_);
  for (const auto& [a, c] : coef_) {
    if (a.e[j] == 0) continue;
    MultiIndex b = a;
    b.e[j] -= 1;
    d.add_term(b, c * static_cast<double>(a.e[j]));
  }
  return d;
}

PolyHolo PolyHolo::radial_shift(cxd a) const {
  PolyHolo r(n_);
  for (const auto& [idx, c] : coef_) r.add_term(idx, c * (a + static_cast<double>(idx.order())));
  return r;
}

double PolyHolo::coef_abs_sum() const {
  double s = 0.0;
  for (const auto& [a, c] : coef_) s += std::abs(c);
  return s;
}

double PolyHolo::gradient_bound() const {
  double s = 0.0;
  for (const auto& [a, c] : coef_) s += std::abs(c) * a.order();
  return s;
}

PolyHolo PolyHolo::operator+(const PolyHolo& o) const {
  PolyHolo r = *this;
  for (const auto& [a, c] : o.coef_) r.add_term(a, c);
  return r;
}

PolyHolo PolyHolo::operator*(const PolyHolo& o) const {
  PolyHolo r(n_);
  for (const auto& [a, ca] : coef_)
    for (const auto& [b, cb] : o.coef_) {
      MultiIndex s;
      for (int j = 0; j < kMaxDim; ++j) s.e[j] = a.e[j] + b.e[j];
      r.add_term(s, ca * cb);
    }
  return r;
}

PolyHolo PolyHolo::scaled(cxd s) const {
  PolyHolo r(n_);
  for (const auto& [a, c] : coef_) r.add_term(a, s * c);
  return r;
}

Field PolyHolo::to_field() const {
  PolyHolo self = *this;
  Field f = Field::from_jet(n_, [self](const Point& z) { return self.jet(z); });
  f.set_radial_ladder([self](cxd a) { return self.radial_shift(a).to_field(); });
  return f;
}

// ---- closed-form builders ----------------------------------------------------

Field cauchy_power(const Point& w0, double beta) {
  const int n = w0.dim();
  Field f = Field::from_jet(n, [w0, beta, n](const Point& z) {
    const cxd base = 1.0 - hdot(z, w0);
    Jet j;
    j.n = n;
    j.v = std::pow(base, -beta);
    const cxd m = beta * std::pow(base, -beta - 1.0);
    for (int k = 0; k < n; ++k) j.dz[k] = m * std::conj(w0[k]);
    return j;
  });
  // (aI + R)(1-c)^{-beta} = (a - beta)(1-c)^{-beta} + beta (1-c)^{-beta-1}
  f.set_radial_ladder([w0, beta](cxd a) {
    return (a - beta) * cauchy_power(w0, beta) + beta * cauchy_power(w0, beta + 1.0);
  });
  return f;
}

Field distance_power(const Point& eta0, double a) {
  const int n = eta0.dim();
  // |1-<z,eta0>|^a = u^{a/2}, u = (1-c)(1-cbar)
  Field one = Field::constant(n, 1.0);
  Field c = Field::from_jet(n, [eta0, n](const Point& z) {
    Jet j;
    j.n = n;
    j.v = hdot(z, eta0);
    for (int k = 0; k < n; ++k) j.dz[k] = std::conj(eta0[k]);
    return j;
  });
  Field u = (one - c) * conj(one - c);
  return Field::from_jet(n, [u, a, n](const Point& z) {
    const Jet ju = u.jet(z);
    if (!(ju.v.real() > 0.0)) {
      // the singular point itself: 0 for positive exponents, +inf otherwise
      return jet_const(n, a > 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    }
    return jet_pow_real(ju, 0.5 * a);
  });
}

double ZeroOneForm::pointwise_norm(const Point& z) const {
  double s = 0.0;
  for (const Field& f : comp) s += std::abs(f.value(z));
  return s;
}

// ---- differential operators ---------------------------------------------------

cxd d_holo(const Field& f, int j, const Point& z) {
  if (j < 0 || j >= f.dim()) throw std::out_of_range("d_holo: index");
  return f.jet(z).dz[j];
}

cxd d_tangential(const Field& f, int i, int j, const Point& z) {
  if (i >= j) throw std::invalid_argument("d_tangential: requires i < j");
  if (j >= f.dim()) throw std::out_of_range("d_tangential: index");
  const Jet jt = f.jet(z);
  return std::conj(z[j]) * jt.dz[i] - std::conj(z[i]) * jt.dz[j];
}

cxd radial(const Field& f, const Point& z) {
  const Jet j = f.jet(z);
  cxd s = 0.0;
  for (int k = 0; k < f.dim(); ++k) s += z[k] * j.dz[k];
  return s;
}

double pochhammer(double l, int k) {
  double p = 1.0;
  for (int j = 0; j < k; ++j) p *= (l + j);
  return p;
}

cxd radial_lk(const Field& f, double l, int k, const Point& z) {
  if (!(l > 0.0)) throw std::invalid_argument("radial_lk: l must be positive");
  if (k < 1) throw std::invalid_argument("radial_lk: k must be a positive integer");
  if (f.has_radial_ladder()) {
    Field g = f;
    for (int j = 0; j < k; ++j) g = g.radial_shift(l + j);
    return g.value(z) / pochhammer(l, k);
  }
  if (k == 1) {
    const Jet j = f.jet(z);
    cxd s = l * j.v;
    for (int m = 0; m < f.dim(); ++m) s += z[m] * j.dz[m];
    return s / l;
  }
  throw std::invalid_argument("radial_lk: k > 1 needs a field closed under R (polynomial or Cauchy power)");
}

std::pair<double, double> grad_norms(const Field& f, const Point& z) {
  const Jet j = f.jet(z);
  double dp = 0.0, dt = 0.0;
  for (int k = 0; k < f.dim(); ++k) dp += std::abs(j.dz[k]);
  for (int i = 0; i < f.dim(); ++i)
    for (int k = i + 1; k < f.dim(); ++k)
      dt += std::abs(std::conj(z[k]) * j.dz[i] - std::conj(z[i]) * j.dz[k]);
  return {dp, dt};
}

std::vector<cxd> dbar_fd(const Field& f, const Point& z, double h) {
  if (absval(z) + 1.5 * h > 1.0)
    throw std::invalid_argument("dbar_fd: point too close to the boundary for step h");
  std::vector<cxd> out(f.dim());
  for (int k = 0; k < f.dim(); ++k) {
    Point zp = z, zm = z;
    zp.coord(k) += h;
    zm.coord(k) -= h;
    const cxd fx = (f.value(zp) - f.value(zm)) / (2.0 * h);
    zp = z;
    zm = z;
    zp.coord(k) += cxd(0.0, h);
    zm.coord(k) -= cxd(0.0, h);
    const cxd fy = (f.value(zp) - f.value(zm)) / (2.0 * h);
    out[k] = 0.5 * (fx + cxd(0.0, 1.0) * fy);
  }
  return out;
}

}  // namespace corona
