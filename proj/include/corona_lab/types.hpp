#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace corona {

using cxd = std::complex<double>;

inline constexpr int kMaxDim = 3;
inline constexpr double kBoundaryTol = 1e-12;

/// Point of the closed unit ball of C^n, 1 <= n <= kMaxDim.
class Point {
public:
  Point() = default;
  explicit Point(int n) : n_(check_dim(n)) {}
  Point(std::initializer_list<cxd> cs) : n_(check_dim(static_cast<int>(cs.size()))) {
    int j = 0;
    for (const cxd& c : cs) c_[j++] = c;
    check_in_ball();
  }
  Point(int n, const cxd* data) : n_(check_dim(n)) {
    for (int j = 0; j < n_; ++j) c_[j] = data[j];
    check_in_ball();
  }

  static Point origin(int n) { return Point(n); }
  static Point basis(int n, int j) {
    Point p(n);
    if (j < 0 || j >= n) throw std::out_of_range("Point::basis: index");
    p.c_[j] = 1.0;
    return p;
  }

  int dim() const { return n_; }
  cxd operator[](int j) const { return c_[j]; }
  cxd& coord(int j) { return c_[j]; }

  bool operator==(const Point& o) const {
    if (n_ != o.n_) return false;
    for (int j = 0; j < n_; ++j)
      if (c_[j] != o.c_[j]) return false;
    return true;
  }

private:
  static int check_dim(int n) {
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("Point: dimension must be in [1," + std::to_string(kMaxDim) + "]");
    return n;
  }
  void check_in_ball() const;

  int n_ = 1;
  std::array<cxd, kMaxDim> c_{};
};

/// Hermitian product z . conj(w) (the paper's z\bar w).
inline cxd hdot(const Point& z, const Point& w) {
  cxd s = 0.0;
  for (int j = 0; j < z.dim(); ++j) s += z[j] * std::conj(w[j]);
  return s;
}

inline double abs2(const Point& z) {
  double s = 0.0;
  for (int j = 0; j < z.dim(); ++j) s += std::norm(z[j]);
  return s;
}

inline double absval(const Point& z) { return std::sqrt(abs2(z)); }

inline Point scale(cxd t, const Point& z) {
  Point p(z.dim());
  for (int j = 0; j < z.dim(); ++j) p.coord(j) = t * z[j];
  return p;
}

inline Point add(const Point& a, const Point& b) {
  Point p(a.dim());
  for (int j = 0; j < a.dim(); ++j) p.coord(j) = a[j] + b[j];
  return p;
}

inline bool on_boundary(const Point& z, double tol = kBoundaryTol) {
  return std::abs(absval(z) - 1.0) <= tol;
}

inline void require_same_dim(const Point& a, const Point& b, const char* where) {
  if (a.dim() != b.dim()) throw std::invalid_argument(std::string(where) + ": dimension mismatch");
}

inline void require_boundary(const Point& z, const char* where, double tol = kBoundaryTol) {
  if (!on_boundary(z, tol)) throw std::invalid_argument(std::string(where) + ": point not on the unit sphere");
}

inline void require_interior(const Point& z, const char* where) {
  if (absval(z) >= 1.0) throw std::invalid_argument(std::string(where) + ": point not in the open ball");
}

/// Monomial exponent vector for C^n.
struct MultiIndex {
  std::array<int, kMaxDim> e{};
  int order() const { return e[0] + e[1] + e[2]; }
  bool operator<(const MultiIndex& o) const { return e < o.e; }
  bool operator==(const MultiIndex& o) const { return e == o.e; }
};

inline MultiIndex mi(int a0, int a1 = 0, int a2 = 0) {
  MultiIndex m;
  m.e = {a0, a1, a2};
  return m;
}

std::string format_complex(cxd v);

}  // namespace corona
