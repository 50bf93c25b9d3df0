#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "corona_lab/types.hpp"

namespace corona {

/// One monomial of the exterior algebra over the generators
/// dw_0..dw_{n-1} < dwb_0..dwb_{n-1} < dzb_0..dzb_{n-1} (that order).
struct FormTerm {
  std::uint8_t w = 0, wb = 0, zb = 0;
  cxd a{};
};

/// Sign of sorting the concatenation of two sorted generator monomials.
int concat_sign(std::uint32_t a, std::uint32_t b);

/// Sparse exterior form with complex coefficients; n <= kMaxDim. Terms live in
/// fixed inline storage (the kernel calculus stays well under the capacity).
class Form {
public:
  static constexpr int kCapacity = 64;

  explicit Form(int n) : n_(n) {}
  static Form scalar(int n, cxd a);
  static Form dw(int n, int j);
  static Form dwb(int n, int j);
  static Form dzb(int n, int j);

  int dim() const { return n_; }
  bool empty() const { return size_ == 0; }
  int size() const { return size_; }
  const FormTerm* begin() const { return t_.data(); }
  const FormTerm* end() const { return t_.data() + size_; }

  void add_term(std::uint8_t w, std::uint8_t wb, std::uint8_t zb, cxd a);
  cxd coefficient(std::uint8_t w, std::uint8_t wb, std::uint8_t zb) const;

  Form& operator+=(const Form& o);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator*(cxd s, const Form& f);
  friend Form wedge(const Form& a, const Form& b);
  /// wedge dropping products with more than zcap dzb generators (zcap < 0: keep all)
  friend Form wedge_zcap(const Form& a, const Form& b, int zcap);

  /// Keep only terms with popcount(zb) == q.
  Form z_degree(int q) const;

  /// Sum of coefficient moduli.
  double magnitude() const;

  std::uint32_t combined_mask(const FormTerm& t) const {
    return static_cast<std::uint32_t>(t.w) | (static_cast<std::uint32_t>(t.wb) << n_) |
           (static_cast<std::uint32_t>(t.zb) << (2 * n_));
  }

private:
  int n_;
  int size_ = 0;
  std::array<FormTerm, kCapacity> t_{};
};

/// Coefficients of a (0,q)-form over dwb (or dzb) masks; index = bitmask.
struct MaskCoefs {
  int n = 1;
  std::array<cxd, 8> c{};

  double magnitude() const {
    double s = 0.0;
    for (const cxd& v : c) s += std::abs(v);
    return s;
  }
};

/// Sum_J coefs[J] dwb_J as a Form.
Form wb_form(const MaskCoefs& coefs);

/// Wedge K with the operand (a pure-dwb form) and read off the coefficients of
/// the full volume monomial dw_{0..n-1} ^ dwb_{0..n-1} ^ dzb_J, per mask J.
MaskCoefs contract_volume(const Form& kernel, const MaskCoefs& operand);

}  // namespace corona
