#include "corona_lab/forms.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace corona {

int concat_sign(std::uint32_t a, std::uint32_t b) {
  int inversions = 0;
  std::uint32_t bb = b;
  while (bb) {
    const int pos = std::countr_zero(bb);
    bb &= bb - 1;
    inversions += std::popcount(a >> (pos + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

Form Form::scalar(int n, cxd a) {
  Form f(n);
  f.add_term(0, 0, 0, a);
  return f;
}

Form Form::dw(int n, int j) {
  Form f(n);
  f.add_term(static_cast<std::uint8_t>(1u << j), 0, 0, 1.0);
  return f;
}

Form Form::dwb(int n, int j) {
  Form f(n);
  f.add_term(0, static_cast<std::uint8_t>(1u << j), 0, 1.0);
  return f;
}

Form Form::dzb(int n, int j) {
  Form f(n);
  f.add_term(0, 0, static_cast<std::uint8_t>(1u << j), 1.0);
  return f;
}

void Form::add_term(std::uint8_t w, std::uint8_t wb, std::uint8_t zb, cxd a) {
  if (a == cxd{}) return;
  for (int i = 0; i < size_; ++i) {
    if (t_[i].w == w && t_[i].wb == wb && t_[i].zb == zb) {
      t_[i].a += a;
      return;
    }
  }
  if (size_ == kCapacity) throw std::runtime_error("Form: term capacity exceeded");
  t_[size_++] = {w, wb, zb, a};
}

cxd Form::coefficient(std::uint8_t w, std::uint8_t wb, std::uint8_t zb) const {
  for (int i = 0; i < size_; ++i)
    if (t_[i].w == w && t_[i].wb == wb && t_[i].zb == zb) return t_[i].a;
  return {};
}

Form& Form::operator+=(const Form& o) {
  for (const FormTerm& t : o) add_term(t.w, t.wb, t.zb, t.a);
  return *this;
}

Form operator*(cxd s, const Form& f) {
  Form r(f.n_);
  for (const FormTerm& t : f) r.add_term(t.w, t.wb, t.zb, s * t.a);
  return r;
}

Form wedge_zcap(const Form& a, const Form& b, int zcap) {
  Form r(a.n_);
  for (const FormTerm& ta : a)
    for (const FormTerm& tb : b) {
      if ((ta.w & tb.w) || (ta.wb & tb.wb) || (ta.zb & tb.zb)) continue;
      const std::uint8_t zb = ta.zb | tb.zb;
      if (zcap >= 0 && std::popcount(static_cast<std::uint32_t>(zb)) > zcap) continue;
      const int sgn = concat_sign(a.combined_mask(ta), b.combined_mask(tb));
      r.add_term(ta.w | tb.w, ta.wb | tb.wb, zb, static_cast<double>(sgn) * ta.a * tb.a);
    }
  return r;
}

Form wedge(const Form& a, const Form& b) { return wedge_zcap(a, b, -1); }

Form Form::z_degree(int q) const {
  Form r(n_);
  for (const FormTerm& t : *this)
    if (std::popcount(static_cast<std::uint32_t>(t.zb)) == q) r.add_term(t.w, t.wb, t.zb, t.a);
  return r;
}

double Form::magnitude() const {
  double s = 0.0;
  for (const FormTerm& t : *this) s += std::abs(t.a);
  return s;
}

Form wb_form(const MaskCoefs& coefs) {
  Form f(coefs.n);
  for (std::uint8_t m = 0; m < (1u << coefs.n); ++m)
    if (coefs.c[m] != cxd{}) f.add_term(0, m, 0, coefs.c[m]);
  return f;
}

MaskCoefs contract_volume(const Form& kernel, const MaskCoefs& operand) {
  const int n = kernel.dim();
  const std::uint8_t full = static_cast<std::uint8_t>((1u << n) - 1);
  MaskCoefs out;
  out.n = n;
  for (const FormTerm& tk : kernel) {
    const std::uint8_t need = static_cast<std::uint8_t>(full & ~tk.wb);
    if (tk.w != full) continue;
    const cxd c = operand.c[need];
    if (c == cxd{}) continue;
    // sign of sorting (kernel monomial, dwb_need) into canonical order: the
    // operand has no dw or dzb generators
    const std::uint32_t ka = (static_cast<std::uint32_t>(tk.w)) |
                             (static_cast<std::uint32_t>(tk.wb) << n) |
                             (static_cast<std::uint32_t>(tk.zb) << (2 * n));
    const std::uint32_t kb = static_cast<std::uint32_t>(need) << n;
    out.c[tk.zb] += static_cast<double>(concat_sign(ka, kb)) * tk.a * c;
  }
  return out;
}

}  // namespace corona
