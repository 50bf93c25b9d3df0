#include "corona_lab/lambda.hpp"

#include <bit>
#include <stdexcept>

namespace corona {

int LambdaElement::grade_of(std::uint8_t mask) const {
  return std::popcount(static_cast<std::uint32_t>(mask));
}

LambdaElement LambdaElement::basis(int m, std::uint8_t mask) {
  LambdaElement e;
  e.m = m;
  e.comp[mask] = 1.0;
  return e;
}

LambdaElement lambda_wedge(const LambdaElement& a, const LambdaElement& b) {
  LambdaElement r;
  r.m = a.m;
  for (std::uint8_t i = 0; i < 8; ++i) {
    if (a.comp[i] == cxd{}) continue;
    for (std::uint8_t j = 0; j < 8; ++j) {
      if (b.comp[j] == cxd{} || (i & j)) continue;
      r.comp[i | j] += static_cast<double>(concat_sign(i, j)) * a.comp[i] * b.comp[j];
    }
  }
  return r;
}

std::vector<DeltaTerm> delta_expansion(std::uint8_t mask) {
  std::vector<DeltaTerm> out;
  int j = 0;
  std::uint8_t mm = mask;
  while (mm) {
    const int pos = std::countr_zero(static_cast<std::uint32_t>(mm));
    mm &= static_cast<std::uint8_t>(mm - 1);
    DeltaTerm t;
    t.mask = static_cast<std::uint8_t>(mask & ~(1u << pos));
    t.removed = pos;
    t.sign = (j % 2 == 0) ? 1.0 : -1.0;
    out.push_back(t);
    ++j;
  }
  return out;
}

LambdaElement delta(const std::array<cxd, 3>& v, const LambdaElement& x) {
  LambdaElement r;
  r.m = x.m;
  bool any = false;
  for (std::uint8_t mask = 1; mask < 8; ++mask) {
    if (x.comp[mask] == cxd{}) continue;
    any = true;
    for (const DeltaTerm& t : delta_expansion(mask))
      r.comp[t.mask] += t.sign * v[t.removed] * x.comp[mask];
  }
  if (!any && x.comp[0] != cxd{})
    throw std::invalid_argument("delta: grade-0 input");
  return r;
}

void LambdaFieldForm::add(std::uint8_t emask, std::uint8_t jmask, const Field& f) {
  if (std::popcount(static_cast<std::uint32_t>(emask)) != grade_)
    throw std::invalid_argument("LambdaFieldForm::add: e-mask grade mismatch");
  if (std::popcount(static_cast<std::uint32_t>(jmask)) != q_)
    throw std::invalid_argument("LambdaFieldForm::add: form-degree mismatch");
  auto key = std::make_pair(emask, jmask);
  auto it = c_.find(key);
  if (it == c_.end())
    c_.emplace(key, f);
  else
    it->second = it->second + f;
}

std::array<MaskCoefs, 8> LambdaFieldForm::eval(const Point& w) const {
  std::array<MaskCoefs, 8> out{};
  for (auto& mc : out) mc.n = n_;
  for (const auto& [key, f] : c_) out[key.first].c[key.second] += f.value(w);
  return out;
}

LambdaFieldForm wedge(const LambdaFieldForm& a, const LambdaFieldForm& b) {
  if (a.m_ != b.m_ || a.n_ != b.n_) throw std::invalid_argument("LambdaFieldForm wedge: mismatch");
  LambdaFieldForm r(a.m_, a.n_, a.grade_ + b.grade_, a.q_ + b.q_);
  for (const auto& [ka, fa] : a.c_)
    for (const auto& [kb, fb] : b.c_) {
      if (ka.first & kb.first) continue;   // e_I ^ e_I = 0
      if (ka.second & kb.second) continue; // repeated dwb
      const int se = concat_sign(ka.first, kb.first);
      const int sj = concat_sign(ka.second, kb.second);
      const double sgn = static_cast<double>(se * sj);
      r.add(static_cast<std::uint8_t>(ka.first | kb.first),
            static_cast<std::uint8_t>(ka.second | kb.second), sgn * (fa * fb));
    }
  return r;
}

}  // namespace corona
