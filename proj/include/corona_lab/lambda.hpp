#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "corona_lab/fields.hpp"
#include "corona_lab/forms.hpp"

namespace corona {

/// Grade-l element of Lambda(C^m), m <= 3: coefficients over masks of e_0..e_{m-1}.
struct LambdaElement {
  int m = 2;
  std::array<cxd, 8> comp{};

  int grade_of(std::uint8_t mask) const;
  static LambdaElement basis(int m, std::uint8_t mask);
};

/// e_I wedge e_J with the ordered-basis sign; 0 on overlap.
LambdaElement lambda_wedge(const LambdaElement& a, const LambdaElement& b);

/// Antiderivation: delta_v(e_{i1} ^ ... ^ e_{il}) = sum_j (-1)^{j-1} v_{i_j} e_{I \ i_j}.
LambdaElement delta(const std::array<cxd, 3>& v, const LambdaElement& x);

struct DeltaTerm {
  std::uint8_t mask;  // I with one index removed
  int removed;        // the removed generator index
  double sign;        // (-1)^{j-1}
};
std::vector<DeltaTerm> delta_expansion(std::uint8_t mask);

/// Lambda-valued antiholomorphic form: coefficients are Fields indexed by
/// (e-mask I, dwb-mask J); all terms share one form degree q = popcount(J).
class LambdaFieldForm {
public:
  LambdaFieldForm(int m, int n, int grade, int q) : m_(m), n_(n), grade_(grade), q_(q) {}

  int generators() const { return m_; }
  int dim() const { return n_; }
  int grade() const { return grade_; }
  int form_degree() const { return q_; }

  void add(std::uint8_t emask, std::uint8_t jmask, const Field& f);
  const std::map<std::pair<std::uint8_t, std::uint8_t>, Field>& coefficients() const { return c_; }

  /// Numeric value at a point: per e-mask, the (0,q) coefficients over dwb masks.
  std::array<MaskCoefs, 8> eval(const Point& w) const;

  friend LambdaFieldForm wedge(const LambdaFieldForm& a, const LambdaFieldForm& b);

private:
  int m_, n_, grade_, q_;
  std::map<std::pair<std::uint8_t, std::uint8_t>, Field> c_;
};

}  // namespace corona
