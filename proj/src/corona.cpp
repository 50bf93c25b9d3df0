#include "corona_lab/corona.hpp"

#include <bit>
#include <cmath>

#include "corona_lab/parallel.hpp"
#include "corona_lab/spaces.hpp"

namespace corona {

InfGCertificate certify_inf_g(const std::vector<PolyHolo>& g, double lattice_step) {
  if (g.empty()) throw std::invalid_argument("certify_inf_g: no generators");
  const int n = g[0].dim();
  if (n == 3) lattice_step = std::max(lattice_step, 0.2);  // lattice size cap
  InfGCertificate cert;
  double lip2 = 0.0;
  for (const PolyHolo& p : g) lip2 += p.gradient_bound() * p.gradient_bound();
  cert.lipschitz = std::sqrt(lip2);
  // lattice points outside the ball are projected onto the sphere; every ball
  // point then lies within step*sqrt(2n) of a kept sample
  cert.covering_radius = lattice_step * std::sqrt(2.0 * n);

  const int steps = static_cast<int>(std::ceil(2.0 / lattice_step));
  std::vector<double> axis(steps + 1);
  for (int i = 0; i <= steps; ++i) axis[i] = -1.0 + 2.0 * i / steps;

  const long long total = [&] {
    long long t = 1;
    for (int d = 0; d < 2 * n; ++d) t *= (steps + 1);
    return t;
  }();
  std::vector<double> mins(static_cast<std::size_t>(total), 1e300);
  const double outer = 1.0 + cert.covering_radius;
  parallel_for(static_cast<std::size_t>(total), [&](std::size_t flat) {
    std::size_t rest = flat;
    std::array<double, 2 * kMaxDim> x{};
    for (int d = 0; d < 2 * n; ++d) {
      x[d] = axis[rest % (steps + 1)];
      rest /= (steps + 1);
    }
    double r2 = 0.0;
    for (int d = 0; d < 2 * n; ++d) r2 += x[d] * x[d];
    if (r2 > outer * outer) return;
    double scale_by = 1.0;
    if (r2 > 1.0) scale_by = 1.0 / std::sqrt(r2);
    Point z(n);
    for (int j = 0; j < n; ++j) z.coord(j) = scale_by * cxd(x[2 * j], x[2 * j + 1]);
    double s = 0.0;
    for (const PolyHolo& p : g) s += std::norm(p.value(z));
    mins[flat] = std::sqrt(s);
  });
  double gmin = 1e300;
  for (double v : mins) gmin = std::min(gmin, v);
  cert.grid_min = gmin;
  cert.certified = gmin - cert.lipschitz * cert.covering_radius;
  return cert;
}

ZeroOneForm CoronaData::omega(int i, int j) const {
  ZeroOneForm w;
  for (int a = 0; a < n; ++a) w.comp.push_back(G[i] * dbarG[j][a] - G[j] * dbarG[i][a]);
  return w;
}

Field CoronaData::omega123_coef(int a, int b) const {
  if (m != 3) throw std::invalid_argument("omega123: needs three generators");
  // 2 (G_0 dbG_1 ^ dbG_2 + G_1 dbG_2 ^ dbG_0 + G_2 dbG_0 ^ dbG_1), coefficient of dwb_a ^ dwb_b
  auto pair_coef = [&](int p, int q) {
    return dbarG[p][a] * dbarG[q][b] - dbarG[p][b] * dbarG[q][a];
  };
  Field s = G[0] * pair_coef(1, 2) + G[1] * pair_coef(2, 0) + G[2] * pair_coef(0, 1);
  return 2.0 * s;
}

CoronaData make_corona_data(const std::vector<PolyHolo>& g, double delta_required) {
  if (g.empty()) throw std::invalid_argument("corona data: no generators");
  CoronaData d;
  d.m = static_cast<int>(g.size());
  d.n = g[0].dim();
  d.g = g;

  const InfGCertificate cert = certify_inf_g(g);
  if (!(cert.certified > 0.0) || cert.certified < delta_required)
    throw std::runtime_error("corona data: inf|g| certification failed (certified " +
                             std::to_string(cert.certified) + ")");

  // |g|^2 and its reciprocal, with exact jets
  Field mod2 = Field::constant(d.n, 0.0);
  for (const PolyHolo& p : g) {
    Field pf = p.to_field();
    d.g_fields.push_back(pf);
    mod2 = mod2 + pf * conj(pf);
  }
  Field inv = recip(mod2);
  for (int j = 0; j < d.m; ++j) d.G.push_back(conj(d.g_fields[j]) * inv);

  // dbar_i G_j = [conj(D_i g_j) |g|^2 - conj(g_j) dbar_i |g|^2] / |g|^4,
  // with dbar_i |g|^2 = sum_l g_l conj(D_i g_l); built from polynomial
  // derivative fields so the coefficients carry exact jets of their own.
  std::vector<std::vector<Field>> dg(d.m);
  for (int j = 0; j < d.m; ++j)
    for (int i = 0; i < d.n; ++i) dg[j].push_back(g[j].derivative(i).to_field());

  for (int j = 0; j < d.m; ++j) {
    std::vector<Field> row;
    for (int i = 0; i < d.n; ++i) {
      Field dbar_mod2 = Field::constant(d.n, 0.0);
      for (int l = 0; l < d.m; ++l) dbar_mod2 = dbar_mod2 + d.g_fields[l] * conj(dg[l][i]);
      Field num = conj(dg[j][i]) * mod2 - conj(d.g_fields[j]) * dbar_mod2;
      row.push_back(num * inv * inv);
    }
    d.dbarG.push_back(row);
  }
  return d;
}

LambdaFieldForm koszul_operand(const CoronaData& data, const Field& f, int k) {
  LambdaFieldForm fG(data.m, data.n, 1, 0);
  for (int j = 0; j < data.m; ++j)
    fG.add(static_cast<std::uint8_t>(1u << j), 0, f * data.G[j]);
  LambdaFieldForm dbG(data.m, data.n, 1, 1);
  for (int j = 0; j < data.m; ++j)
    for (int i = 0; i < data.n; ++i)
      dbG.add(static_cast<std::uint8_t>(1u << j), static_cast<std::uint8_t>(1u << i),
              data.dbarG[j][i]);
  LambdaFieldForm v = fG;
  for (int s = 0; s < k; ++s) v = wedge(v, dbG);
  return v;
}

CoronaSolver::CoronaSolver(CoronaProblem problem, KernelConstants constants, QuadratureRule ball)
    : problem_(std::move(problem)),
      data_(make_corona_data(problem_.g, problem_.delta_required)),
      op_(std::move(constants), std::move(ball)),
      cert_(certify_inf_g(problem_.g)) {
  if (op_.constants().n != problem_.n) throw std::invalid_argument("CoronaSolver: dimension mismatch");
  if (data_.m == 2) {
    ZeroOneForm omf;
    const ZeroOneForm om = data_.omega(0, 1);
    for (int i = 0; i < data_.n; ++i) omf.comp.push_back(problem_.f * om.comp[i]);
    omega_f_nodes_ = cache_01(omf, op_.rule());
  }
  const int r = std::min(problem_.n, data_.m - 1);
  stage_cache_.resize(r + 1);
  stage_ready_.assign(r + 1, 0);
}

std::vector<cxd> CoronaSolver::t2_solve(const Point& z) const {
  if (data_.m != 2) throw std::invalid_argument("t2_solve: needs exactly two generators");
  const cxd u = solve_dbar_01(op_, omega_f_nodes_, z);
  const cxd fz = problem_.f.value(z);
  const cxd g0 = data_.g_fields[0].value(z);
  const cxd g1 = data_.g_fields[1].value(z);
  return {fz * data_.G[0].value(z) + g1 * u, fz * data_.G[1].value(z) - g0 * u};
}

// Materialized node values of (delta_g K)^{k-s}(V_k) ... one stage before the
// last application; stage_nodes(k) holds (delta_g K)^{k-1}(V_k) at the rule
// nodes, each entry a grade-2 Lambda with (0,1)-form coefficients.
const std::vector<std::array<MaskCoefs, 8>>& CoronaSolver::stage_nodes(int k) const {
  if (stage_ready_[k]) return stage_cache_[k];
  const QuadratureRule& rule = op_.rule();
  const std::size_t count = rule.size();

  LambdaFieldForm vk = koszul_operand(data_, problem_.f, k);
  std::vector<std::array<MaskCoefs, 8>> cur(count);
  parallel_for(count, [&](std::size_t i) { cur[i] = vk.eval(rule.nodes[i]); });

  // apply (delta_g K) k-1 times, materializing at all nodes each time
  for (int step = 1; step <= k - 1; ++step) {
    const int q_in = k - step;  // operand coefficients are (0, q_in + 1)-forms
    const int grade_in = k + 1 - (step - 1);
    std::vector<std::array<MaskCoefs, 8>> next(count);
    std::vector<MaskCoefs> operand(count);
    for (std::uint8_t mask = 0; mask < 8; ++mask) {
      if (std::popcount(static_cast<std::uint32_t>(mask)) != grade_in) continue;
      bool nonzero = false;
      for (std::size_t i = 0; i < count; ++i) {
        operand[i] = cur[i][mask];
        if (!nonzero && operand[i].magnitude() > 0.0) nonzero = true;
      }
      if (!nonzero) continue;
      for (std::size_t i = 0; i < count; ++i) {
        const MaskCoefs y = op_.apply(q_in, operand, rule.nodes[i]);
        // delta_g at the output point
        for (const DeltaTerm& t : delta_expansion(mask)) {
          const cxd gv = t.sign * data_.g_fields[t.removed].value(rule.nodes[i]);
          for (int mm = 0; mm < 8; ++mm) next[i][t.mask].c[mm] += gv * y.c[mm];
        }
      }
    }
    for (std::size_t i = 0; i < count; ++i)
      for (auto& mc : next[i]) mc.n = data_.n;
    cur.swap(next);
  }
  stage_cache_[k] = std::move(cur);
  stage_ready_[k] = 1;
  return stage_cache_[k];
}

std::vector<cxd> CoronaSolver::koszul_term(int k, const Point& z) const {
  const int m = data_.m;
  std::vector<cxd> out(m, 0.0);
  if (k == 0) {
    const cxd fz = problem_.f.value(z);
    for (int j = 0; j < m; ++j) out[j] = fz * data_.G[j].value(z);
    return out;
  }
  const std::vector<std::array<MaskCoefs, 8>>& nodes = stage_nodes(k);
  const QuadratureRule& rule = op_.rule();
  const std::size_t count = rule.size();
  std::vector<MaskCoefs> operand(count);
  // last application: operand coefficients are (0,1)-forms on grade-2 masks
  for (std::uint8_t mask = 0; mask < 8; ++mask) {
    if (std::popcount(static_cast<std::uint32_t>(mask)) != 2) continue;
    bool nonzero = false;
    for (std::size_t i = 0; i < count; ++i) {
      operand[i] = nodes[i][mask];
      if (!nonzero && operand[i].magnitude() > 0.0) nonzero = true;
    }
    if (!nonzero) continue;
    const MaskCoefs y = op_.apply(0, operand, z);
    for (const DeltaTerm& t : delta_expansion(mask)) {
      const cxd gv = t.sign * data_.g_fields[t.removed].value(z);
      // t.mask has exactly one bit: that solution component
      const int comp = std::countr_zero(static_cast<std::uint32_t>(t.mask));
      out[comp] += gv * y.c[0];
    }
  }
  return out;
}

std::vector<cxd> CoronaSolver::koszul_solve(const Point& z) const {
  const int r = std::min(problem_.n, data_.m - 1);
  std::vector<cxd> out(data_.m, 0.0);
  double sign = 1.0;
  for (int k = 0; k <= r; ++k) {
    const std::vector<cxd> term = koszul_term(k, z);
    for (int j = 0; j < data_.m; ++j) out[j] += sign * term[j];
    sign = -sign;
  }
  return out;
}

VerifyReport CoronaSolver::verify(const std::vector<Point>& residual_samples,
                                  const std::vector<Point>& dbar_samples, double fd_step,
                                  const Weight* theta, double p, const QuadratureRule* sphere,
                                  int radii_k) const {
  VerifyReport rep;
  const int m = data_.m;
  auto solve = [&](const Point& z) { return (m == 2) ? t2_solve(z) : koszul_solve(z); };

  for (const Point& z : residual_samples) {
    const std::vector<cxd> F = solve(z);
    cxd s = 0.0;
    for (int j = 0; j < m; ++j) s += data_.g_fields[j].value(z) * F[j];
    rep.max_reproduction_residual =
        std::max(rep.max_reproduction_residual, std::abs(s - problem_.f.value(z)));
  }

  rep.dbar_residual.assign(m, 0.0);
  for (const Point& z : dbar_samples) {
    for (int j = 0; j < m; ++j) {
      Field fj = Field::value_only(
          data_.n, [this, j, &solve](const Point& w) { return solve(w)[j]; }, fd_step);
      const std::vector<cxd> db = dbar_fd(fj, z, fd_step);
      for (const cxd& v : db) rep.dbar_residual[j] = std::max(rep.dbar_residual[j], std::abs(v));
    }
  }

  if (theta && sphere) {
    const std::vector<double> radii = dyadic_radii(radii_k);
    const double fn = hardy_norm(problem_.f, p, *theta, radii, *sphere);
    for (int j = 0; j < m; ++j) {
      Field fj = Field::value_only(
          data_.n, [this, j, &solve](const Point& w) { return solve(w)[j]; }, fd_step);
      rep.hardy_ratio.push_back(hardy_norm(fj, p, *theta, radii, *sphere) / fn);
    }
  }
  return rep;
}

double decompforms_envelope(const CoronaData& data, int k, const Point& w) {
  double dg = 0.0, dtg = 0.0;
  for (int j = 0; j < data.m; ++j) {
    const auto [a, b] = grad_norms(data.g_fields[j], w);
    dg += a;
    dtg += b;
  }
  const double m2 = 1.0 - abs2(w);
  return std::pow(m2, 0.5 - 0.5 * k) * (m2 * dg * dg + dtg * dtg);
}

double koszul_operand_magnitude(const CoronaData& data, const Field& f, int k, const Point& w) {
  const LambdaFieldForm v = koszul_operand(data, f, k);
  const std::array<MaskCoefs, 8> vals = v.eval(w);
  double best = 0.0;
  for (const MaskCoefs& mc : vals) best = std::max(best, mc.magnitude());
  return best;
}

double estcoef_envelope(const CoronaData& data, const Field& f, const Point& zeta,
                        const QuadratureRule& ball) {
  const int n = data.n;
  return integrate(ball, [&](const Point& w) {
    double dg = 0.0, dtg = 0.0;
    for (int j = 0; j < data.m; ++j) {
      const auto [a, b] = grad_norms(data.g_fields[j], w);
      dg += a;
      dtg += b;
    }
    const double m2 = 1.0 - abs2(w);
    const double num = std::abs(f.value(w)) * (m2 * dg * dg + dtg * dtg) * std::pow(m2, n);
    return cxd(num / std::pow(std::abs(1.0 - hdot(zeta, w)), 2.0 * n));
  }).real();
}

}  // namespace corona
