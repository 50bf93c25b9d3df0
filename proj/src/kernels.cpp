#include "corona_lab/kernels.hpp"

#include <cassert>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "corona_lab/fitting.hpp"
#include "corona_lab/parallel.hpp"

namespace corona {

double phi(const Point& w, const Point& z) {
  require_same_dim(w, z, "phi");
  Point d(w.dim());
  for (int j = 0; j < w.dim(); ++j) d.coord(j) = w[j] - z[j];
  const double v = std::norm(hdot(d, w)) + (1.0 - abs2(w)) * abs2(d);
#ifndef NDEBUG
  const double ref = phi_reference(w, z);
  assert(std::abs(v - ref) <= 1e-10 * std::max(1.0, std::max(std::abs(v), std::abs(ref))));
#endif
  return v;
}

double phi_reference(const Point& w, const Point& z) {
  return std::norm(1.0 - hdot(w, z)) - (1.0 - abs2(w)) * (1.0 - abs2(z));
}

Point moebius(const Point& w, const Point& z) {
  require_same_dim(w, z, "moebius");
  const double w2 = abs2(w);
  if (w2 == 0.0) return scale(-1.0, z);
  const cxd zw = hdot(z, w);
  const double s = std::sqrt(std::max(0.0, 1.0 - w2));
  Point out(w.dim());
  for (int j = 0; j < w.dim(); ++j) {
    const cxd proj = (zw / w2) * w[j];
    const cxd perp = z[j] - proj;
    out.coord(j) = (w[j] - proj - s * perp) / (1.0 - zw);
  }
  return out;
}

double kernel_type(int n, const LParams& p) { return n + p.N - p.M - 2.0 * p.L; }

double l_kernel(const LParams& p, const Point& w, const Point& z) {
  if (!(p.N > 0.0)) throw std::invalid_argument("l_kernel: N must be positive");
  if (!(p.L < w.dim())) throw std::invalid_argument("l_kernel: L must be < n");
  const double ph = phi(w, z);
  if (p.L > 0.0 && ph < 1e-14) throw std::domain_error("l_kernel: singular evaluation (phi = 0)");
  const double m2 = 1.0 - abs2(w);
  return std::pow(m2, p.N - 1.0) /
         (std::pow(std::abs(1.0 - hdot(z, w)), p.M) * std::pow(ph, p.L));
}

cxd l_apply(const LParams& p, const Field& psi, const QuadratureRule& ball, const Point& z,
            double* excluded_weight) {
  if (ball.domain != Domain::Ball) throw std::invalid_argument("l_apply: needs a ball rule");
  const std::size_t count = ball.size();
  std::vector<cxd> buf(count);
  std::vector<double> excl(count, 0.0);
  parallel_for(count, [&](std::size_t i) {
    const Point& w = ball.nodes[i];
    if (p.L > 0.0 && phi(w, z) < 1e-14) {
      excl[i] = ball.weights[i];
      buf[i] = 0.0;
      return;
    }
    buf[i] = ball.weights[i] * l_kernel(p, w, z) * psi.value(w);
  });
  if (excluded_weight) *excluded_weight = pairwise_sum(excl);
  return pairwise_sum(buf);
}

std::string variant_name(KernelVariant v) {
  return v == KernelVariant::BoundaryCompatible ? "boundary" : "phi";
}

KernelVariant variant_from_name(const std::string& s) {
  if (s == "boundary") return KernelVariant::BoundaryCompatible;
  if (s == "phi") return KernelVariant::PhiDenominator;
  throw std::invalid_argument("unknown kernel variant: " + s);
}

namespace {

struct Tagged {
  Form f;
  bool d2 = false;
  bool d3 = false;
};

std::vector<Tagged> tagged_product(const std::vector<Tagged>& a, const std::vector<Tagged>& b,
                                   int z_cap) {
  std::vector<Tagged> out;
  out.reserve(a.size() * b.size());
  for (const Tagged& x : a)
    for (const Tagged& y : b) {
      Tagged t{wedge_zcap(x.f, y.f, z_cap), x.d2 || y.d2, x.d3 || y.d3};
      if (!t.f.empty()) out.push_back(std::move(t));
    }
  return out;
}

std::vector<Tagged> tagged_power(const std::vector<Tagged>& base, int k, int n, int z_cap) {
  std::vector<Tagged> out{Tagged{Form::scalar(n, 1.0), false, false}};
  for (int i = 0; i < k; ++i) out = tagged_product(out, base, z_cap);
  return out;
}

}  // namespace

KernelDecomposition kernel_summand(int n, double N, int k, KernelVariant var, const Point& w,
                                   const Point& z, int z_cap) {
  if (k < 0 || k >= n) throw std::out_of_range("kernel_summand: k");
  const cxd b = hdot(w, z);   // w . conj(z)
  const cxd c = std::conj(b); // z . conj(w)
  const double m2 = 1.0 - abs2(w);
  const double ph = phi(w, z);

  Form dw2(n), dbw2(n), ddb(n), pwz(n), zmw_dzb(n), dbz2(n), dzb_dw(n);
  for (int j = 0; j < n; ++j) {
    dw2 += std::conj(w[j]) * Form::dw(n, j);
    dbw2 += w[j] * Form::dwb(n, j);
    ddb += wedge(Form::dwb(n, j), Form::dw(n, j));
    pwz += std::conj(z[j]) * Form::dw(n, j);
    zmw_dzb += (z[j] - w[j]) * Form::dzb(n, j);
    dbz2 += z[j] * Form::dzb(n, j);
    dzb_dw += wedge(Form::dzb(n, j), Form::dw(n, j));
  }

  Form s_form(n);
  for (int j = 0; j < n; ++j)
    s_form += ((1.0 - b) * std::conj(w[j]) - m2 * std::conj(z[j])) * Form::dw(n, j);

  std::vector<Tagged> dbars;
  dbars.push_back({(1.0 - b) * ddb, false, false});
  dbars.push_back({-1.0 * wedge(pwz, dbw2), true, false});
  if (var == KernelVariant::PhiDenominator) {
    dbars.push_back({wedge(zmw_dzb, dw2), false, false});
    dbars.push_back({cxd(-m2) * dzb_dw, false, false});
    dbars.push_back({-1.0 * wedge(dbz2, dw2), false, true});
  }

  std::vector<Tagged> gamma;
  gamma.push_back({(1.0 / m2) * ddb, false, false});
  gamma.push_back({(1.0 / (m2 * m2)) * wedge(dbw2, dw2), true, false});

  std::vector<Tagged> pieces = tagged_product({Tagged{s_form, false, false}},
                                              tagged_power(dbars, n - 1 - k, n, z_cap), z_cap);
  pieces = tagged_product(pieces, tagged_power(gamma, k, n, z_cap), z_cap);

  cxd rho;
  if (var == KernelVariant::PhiDenominator) {
    rho = std::pow(m2, N + k) / (std::pow(cxd(1.0) - c, N + k) * std::pow(ph, double(n - k)));
  } else {
    rho = std::pow(m2, N + k) /
          (std::pow(cxd(1.0) - c, double(n) + N) * std::pow(cxd(1.0) - std::conj(c), double(n - k)));
  }

  KernelDecomposition out(n);
  for (const Tagged& p : pieces) {
    Form f = rho * p.f;
    if (p.d3)
      out.with_dbz2 += f;
    else if (p.d2)
      out.with_dbw2 += f;
    else
      out.plain += f;
  }
  return out;
}

void KernelConstants::save(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("KernelConstants::save: cannot open " + path);
  char buf[64];
  os << "version " << version << "\n";
  os << "n " << n << "\n";
  std::snprintf(buf, sizeof(buf), "%.17g", N);
  os << "N " << buf << "\n";
  os << "variant " << variant_name(variant) << "\n";
  os << "rule " << rule_signature << "\n";
  for (std::size_t k = 0; k < ck.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%.17g", ck[k]);
    os << "c_" << k << " " << buf << "\n";
  }
  std::snprintf(buf, sizeof(buf), "%.17g", q1_constant);
  os << "q1_c " << buf << "\n";
  std::snprintf(buf, sizeof(buf), "%.17g", residual);
  os << "residual " << buf << "\n";
  std::snprintf(buf, sizeof(buf), "%.17g", excl_radius);
  os << "excl_radius " << buf << "\n";
  std::snprintf(buf, sizeof(buf), "%.17g", fd_step);
  os << "fd_step " << buf << "\n";
}

KernelConstants KernelConstants::load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("KernelConstants::load: cannot open " + path);
  KernelConstants kc;
  kc.ck.clear();
  std::string key;
  while (is >> key) {
    if (key == "version")
      is >> kc.version;
    else if (key == "n")
      is >> kc.n;
    else if (key == "N")
      is >> kc.N;
    else if (key == "variant") {
      std::string v;
      is >> v;
      kc.variant = variant_from_name(v);
    } else if (key == "rule") {
      std::getline(is, kc.rule_signature);
      if (!kc.rule_signature.empty() && kc.rule_signature.front() == ' ')
        kc.rule_signature.erase(0, 1);
    } else if (key.rfind("c_", 0) == 0) {
      double v;
      is >> v;
      kc.ck.push_back(v);
    } else if (key == "q1_c")
      is >> kc.q1_constant;
    else if (key == "residual")
      is >> kc.residual;
    else if (key == "excl_radius")
      is >> kc.excl_radius;
    else if (key == "fd_step")
      is >> kc.fd_step;
    else {
      std::string skip;
      std::getline(is, skip);
    }
  }
  if (static_cast<int>(kc.ck.size()) != kc.n)
    throw std::runtime_error("KernelConstants::load: constant count does not match n");
  return kc;
}

std::string rule_signature(const QuadratureRule& rule) {
  return rule.provenance + "|n=" + std::to_string(rule.n) + "|nodes=" + std::to_string(rule.size());
}

Form kq_kernel(const KernelConstants& kc, int q, const Point& w, const Point& z) {
  KernelDecomposition d = kq_kernel_decomposed(kc, q, w, z);
  return d.total();
}

KernelDecomposition kq_kernel_decomposed(const KernelConstants& kc, int q, const Point& w,
                                         const Point& z) {
  const int n = kc.n;
  if (q < 0 || q >= n) throw std::out_of_range("kq_kernel: q");
  if (q > 0 && kc.variant == KernelVariant::BoundaryCompatible)
    throw std::invalid_argument("kq_kernel: the boundary-compatible transcription defines q = 0 only");
  if (static_cast<int>(kc.ck.size()) != n)
    throw std::invalid_argument("kq_kernel: uncalibrated constants");
  KernelDecomposition out(n);
  for (int k = 0; k < n; ++k) {
    if (kc.ck[k] == 0.0) continue;
    KernelDecomposition s = kernel_summand(n, kc.N, k, kc.variant, w, z, q);
    out.plain += kc.ck[k] * s.plain.z_degree(q);
    out.with_dbw2 += kc.ck[k] * s.with_dbw2.z_degree(q);
    out.with_dbz2 += kc.ck[k] * s.with_dbz2.z_degree(q);
  }
  return out;
}

std::vector<MaskCoefs> cache_01(const ZeroOneForm& theta, const QuadratureRule& ball) {
  const int n = theta.dim();
  std::vector<MaskCoefs> out(ball.size());
  parallel_for(ball.size(), [&](std::size_t i) {
    MaskCoefs v;
    v.n = n;
    for (int j = 0; j < n; ++j) v.c[1u << j] = theta.comp[j].value(ball.nodes[i]);
    out[i] = v;
  });
  return out;
}

namespace {
struct CoefSum {
  MaskCoefs v;
  double excluded = 0.0;
  CoefSum& operator+=(const CoefSum& o) {
    for (int m = 0; m < 8; ++m) v.c[m] += o.v.c[m];
    excluded += o.excluded;
    return *this;
  }
  CoefSum operator+(const CoefSum& o) const {
    CoefSum r = *this;
    r += o;
    return r;
  }
};
}  // namespace

double KernelOperator::default_exclusion(const QuadratureRule& ball) {
  const double vol = ball_volume(ball.n);
  return 2.0 * std::pow(vol / static_cast<double>(ball.size()), 1.0 / (2.0 * ball.n));
}

KernelOperator::KernelOperator(KernelConstants kc, QuadratureRule ball, double excl_radius)
    : kc_(std::move(kc)), ball_(std::move(ball)), excl_(excl_radius) {
  if (ball_.domain != Domain::Ball) throw std::invalid_argument("KernelOperator: needs a ball rule");
  if (ball_.n != kc_.n) throw std::invalid_argument("KernelOperator: dimension mismatch");
  if (excl_ < 0.0) excl_ = kc_.excl_radius;
  if (excl_ < 0.0) excl_ = default_exclusion(ball_);
}

MaskCoefs KernelOperator::apply(int q, const std::vector<MaskCoefs>& operand, const Point& z,
                                double* excluded_weight) const {
  if (operand.size() != ball_.size())
    throw std::invalid_argument("KernelOperator::apply: operand cache size mismatch");
  const std::size_t count = ball_.size();
  const double r2 = excl_ * excl_;
  std::vector<CoefSum> buf(count);
  parallel_for(count, [&](std::size_t i) {
    const Point& w = ball_.nodes[i];
    CoefSum t;
    t.v.n = kc_.n;
    double d2 = 0.0;
    for (int j = 0; j < kc_.n; ++j) d2 += std::norm(w[j] - z[j]);
    if (d2 < r2 || phi(w, z) < 1e-14) {
      t.excluded = ball_.weights[i];
    } else {
      const Form K = kq_kernel(kc_, q, w, z);
      MaskCoefs c = contract_volume(K, operand[i]);
      for (int m = 0; m < 8; ++m) t.v.c[m] = ball_.weights[i] * c.c[m];
      t.v.n = kc_.n;
    }
    buf[i] = t;
  });
  const CoefSum total = pairwise_sum(buf);
  if (excluded_weight) *excluded_weight = total.excluded;
  MaskCoefs out = total.v;
  out.n = kc_.n;
  return out;
}

MaskCoefs KernelOperator::apply_summand(int k, int q, const std::vector<MaskCoefs>& operand,
                                        const Point& z) const {
  KernelConstants unit = kc_;
  unit.ck.assign(kc_.n, 0.0);
  unit.ck[k] = 1.0;
  KernelOperator op(unit, ball_, excl_);
  return op.apply(q, operand, z);
}

cxd solve_dbar_01(const KernelOperator& op, const std::vector<MaskCoefs>& theta_nodes,
                  const Point& z, double* excluded_weight) {
  return op.apply(0, theta_nodes, z, excluded_weight).c[0];
}

cxd q1_value(const KernelConstants& kc, const ZeroOneForm& theta, const Point& z,
             const QuadratureRule& ball) {
  const int n = kc.n;
  const int kmax = n + static_cast<int>(std::lround(kc.N));
  const cxd val = integrate(ball, [&](const Point& w) {
    Form th(n);
    for (int j = 0; j < n; ++j) th += theta.comp[j].value(w) * Form::dwb(n, j);
    Form pz(n), ddb(n);
    for (int j = 0; j < n; ++j) {
      pz += std::conj(z[j]) * Form::dw(n, j);
      ddb += wedge(Form::dw(n, j), Form::dwb(n, j));
    }
    Form F = wedge(th, pz);
    for (int i = 0; i < n - 1; ++i) F = wedge(F, ddb);
    const std::uint8_t full = static_cast<std::uint8_t>((1u << n) - 1);
    const cxd vol = F.coefficient(full, full, 0);
    const double m2n = std::pow(1.0 - abs2(w), kc.N);
    const cxd base = 1.0 - hdot(w, z);
    cxd s = 0.0;
    cxd p = base;
    for (int k = 1; k <= kmax; ++k) {
      s += vol / p;
      p *= base;
    }
    return m2n * s;
  });
  return kc.q1_constant * val;
}

QSplit q_split(const KernelConstants& kc, const ZeroOneForm& theta, const Point& zeta,
               const QuadratureRule& ball) {
  require_boundary(zeta, "q_split", 1e-9);
  QSplit out;
  out.q1 = q1_value(kc, theta, zeta, ball);
  const int n = kc.n;
  out.q2_bound =
      integrate(ball, [&](const Point& w) {
        const double m2 = 1.0 - abs2(w);
        Form dtheta(n);
        double dnorm = 0.0;
        for (int j = 0; j < n; ++j) {
          const Jet jt = theta.comp[j].jet(w);
          for (int i = 0; i < n; ++i) {
            dnorm += std::abs(jt.dz[i]);
            dtheta += jt.dz[i] * wedge(Form::dw(n, i), Form::dwb(n, j));
          }
        }
        Form dw2(n), dbw2(n);
        for (int j = 0; j < n; ++j) {
          dw2 += std::conj(w[j]) * Form::dw(n, j);
          dbw2 += w[j] * Form::dwb(n, j);
        }
        const double tangential = wedge(wedge(dtheta, dw2), dbw2).magnitude();
        const double den = std::pow(std::abs(1.0 - hdot(w, zeta)), n + kc.N);
        return cxd((std::pow(m2, kc.N + 1.0) * dnorm + std::pow(m2, kc.N) * tangential) / den);
      }).real();
  return out;
}

cxd cauchy_project(const Field& psi, const Point& z, const QuadratureRule& sphere) {
  if (sphere.domain != Domain::Sphere) throw std::invalid_argument("cauchy_project: needs a sphere rule");
  const int n = sphere.n;
  const cxd v = integrate(sphere, [&](const Point& zeta) {
    return psi.value(zeta) / std::pow(cxd(1.0) - hdot(z, zeta), double(n));
  });
  return v / sphere.total_weight();
}

double poisson_szego(const Field& psi, const Point& z, const QuadratureRule& sphere) {
  if (sphere.domain != Domain::Sphere) throw std::invalid_argument("poisson_szego: needs a sphere rule");
  const int n = sphere.n;
  const double m2 = std::pow(1.0 - abs2(z), n);
  const cxd v = integrate(sphere, [&](const Point& zeta) {
    return psi.value(zeta) * m2 / std::pow(std::norm(cxd(1.0) - hdot(z, zeta)), double(n));
  });
  return v.real() / sphere.total_weight();
}

double default_operator_fd_step(const QuadratureRule& ball) {
  return 2.5 * KernelOperator::default_exclusion(ball);
}

KernelConstants calibrate(int n, double N, KernelVariant var,
                          const std::vector<CalibrationInput>& tests, const QuadratureRule& ball,
                          const std::vector<Point>& z_samples, double fd_step, double excl_radius) {
  if (static_cast<int>(tests.size()) < 1) throw std::invalid_argument("calibrate: no test potentials");
  if (fd_step <= 0.0) fd_step = default_operator_fd_step(ball);
  KernelConstants kc;
  kc.n = n;
  kc.N = N;
  kc.variant = var;
  kc.rule_signature = rule_signature(ball);
  kc.ck.assign(n, 0.0);
  KernelOperator probe([&] {
    KernelConstants u = kc;
    u.ck.assign(n, 1.0);
    return u;
  }(), ball, excl_radius);

  std::vector<std::vector<MaskCoefs>> caches;
  for (const CalibrationInput& t : tests) caches.push_back(cache_01(t.dbar, ball));

  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (std::size_t i = 0; i < tests.size(); ++i) {
    for (const Point& z : z_samples) {
      // dbar of each single-summand solution at z, per component
      std::vector<std::vector<cxd>> db(n);
      for (int k = 0; k < n; ++k) {
        const auto& cache = caches[i];
        Field fk = Field::value_only(
            n, [&probe, &cache, k](const Point& p) { return probe.apply_summand(k, 0, cache, p).c[0]; },
            fd_step);
        db[k] = dbar_fd(fk, z, fd_step);
      }
      for (int j = 0; j < n; ++j) {
        const cxd target = tests[i].dbar.comp[j].value(z);
        std::vector<double> re(n), im(n);
        for (int k = 0; k < n; ++k) {
          re[k] = db[k][j].real();
          im[k] = db[k][j].imag();
        }
        rows.push_back(re);
        rhs.push_back(target.real());
        rows.push_back(im);
        rhs.push_back(target.imag());
      }
    }
  }
  kc.ck = solve_least_squares(rows, rhs, n);

  // in-sample residual
  double res = 0.0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    double v = 0.0;
    for (int k = 0; k < n; ++k) v += rows[r][k] * kc.ck[k];
    res = std::max(res, std::abs(v - rhs[r]));
  }
  kc.residual = res;
  kc.excl_radius = probe.exclusion_radius();
  kc.fd_step = fd_step;
  if (res > 0.1)
    throw std::runtime_error("calibrate: dbar-reproduction residual " + std::to_string(res) +
                             " exceeds 0.1");
  return kc;
}

double calibrate_q1(const KernelOperator& op, const ZeroOneForm& theta,
                    const std::vector<Point>& boundary_samples) {
  KernelConstants unit = op.constants();
  unit.q1_constant = 1.0;
  const std::vector<MaskCoefs> cache = cache_01(theta, op.rule());
  cxd num = 0.0;
  double den = 0.0;
  for (const Point& zeta : boundary_samples) {
    const cxd target = solve_dbar_01(op, cache, zeta);
    const cxd raw = q1_value(unit, theta, zeta, op.rule());
    num += target * std::conj(raw);
    den += std::norm(raw);
  }
  if (!(den > 0.0)) throw std::runtime_error("calibrate_q1: degenerate samples");
  return (num / den).real();
}

double dbar_residual(const KernelOperator& op, const CalibrationInput& test,
                     const std::vector<Point>& z_samples, double fd_step) {
  if (fd_step <= 0.0) fd_step = default_operator_fd_step(op.rule());
  const int n = op.constants().n;
  const std::vector<MaskCoefs> cache = cache_01(test.dbar, op.rule());
  double worst = 0.0;
  for (const Point& z : z_samples) {
    Field u = Field::value_only(
        n, [&op, &cache](const Point& p) { return op.apply(0, cache, p).c[0]; }, fd_step);
    const std::vector<cxd> db = dbar_fd(u, z, fd_step);
    for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(db[j] - test.dbar.comp[j].value(z)));
  }
  return worst;
}

}  // namespace corona
