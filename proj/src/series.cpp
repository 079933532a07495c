#include "qorbit/series.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <climits>
#include <cmath>

#include "qorbit/funcx.hpp"

namespace qorbit {

namespace {

constexpr double kTol = 1e-9;

bool near(cplx a, cplx b, double tol = kTol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

// zeta^* zeta and zeta zeta^* as functions of x, c, d (real form with iota = (-1, 1)).
struct StarProducts {
  RatFunc star_zeta, zeta_star;
};
const StarProducts& star_products() {
  static const StarProducts sp = [] {
    XcdAlgebra a = xcd_algebra(RatFunc::var(kC), RatFunc::var(kD), false);
    return StarProducts{a.zeta_star_zeta, a.zeta_zeta_star};
  }();
  return sp;
}

cplx eval_x(const RatFunc& f, const RepParams& p, cplx x) {
  Point pt = make_point(p.q, p.c0, p.d0);
  pt[kX1] = x;
  return f.eval(pt);
}

}  // namespace

void validate(const RepParams& p, bool ordered) {
  if (!(p.q > 0 && p.q < 1)) throw InvalidParams("q must lie in (0, 1)");
  if (!std::isfinite(p.nu0) || p.nu0 == 0) throw InvalidParams("nu0 must be a nonzero real number");
  if (!near(p.c0 * p.d0, 1.0, 1e-10)) throw InvalidParams("c0 d0 must equal 1");
  if (p.complex_case()) {
    if (!near(p.c0, std::conj(p.d0), 1e-10)) throw InvalidParams("complex c0, d0 must be conjugate");
  } else {
    if (p.c0.real() <= 0 || p.d0.real() <= 0) throw InvalidParams("real c0, d0 must be positive");
    if (ordered && p.c0.real() > p.d0.real() * (1 + 1e-12)) throw InvalidParams("expected c0 <= d0");
  }
}

const char* spectrum_name(SpectrumKind k) {
  switch (k) {
    case SpectrumKind::full: return "full";
    case SpectrumKind::plus: return "plus";
    case SpectrumKind::minus: return "minus";
    case SpectrumKind::finite: return "finite";
  }
  return "?";
}

bool Spectrum::contains(double x, double tol) const {
  auto j = lattice_index(q, anchor, x, tol);
  return j && *j >= jmin && *j <= jmax;
}

std::optional<int> lattice_index(double q, double nu0, cplx x, double tol) {
  if (std::abs(x.imag()) > tol * std::max(1.0, std::abs(x))) return std::nullopt;
  double r = x.real() / nu0;
  if (!(r > 0)) return std::nullopt;
  double t = std::log(r) / (2 * std::log(q));
  double j = std::round(t);
  if (std::abs(t - j) > tol || std::abs(j) > 1e6) return std::nullopt;
  return int(j);
}

std::vector<double> Spectrum::points(double lo, double hi) const {
  std::vector<double> out;
  // x_j = anchor q^(2j); |x_j| decreases with j
  double lq = 2 * std::log(q);
  double amin = std::min(std::abs(lo), std::abs(hi)), amax = std::max(std::abs(lo), std::abs(hi));
  if ((anchor > 0) != (hi > 0) && (anchor > 0) != (lo > 0)) return out;
  if (lo <= 0 && hi >= 0) amin = 0;
  long ja = amax > 0 ? long(std::floor(std::log(amax / std::abs(anchor)) / lq)) - 1 : 0;
  long jb = amin > 0 ? long(std::ceil(std::log(amin / std::abs(anchor)) / lq)) + 1 : 4000;
  ja = std::max<long>(ja, jmin);
  jb = std::min<long>(jb, jmax);
  for (long j = ja; j <= jb; ++j) {
    double x = anchor * std::pow(q, 2.0 * j);
    if (x >= lo * (1 + (lo > 0 ? -kTol : kTol)) && x <= hi * (1 + (hi > 0 ? kTol : -kTol)) && x != 0) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Spectrum x_spectrum(const RepParams& p) {
  Spectrum s;
  s.q = p.q;
  s.anchor = p.nu0;
  s.jmin = INT_MIN;
  s.jmax = INT_MAX;
  s.has_zero = true;
  if (p.complex_case()) return s;
  double wp = p.q * p.c0.real(), wm = p.d0.real() / p.q;
  auto ip = lattice_index(p.q, p.nu0, wp), im = lattice_index(p.q, p.nu0, wm);
  if (ip && (!im || p.nu0 <= wp * (1 + kTol))) {
    s.kind = SpectrumKind::plus;
    s.anchor = wp;
    s.jmin = 0;
  } else if (im && (p.nu0 >= wm * (1 - kTol) || !ip)) {
    s.kind = SpectrumKind::minus;
    s.anchor = wm;
    s.jmax = 0;
    s.has_zero = false;
  } else if (ip && im) {
    // strictly between the walls: q c0 q^(2j), jm < j < 0 with q^-1 d0 = q c0 q^(2 jm)
    int jm = *lattice_index(p.q, wp, wm);
    s.kind = SpectrumKind::finite;
    s.anchor = wp;
    s.jmin = jm + 1;
    s.jmax = -1;
    s.has_zero = false;
  }
  return s;
}

// ---------------------------------------------------------------- Pi_nu

double PiModule::x_of(int k) const { return anchor * std::pow(p.q, -2.0 * k); }

namespace {

PiModule make_pi(const RepParams& p, double anchor, int klo, int khi, bool wl, bool wh) {
  PiModule m;
  m.p = p;
  m.anchor = anchor;
  m.klo = klo;
  m.khi = khi;
  m.wall_low = wl;
  m.wall_high = wh;
  const int d = m.dim();
  m.zeta = CMat::Zero(d, d);
  m.x = CMat::Zero(d, d);
  m.y = CMat::Zero(d, d);
  m.yhat = CMat::Zero(d, d);
  const double q = p.q;
  for (int k = klo; k <= khi; ++k) {
    int c = m.index(k);
    cplx x = m.x_of(k);
    m.x(c, c) = x;
    if (k < khi) {
      m.zeta(c + 1, c) = 1;
      m.y(c + 1, c) = x / q - p.c0;
    }
    if (k > klo) m.yhat(c - 1, c) = p.d0 - q * x;
  }
  // exact zeros at the walls
  for (int c = 0; c < d; ++c) {
    if (std::abs(m.y.col(c).sum()) < 1e-12 * std::max(1.0, std::abs(m.x(c, c)))) m.y.col(c).setZero();
    if (std::abs(m.yhat.col(c).sum()) < 1e-12 * std::max(1.0, std::abs(m.x(c, c)))) m.yhat.col(c).setZero();
  }
  return m;
}

}  // namespace

PiModule build_pi_window(const RepParams& p, int N) { return make_pi(p, p.nu0, -N, N, false, false); }

namespace {

struct Window {
  double anchor;
  int klo, khi;
  bool wl, wh;
};

Window simple_window(const RepParams& p, int N) {
  Spectrum s = x_spectrum(p);
  switch (s.kind) {
    case SpectrumKind::full: return {s.anchor, -N, N, false, false};
    case SpectrumKind::plus: return {s.anchor, -N, 0, false, true};
    case SpectrumKind::minus: return {s.anchor, 0, N, true, false};
    case SpectrumKind::finite: return {s.anchor, -s.jmax, -s.jmin, true, true};
  }
  throw std::logic_error("unreachable");
}

}  // namespace

PiModule build_pi(const RepParams& p, int N) {
  Window w = simple_window(p, N);
  return make_pi(p, w.anchor, w.klo, w.khi, w.wl, w.wh);
}

XDiagModule PiModule::as_xdiag(int margin) const {
  XDiagModule m;
  m.n = 1;
  m.dim = dim();
  m.q0 = p.q;
  m.name = "Pi(nu0=" + std::to_string(p.nu0) + ")";
  m.x.assign(3, std::vector<cplx>(m.dim));
  for (int c = 0; c < m.dim; ++c) {
    m.x[0][c] = p.d0 / p.q;
    m.x[1][c] = x(c, c);
    m.x[2][c] = p.q * p.c0;
  }
  const HWord wy{z(0), zh(1)}, wyh{z(1), zh(0)};
  CMat Y = y, Yh = yhat;
  double q0 = p.q;
  int d = m.dim;
  m.letters = [Y, Yh, wy, wyh, q0, d](const HeisElement& h) {
    CMat r = CMat::Zero(d, d);
    for (auto& [w, c] : h.terms()) {
      cplx s = evaluate(c, q0);
      if (w.empty())
        r += s * CMat::Identity(d, d);
      else if (w == wy)
        r += s * Y;
      else if (w == wyh)
        r += s * Yh;
      else
        throw std::invalid_argument("Pi_nu: unsupported Heisenberg word " + hword_str(w));
    }
    return r;
  };
  for (int k = klo; k <= khi; ++k)
    if ((wall_low || k - klo >= margin) && (wall_high || khi - k >= margin)) m.interior.push_back(index(k));
  return m;
}

OperatorSpectrum operator_spectrum(const RepParams& p, int N) {
  OperatorSpectrum out;
  PiModule m = build_pi_window(p, N);
  const int d = m.dim();
  // edges of the module graph; the simple subquotient through 1_nu is its strongly connected component
  auto up = [&](int c) { return c + 1 < d && m.y(c + 1, c) != cplx(0); };
  auto down = [&](int c) { return c > 0 && m.yhat(c - 1, c) != cplx(0); };
  int c0 = m.index(0);
  int lo = c0, hi = c0;
  while (lo > 0 && down(lo) && up(lo - 1)) --lo;
  while (hi + 1 < d && up(hi) && down(hi + 1)) ++hi;
  bool closed_low = lo == 0 || !down(lo), closed_high = hi == d - 1 || !up(hi);
  if (closed_low != closed_high) {
    // drains through one edge: the simple piece is the component below it
    // (open on both sides means a finite quotient between two submodules)
    int c = closed_high ? lo - 1 : hi + 1;
    lo = hi = c;
    while (lo > 0 && down(lo) && up(lo - 1)) --lo;
    while (hi + 1 < d && up(hi) && down(hi + 1)) ++hi;
  }
  // x restricted to the component (diagonal, so self-adjoint on the real line)
  Eigen::MatrixXd xs(hi - lo + 1, hi - lo + 1);
  for (int a = lo; a <= hi; ++a)
    for (int b = lo; b <= hi; ++b) xs(a - lo, b - lo) = m.x(a, b).real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(xs);
  for (int i = 0; i < es.eigenvalues().size(); ++i) out.eigenvalues.push_back(es.eigenvalues()(i));
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  // x increases with k for nu0 > 0
  bool kbounded_high = hi < d - 1, kbounded_low = lo > 0;
  if (p.nu0 > 0) {
    out.bounded_above = kbounded_high;
    out.bounded_below = kbounded_low;
  } else {
    out.bounded_above = kbounded_low;
    out.bounded_below = kbounded_high;
  }
  out.ok = true;
  return out;
}

// ---------------------------------------------------------------- scalar product

GramReport gram_matrix(const RepParams& p, int N) {
  GramReport g;
  Window m = simple_window(p, N);
  auto index = [&](int k) { return k - m.klo; };
  auto x_of = [&](int k) { return m.anchor * std::pow(p.q, -2.0 * k); };
  const auto& sp = star_products();
  g.ks.resize(m.khi - m.klo + 1);
  g.diag.assign(g.ks.size(), 0);
  // complex case: zeta^star = zeta^-1, so every monomial has norm 1
  auto phi_at = [&](cplx x) { return p.complex_case() ? cplx(1) : eval_x(sp.star_zeta, p, x); };
  auto psi_at = [&](cplx x) { return p.complex_case() ? cplx(1) : eval_x(sp.zeta_star, p, x); };
  for (int k = m.klo; k <= m.khi; ++k) g.ks[index(k)] = k;
  int k0 = std::clamp(0, m.klo, m.khi);
  g.diag[index(k0)] = 1;
  for (int k = k0 + 1; k <= m.khi; ++k) g.diag[index(k)] = g.diag[index(k - 1)] * phi_at(x_of(k - 1));
  for (int k = k0 - 1; k >= m.klo; --k) g.diag[index(k)] = g.diag[index(k + 1)] / psi_at(x_of(k + 1));
  g.min_entry = INFINITY;
  for (auto v : g.diag) {
    bool ok = std::abs(v.imag()) <= 1e-9 * std::abs(v) && v.real() > 0 && std::isfinite(v.real());
    g.hermitian_positive = g.hermitian_positive && ok;
    g.min_entry = std::min(g.min_entry, v.real());
  }
  return g;
}

bool unitarity_predicted(const RepParams& p, int kmax) {
  if (p.complex_case()) return true;
  Spectrum s = x_spectrum(p);
  if (s.kind == SpectrumKind::plus || s.kind == SpectrumKind::minus) return true;
  if (s.kind == SpectrumKind::finite) return false;
  double a = p.q * std::min(p.c0.real(), p.d0.real()), b = p.q * std::max(p.c0.real(), p.d0.real());
  for (int j = -kmax; j <= kmax; ++j) {
    double x = p.nu0 * std::pow(p.q, 2.0 * j);
    if (x > a * (1 + kTol) && x < b * (1 - kTol)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- invariant integral

IntegralContext integral_context(const RepParams& p) { return IntegralContext{p, x_spectrum(p)}; }

cplx lattice_x(const IntegralContext& ctx, int j) { return ctx.sp.anchor * std::pow(ctx.p.q, 2.0 * j); }

bool lattice_allowed(const IntegralContext& ctx, int j) { return j >= ctx.sp.jmin && j <= ctx.sp.jmax; }

bool orbit_supported(const IntegralContext& ctx, int k, int j) {
  return lattice_allowed(ctx, j) && lattice_allowed(ctx, j - k);
}

LatticeElement act_lattice(GenKind gk, const LatticeElement& f, const IntegralContext& ctx) {
  const double q = ctx.p.q, q2 = q * q;
  const cplx c0 = ctx.p.c0, d0 = ctx.p.d0;
  LatticeElement out;
  auto val = [&](const std::map<int, cplx>& g, int j) {
    auto it = g.find(j);
    return it == g.end() ? cplx(0) : it->second;
  };
  for (auto& [k, g] : f.g) {
    if (g.empty()) continue;
    int jlo = g.begin()->first - 1, jhi = g.rbegin()->first + 1;
    switch (gk) {
      case GenKind::K:
      case GenKind::Kinv: {
        double w = std::pow(q, (gk == GenKind::K ? -2.0 : 2.0) * k);
        for (auto& [j, v] : g) out.g[k][j] += w * v;
        break;
      }
      case GenKind::E: {
        // zeta^(k+1) [e_k g(x) + q^2k H(q^-2 x)], H(x) = (g(x) - g(q^2 x)) (q x - c0) / ((1 - q^2) x)
        double ek = -q * (1 - std::pow(q2, k)) / (1 - q2);
        for (int j = jlo; j <= jhi; ++j) {
          if (!lattice_allowed(ctx, j)) continue;
          cplx r = ek * val(g, j);
          if (lattice_allowed(ctx, j - 1)) {
            cplx x = lattice_x(ctx, j - 1);
            r += std::pow(q2, k) * (val(g, j - 1) - val(g, j)) * (q * x - c0) / ((1 - q2) * x);
          }
          if (r != cplx(0)) out.g[k + 1][j] += r;
        }
        break;
      }
      case GenKind::F: {
        // zeta^(k-1) [f_k g(x) + P(q^2 x)], P(x) = -q (g(q^-2 x) - g(x)) / ((q^-2 - 1) x) * (d0 - x/q)
        double fk = (std::pow(q2, -k) - 1) / (1 / q2 - 1);
        for (int j = jlo; j <= jhi; ++j) {
          if (!lattice_allowed(ctx, j)) continue;
          cplx r = fk * val(g, j);
          if (lattice_allowed(ctx, j + 1)) {
            cplx x = lattice_x(ctx, j + 1);
            r += -q * (val(g, j) - val(g, j + 1)) / ((1 / q2 - 1) * x) * (d0 - x / q);
          }
          if (r != cplx(0)) out.g[k - 1][j] += r;
        }
        break;
      }
    }
  }
  return out;
}

cplx invariant_integral(const LatticeElement& f, const IntegralContext& ctx) {
  auto it = f.g.find(0);
  if (it == f.g.end()) return 0;
  cplx s = 0;
  for (auto& [j, v] : it->second)
    if (lattice_allowed(ctx, j)) s += lattice_x(ctx, j) * v;
  return (1 / ctx.p.q - ctx.p.q) * s;
}

// ---------------------------------------------------------------- classification

const char* series_name(Series s) {
  switch (s) {
    case Series::PrincipalContinuous: return "PrincipalContinuous";
    case Series::Complimentary: return "Complimentary";
    case Series::HolomorphicDiscrete: return "HolomorphicDiscrete";
    case Series::AntiHolomorphicDiscrete: return "AntiHolomorphicDiscrete";
    case Series::Strange: return "Strange";
    case Series::NonUnitarizable: return "NonUnitarizable";
  }
  return "?";
}

SeriesLabel classify(const RepParams& p) {
  validate(p, false);
  SeriesLabel s;
  Spectrum sp = x_spectrum(p);
  s.spectrum = sp.kind;
  // c0 (c0 d0)^(-1/2) = q^(2l+1)
  cplx r = p.c0 / std::sqrt(p.c0 * p.d0);
  s.l = (std::log(r) / std::log(p.q) - 1.0) / 2.0;
  s.casimir = casimir_image(p.q, p.c0, p.d0);
  double t = std::log(std::abs(p.nu0)) / std::log(p.q);
  s.epsilon = t - std::ceil(t - 0.5);  // in (-1/2, 1/2]
  if (std::abs(s.epsilon + 0.5) < 1e-12) s.epsilon = 0.5;
  if (p.complex_case())
    s.series = Series::PrincipalContinuous;
  else if (sp.kind == SpectrumKind::plus)
    s.series = Series::HolomorphicDiscrete;
  else if (sp.kind == SpectrumKind::minus)
    s.series = Series::AntiHolomorphicDiscrete;
  else if (sp.kind == SpectrumKind::finite || !unitarity_predicted(p))
    s.series = Series::NonUnitarizable;
  else
    s.series = p.nu0 > 0 ? Series::Complimentary : Series::Strange;
  return s;
}

CasimirCheck casimir_spectrum_check(const RepParams& p, int N, MomentForm form) {
  CasimirCheck c;
  SeriesLabel lab = classify(p);
  c.expected = casimir_from_spin(p.q, lab.l);
  XDiagModule m = build_pi(p, N).as_xdiag(2);
  AlgebraElement cas = casimir_sl2();
  CMat op = moment_operator(cas, m, form);
  CMat id = CMat::Identity(m.dim, m.dim);
  // relative to the size of the individual terms, which grow with the window
  double scale = std::max(1.0, std::abs(c.expected));
  for (auto& [w, k] : cas.terms())
    scale = std::max(scale, interior_residual(moment_operator(AlgebraElement::from_word(1, w, k), m, form), m));
  c.residual = interior_residual(op - c.expected * id, m) / scale;
  c.literal_residual = interior_residual(op - casimir_image_literal(p.q, p.c0, p.d0) * id, m) / scale;
  c.pass = !m.interior.empty() && c.residual < 1e-10;
  return c;
}

}  // namespace qorbit
