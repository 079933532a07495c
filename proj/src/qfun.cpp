#include "qorbit/qfun.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

namespace qorbit {

namespace {

constexpr double kPi = std::numbers::pi;

void check_t(cplx t) {
  if (!(std::abs(t) < 1)) throw QDomainError("q-Pochhammer: |t| must be < 1");
}

bool is_integer(double v, double tol = 1e-12) { return std::abs(v - std::round(v)) < tol; }

}  // namespace

cplx qpoch(cplx a, cplx t, int k) {
  cplx p = 1;
  if (k >= 0) {
    cplx tk = 1;
    for (int i = 0; i < k; ++i, tk *= t) p *= 1.0 - a * tk;
    return p;
  }
  cplx ti = 1.0 / t, tk = ti;
  for (int i = 1; i <= -k; ++i, tk *= ti) {
    cplx f = 1.0 - a * tk;
    if (f == 0.0) throw QDomainError("q-Pochhammer of negative order has a pole");
    p /= f;
  }
  return p;
}

cplx qpoch_inf(cplx a, cplx t, const QSeriesContext& ctx, double* bound) {
  check_t(t);
  cplx p = 1, tk = 1;
  const double at = std::abs(t);
  double rest = std::abs(a);
  for (int i = 0; i < ctx.max_terms; ++i) {
    // |prod_{j>=i}(1 - a t^j) - 1| <= exp(s) - 1, s = |a| |t|^i / (1 - |t|)
    double s = rest / (1 - at);
    if (s < ctx.tolerance) {
      if (bound) *bound = std::expm1(s);
      return p;
    }
    p *= 1.0 - a * tk;
    tk *= t;
    rest *= at;
  }
  throw QConvergenceError("q-Pochhammer: product did not converge within max_terms");
}

cplx qpoch_alpha(cplx a, cplx t, double alpha, const QSeriesContext& ctx) {
  check_t(t);
  if (is_integer(alpha) && std::abs(alpha) < 1e6) return qpoch(a, t, int(std::round(alpha)));
  cplx den = qpoch_inf(a * std::pow(t, alpha), t, ctx);
  if (den == 0.0) throw QDomainError("q-Pochhammer: (a t^alpha; t)_inf vanishes");
  return qpoch_inf(a, t, ctx) / den;
}

PsiResult ramanujan_psi(cplx a, cplx b, cplx t, cplx x, const QSeriesContext& ctx) {
  check_t(t);
  if (x == 0.0 || a == 0.0) throw QDomainError("1Psi1: a and x must be nonzero");
  PsiResult r;
  cplx sum = 1;
  double last_pos = 0, last_neg = 0;
  // positive side: ratio tends to x
  {
    cplx term = 1, tk = 1;
    int small = 0;
    int k = 0;
    for (; k < ctx.max_terms; ++k, tk *= t) {
      cplx den = 1.0 - b * tk;
      if (den == 0.0) throw QDomainError("1Psi1: (b; t)_k vanishes");
      term *= (1.0 - a * tk) / den * x;
      if (term == 0.0) break;  // terminating
      sum += term;
      last_pos = std::abs(term);
      bool settled = std::abs(tk) < 1e-3;
      if (settled && std::abs(x) >= 1) throw QConvergenceError("1Psi1: divergent on the positive side (|x| >= 1)");
      small = settled && last_pos <= ctx.tolerance * std::abs(sum) ? small + 1 : 0;
      if (small >= 3) break;
    }
    if (k == ctx.max_terms) throw QConvergenceError("1Psi1: positive side not converged");
    r.kmax = k + 1;
  }
  // negative side: term_{k-1} = term_k (1 - b t^(k-1)) / ((1 - a t^(k-1)) x), ratio tends to b / (a x)
  {
    cplx term = 1, ti = 1.0 / t, tk = ti;
    int small = 0;
    int k = 0;
    for (; k < ctx.max_terms; ++k, tk *= ti) {
      cplx den = (1.0 - a * tk) * x;
      if (den == 0.0) throw QDomainError("1Psi1: (a; t)_k vanishes for negative k");
      term *= (1.0 - b * tk) / den;
      if (term == 0.0) break;
      sum += term;
      last_neg = std::abs(term);
      bool settled = std::abs(tk) > 1e3;
      if (settled && std::abs(b / (a * x)) >= 1)
        throw QConvergenceError("1Psi1: divergent on the negative side (|b/(a x)| >= 1)");
      small = settled && last_neg <= ctx.tolerance * std::abs(sum) ? small + 1 : 0;
      if (small >= 3) break;
    }
    if (k == ctx.max_terms) throw QConvergenceError("1Psi1: negative side not converged");
    r.kmin = -(k + 1);
  }
  r.value = sum;
  r.tail = std::max(last_pos, last_neg) / std::max(std::abs(sum), 1e-300);
  return r;
}

// ---------------------------------------------------------------- kernels

cplx kernel_plus(cplx lambda, cplx mu, double l, double q, const QSeriesContext& ctx) {
  if (!(l <= -0.5 + 1e-12)) throw QDomainError("kernel_plus: needs l <= -1/2");
  cplx z = lambda * std::conj(mu);
  if (!(std::abs(z) < 1) || std::abs(lambda) > 1 || std::abs(mu) > 1)
    throw QDomainError("kernel_plus: points must lie in the unit disc");
  return 1.0 / qpoch_alpha(z, q * q, -2 * l, ctx);
}

double kernel_plus_coeff(int k, double l, double q) {
  double a = std::pow(q, -4 * l), t = q * q, c = 1, tk = 1;
  for (int i = 0; i < k; ++i, tk *= t) c *= (1 - a * tk) / (1 - t * tk);
  return c;
}

namespace {

void check_strange(double alpha, double q) {
  if (!(q > 0 && q < 1)) throw QDomainError("q must lie in (0, 1)");
  double n = 2 * alpha + 1;
  if (!is_integer(n) || n < 0.5) throw QDomainError("strange series: 2 alpha + 1 must be a positive integer");
}

}  // namespace

double strange_prefactor(double alpha, double eps, double q) {
  double t = q * q;
  cplx den = qpoch_inf(std::pow(q, -2 * (alpha + eps)), t);
  if (std::abs(den) < 1e-300) throw QDomainError("strange prefactor: pole");
  return (qpoch_inf(std::pow(q, 2 * (alpha + 1 - eps)), t) / den).real();
}

cplx kernel_strange(cplx lambda, cplx mu, double alpha, double eps, double q, const QSeriesContext& ctx) {
  check_strange(alpha, q);
  double inner = std::pow(q, 2 * alpha + 1);
  auto in_annulus = [&](cplx v) { return std::abs(v) >= inner * (1 - 1e-12) && std::abs(v) <= 1 + 1e-12; };
  cplx z = lambda * std::conj(mu);
  if (!in_annulus(lambda) || !in_annulus(mu) || !(std::abs(z) < 1) || !(std::abs(z) > inner * inner))
    throw QDomainError("kernel_strange: points must lie in the annulus q^(2 alpha + 1) < |lambda| < 1");
  double t = q * q;
  PsiResult p = ramanujan_psi(std::pow(q, -2 * (alpha + eps)), std::pow(q, 2 * (alpha + 1 - eps)), t, z, ctx);
  return strange_prefactor(alpha, eps, q) * p.value;
}

double kernel_strange_coeff(int k, double alpha, double eps, double q) {
  double t = q * q;
  cplx a = std::pow(q, -2 * (alpha + eps)), b = std::pow(q, 2 * (alpha + 1 - eps));
  return (strange_prefactor(alpha, eps, q) * qpoch(a, t, k) / qpoch(b, t, k)).real();
}

// ---------------------------------------------------------------- measures

RadialMeasure disc_measure(double l, double q, const QSeriesContext& ctx) {
  RadialMeasure m;
  if (std::abs(l + 0.5) < 1e-12) {
    m.flat = true;
    return m;
  }
  if (!(l < -0.5)) throw QDomainError("disc measure: needs l <= -1/2");
  const double t = q * q, pre = 1 - std::pow(q, -2 * (2 * l - 1));
  double sum = 0;
  for (int n = 0; n < ctx.max_terms; ++n) {
    double w = pre * std::pow(q, 2.0 * n) *
               (qpoch_inf(std::pow(q, 2.0 * (n + 1)), t) / qpoch_inf(std::pow(q, 2 * (n - 2 * l - 1)), t)).real();
    m.radii.push_back(std::pow(q, double(n)));
    m.weights.push_back(w);
    sum += w;
    if (std::abs(w) <= ctx.tolerance * std::abs(sum) || std::pow(q, double(n)) < 1e-150) break;
  }
  return m;
}

RadialMeasure strange_measure(double alpha, double eps, double q) {
  check_strange(alpha, q);
  RadialMeasure m;
  const int N = int(std::round(2 * alpha + 1));
  const double t = q * q;
  for (int n = 0; n <= N; ++n) {
    m.radii.push_back(std::pow(q, double(n)));
    m.weights.push_back(std::pow(q, 2.0 * n * (alpha + 1 - eps)) *
                        (qpoch(std::pow(q, -2.0 * N), t, n) / qpoch(t, t, n)).real());
  }
  return m;
}

double radial_moment(const RadialMeasure& m, int k) {
  if (m.flat) {
    if (k <= -1) throw QDomainError("flat measure: divergent moment");
    return kPi / (k + 1);  // 2 pi int_0^1 r^(2k) r dr
  }
  double s = 0;
  for (int i = 0; i < m.atoms(); ++i) s += m.weights[i] * std::pow(m.radii[i], 2.0 * k);
  return 2 * kPi * s;
}

cplx integrate(const RadialMeasure& m, const std::function<cplx(cplx)>& f, int M) {
  auto circle = [&](double r) {
    cplx s = 0;
    for (int j = 0; j < M; ++j) s += f(std::polar(r, 2 * kPi * j / M));
    return 2 * kPi * s / double(M);
  };
  if (!m.flat) {
    cplx s = 0;
    for (int i = 0; i < m.atoms(); ++i) s += m.weights[i] * circle(m.radii[i]);
    return s;
  }
  // composite Simpson in r on [0, 1) with weight r
  const int R = 2000;
  const double h = 1.0 / R;
  cplx s = 0;
  for (int i = 0; i <= R; ++i) {
    double r = std::min(i * h, 1 - 1e-12);
    double w = (i == 0 || i == R) ? 1 : (i % 2 ? 4 : 2);
    s += w * r * circle(r);
  }
  return s * h / 3.0;
}

namespace {

MeasureReport measure_report(const RadialMeasure& m, int jlo, int N, const std::function<double(int)>& coeff, double tol) {
  MeasureReport rep;
  rep.atoms = m.flat ? 0 : m.atoms();
  for (int j = jlo; j <= N; ++j)
    for (int k = jlo; k <= N; ++k) {
      if (j == k) continue;
      cplx v = integrate(m, [&](cplx z) { return std::pow(z, j) * std::pow(std::conj(z), k); }, 64);
      double scale = std::sqrt(std::abs(radial_moment(m, j) * radial_moment(m, k))) + 1e-300;
      if (std::abs(v) > 1e-12 * std::max(scale, 1.0)) rep.orthogonal = false;
    }
  double base = coeff(0) * radial_moment(m, 0);
  for (int k = jlo; k <= N; ++k) {
    double v = coeff(k) * radial_moment(m, k) / base;
    rep.normalized.push_back(v);
    rep.max_deviation = std::max(rep.max_deviation, std::abs(v - 1));
  }
  rep.pass = rep.orthogonal && rep.max_deviation < tol;
  return rep;
}

ReproduceReport reproduce(const RadialMeasure& m, double norm, const std::function<cplx(cplx, cplx)>& K, cplx mu,
                          int klo, int khi, double tol) {
  ReproduceReport rep;
  for (int k = klo; k <= khi; ++k) {
    cplx v = integrate(m, [&](cplx z) { return std::pow(z, k) * K(mu, z); }) / norm;
    cplx want = std::pow(mu, k);
    double r = std::abs(v - want) / std::abs(want);
    rep.residuals.emplace_back(k, r);
    rep.max_residual = std::max(rep.max_residual, r);
  }
  rep.pass = rep.max_residual < tol;
  return rep;
}

}  // namespace

MeasureReport measure_check_plus(double l, double q, int N, double tol) {
  RadialMeasure m = disc_measure(l, q);
  return measure_report(m, 0, N, [&](int k) { return kernel_plus_coeff(k, l, q); }, tol);
}

MeasureReport measure_check_strange(double alpha, double eps, double q, int N, double tol) {
  RadialMeasure m = strange_measure(alpha, eps, q);
  return measure_report(m, -N, N, [&](int k) { return kernel_strange_coeff(k, alpha, eps, q); }, tol);
}

ReproduceReport reproduce_check_plus(double l, double q, cplx mu, int kmax, double tol) {
  RadialMeasure m = disc_measure(l, q);
  double norm = kernel_plus_coeff(0, l, q) * radial_moment(m, 0);
  return reproduce(m, norm, [&](cplx a, cplx b) { return kernel_plus(a, b, l, q); }, mu, 0, kmax, tol);
}

ReproduceReport reproduce_check_strange(double alpha, double eps, double q, cplx mu, int kmax, double tol) {
  RadialMeasure m = strange_measure(alpha, eps, q);
  double norm = kernel_strange_coeff(0, alpha, eps, q) * radial_moment(m, 0);
  return reproduce(m, norm, [&](cplx a, cplx b) { return kernel_strange(a, b, alpha, eps, q); }, mu, -kmax, kmax, tol);
}

double kernel_min_eigenvalue(const std::function<cplx(cplx, cplx)>& K, const std::vector<cplx>& pts) {
  const int n = int(pts.size());
  Eigen::MatrixXcd G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = K(pts[i], pts[j]);
  G = (G + G.adjoint()).eval() / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace qorbit
