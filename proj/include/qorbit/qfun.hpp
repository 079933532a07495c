#pragma once
// q-Pochhammer symbols, the bilateral 1Psi1 sum and the kernels and measures of the
// holomorphic realisations of U_q(su(1,1)).

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qorbit {

using cplx = std::complex<double>;

struct QDomainError : std::domain_error {
  using std::domain_error::domain_error;
};
struct QConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QSeriesContext {
  double tolerance = 1e-16;
  int max_terms = 20000;
};

// (a; t)_k for any integer k; negative k uses (a; t)_{-k} = 1 / prod_{i=1..k} (1 - a t^-i).
cplx qpoch(cplx a, cplx t, int k);
// (a; t)_inf; *bound receives the certified relative truncation error.
cplx qpoch_inf(cplx a, cplx t, const QSeriesContext& ctx = {}, double* bound = nullptr);
// (a; t)_alpha = (a; t)_inf / (a t^alpha; t)_inf
cplx qpoch_alpha(cplx a, cplx t, double alpha, const QSeriesContext& ctx = {});

struct PsiResult {
  cplx value = 0;
  double tail = 0;  // size of the last terms kept on either side, relative to |value|
  int kmin = 0, kmax = 0;
};
// sum_{k in Z} (a; t)_k / (b; t)_k x^k
PsiResult ramanujan_psi(cplx a, cplx b, cplx t, cplx x, const QSeriesContext& ctx = {});

// 1 / (lambda conj(mu); q^2)_{-2l}, |lambda|, |mu| < 1, l <= -1/2.
cplx kernel_plus(cplx lambda, cplx mu, double l, double q, const QSeriesContext& ctx = {});
// Taylor coefficient of z^k in 1 / (z; q^2)_{-2l}: (q^-4l; q^2)_k / (q^2; q^2)_k.
double kernel_plus_coeff(int k, double l, double q);

// Prefactor (q^(2(alpha+1-eps)); q^2)_inf / (q^(-2(alpha+eps)); q^2)_inf.
double strange_prefactor(double alpha, double eps, double q);
// Prefactor times 1Psi1(q^(-2(alpha+eps)), q^(2(alpha+1-eps)); q^2, lambda conj(mu)).
cplx kernel_strange(cplx lambda, cplx mu, double alpha, double eps, double q, const QSeriesContext& ctx = {});
// Coefficient of z^k (k in Z) of kernel_strange as a series in z = lambda conj(mu).
double kernel_strange_coeff(int k, double alpha, double eps, double q);

// Rotation invariant measure: atoms on circles |lambda| = radii[i], or the flat disc.
// Atoms integrate over the full circle (dtheta, total 2 pi); the flat disc uses r dr dtheta.
struct RadialMeasure {
  std::vector<double> radii, weights;
  bool flat = false;
  int atoms() const { return int(radii.size()); }
};
RadialMeasure disc_measure(double l, double q, const QSeriesContext& ctx = {});
RadialMeasure strange_measure(double alpha, double eps, double q);
// int |lambda|^(2k) dnu
double radial_moment(const RadialMeasure& m, int k);
// int f(lambda) dnu(lambda), M-point trapezoid in the angle
cplx integrate(const RadialMeasure& m, const std::function<cplx(cplx)>& f, int M = 128);

struct MeasureReport {
  bool orthogonal = true;            // int lambda^j conj(lambda)^k dnu = 0 for j != k
  std::vector<double> normalized;    // c_k m_k / (c_0 m_0)
  double max_deviation = 0;          // max |normalized - 1|
  int atoms = 0;
  bool pass = false;
};
MeasureReport measure_check_plus(double l, double q, int N, double tol = 1e-8);
MeasureReport measure_check_strange(double alpha, double eps, double q, int N, double tol = 1e-8);

struct ReproduceReport {
  std::vector<std::pair<int, double>> residuals;  // degree -> |result - mu^k| / |mu^k|
  double max_residual = 0;
  bool pass = false;
};
// int lambda^k K(mu, lambda) dnu(lambda) / (c_0 m_0) = mu^k
ReproduceReport reproduce_check_plus(double l, double q, cplx mu, int kmax = 10, double tol = 1e-6);
ReproduceReport reproduce_check_strange(double alpha, double eps, double q, cplx mu, int kmax = 10, double tol = 1e-6);

// Smallest eigenvalue of the Hermitian matrix K(p_i, p_j).
double kernel_min_eigenvalue(const std::function<cplx(cplx, cplx)>& K, const std::vector<cplx>& pts);

}  // namespace qorbit
