#pragma once
// Induced modules Pi_nu for n = 1 and the *-representations of U_q(su(1,1)) they carry.

#include <map>
#include <optional>
#include <stdexcept>

#include "qorbit/moment.hpp"

namespace qorbit {

struct InvalidParams : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RepParams {
  double q = 0.5;
  cplx c0 = 1, d0 = 1;
  double nu0 = 1;
  bool complex_case() const { return std::abs(c0.imag()) > 1e-14 || std::abs(d0.imag()) > 1e-14; }
};

// Throws InvalidParams. ordered: also require c0 <= d0 in the real case.
void validate(const RepParams& p, bool ordered = true);

enum class SpectrumKind { full, plus, minus, finite };
const char* spectrum_name(SpectrumKind k);

// Eigenvalues anchor * q^(2j) for j in [jmin, jmax] (open ends use INT_MIN/INT_MAX).
struct Spectrum {
  SpectrumKind kind = SpectrumKind::full;
  double q = 0.5;
  double anchor = 1;
  int jmin = 0, jmax = 0;
  bool has_zero = false;  // 0 is in the Hilbert-space spectrum
  bool contains(double x, double tol = 1e-9) const;
  std::vector<double> points(double lo, double hi) const;  // sorted ascending
};

// n-th lattice index of x on the progression through nu0, or nullopt.
std::optional<int> lattice_index(double q, double nu0, cplx x, double tol = 1e-9);

Spectrum x_spectrum(const RepParams& p);

// Truncation of the simple module: basis zeta^k 1 for k in [klo, khi], 1 at x = anchor.
struct PiModule {
  RepParams p;
  double anchor = 1;
  int klo = 0, khi = 0;
  bool wall_low = false, wall_high = false;  // true where the truncation is exact
  int dim() const { return khi - klo + 1; }
  int index(int k) const { return k - klo; }
  double x_of(int k) const;
  CMat zeta, x, y, yhat;
  XDiagModule as_xdiag(int margin = 2) const;
};

// The induced module on a symmetric window around nu0, ignoring walls.
PiModule build_pi_window(const RepParams& p, int N);
// The simple module with spectrum x_spectrum(p), N vectors on each open side.
PiModule build_pi(const RepParams& p, int N);

// Spectrum read off the operators: the closed subquotient reached from 1_nu.
struct OperatorSpectrum {
  bool ok = false;
  std::vector<double> eigenvalues;  // ascending
  bool bounded_above = false, bounded_below = false;
};
OperatorSpectrum operator_spectrum(const RepParams& p, int N);

struct GramReport {
  std::vector<int> ks;
  std::vector<cplx> diag;
  bool hermitian_positive = true;
  double min_entry = 0;
};
// Scalar product nu(g^* f) on the simple module (star-involution in the complex case).
GramReport gram_matrix(const RepParams& p, int N);

// Interval criterion: walls present, or no lattice point strictly inside (q c0, q d0).
bool unitarity_predicted(const RepParams& p, int kmax = 200);

// sum_k zeta^k g_k(x), g_k on the lattice x = anchor q^(2j) of the spectrum.
struct LatticeElement {
  std::map<int, std::map<int, cplx>> g;  // k -> j -> value
};
struct IntegralContext {
  RepParams p;
  Spectrum sp;
};
IntegralContext integral_context(const RepParams& p);
cplx lattice_x(const IntegralContext& ctx, int j);
bool lattice_allowed(const IntegralContext& ctx, int j);
// zeta^k g preserves the spectrum only if g vanishes where zeta^k would leave it.
bool orbit_supported(const IntegralContext& ctx, int k, int j);
LatticeElement act_lattice(GenKind g, const LatticeElement& f, const IntegralContext& ctx);
// (q^-1 - q) sum_x x g_0(x)
cplx invariant_integral(const LatticeElement& f, const IntegralContext& ctx);

enum class Series { PrincipalContinuous, Complimentary, HolomorphicDiscrete, AntiHolomorphicDiscrete, Strange, NonUnitarizable };
const char* series_name(Series s);

struct SeriesLabel {
  Series series = Series::NonUnitarizable;
  cplx l = 0;
  double epsilon = 0;
  cplx casimir = 0;
  SpectrumKind spectrum = SpectrumKind::full;
};
SeriesLabel classify(const RepParams& p);

struct CasimirCheck {
  bool pass = false;
  cplx expected = 0;
  double residual = 0;
  double literal_residual = 0;  // against the displayed c0/d0 + d0/c0 form
};
CasimirCheck casimir_spectrum_check(const RepParams& p, int N, MomentForm form = MomentForm::standard);

}  // namespace qorbit
