#pragma once
// Quantum moment map J: U_q(sl(n+1)) -> Func(X)_q and its operator images.

#include <Eigen/Dense>
#include <functional>

#include "qorbit/heis.hpp"

namespace qorbit {

using CMat = Eigen::MatrixXcd;

// literal: the displayed constants (q^-1-q)^(1/2); not an algebra map.
// standard: displayed shape with the constant q^(1/2)/(q^-1-q).
// equivariant: prefactors of E and F exchanged; intertwines ad_q.
enum class MomentForm { literal, standard, equivariant };

const char* form_name(MomentForm f);

// c * q^(q_half/2) * (q^-1-q)^(a_half/2) * prod_j x_j^(x_half[j]/2) * letters
struct MomentImage {
  Gen gen{};
  int n = 1;
  QCoeff coeff = 1;
  int q_half = 0;
  int a_half = 0;
  std::vector<int> x_half;  // j = 0..n+1
  HeisElement letters;

  double constant(double q0) const;
  // Prefactor at the point x = (x_0..x_{n+1}); principal square roots.
  cplx prefactor(double q0, const std::vector<cplx>& x) const;
  std::string str() const;
};

// twist: indices i with I_i applied first (J o I_i flips E_i and K_i).
MomentImage moment_map(Gen g, int n, MomentForm form = MomentForm::standard, const std::vector<int>& twist = {});

// A module on which every x_j acts diagonally and products of letters act by known matrices.
struct XDiagModule {
  int n = 1;
  int dim = 0;
  double q0 = 0.5;
  std::vector<std::vector<cplx>> x;                  // x[j][idx]
  std::function<CMat(const HeisElement&)> letters;  // operator of a Heisenberg element
  std::vector<int> interior;                         // columns unaffected by truncation
  std::string name;
};

XDiagModule w_numeric(const WModule& w, double q0);

CMat moment_operator(const MomentImage& im, const XDiagModule& m);
CMat moment_operator(const AlgebraElement& a, const XDiagModule& m, MomentForm form = MomentForm::standard,
                     const std::vector<int>& twist = {});

// Operator of g.J(b) computed from the U_q action on Func(X)_q (W only, since it needs letter actions).
CMat act_on_image(Gen g, const MomentImage& b, const XDiagModule& m);

double interior_residual(const CMat& a, const XDiagModule& m);

struct MomentReport {
  bool pass = true;
  double max_residual = 0;
  std::vector<std::pair<std::string, double>> residuals;
};

MomentReport verify_moment_relations(const XDiagModule& m, MomentForm form = MomentForm::standard,
                                     const std::vector<int>& twist = {}, double tol = 1e-10);
// J(ad_q(a) b) = a.J(b) on generator pairs.
MomentReport verify_intertwining(const XDiagModule& m, MomentForm form, double tol = 1e-10);

// J(C_q) with c0 d0 normalised through (c0/d0)^(1/2) = c0 (c0 d0)^(-1/2).
cplx casimir_image(double q0, cplx c0, cplx d0);
// The displayed formula with c0/d0 + d0/c0.
cplx casimir_image_literal(double q0, cplx c0, cplx d0);
cplx casimir_from_spin(double q0, cplx l);
// c0/d0 + d0/c0 - q - q^-1 = (q^l - q^-l)(q^(l+1) - q^(-l-1)) for c0 = q^(l+1/2), d0 = q^(-l-1/2).
bool casimir_spin_identity();

}  // namespace qorbit
