// Quantum Heisenberg algebra H for sl(n+1) on the defining representation.
#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "qorbit/coeffs.hpp"
#include "qorbit/sparse.hpp"
#include "qorbit/uq.hpp"

namespace qorbit {

// Letters are ordered z_0 < .. < z_n < C < zh_0 < .. < zh_n, which is the normal order.
enum class HKind : std::uint8_t { Z = 0, C = 1, ZH = 2 };
struct HLetter {
  HKind kind;
  std::uint8_t i;
  auto operator<=>(const HLetter&) const = default;
};
using HWord = std::vector<HLetter>;

inline HLetter z(int i) { return {HKind::Z, static_cast<std::uint8_t>(i)}; }
inline HLetter zh(int i) { return {HKind::ZH, static_cast<std::uint8_t>(i)}; }
inline HLetter Cl() { return {HKind::C, 0}; }

std::string hword_str(const HWord& w);
int hdegree(const HWord& w);  // z, zh have degree 1, C degree 2

class HeisElement {
 public:
  using Terms = std::map<HWord, QCoeff>;  // keys are normal-ordered words
  explicit HeisElement(int n = 1) : n_(n) {}
  HeisElement(int n, const QCoeff& s);
  static HeisElement letter(int n, HLetter l);
  // Normal form of an arbitrary word.
  static HeisElement word(int n, const HWord& w);

  int rank() const { return n_; }
  const Terms& terms() const& { return t_; }
  Terms terms() && { return std::move(t_); }
  bool is_zero() const { return t_.empty(); }
  QCoeff coeff(const HWord& w) const;
  void add_normal(const HWord& w, const QCoeff& c);

  HeisElement& operator+=(const HeisElement& o);
  HeisElement& operator-=(const HeisElement& o);
  HeisElement operator-() const { return QCoeff(-1) * *this; }
  friend HeisElement operator+(HeisElement a, const HeisElement& b) { return a += b; }
  friend HeisElement operator-(HeisElement a, const HeisElement& b) { return a -= b; }
  friend HeisElement operator*(const HeisElement& a, const HeisElement& b);
  friend HeisElement operator*(const QCoeff& s, const HeisElement& a);
  bool operator==(const HeisElement& o) const { return t_ == o.t_; }
  std::string str() const;

 private:
  int n_;
  Terms t_;
};

enum class RewriteStrategy { leftmost, rightmost };
// Normal form by exhaustive rewriting with a chosen redex strategy (no caching across strategies).
HeisElement heis_normal_form(int n, const HWord& w, RewriteStrategy s = RewriteStrategy::leftmost);
bool is_normal(const HWord& w);

// Action of a single generator and of a general element on H.
HeisElement uq_act_heis(Gen g, const HeisElement& f);
HeisElement uq_act_heis(const AlgebraElement& a, const HeisElement& f);
// K-eigenvalue of a letter: K_i l = q^k l.
int k_weight(int i, HLetter l);

// x_i = sum_{k>=i} z_k zh_k + q c with c = C/(q^-1 - q), 0 <= i <= n+1.
HeisElement invariants_x(int i, int n);

struct HeisStar {
  std::vector<int> iota;  // empty means sharp (all +1)
};
HeisElement heis_star(const HeisElement& f, const HeisStar& s);

// The induced module W with basis z^m 1_chi, |m| <= N.
class WModule : public Representation {
 public:
  WModule(int n, int N);
  int rank() const override { return n_; }
  int dim() const override { return int(basis_.size()); }
  int max_degree() const { return N_; }
  const std::vector<std::vector<int>>& basis() const { return basis_; }
  int index(const std::vector<int>& m) const;  // -1 if outside the truncation
  int degree_of(int idx) const;

  const SparseMat<QCoeff>& generator(GenKind k, int i) const override;
  const SparseMat<QCoeff>& zmat(int i) const { return z_[i]; }
  const SparseMat<QCoeff>& zhmat(int i) const { return zh_[i]; }
  const SparseMat<QCoeff>& cmat() const { return c_; }
  // Eigenvalue of x_i on basis vector idx (x_i is diagonal on W).
  QCoeff x_eigen(int i, int idx) const;
  // Operator of a Heisenberg element.
  SparseMat<QCoeff> heis_op(const HeisElement& f) const;

 private:
  std::map<int, QCoeff> apply_word_to_vacuum(const HeisElement& f) const;
  int n_, N_;
  std::vector<std::vector<int>> basis_;
  std::map<std::vector<int>, int> index_;
  std::vector<SparseMat<QCoeff>> z_, zh_;
  SparseMat<QCoeff> c_;
  std::vector<SparseMat<QCoeff>> e_, f_, k_, kinv_;
};

struct CheckReport {
  std::string check;
  bool pass = true;
  std::vector<std::string> details;
  std::string counterexample;
};

CheckReport check_relations_on_W(int n, int N);
CheckReport check_confluence(int n, int max_len);
// PBW: normal-ordered monomials of each degree <= d act independently on W.
CheckReport check_pbw(int n, int max_deg);
CheckReport check_I0_invariance(int n);
// Module-algebra law g(f h) = sum g1(f) g2(h) for the given pairs.
bool module_algebra_law(const AlgebraElement& g, const HeisElement& f, const HeisElement& h);

// Exact evaluation at q = num/den, other symbols must be absent.
mpq_class eval_at_q(const QCoeff& c, const mpq_class& q0);

}  // namespace qorbit
