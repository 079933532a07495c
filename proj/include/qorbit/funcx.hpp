// Func(X)_q inside the localized quantum torus: finite sums of z^m f(x), m in Z^{n+1},
// f rational in x_0..x_{n+1}. Func(X)_q itself is the part with |m| = 0.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "qorbit/coeffs.hpp"
#include "qorbit/heis.hpp"
#include "qorbit/uq.hpp"

namespace qorbit {

using ZExp = std::vector<int>;

class FuncXElement {
 public:
  using Terms = std::map<ZExp, RatFunc>;

  explicit FuncXElement(int n = 1) : n_(n) {
    if (n < 1 || n > 3) throw std::invalid_argument("function algebra supports 1 <= n <= 3");
  }
  static FuncXElement function(int n, const RatFunc& f);
  static FuncXElement monomial(int n, const ZExp& m, const RatFunc& f = RatFunc(1));
  static FuncXElement zpow(int n, int i, int k);
  static FuncXElement zhat(int n, int i);        // z_i^-1 (x_i - x_{i+1})
  static FuncXElement zeta(int n, int i);        // z_i^-1 z_{i-1}
  static FuncXElement zeta_hat(int n, int i);    // zh_{i-1} zh_i^-1
  static FuncXElement zeta_pow(int n, const std::vector<int>& k);  // zeta_1^k1 .. zeta_n^kn
  static FuncXElement xfun(int n, int i) { return function(n, RatFunc::var(xvar(i))); }
  static FuncXElement from_heis(const HeisElement& h);

  int rank() const { return n_; }
  const Terms& terms() const& { return t_; }
  Terms terms() && { return std::move(t_); }
  bool is_zero() const { return t_.empty(); }
  // true when every term has |m| = 0
  bool in_function_algebra() const;
  // true when the element is a single function of x
  bool is_function() const;
  RatFunc function_part() const;  // coefficient of z^0

  void add(const ZExp& m, const RatFunc& f);
  FuncXElement& operator+=(const FuncXElement& o);
  FuncXElement& operator-=(const FuncXElement& o);
  FuncXElement operator-() const;
  friend FuncXElement operator+(FuncXElement a, const FuncXElement& b) { return a += b; }
  friend FuncXElement operator-(FuncXElement a, const FuncXElement& b) { return a -= b; }
  friend FuncXElement operator*(const FuncXElement& a, const FuncXElement& b);
  friend FuncXElement operator*(const RatFunc& s, const FuncXElement& a);
  bool operator==(const FuncXElement& o) const { return t_ == o.t_; }
  FuncXElement inverse_monomial() const;  // for a single term z^m f with f invertible

  // zeta-exponent form: element = sum_k zeta^k g_k(x); only for |m| = 0.
  std::map<std::vector<int>, RatFunc> zeta_form() const;
  std::string str() const;       // z-form
  std::string zeta_str() const;  // zeta-form

 private:
  int n_;
  Terms t_;
};

// f(x) z^b = z^b sigma_b(f).
RatFunc torus_shift(const RatFunc& f, const ZExp& b);
// T_i^k: x_i -> q^{2k} x_i.
RatFunc T_shift(const RatFunc& f, int i, int k = 1);

FuncXElement uq_act_fx(Gen g, const FuncXElement& f);
FuncXElement uq_act_fx(const AlgebraElement& a, const FuncXElement& f);
bool fx_module_algebra_law(const AlgebraElement& g, const FuncXElement& f, const FuncXElement& h);

struct FxInvolution {
  enum Kind { star_real, star_complex } kind = star_real;
  std::vector<int> iota;  // for star_real; empty means all +1
};
// Antilinear anti-automorphism. star_complex is defined for n = 1 on Func(X)_q:
// zeta -> zeta^-1, x -> x, c <-> d.
FuncXElement involution_fx(const FuncXElement& f, const FxInvolution& inv);

// n = 1 conventions: x = x_1, c = q^-1 x_2, d = q x_0.
RatFunc to_cd(const RatFunc& f);    // replace x_0, x_2 by c, d
RatFunc from_cd(const RatFunc& f);  // replace c, d by x_2, x_0

struct Sl2Generators {
  FuncXElement x, y, yhat, c, d;
};
Sl2Generators sl2_xyyhat();

struct XcdAlgebra {
  RatFunc c0, d0;  // symbolic or numeric rational values; c and d if symbolic
  bool complex_case = false;
  FuncXElement zeta, zeta_star;  // zeta_star = zeta^* (real) or hat-zeta (complex)
  RatFunc zeta_zeta_star, zeta_star_zeta;  // specialized to c0, d0
  bool phi_identity = false;
};
// Builds the specialised n = 1 algebra; c0, d0 are given as rational functions in q, c, d.
// The reality constraint is checked by the caller (series module) for numeric pairs.
XcdAlgebra xcd_algebra(const RatFunc& c0, const RatFunc& d0, bool complex_case);
// Phi(t) = (1 - gamma t)/(1 - t), gamma = c0/d0.
RatFunc phi(const RatFunc& t, const RatFunc& c0, const RatFunc& d0);

}  // namespace qorbit
