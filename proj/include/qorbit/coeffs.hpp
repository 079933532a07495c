// Exact rational functions over Q in a fixed set of formal symbols.
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qorbit {

// Symbol registry. x0..x4 are used by the function algebra.
enum Var : int { kQ = 0, kC, kD, kX0, kX1, kX2, kX3, kX4, kNumVars };

const char* var_name(int v);
inline int xvar(int i) { return kX0 + i; }

using Exps = std::array<std::int16_t, kNumVars>;
using cplx = std::complex<double>;
using Point = std::array<cplx, kNumVars>;

class PoleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class Poly {
 public:
  using Terms = std::map<Exps, mpq_class>;

  Poly() = default;
  Poly(long c);
  Poly(const mpq_class& c);
  static Poly var(int v, int power = 1);
  static Poly monomial(const Exps& e, const mpq_class& c);

  const Terms& terms() const& { return t_; }
  Terms terms() && { return std::move(t_); }
  bool is_zero() const { return t_.empty(); }
  bool is_const() const;
  bool is_monomial() const { return t_.size() == 1; }
  mpq_class const_value() const;  // 0 unless is_const
  const Exps& lead_exps() const { return t_.rbegin()->first; }
  const mpq_class& lead_coeff() const { return t_.rbegin()->second; }
  int degree(int v) const;
  int min_degree(int v) const;
  bool uses(int v) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const mpq_class& c) const;
  Poly shifted(const Exps& e) const;  // multiply by monomial
  bool operator==(const Poly& o) const { return t_ == o.t_; }
  bool operator!=(const Poly& o) const { return !(t_ == o.t_); }

  // Substitute v -> s * v for a rational scalar s.
  Poly scale_var(int v, const mpq_class& s) const;
  // Substitute v -> q^k * v.
  Poly scale_var_qpow(int v, int k) const;
  Poly swap_vars(int a, int b) const;

  cplx eval(const Point& p) const;
  std::string str() const;

  // Helpers for recursive algorithms in one variable.
  std::vector<Poly> coeffs_in(int v) const;
  static Poly from_coeffs(int v, const std::vector<Poly>& cs);

 private:
  void add_term(const Exps& e, const mpq_class& c);
  Terms t_;
};

// Exact quotient; throws std::logic_error if b does not divide a.
Poly exact_div(const Poly& a, const Poly& b);
bool divides(const Poly& b, const Poly& a, Poly* quotient = nullptr);
Poly poly_gcd(const Poly& a, const Poly& b);

// Reduced fraction with monic denominator.
class RatFunc {
 public:
  RatFunc() : num_(0), den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}
  RatFunc(const mpq_class& c) : num_(c), den_(1) {}
  RatFunc(const Poly& p) : num_(p), den_(1) {}
  RatFunc(const Poly& n, const Poly& d);
  static RatFunc var(int v) { return RatFunc(Poly::var(v)); }
  static RatFunc q() { return var(kQ); }
  // q^k for any integer k.
  static RatFunc qpow(int k);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_const() && num_.is_const() && num_.const_value() == 1; }
  bool is_const() const { return num_.is_const() && den_.is_const(); }

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  RatFunc inv() const;
  RatFunc pow(int k) const;
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }
  bool operator<(const RatFunc& o) const;  // arbitrary total order for containers

  RatFunc scale_var_qpow(int v, int k) const;
  RatFunc swap_vars(int a, int b) const;
  RatFunc subst(int v, const RatFunc& value) const;
  bool uses(int v) const { return num_.uses(v) || den_.uses(v); }

  cplx eval(const Point& p) const;
  std::string str() const;

 private:
  void normalize();
  Poly num_, den_;
};

using QCoeff = RatFunc;

RatFunc parse_ratfunc(const std::string& text);

enum class ArithOp { add, sub, mul, div };
QCoeff arith(const QCoeff& a, const QCoeff& b, ArithOp op);

// Point with q, c, d set and every x-variable zero.
Point make_point(double q0, cplx c0 = 1.0, cplx d0 = 1.0);
cplx evaluate(const QCoeff& a, double q0, cplx c0 = 1.0, cplx d0 = 1.0);

// a = q^-1 - q.
inline RatFunc qdiff() { return RatFunc::qpow(-1) - RatFunc::q(); }
// [k]_q style helpers are kept local to the modules that need them.

struct Tolerance {
  double abs = 1e-10;
  double rel = 1e-10;
  bool close(cplx a, cplx b) const {
    return std::abs(a - b) <= abs + rel * std::max(std::abs(a), std::abs(b));
  }
};

}  // namespace qorbit
