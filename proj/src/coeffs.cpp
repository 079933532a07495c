#include "qorbit/coeffs.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qorbit {

namespace {
const char* kNames[kNumVars] = {"q", "c", "d", "x0", "x1", "x2", "x3", "x4"};

cplx ipow(cplx z, int e) {
  cplx r = 1.0;
  while (e > 0) {
    if (e & 1) r *= z;
    z *= z;
    e >>= 1;
  }
  return r;
}

std::string coeff_str(const mpq_class& c) { return c.get_str(); }
}  // namespace

const char* var_name(int v) { return kNames[v]; }

// ---------------------------------------------------------------- Poly

Poly::Poly(long c) {
  if (c != 0) t_[Exps{}] = c;
}

Poly::Poly(const mpq_class& c) {
  if (c != 0) t_[Exps{}] = c;
}

Poly Poly::var(int v, int power) {
  Exps e{};
  e[v] = static_cast<std::int16_t>(power);
  return monomial(e, 1);
}

Poly Poly::monomial(const Exps& e, const mpq_class& c) {
  Poly p;
  if (c != 0) p.t_[e] = c;
  return p;
}

bool Poly::is_const() const {
  return t_.empty() || (t_.size() == 1 && t_.begin()->first == Exps{});
}

mpq_class Poly::const_value() const {
  auto it = t_.find(Exps{});
  return it == t_.end() ? mpq_class(0) : it->second;
}

int Poly::degree(int v) const {
  int d = -1;
  for (auto& [e, c] : t_) d = std::max(d, int(e[v]));
  return d;
}

int Poly::min_degree(int v) const {
  int d = 1 << 20;
  for (auto& [e, c] : t_) d = std::min(d, int(e[v]));
  return t_.empty() ? 0 : d;
}

bool Poly::uses(int v) const {
  for (auto& [e, c] : t_)
    if (e[v] != 0) return true;
  return false;
}

void Poly::add_term(const Exps& e, const mpq_class& c) {
  if (c == 0) return;
  auto [it, fresh] = t_.try_emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [e, c] : r.t_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  for (auto& [e, c] : o.t_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (auto& [e, c] : o.t_) add_term(e, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (auto& [ea, ca] : a.t_)
    for (auto& [eb, cb] : b.t_) {
      Exps e;
      for (int v = 0; v < kNumVars; ++v) e[v] = ea[v] + eb[v];
      r.add_term(e, ca * cb);
    }
  return r;
}

Poly Poly::scaled(const mpq_class& s) const {
  if (s == 0) return Poly();
  Poly r = *this;
  for (auto& [e, c] : r.t_) c *= s;
  return r;
}

Poly Poly::shifted(const Exps& sh) const {
  Poly r;
  for (auto& [e, c] : t_) {
    Exps n;
    for (int v = 0; v < kNumVars; ++v) n[v] = e[v] + sh[v];
    r.t_.emplace(n, c);
  }
  return r;
}

Poly Poly::scale_var(int v, const mpq_class& s) const {
  Poly r;
  for (auto& [e, c] : t_) {
    mpq_class f = c;
    for (int k = 0; k < e[v]; ++k) f *= s;
    r.add_term(e, f);
  }
  return r;
}

Poly Poly::scale_var_qpow(int v, int k) const {
  // v -> q^k v. For k < 0 this is only valid after the caller clears q-denominators.
  Poly r;
  for (auto& [e, c] : t_) {
    Exps n = e;
    n[kQ] = static_cast<std::int16_t>(n[kQ] + k * e[v]);
    r.add_term(n, c);
  }
  return r;
}

Poly Poly::swap_vars(int a, int b) const {
  Poly r;
  for (auto& [e, c] : t_) {
    Exps n = e;
    std::swap(n[a], n[b]);
    r.add_term(n, c);
  }
  return r;
}

cplx Poly::eval(const Point& p) const {
  cplx s = 0;
  for (auto& [e, c] : t_) {
    cplx m = c.get_d();
    for (int v = 0; v < kNumVars; ++v)
      if (e[v]) m *= ipow(p[v], e[v]);
    s += m;
  }
  return s;
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : t_) {
    bool unit = (e == Exps{});
    mpq_class mag = abs(c);
    if (c < 0)
      os << "-";
    else if (!first)
      os << "+";
    first = false;
    bool wrote = false;
    if (unit || mag != 1) {
      os << coeff_str(mag);
      wrote = true;
    }
    for (int v = 0; v < kNumVars; ++v) {
      if (!e[v]) continue;
      if (wrote) os << "*";
      os << kNames[v];
      if (e[v] != 1) os << "^" << e[v];
      wrote = true;
    }
  }
  return os.str();
}

std::vector<Poly> Poly::coeffs_in(int v) const {
  std::vector<Poly> cs(std::max(0, degree(v) + 1));
  for (auto& [e, c] : t_) {
    Exps n = e;
    n[v] = 0;
    cs[e[v]].add_term(n, c);
  }
  return cs;
}

Poly Poly::from_coeffs(int v, const std::vector<Poly>& cs) {
  Poly r;
  for (std::size_t k = 0; k < cs.size(); ++k) {
    Exps sh{};
    sh[v] = static_cast<std::int16_t>(k);
    r += cs[k].shifted(sh);
  }
  return r;
}

// ---------------------------------------------------------------- division, gcd

bool divides(const Poly& b, const Poly& a, Poly* quotient) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  Poly r = a, qt;
  const Exps& lb = b.lead_exps();
  const mpq_class& cb = b.lead_coeff();
  while (!r.is_zero()) {
    const Exps lr = r.lead_exps();
    Exps sh;
    for (int v = 0; v < kNumVars; ++v) {
      sh[v] = lr[v] - lb[v];
      if (sh[v] < 0) return false;
    }
    mpq_class f = r.lead_coeff() / cb;
    Poly m = Poly::monomial(sh, f);
    qt += m;
    r -= b.shifted(sh).scaled(f);
  }
  if (quotient) *quotient = std::move(qt);
  return true;
}

Poly exact_div(const Poly& a, const Poly& b) {
  if (b.is_const()) return a.scaled(1 / b.const_value());
  Poly qt;
  if (!divides(b, a, &qt)) throw std::logic_error("exact_div: not divisible");
  return qt;
}

namespace {

Poly monic(const Poly& p) {
  if (p.is_zero()) return p;
  return p.scaled(1 / p.lead_coeff());
}

Poly monomial_gcd(const Poly& a, const Poly& b) {
  Exps m = a.terms().begin()->first;
  auto fold = [&](const Poly& p) {
    for (auto& [e, c] : p.terms())
      for (int v = 0; v < kNumVars; ++v) m[v] = std::min(m[v], e[v]);
  };
  fold(a);
  fold(b);
  return Poly::monomial(m, 1);
}

Poly content(const Poly& p, int v) {
  Poly g;
  for (auto& c : p.coeffs_in(v)) {
    if (c.is_zero()) continue;
    g = poly_gcd(g, c);
    if (g.is_const()) return Poly(1);
  }
  return g;
}

Poly prem(Poly a, const Poly& b, int v) {
  const int db = b.degree(v);
  const Poly lb = b.coeffs_in(v)[db];
  while (!a.is_zero() && a.degree(v) >= db) {
    const int da = a.degree(v);
    Poly la = a.coeffs_in(v)[da];
    Exps sh{};
    sh[v] = static_cast<std::int16_t>(da - db);
    a = lb * a - la * b.shifted(sh);
    a = monic(a);
  }
  return a;
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.is_const() || b.is_const()) return Poly(1);
  if (a.is_monomial() || b.is_monomial()) return monomial_gcd(a, b);
  if (a == b) return monic(a);
  int v = -1;
  for (int k = kNumVars - 1; k >= 0; --k)
    if (a.uses(k) || b.uses(k)) {
      v = k;
      break;
    }
  if (!a.uses(v)) return poly_gcd(a, content(b, v));
  if (!b.uses(v)) return poly_gcd(content(a, v), b);
  // Pull out powers of v first; cheap and common.
  Poly g_c = poly_gcd(content(a, v), content(b, v));
  Poly pa = exact_div(a, content(a, v));
  Poly pb = exact_div(b, content(b, v));
  int ma = pa.min_degree(v), mb = pb.min_degree(v);
  Exps shv{};
  shv[v] = static_cast<std::int16_t>(std::min(ma, mb));
  Exps sa{}, sb{};
  sa[v] = static_cast<std::int16_t>(-ma);
  sb[v] = static_cast<std::int16_t>(-mb);
  pa = pa.shifted(sa);
  pb = pb.shifted(sb);
  Poly vpart = Poly::monomial(shv, 1);
  if (pa.degree(v) < pb.degree(v)) std::swap(pa, pb);
  while (!pb.is_zero()) {
    if (pb.degree(v) == 0) {
      pa = Poly(1);
      break;
    }
    Poly r = prem(pa, pb, v);
    pa = pb;
    if (r.is_zero()) break;
    pb = exact_div(r, content(r, v));
  }
  Poly g = pa.degree(v) > 0 ? exact_div(pa, content(pa, v)) : Poly(1);
  return monic(g * g_c * vpart);
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(const Poly& n, const Poly& d) : num_(n), den_(d) { normalize(); }

RatFunc RatFunc::qpow(int k) {
  if (k >= 0) return RatFunc(Poly::var(kQ, k));
  return RatFunc(Poly(1), Poly::var(kQ, -k));
}

void RatFunc::normalize() {
  if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (!den_.is_const()) {
    Poly g = poly_gcd(num_, den_);
    if (!g.is_const()) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
  }
  mpq_class lc = den_.lead_coeff();
  if (lc != 1) {
    num_ = num_.scaled(1 / lc);
    den_ = den_.scaled(1 / lc);
  }
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (den_.is_const()) {
      if (num_.is_zero()) den_ = Poly(1);
      return *this;
    }
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero() || o.is_zero()) return *this = RatFunc();
  if (den_.is_const() && o.den_.is_const()) {
    num_ = num_ * o.num_;
    return *this;
  }
  Poly g1 = poly_gcd(num_, o.den_), g2 = poly_gcd(o.num_, den_);
  Poly n = exact_div(num_, g1) * exact_div(o.num_, g2);
  Poly d = exact_div(den_, g2) * exact_div(o.den_, g1);
  num_ = std::move(n);
  den_ = std::move(d);
  mpq_class lc = den_.lead_coeff();
  if (lc != 1) {
    num_ = num_.scaled(1 / lc);
    den_ = den_.scaled(1 / lc);
  }
  return *this;
}

RatFunc RatFunc::inv() const {
  if (is_zero()) throw DivisionByZero("division by zero (degenerate parameter collision)");
  return RatFunc(den_, num_);
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inv(); }

RatFunc RatFunc::pow(int k) const {
  RatFunc base = k < 0 ? inv() : *this, r(1);
  for (int i = 0; i < std::abs(k); ++i) r *= base;
  return r;
}

bool RatFunc::operator<(const RatFunc& o) const {
  if (num_.terms() != o.num_.terms()) return num_.terms() < o.num_.terms();
  return den_.terms() < o.den_.terms();
}

RatFunc RatFunc::scale_var_qpow(int v, int k) const {
  if (k == 0 || !uses(v)) return *this;
  // Shift by q^k; negative powers of q produced by k<0 are cleared by multiplying
  // numerator and denominator by q^(|k| * degree).
  int dn = num_.degree(v), dd = den_.degree(v);
  int m = std::max(dn, dd);
  Poly n = num_.scale_var_qpow(v, k), d = den_.scale_var_qpow(v, k);
  if (k < 0) {
    Exps sh{};
    sh[kQ] = static_cast<std::int16_t>(-k * m);
    n = n.shifted(sh);
    d = d.shifted(sh);
  }
  return RatFunc(n, d);
}

RatFunc RatFunc::swap_vars(int a, int b) const { return RatFunc(num_.swap_vars(a, b), den_.swap_vars(a, b)); }

RatFunc RatFunc::subst(int v, const RatFunc& value) const {
  auto sub = [&](const Poly& p) {
    auto cs = p.coeffs_in(v);
    RatFunc r;
    for (int k = int(cs.size()) - 1; k >= 0; --k) r = r * value + RatFunc(cs[k]);
    return r;
  };
  if (!uses(v)) return *this;
  return sub(num_) / sub(den_);
}

cplx RatFunc::eval(const Point& p) const {
  cplx d = den_.eval(p);
  if (d == 0.0 || std::abs(d) < 1e-300)
    throw PoleError("pole at evaluation point: denominator factor (" + den_.str() + ") vanishes");
  return num_.eval(p) / d;
}

std::string RatFunc::str() const {
  if (den_.is_const()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}
  RatFunc parse() {
    RatFunc r = expr();
    skip();
    if (i_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("cannot parse '" + s_ + "' at " + std::to_string(i_) + ": " + why);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  RatFunc expr() {
    RatFunc r = term();
    for (;;) {
      if (eat('+'))
        r += term();
      else if (eat('-'))
        r -= term();
      else
        return r;
    }
  }
  RatFunc term() {
    RatFunc r = unary();
    for (;;) {
      if (eat('*'))
        r *= unary();
      else if (eat('/'))
        r /= unary();
      else
        return r;
    }
  }
  RatFunc unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  RatFunc power() {
    RatFunc b = atom();
    if (eat('^')) {
      bool neg = eat('-');
      skip();
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (st == i_) fail("expected exponent");
      int k = std::stoi(s_.substr(st, i_ - st));
      return b.pow(neg ? -k : k);
    }
    return b;
  }
  RatFunc atom() {
    skip();
    if (eat('(')) {
      RatFunc r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return RatFunc(mpq_class(mpz_class(s_.substr(st, i_ - st))));
    }
    for (int v = kNumVars - 1; v >= 0; --v) {
      std::string nm = kNames[v];
      if (s_.compare(i_, nm.size(), nm) == 0) {
        i_ += nm.size();
        return RatFunc::var(v);
      }
    }
    fail("unexpected symbol");
  }
  std::string s_;
  std::size_t i_ = 0;
};

}  // namespace

RatFunc parse_ratfunc(const std::string& text) { return Parser(text).parse(); }

QCoeff arith(const QCoeff& a, const QCoeff& b, ArithOp op) {
  switch (op) {
    case ArithOp::add:
      return a + b;
    case ArithOp::sub:
      return a - b;
    case ArithOp::mul:
      return a * b;
    case ArithOp::div:
      if (b.is_zero()) throw DivisionByZero("division by zero: degenerate parameter collision");
      return a / b;
  }
  return a;
}

Point make_point(double q0, cplx c0, cplx d0) {
  Point p{};
  p[kQ] = q0;
  p[kC] = c0;
  p[kD] = d0;
  return p;
}

cplx evaluate(const QCoeff& a, double q0, cplx c0, cplx d0) {
  if (!(q0 > 0 && q0 < 1)) throw std::invalid_argument("q must lie in (0,1)");
  return a.eval(make_point(q0, c0, d0));
}

}  // namespace qorbit
