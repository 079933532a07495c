#include "qorbit/funcx.hpp"

#include <numeric>
#include <sstream>

namespace qorbit {

namespace {

int total(const ZExp& m) { return std::accumulate(m.begin(), m.end(), 0); }

ZExp unit(int n, int i, int k = 1) {
  ZExp m(n + 1, 0);
  m[i] = k;
  return m;
}

}  // namespace

RatFunc torus_shift(const RatFunc& f, const ZExp& b) {
  RatFunc r = f;
  int s = 0;
  for (std::size_t j = 0; j <= b.size(); ++j) {
    if (s != 0) r = r.scale_var_qpow(xvar(int(j)), -2 * s);
    if (j < b.size()) s += b[j];
  }
  return r;
}

RatFunc T_shift(const RatFunc& f, int i, int k) { return f.scale_var_qpow(xvar(i), 2 * k); }

// ---------------------------------------------------------------- construction

FuncXElement FuncXElement::function(int n, const RatFunc& f) { return monomial(n, ZExp(n + 1, 0), f); }

FuncXElement FuncXElement::monomial(int n, const ZExp& m, const RatFunc& f) {
  FuncXElement e(n);
  e.add(m, f);
  return e;
}

FuncXElement FuncXElement::zpow(int n, int i, int k) { return monomial(n, unit(n, i, k)); }

FuncXElement FuncXElement::zhat(int n, int i) {
  return monomial(n, unit(n, i, -1), RatFunc::var(xvar(i)) - RatFunc::var(xvar(i + 1)));
}

FuncXElement FuncXElement::zeta(int n, int i) { return zpow(n, i, -1) * zpow(n, i - 1, 1); }

FuncXElement FuncXElement::zeta_hat(int n, int i) { return zhat(n, i - 1) * zhat(n, i).inverse_monomial(); }

FuncXElement FuncXElement::zeta_pow(int n, const std::vector<int>& k) {
  FuncXElement r = function(n, RatFunc(1));
  for (int i = 1; i <= n; ++i) {
    int e = k.at(i - 1);
    FuncXElement base = e >= 0 ? zeta(n, i) : zpow(n, i - 1, -1) * zpow(n, i, 1);
    for (int t = 0; t < std::abs(e); ++t) r = r * base;
  }
  return r;
}

FuncXElement FuncXElement::from_heis(const HeisElement& h) {
  const int n = h.rank();
  FuncXElement r(n);
  const RatFunc cval = qdiff() * RatFunc::qpow(-1) * RatFunc::var(xvar(n + 1));
  for (auto& [w, c] : h.terms()) {
    FuncXElement p = function(n, c);
    for (auto& l : w) {
      if (l.kind == HKind::Z)
        p = p * zpow(n, l.i, 1);
      else if (l.kind == HKind::ZH)
        p = p * zhat(n, l.i);
      else
        p = p * function(n, cval);
    }
    r += p;
  }
  return r;
}

// ---------------------------------------------------------------- arithmetic

bool FuncXElement::in_function_algebra() const {
  for (auto& [m, f] : t_)
    if (total(m) != 0) return false;
  return true;
}

bool FuncXElement::is_function() const {
  for (auto& [m, f] : t_)
    for (int v : m)
      if (v) return false;
  return true;
}

RatFunc FuncXElement::function_part() const {
  auto it = t_.find(ZExp(n_ + 1, 0));
  return it == t_.end() ? RatFunc() : it->second;
}

void FuncXElement::add(const ZExp& m, const RatFunc& f) {
  if (int(m.size()) != n_ + 1) throw std::invalid_argument("z-exponent has wrong length");
  if (f.is_zero()) return;
  auto [it, fresh] = t_.try_emplace(m, f);
  if (!fresh) {
    it->second += f;
    if (it->second.is_zero()) t_.erase(it);
  }
}

FuncXElement& FuncXElement::operator+=(const FuncXElement& o) {
  for (auto& [m, f] : o.t_) add(m, f);
  return *this;
}

FuncXElement& FuncXElement::operator-=(const FuncXElement& o) {
  for (auto& [m, f] : o.t_) add(m, -f);
  return *this;
}

FuncXElement FuncXElement::operator-() const { return RatFunc(-1) * *this; }

FuncXElement operator*(const FuncXElement& a, const FuncXElement& b) {
  const int n = std::max(a.n_, b.n_);
  FuncXElement r(n);
  for (auto& [ma, fa] : a.t_)
    for (auto& [mb, fb] : b.t_) {
      int p = 0;
      for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) p -= ma[j] * mb[i];
      ZExp m(n + 1);
      for (int i = 0; i <= n; ++i) m[i] = ma[i] + mb[i];
      r.add(m, RatFunc::qpow(p) * torus_shift(fa, mb) * fb);
    }
  return r;
}

FuncXElement operator*(const RatFunc& s, const FuncXElement& a) {
  FuncXElement r(a.n_);
  if (s.is_zero()) return r;
  for (auto& [m, f] : a.t_) r.t_.emplace(m, s * f);
  return r;
}

FuncXElement FuncXElement::inverse_monomial() const {
  if (t_.size() != 1) throw std::invalid_argument("inverse of a non-monomial element");
  auto& [m, f] = *t_.begin();
  ZExp neg(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) neg[i] = -m[i];
  int p = 0;
  for (int i = 0; i <= n_; ++i)
    for (int j = i + 1; j <= n_; ++j) p += m[j] * m[i];
  return monomial(n_, neg, RatFunc::qpow(-p) / torus_shift(f, neg));
}

std::map<std::vector<int>, RatFunc> FuncXElement::zeta_form() const {
  std::map<std::vector<int>, RatFunc> out;
  for (auto& [m, f] : t_) {
    if (total(m) != 0) throw std::invalid_argument("element is not in Func(X)_q");
    std::vector<int> k(n_);
    int s = 0;
    for (int j = 1; j <= n_; ++j) {
      s += m[j - 1];
      k[j - 1] = s;
    }
    RatFunc phase = zeta_pow(n_, k).terms().at(m);
    out[k] = f / phase;
  }
  return out;
}

std::string FuncXElement::str() const {
  if (t_.empty()) return "0";
  std::string s;
  for (auto& [m, f] : t_) {
    if (!s.empty()) s += " + ";
    bool any = false;
    for (int i = 0; i <= n_; ++i)
      if (m[i]) {
        s += "z" + std::to_string(i) + (m[i] != 1 ? "^" + std::to_string(m[i]) : "") + " ";
        any = true;
      }
    s += any ? "(" + f.str() + ")" : f.str();
  }
  return s;
}

std::string FuncXElement::zeta_str() const {
  if (t_.empty()) return "0";
  std::string s;
  for (auto& [k, f] : zeta_form()) {
    if (!s.empty()) s += " + ";
    for (int i = 1; i <= n_; ++i)
      if (k[i - 1]) s += "zeta" + std::to_string(i) + (k[i - 1] != 1 ? "^" + std::to_string(k[i - 1]) : "") + " ";
    s += "(" + f.str() + ")";
  }
  return s;
}

// ---------------------------------------------------------------- U_q action

namespace {

struct TLetter {
  int j;
  int sign;  // +1 for z_j, -1 for z_j^-1
};

std::vector<TLetter> letters_of(const ZExp& m) {
  std::vector<TLetter> out;
  for (int j = 0; j < int(m.size()); ++j)
    for (int t = 0; t < std::abs(m[j]); ++t) out.push_back({j, m[j] > 0 ? 1 : -1});
  return out;
}

int kw(int i, const TLetter& l) { return l.sign * k_weight(i, z(l.j)); }

FuncXElement letter_image(int n, Gen g, const TLetter& l) {
  const int i = g.i;
  FuncXElement zero(n);
  if (g.kind == GenKind::E) {
    if (l.j != i) return zero;
    if (l.sign > 0) return FuncXElement::zpow(n, i - 1, 1);
    return -RatFunc::q() * (FuncXElement::zpow(n, i, -1) * FuncXElement::zpow(n, i - 1, 1) * FuncXElement::zpow(n, i, -1));
  }
  if (l.j != i - 1) return zero;
  if (l.sign > 0) return FuncXElement::zpow(n, i, 1);
  return -RatFunc::q() * (FuncXElement::zpow(n, i - 1, -1) * FuncXElement::zpow(n, i, 1) * FuncXElement::zpow(n, i - 1, -1));
}

FuncXElement function_image(int n, Gen g, const RatFunc& f) {
  const int i = g.i;
  const RatFunc x = RatFunc::var(xvar(i)), q2 = RatFunc::qpow(2);
  if (g.kind == GenKind::E) {
    RatFunc coef = (f - T_shift(f, i, 1)) / (x - q2 * x);
    if (coef.is_zero()) return FuncXElement(n);
    return FuncXElement::function(n, coef) * FuncXElement::zpow(n, i - 1, 1) * FuncXElement::zhat(n, i);
  }
  RatFunc coef = -RatFunc::q() * (T_shift(f, i, -1) - f) / (RatFunc::qpow(-2) * x - x);
  if (coef.is_zero()) return FuncXElement(n);
  return FuncXElement::function(n, coef) * FuncXElement::zpow(n, i, 1) * FuncXElement::zhat(n, i - 1);
}

FuncXElement product_of(int n, const std::vector<TLetter>& ls, std::size_t from, std::size_t to) {
  ZExp m(n + 1, 0);
  for (std::size_t t = from; t < to; ++t) m[ls[t].j] += ls[t].sign;
  return FuncXElement::monomial(n, m);
}

}  // namespace

FuncXElement uq_act_fx(Gen g, const FuncXElement& el) {
  const int n = el.rank();
  if (g.i < 1 || g.i > n) throw std::out_of_range("generator index out of range");
  FuncXElement r(n);
  for (auto& [m, f] : el.terms()) {
    auto ls = letters_of(m);
    if (g.kind == GenKind::K || g.kind == GenKind::Kinv) {
      int s = 0;
      for (auto& l : ls) s += kw(g.i, l);
      r.add(m, RatFunc::qpow(g.kind == GenKind::K ? s : -s) * f);
      continue;
    }
    const FuncXElement fe = FuncXElement::function(n, f);
    if (g.kind == GenKind::E) {
      int s = 0;  // K^-1 weight of the prefix
      for (std::size_t p = 0; p < ls.size(); ++p) {
        FuncXElement img = letter_image(n, g, ls[p]);
        if (!img.is_zero())
          r += RatFunc::qpow(s) * (product_of(n, ls, 0, p) * img * product_of(n, ls, p + 1, ls.size()) * fe);
        s -= kw(g.i, ls[p]);
      }
      FuncXElement fi = function_image(n, g, f);
      if (!fi.is_zero()) r += RatFunc::qpow(s) * (FuncXElement::monomial(n, m) * fi);
    } else {
      for (std::size_t p = 0; p < ls.size(); ++p) {
        FuncXElement img = letter_image(n, g, ls[p]);
        if (img.is_zero()) continue;
        int s = 0;
        for (std::size_t t = p + 1; t < ls.size(); ++t) s += kw(g.i, ls[t]);
        r += RatFunc::qpow(s) * (product_of(n, ls, 0, p) * img * product_of(n, ls, p + 1, ls.size()) * fe);
      }
      FuncXElement fi = function_image(n, g, f);
      if (!fi.is_zero()) r += FuncXElement::monomial(n, m) * fi;
    }
  }
  return r;
}

FuncXElement uq_act_fx(const AlgebraElement& a, const FuncXElement& f) {
  FuncXElement r(f.rank());
  for (auto& [w, c] : a.terms()) {
    FuncXElement x = f;
    for (auto it = w.rbegin(); it != w.rend() && !x.is_zero(); ++it) x = uq_act_fx(*it, x);
    r += c * x;
  }
  return r;
}

bool fx_module_algebra_law(const AlgebraElement& g, const FuncXElement& f, const FuncXElement& h) {
  const int n = g.rank();
  FuncXElement lhs = uq_act_fx(g, f * h), rhs(f.rank());
  for (auto& [k, c] : coproduct(g).terms())
    rhs += c * (uq_act_fx(AlgebraElement::from_word(n, k.first), f) * uq_act_fx(AlgebraElement::from_word(n, k.second), h));
  return lhs == rhs;
}

// ---------------------------------------------------------------- involutions

namespace {

RatFunc star_complex_fn(const RatFunc& g) {
  return g.swap_vars(kX0, kX2).scale_var_qpow(kX2, -2).scale_var_qpow(kX0, 2);
}

}  // namespace

FuncXElement involution_fx(const FuncXElement& f, const FxInvolution& inv) {
  const int n = f.rank();
  FuncXElement r(n);
  if (inv.kind == FxInvolution::star_complex) {
    if (n != 1) throw std::invalid_argument("the complex-case involution is defined for n = 1");
    for (auto& [k, g] : f.zeta_form()) r += FuncXElement::function(n, star_complex_fn(g)) * FuncXElement::zeta_pow(n, {-k[0]});
    return r;
  }
  if (!inv.iota.empty() && int(inv.iota.size()) != n + 1) throw std::invalid_argument("iota must have n+1 entries");
  for (auto& [m, g] : f.terms()) {
    FuncXElement p = FuncXElement::function(n, g);  // q and x are real
    auto ls = letters_of(m);
    for (auto it = ls.rbegin(); it != ls.rend(); ++it) {
      int s = inv.iota.empty() ? 1 : inv.iota[it->j];
      FuncXElement zs = FuncXElement::zhat(n, it->j);
      p = p * (RatFunc(s) * (it->sign > 0 ? zs : zs.inverse_monomial()));
    }
    r += p;
  }
  return r;
}

// ---------------------------------------------------------------- n = 1

RatFunc to_cd(const RatFunc& f) {
  return f.subst(kX0, RatFunc::var(kD) / RatFunc::q()).subst(kX2, RatFunc::q() * RatFunc::var(kC));
}

RatFunc from_cd(const RatFunc& f) {
  return f.subst(kC, RatFunc::var(kX2) / RatFunc::q()).subst(kD, RatFunc::q() * RatFunc::var(kX0));
}

Sl2Generators sl2_xyyhat() {
  using FX = FuncXElement;
  return {FX::xfun(1, 1), FX::zpow(1, 0, 1) * FX::zhat(1, 1), FX::zpow(1, 1, 1) * FX::zhat(1, 0),
          FX::function(1, RatFunc::var(kX2) / RatFunc::q()), FX::function(1, RatFunc::q() * RatFunc::var(kX0))};
}

RatFunc phi(const RatFunc& t, const RatFunc& c0, const RatFunc& d0) {
  RatFunc gamma = c0 / d0;
  return (RatFunc(1) - gamma * t) / (RatFunc(1) - t);
}

XcdAlgebra xcd_algebra(const RatFunc& c0, const RatFunc& d0, bool complex_case) {
  XcdAlgebra a;
  a.c0 = c0;
  a.d0 = d0;
  a.complex_case = complex_case;
  a.zeta = FuncXElement::zeta(1, 1);
  a.zeta_star = involution_fx(a.zeta, FxInvolution{FxInvolution::star_real, {-1, 1}});
  auto special = [&](const FuncXElement& e) {
    if (!e.is_function()) throw std::logic_error("expected a function of x");
    return to_cd(e.function_part()).subst(kC, c0).subst(kD, d0);
  };
  a.zeta_zeta_star = special(a.zeta * a.zeta_star);
  a.zeta_star_zeta = special(a.zeta_star * a.zeta);
  a.phi_identity = (phi(a.zeta_zeta_star, c0, d0) - RatFunc::qpow(2) * phi(a.zeta_star_zeta, c0, d0)).is_zero();
  return a;
}

}  // namespace qorbit
