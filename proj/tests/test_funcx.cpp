#include <random>

#include "doctest.h"
#include "qorbit/funcx.hpp"

using namespace qorbit;
using FX = FuncXElement;
using H = HeisElement;

namespace {
RatFunc qp(int k) { return RatFunc::qpow(k); }
RatFunc X(int i) { return RatFunc::var(xvar(i)); }
Gen G(GenKind k, int i) { return Gen{k, std::uint8_t(i)}; }
}  // namespace

TEST_CASE("funcx: the Heisenberg algebra maps homomorphically") {
  for (int n : {1, 2}) {
    std::vector<HLetter> ls;
    for (int i = 0; i <= n; ++i) {
      ls.push_back(z(i));
      ls.push_back(zh(i));
    }
    ls.push_back(Cl());
    for (auto& a : ls)
      for (auto& b : ls) {
        H ha = H::letter(n, a), hb = H::letter(n, b);
        CHECK(FX::from_heis(ha * hb) == FX::from_heis(ha) * FX::from_heis(hb));
      }
    for (int i = 0; i <= n + 1; ++i) CHECK(FX::from_heis(invariants_x(i, n)) == FX::xfun(n, i));
  }
}

TEST_CASE("funcx: zeta relations") {
  const int n = 2;
  FX z1 = FX::zeta(n, 1), z2 = FX::zeta(n, 2), h1 = FX::zeta_hat(n, 1), h2 = FX::zeta_hat(n, 2);
  CHECK(z1 * z2 == qp(1) * (z2 * z1));
  CHECK(h1 * h2 == qp(-1) * (h2 * h1));
  CHECK(!(z1 * z2 == z2 * z1));
  // commuting with functions
  RatFunc f = X(1) * X(1) + X(2) / (X(1) + 3);
  for (int i = 1; i <= n; ++i) {
    FX zi = FX::zeta(n, i), hi = FX::zeta_hat(n, i);
    CHECK(zi * FX::function(n, f) == FX::function(n, T_shift(f, i, 1)) * zi);
    CHECK(hi * FX::function(n, f) == FX::function(n, T_shift(f, i, -1)) * hi);
    CHECK(zi * hi == FX::function(n, (X(i - 1) - X(i)) / (X(i) - qp(-2) * X(i + 1))));
    CHECK(hi * zi == FX::function(n, (qp(2) * X(i - 1) - X(i)) / (X(i) - X(i + 1))));
  }
}

TEST_CASE("funcx: non-neighbouring zetas commute") {
  const int n = 3;
  CHECK(FX::zeta(n, 1) * FX::zeta(n, 3) == FX::zeta(n, 3) * FX::zeta(n, 1));
  CHECK(FX::zeta_hat(n, 1) * FX::zeta_hat(n, 3) == FX::zeta_hat(n, 3) * FX::zeta_hat(n, 1));
  CHECK(FX::zeta(n, 1) * FX::zeta_hat(n, 3) == FX::zeta_hat(n, 3) * FX::zeta(n, 1));
}

TEST_CASE("funcx: zeta form round trip") {
  const int n = 2;
  FX f = FX::zeta_pow(n, {2, -1}) * FX::function(n, X(1) + 1) + FX::zeta_hat(n, 2) * FX::zeta(n, 1);
  FX back(n);
  for (auto& [k, g] : f.zeta_form()) back += FX::zeta_pow(n, k) * FX::function(n, g);
  CHECK(back == f);
  CHECK(f.in_function_algebra());
  CHECK(!FX::zpow(n, 0, 1).in_function_algebra());
}

TEST_CASE("funcx: U_q action agrees with the Heisenberg action") {
  for (int n : {1, 2}) {
    std::vector<H> els{H::letter(n, z(0)), H::letter(n, zh(n)), H::word(n, {z(n), zh(0)}),
                       H::word(n, {z(0), zh(n), Cl()}), H::word(n, {zh(1), z(0), z(1)})};
    for (int j = 0; j <= n + 1; ++j) els.push_back(invariants_x(j, n));
    for (int i = 1; i <= n; ++i)
      for (auto k : {GenKind::E, GenKind::F, GenKind::K, GenKind::Kinv})
        for (auto& h : els) CHECK(uq_act_fx(G(k, i), FX::from_heis(h)) == FX::from_heis(uq_act_heis(G(k, i), h)));
  }
}

TEST_CASE("funcx: holomorphic action for n = 1") {
  FX zeta = FX::zeta(1, 1);
  CHECK(uq_act_fx(G(GenKind::E, 1), zeta) == -qp(1) * (zeta * zeta));
  RatFunc q2 = qp(2);
  for (int k = -3; k <= 3; ++k) {
    FX zk = FX::zeta_pow(1, {k});
    RatFunc e = -qp(1) * (RatFunc(1) - q2.pow(k)) / (RatFunc(1) - q2);
    RatFunc f = (qp(-2 * k) - 1) / (qp(-2) - 1);
    CHECK(uq_act_fx(G(GenKind::E, 1), zk) == e * FX::zeta_pow(1, {k + 1}));
    CHECK(uq_act_fx(G(GenKind::F, 1), zk) == f * FX::zeta_pow(1, {k - 1}));
    CHECK(uq_act_fx(G(GenKind::K, 1), zk) == qp(-2 * k) * zk);
  }
  // the centre acts through the counit
  AlgebraElement cas = casimir_sl2();
  for (int k = -2; k <= 2; ++k) {
    FX zk = FX::zeta_pow(1, {k});
    CHECK(uq_act_fx(cas, zk) == counit(cas) * zk);
  }
}

TEST_CASE("funcx: functions are K-invariant and the holomorphic part is stable") {
  const int n = 2;
  RatFunc f = X(1) * X(2) / (X(0) - X(2));
  for (int i = 1; i <= n; ++i) CHECK(uq_act_fx(G(GenKind::K, i), FX::function(n, f)) == FX::function(n, f));
  auto constant_coeffs = [](const FX& e) {
    for (auto& [k, g] : e.zeta_form())
      for (int v = kX0; v <= kX4; ++v)
        if (g.uses(v)) return false;
    return true;
  };
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b) {
      FX p = FX::zeta_pow(n, {a, b});
      for (int i = 1; i <= n; ++i)
        for (auto k : {GenKind::E, GenKind::F, GenKind::K}) CHECK(constant_coeffs(uq_act_fx(G(k, i), p)));
    }
}

TEST_CASE("funcx: module-algebra law on random pairs") {
  const int n = 2;
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> e(-1, 1), v(0, n + 1), c(1, 4);
  auto rnd = [&] {
    ZExp m(n + 1);
    for (auto& x : m) x = e(rng);
    RatFunc f = RatFunc(c(rng)) * X(v(rng)) + RatFunc(c(rng));
    if (c(rng) == 1) f = f / (X(v(rng)) + RatFunc(c(rng)));
    return FX::monomial(n, m, f);
  };
  for (int t = 0; t < 200; ++t) {
    FX f = rnd(), h = rnd();
    int i = 1 + t % n;
    for (auto k : {GenKind::E, GenKind::F, GenKind::K})
      CHECK(fx_module_algebra_law(AlgebraElement::gen(n, k, i), f, h));
  }
}

TEST_CASE("funcx: involutions") {
  for (int n : {1, 2}) {
    std::vector<int> iota(n + 1, 1);
    iota[0] = -1;
    FxInvolution inv{FxInvolution::star_real, iota};
    for (int i = 1; i <= n; ++i) {
      CHECK(involution_fx(FX::zeta(n, i), inv) == RatFunc(iota[i - 1] * iota[i]) * FX::zeta_hat(n, i));
      CHECK(involution_fx(FX::xfun(n, i), inv) == FX::xfun(n, i));
    }
    FX f = FX::zeta_pow(n, std::vector<int>(n, 1)) * FX::function(n, X(1) + 2);
    FX g = FX::zpow(n, 0, -1) * FX::zhat(n, n);
    CHECK(involution_fx(involution_fx(f, inv), inv) == f);
    CHECK(involution_fx(f * g, inv) == involution_fx(g, inv) * involution_fx(f, inv));
    for (auto form : {StarForm::Flat(), StarForm::Natural(iota)}) {
      FxInvolution fi{FxInvolution::star_real, form.kind == StarForm::flat ? std::vector<int>{} : iota};
      for (int i = 1; i <= n; ++i)
        for (auto k : {GenKind::E, GenKind::F, GenKind::K})
          for (auto& h : {f, g}) {
            AlgebraElement xi = AlgebraElement::gen(n, k, i);
            CHECK(involution_fx(uq_act_fx(xi, h), fi) == uq_act_fx(omega(xi, form), involution_fx(h, fi)));
          }
    }
  }
  // complex case
  FxInvolution star{FxInvolution::star_complex, {}};
  FX zeta = FX::zeta(1, 1);
  FX zs = involution_fx(zeta, star);
  CHECK(zeta * zs == FX::function(1, RatFunc(1)));
  CHECK(zs * zeta == FX::function(1, RatFunc(1)));
  FX f = FX::zeta_pow(1, {2}) * FX::function(1, X(0) * X(1) + X(2));
  FX g = FX::zeta_pow(1, {-1}) * FX::function(1, X(1) / (X(2) + 1));
  CHECK(involution_fx(involution_fx(f, star), star) == f);
  CHECK(involution_fx(f * g, star) == involution_fx(g, star) * involution_fx(f, star));
  FX zh = FX::zeta_hat(1, 1);
  FX zhs = involution_fx(zh, star);
  CHECK(zh * zhs == FX::function(1, RatFunc(1)));
}

TEST_CASE("funcx: n = 1 relations in c and d") {
  RatFunc c = RatFunc::var(kC), d = RatFunc::var(kD), x = X(1);
  XcdAlgebra a = xcd_algebra(c, d, false);
  CHECK(a.zeta_zeta_star == (x - d / RatFunc::q()) / (x - c / RatFunc::q()));
  CHECK(a.zeta_star_zeta == (x - RatFunc::q() * d) / (x - RatFunc::q() * c));
  CHECK(a.phi_identity);
  CHECK(phi(a.zeta_zeta_star, c, d) == RatFunc::q() * x / d);
  XcdAlgebra b = xcd_algebra(RatFunc(2), RatFunc(mpq_class(1, 2)), false);
  CHECK(b.phi_identity);
  // the hat-zeta product carries the opposite sign
  RatFunc zzh = to_cd((a.zeta * FX::zeta_hat(1, 1)).function_part());
  CHECK(zzh == -a.zeta_zeta_star);
  CHECK(from_cd(to_cd(X(0) * X(2) + x)) == X(0) * X(2) + x);

  Sl2Generators s = sl2_xyyhat();
  CHECK(s.x == FX::from_heis(H::word(1, {z(1), zh(1)})) + FX::function(1, RatFunc::q() * from_cd(c)));
  RatFunc f = x * x + 1 / (x + 2);
  FX fx = FX::function(1, f);
  CHECK(s.y * fx == FX::function(1, T_shift(f, 1, 1)) * s.y);
  CHECK(s.yhat * fx == FX::function(1, T_shift(f, 1, -1)) * s.yhat);
  RatFunc cc = from_cd(c), dd = from_cd(d), qi = qp(-1), q = RatFunc::q();
  CHECK(s.yhat * s.y == FX::function(1, -(qi * x - cc) * (qi * x - dd)));
  CHECK(s.y * s.yhat == FX::function(1, -(q * x - cc) * (q * x - dd)));
  for (auto& g : {s.x, s.y, s.yhat}) {
    CHECK(s.c * g == g * s.c);
    CHECK(s.d * g == g * s.d);
  }
  CHECK(FX::zeta(1, 1) == FX::function(1, (q * x - cc).inv()) * s.y);
  CHECK(FX::zeta_hat(1, 1) == s.yhat * FX::function(1, (q * x - cc).inv()));
}
