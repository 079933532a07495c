#include "doctest.h"
#include "qorbit/heis.hpp"
#include "qorbit/uq.hpp"

using namespace qorbit;
using A = AlgebraElement;

namespace {
const WModule& W1() {
  static WModule w(1, 6);
  return w;
}
const WModule& W2() {
  static WModule w(2, 4);
  return w;
}
Word wd(std::initializer_list<Gen> g) { return Word(g); }
Gen E1{GenKind::E, 1}, F1{GenKind::F, 1}, K1{GenKind::K, 1}, K1i{GenKind::Kinv, 1};
}  // namespace

TEST_CASE("uq: coproduct on generators") {
  auto dk = coproduct(A::K(1, 1));
  CHECK(dk.terms().size() == 1);
  CHECK(dk.terms().at({wd({K1}), wd({K1})}).is_one());
  auto de = coproduct(A::E(1, 1));
  CHECK(de.terms().size() == 2);
  CHECK(de.terms().at({wd({E1}), wd({})}).is_one());
  CHECK(de.terms().at({wd({K1i}), wd({E1})}).is_one());
  auto d1 = coproduct(A::one(1));
  CHECK(d1.terms().at({wd({}), wd({})}).is_one());
}

TEST_CASE("uq: antipode and counit") {
  CHECK(antipode(A::E(1, 1)) == A::from_word(1, wd({K1, E1}), -1));
  CHECK(antipode(A::K(1, 1)) == A::Kinv(1, 1));
  CHECK(counit(A::F(1, 1)).is_zero());
  CHECK(counit(A::K(1, 1) * A::K(1, 1)).is_one());
  // anti-homomorphism, checked on W
  A a = A::E(1, 1) * A::F(1, 1) + QCoeff(2) * A::K(1, 1), b = A::F(1, 1) * A::Kinv(1, 1);
  CHECK(equal_on(antipode(a * b), antipode(b) * antipode(a), W1()));
}

TEST_CASE("uq: Hopf axioms on generators") {
  for (int n : {1, 2}) {
    const auto& W = n == 1 ? W1() : W2();
    for (int i = 1; i <= n; ++i)
      for (auto k : {GenKind::E, GenKind::F, GenKind::K, GenKind::Kinv}) {
        A g = A::gen(n, k, i);
        CHECK(counit_left(coproduct(g)) == g);
        CHECK(counit_right(coproduct(g)) == g);
        CHECK(equal_on(multiply_antipode_left(coproduct(g)), A(n, counit(g)), W));
      }
  }
}

TEST_CASE("uq: star forms") {
  CHECK(star_form(A::E(1, 1), StarForm::Flat()) == A::from_word(1, wd({K1i, K1i, F1})));
  CHECK(star_form(A::E(1, 1), StarForm::Natural({-1, 1})) == A::from_word(1, wd({K1i, K1i, F1}), -1));
  CHECK(star_form(star_form(A::F(1, 1), StarForm::Flat()), StarForm::Flat()) == A::F(1, 1));
  A x = A::E(1, 1) * A::F(1, 1) * A::K(1, 1) + QCoeff(3) * A::F(1, 1);
  CHECK(equal_on(star_form(star_form(x, StarForm::Flat()), StarForm::Flat()), x, W1()));
  // anti-automorphism
  A y = A::E(1, 1) * A::K(1, 1);
  CHECK(equal_on(star_form(x * y, StarForm::Flat()), star_form(y, StarForm::Flat()) * star_form(x, StarForm::Flat()), W1()));
  // star forms respect the defining relations
  for (auto& r : defining_relations(2))
    CHECK(equal_on(star_form(r.lhs, StarForm::Natural({-1, 1, 1})), A(2), W2()));
}

TEST_CASE("uq: omega") {
  // Hopf-compatible map: involutive antilinear automorphism with Delta(omega x) = (omega (x) omega) Delta^op(x)
  for (auto form : {StarForm::Flat(), StarForm::Natural({-1, 1})}) {
    for (auto k : {GenKind::E, GenKind::F, GenKind::K}) {
      A g = A::gen(1, k, 1);
      CHECK(equal_on(omega(omega(g, form), form), g, W1()));
      TensorElement lhs = coproduct(omega(g, form)), rhs(1);
      for (auto& [key, c] : coproduct(g).terms()) {
        A a2 = omega(A::from_word(1, key.second), form), a1 = omega(A::from_word(1, key.first), form);
        for (auto& [w2, c2] : a2.terms())
          for (auto& [w1, c1] : a1.terms()) rhs.add(w2, w1, c * c2 * c1);
      }
      CHECK(lhs == rhs);
    }
    for (auto& r : defining_relations(1)) CHECK(act(omega(r.lhs, form), W1()).zero());
  }
  CHECK(omega(A::E(1, 1), StarForm::Flat()) == -RatFunc::qpow(-1) * A::F(1, 1));
  // the displayed composition (S(E))^flat is not involutive
  A om = omega_antipode(A::E(1, 1), StarForm::Flat());
  CHECK(equal_on(om, -RatFunc::qpow(-2) * A::Kinv(1, 1) * A::F(1, 1), W1()));
  CHECK_FALSE(equal_on(omega_antipode(om, StarForm::Flat()), A::E(1, 1), W1()));
}

TEST_CASE("uq: adjoint action") {
  A b = A::F(1, 1) * A::E(1, 1) + A::K(1, 1);
  CHECK(adjoint_action(A::K(1, 1), b) == A::K(1, 1) * b * A::Kinv(1, 1));
  CHECK(adjoint_action(A::one(1), b) == b);
  A expect = A::E(1, 1) * A::F(1, 1) + A::Kinv(1, 1) * A::F(1, 1) * A::from_word(1, wd({K1, E1}), -1);
  CHECK(adjoint_action(A::E(1, 1), A::F(1, 1)) == expect);
  // module axiom ad(a) ad(a') = ad(a a')
  A a1 = A::E(1, 1) + A::K(1, 1), a2 = A::F(1, 1) * A::K(1, 1);
  CHECK(equal_on(adjoint_action(a1, adjoint_action(a2, b)), adjoint_action(a1 * a2, b), W1()));
}

TEST_CASE("uq: sl2 Casimir") {
  A c = casimir_sl2();
  WModule W8(1, 8);
  for (A g : {A::E(1, 1), A::F(1, 1), A::K(1, 1)}) CHECK(act(c * g - g * c, W8).zero());
  QCoeff a = qdiff();
  CHECK(c.coeff(wd({K1})) == (RatFunc::qpow(-1) + RatFunc::q()) / (QCoeff(2) * a * a));
  CHECK(counit(c).is_zero());
}

TEST_CASE("uq: defining relations hold on W") {
  for (auto& r : defining_relations(1)) CHECK_MESSAGE(act(r.lhs, W1()).zero(), r.name);
  for (auto& r : defining_relations(2)) CHECK_MESSAGE(act(r.lhs, W2()).zero(), r.name);
  // a non-relation is detected
  CHECK_FALSE(act(A::E(1, 1) * A::F(1, 1) - A::F(1, 1) * A::E(1, 1), W1()).zero());
}

TEST_CASE("uq: automorphisms I_i") {
  CHECK(automorphism_I(1, A::E(1, 1)) == -A::E(1, 1));
  CHECK(automorphism_I(1, A::F(1, 1)) == A::F(1, 1));
  CHECK(automorphism_I(1, automorphism_I(1, A::K(1, 1))) == A::K(1, 1));
  for (auto& r : defining_relations(2)) CHECK(act(automorphism_I(2, r.lhs), W2()).zero());
}

TEST_CASE("uq: expression parser") {
  A x = parse_algebra("E1 F1 - (q^2) K1^-1 + 3 K1^2", 1);
  A y = A::E(1, 1) * A::F(1, 1) - RatFunc::qpow(2) * A::Kinv(1, 1) + QCoeff(3) * A::K(1, 1) * A::K(1, 1);
  CHECK(x == y);
  CHECK_THROWS(parse_algebra("E3", 2));
}
