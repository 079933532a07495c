#include <random>

#include "doctest.h"
#include "qorbit/coeffs.hpp"

using namespace qorbit;

namespace {

RatFunc random_small(std::mt19937& rng, bool with_cd) {
  std::uniform_int_distribution<int> coef(-3, 3), ex(0, 2), nterms(1, 3);
  auto poly = [&] {
    Poly p;
    int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
      Exps e{};
      e[kQ] = ex(rng);
      if (with_cd) {
        e[kC] = ex(rng) / 2;
        e[kD] = ex(rng) / 2;
      }
      p += Poly::monomial(e, coef(rng));
    }
    return p;
  };
  Poly n = poly(), d;
  do d = poly();
  while (d.is_zero());
  return RatFunc(n, d);
}

// Equality by cross multiplication; does not rely on the gcd.
bool same(const RatFunc& a, const RatFunc& b) { return a.num() * b.den() == b.num() * a.den(); }

}  // namespace

TEST_CASE("coeffs: basic arithmetic examples") {
  RatFunc q = RatFunc::q();
  CHECK(arith(q, q, ArithOp::mul) == RatFunc(Poly::var(kQ, 2)));
  CHECK(arith(qdiff().inv(), qdiff(), ArithOp::mul).is_one());
  RatFunc a = (q - q.pow(3)) / (RatFunc(1) - q * q);
  CHECK(arith(a, q, ArithOp::sub).is_zero());
  // independent check of the reduced form
  CHECK(a.den().is_const());
  CHECK_THROWS_AS(arith(q, RatFunc(), ArithOp::div), DivisionByZero);
}

TEST_CASE("coeffs: canonical form invariants") {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    RatFunc r = random_small(rng, true);
    CHECK(poly_gcd(r.num(), r.den()).is_const());
    CHECK(r.den().lead_coeff() == 1);
  }
}

TEST_CASE("coeffs: field axioms on random triples") {
  std::mt19937 rng(12345);
  for (int i = 0; i < 1000; ++i) {
    bool cd = i % 4 == 0;
    RatFunc a = random_small(rng, cd), b = random_small(rng, cd), c = random_small(rng, cd);
    REQUIRE(same((a + b) + c, a + (b + c)));
    REQUIRE(same(a * (b * c), (a * b) * c));
    REQUIRE(same(a * (b + c), a * b + a * c));
    REQUIRE((a + b) == (b + a));
    REQUIRE((a * b) == (b * a));
    REQUIRE((a + (-a)).is_zero());
    if (!a.is_zero()) REQUIRE((a * a.inv()).is_one());
  }
}

TEST_CASE("coeffs: evaluation is a homomorphism") {
  CHECK(evaluate(RatFunc(Poly::var(kQ, 2)), 0.5).real() == doctest::Approx(0.25));
  double q0 = 0.5;
  auto cd = RatFunc::var(kC) / RatFunc::var(kD);
  CHECK(std::abs(evaluate(cd, q0, std::sqrt(q0), 1 / std::sqrt(q0)) - 0.5) < 1e-14);

  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(0.1, 0.9);
  Tolerance tol{0, 1e-12};
  for (int i = 0; i < 300; ++i) {
    RatFunc a = random_small(rng, true), b = random_small(rng, true);
    double q = u(rng);
    cplx c0(u(rng), u(rng)), d0(u(rng), -u(rng));
    try {
      cplx ea = evaluate(a, q, c0, d0), eb = evaluate(b, q, c0, d0);
      CHECK(tol.close(evaluate(a * b, q, c0, d0), ea * eb));
      CHECK(Tolerance{1e-12, 1e-12}.close(evaluate(a + b, q, c0, d0), ea + eb));
    } catch (const PoleError&) {
    }
  }
}

TEST_CASE("coeffs: pole error names the denominator") {
  // 1/(x - q c) at x = q c
  RatFunc f = RatFunc(1) / (RatFunc::var(kX1) - RatFunc::q() * RatFunc::var(kC));
  Point p = make_point(0.5, 2.0, 0.5);
  p[kX1] = 1.0;
  try {
    f.eval(p);
    FAIL("expected pole");
  } catch (const PoleError& e) {
    CHECK(std::string(e.what()).find("x1") != std::string::npos);
  }
}

TEST_CASE("coeffs: parse and print round trip") {
  CHECK(parse_ratfunc("(1-q^2)/(q)").str() == "(1-q^2)/(q)");
  CHECK(parse_ratfunc("q^-1 - q") == qdiff());
  std::mt19937 rng(3);
  for (int i = 0; i < 200; ++i) {
    RatFunc r = random_small(rng, true);
    std::string s = r.str();
    CHECK(parse_ratfunc(s) == r);
    CHECK(parse_ratfunc(s).str() == s);
  }
  CHECK_THROWS_AS(parse_ratfunc("q +* 2"), std::invalid_argument);
}

TEST_CASE("coeffs: multivariate gcd") {
  RatFunc x = RatFunc::var(kX1), c = RatFunc::var(kC), d = RatFunc::var(kD), q = RatFunc::q();
  RatFunc f = (x - q * c) * (x - d) / ((x - q * c) * (q * x + c));
  CHECK(f == (x - d) / (q * x + c));
  RatFunc g = ((x * x - c * d) * (q - 1)) / ((x + d) * (1 - q));
  CHECK(g * (x + d) + (x * x - c * d) == RatFunc());
}

TEST_CASE("coeffs: q-shift of a variable") {
  RatFunc x = RatFunc::var(kX1), q = RatFunc::q();
  RatFunc f = (x - q) / (x + 1);
  CHECK(f.scale_var_qpow(kX1, 2) == (q * q * x - q) / (q * q * x + 1));
  CHECK(f.scale_var_qpow(kX1, -2) == (x / (q * q) - q) / (x / (q * q) + 1));
  CHECK(f.scale_var_qpow(kX1, 2).scale_var_qpow(kX1, -2) == f);
}
