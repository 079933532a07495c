// U_q(sl(n+1)): words in E_i, F_i, K_i^{+-1} with Hopf structure and real forms.
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qorbit/coeffs.hpp"
#include "qorbit/sparse.hpp"

namespace qorbit {

enum class GenKind : std::uint8_t { E, F, K, Kinv };

struct Gen {
  GenKind kind;
  std::uint8_t i;  // 1..n
  auto operator<=>(const Gen&) const = default;
};

using Word = std::vector<Gen>;

std::string word_str(const Word& w);

class AlgebraElement {
 public:
  using Terms = std::map<Word, QCoeff>;

  explicit AlgebraElement(int n = 1) : n_(n) {}
  AlgebraElement(int n, const QCoeff& scalar);
  static AlgebraElement one(int n) { return AlgebraElement(n, QCoeff(1)); }
  static AlgebraElement gen(int n, GenKind k, int i);
  static AlgebraElement E(int n, int i) { return gen(n, GenKind::E, i); }
  static AlgebraElement F(int n, int i) { return gen(n, GenKind::F, i); }
  static AlgebraElement K(int n, int i) { return gen(n, GenKind::K, i); }
  static AlgebraElement Kinv(int n, int i) { return gen(n, GenKind::Kinv, i); }
  static AlgebraElement from_word(int n, const Word& w, const QCoeff& c = QCoeff(1));

  int rank() const { return n_; }
  const Terms& terms() const& { return t_; }
  Terms terms() && { return std::move(t_); }
  bool is_zero() const { return t_.empty(); }
  QCoeff coeff(const Word& w) const;

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement operator-() const;
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(const QCoeff& s, const AlgebraElement& a);
  bool operator==(const AlgebraElement& o) const { return t_ == o.t_; }

  void add(const Word& w, const QCoeff& c);
  std::string str() const;

 private:
  int n_;
  Terms t_;
};

// Cancels adjacent K_i K_i^-1 pairs.
Word reduce_word(Word w);

class TensorElement {
 public:
  using Terms = std::map<std::pair<Word, Word>, QCoeff>;
  explicit TensorElement(int n = 1) : n_(n) {}
  void add(const Word& a, const Word& b, const QCoeff& c);
  const Terms& terms() const& { return t_; }
  Terms terms() && { return std::move(t_); }
  int rank() const { return n_; }
  friend TensorElement operator*(const TensorElement& a, const TensorElement& b);
  bool operator==(const TensorElement& o) const { return t_ == o.t_; }
  std::string str() const;

 private:
  int n_;
  Terms t_;
};

TensorElement coproduct(const AlgebraElement& a);
AlgebraElement antipode(const AlgebraElement& a);
QCoeff counit(const AlgebraElement& a);

// (eps (x) id) and (id (x) eps) and m o (S (x) id) applied to tensors.
AlgebraElement counit_left(const TensorElement& t);
AlgebraElement counit_right(const TensorElement& t);
AlgebraElement multiply_antipode_left(const TensorElement& t);

struct StarForm {
  enum Kind { flat, natural } kind = flat;
  std::vector<int> iota;  // iota_0..iota_n, used for natural
  static StarForm Flat() { return {}; }
  static StarForm Natural(std::vector<int> iota) { return {natural, std::move(iota)}; }
};

// Antilinear anti-automorphism. Coefficients are conjugated by taking q, c, d real.
AlgebraElement star_form(const AlgebraElement& a, const StarForm& form);
// Antilinear automorphism entering the module-*-algebra law (xi f)^* = omega(xi) f^*:
// E_i -> -s q^-1 F_i, F_i -> -s q E_i, K_i -> K_i^-1 with s = iota_{i-1} iota_i (s = 1 for flat).
AlgebraElement omega(const AlgebraElement& a, const StarForm& form);
// The displayed composition (S(xi))^form.
AlgebraElement omega_antipode(const AlgebraElement& a, const StarForm& form);

AlgebraElement adjoint_action(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement casimir_sl2();
// I_i: E_i -> -E_i, K_i -> -K_i, F fixed.
AlgebraElement automorphism_I(int i, const AlgebraElement& a);

// A module given by matrices of the generators.
class Representation {
 public:
  virtual ~Representation() = default;
  virtual int rank() const = 0;
  virtual int dim() const = 0;
  virtual const SparseMat<QCoeff>& generator(GenKind k, int i) const = 0;
};

SparseMat<QCoeff> act(const AlgebraElement& a, const Representation& rep);
std::map<int, QCoeff> act(const AlgebraElement& a, const Representation& rep, const std::map<int, QCoeff>& v);
bool equal_on(const AlgebraElement& a, const AlgebraElement& b, const Representation& rep);

struct NamedRelation {
  std::string name;
  AlgebraElement lhs;  // must vanish
};
std::vector<NamedRelation> defining_relations(int n);

// Parser for expressions such as "E1 F1 - (q^2) K1^-1 + (1/(q^-1-q)) K1".
AlgebraElement parse_algebra(const std::string& text, int n);

}  // namespace qorbit
