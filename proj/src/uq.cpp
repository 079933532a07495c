#include "qorbit/uq.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace qorbit {

std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (auto& g : w) {
    if (!s.empty()) s += " ";
    switch (g.kind) {
      case GenKind::E: s += "E"; break;
      case GenKind::F: s += "F"; break;
      case GenKind::K:
      case GenKind::Kinv: s += "K"; break;
    }
    s += std::to_string(g.i);
    if (g.kind == GenKind::Kinv) s += "^-1";
  }
  return s;
}

Word reduce_word(Word w) {
  Word out;
  out.reserve(w.size());
  for (auto& g : w) {
    if (!out.empty() && out.back().i == g.i &&
        ((out.back().kind == GenKind::K && g.kind == GenKind::Kinv) ||
         (out.back().kind == GenKind::Kinv && g.kind == GenKind::K))) {
      out.pop_back();
      continue;
    }
    out.push_back(g);
  }
  return out;
}

// ---------------------------------------------------------------- AlgebraElement

AlgebraElement::AlgebraElement(int n, const QCoeff& scalar) : n_(n) {
  if (!scalar.is_zero()) t_[Word{}] = scalar;
}

AlgebraElement AlgebraElement::gen(int n, GenKind k, int i) {
  if (i < 1 || i > n) throw std::out_of_range("generator index out of range");
  return from_word(n, Word{Gen{k, static_cast<std::uint8_t>(i)}});
}

AlgebraElement AlgebraElement::from_word(int n, const Word& w, const QCoeff& c) {
  AlgebraElement a(n);
  a.add(w, c);
  return a;
}

QCoeff AlgebraElement::coeff(const Word& w) const {
  auto it = t_.find(reduce_word(w));
  return it == t_.end() ? QCoeff() : it->second;
}

void AlgebraElement::add(const Word& w, const QCoeff& c) {
  if (c.is_zero()) return;
  Word r = reduce_word(w);
  auto [it, fresh] = t_.try_emplace(std::move(r), c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  for (auto& [w, c] : o.t_) add(w, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  for (auto& [w, c] : o.t_) add(w, -c);
  return *this;
}

AlgebraElement AlgebraElement::operator-() const {
  AlgebraElement r(n_);
  for (auto& [w, c] : t_) r.t_.emplace(w, -c);
  return r;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement r(std::max(a.n_, b.n_));
  for (auto& [wa, ca] : a.t_)
    for (auto& [wb, cb] : b.t_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      r.add(w, ca * cb);
    }
  return r;
}

AlgebraElement operator*(const QCoeff& s, const AlgebraElement& a) {
  AlgebraElement r(a.n_);
  if (s.is_zero()) return r;
  for (auto& [w, c] : a.t_) r.t_.emplace(w, s * c);
  return r;
}

std::string AlgebraElement::str() const {
  if (t_.empty()) return "0";
  std::string s;
  for (auto& [w, c] : t_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")";
    if (!w.empty()) s += " " + word_str(w);
  }
  return s;
}

// ---------------------------------------------------------------- tensors and Hopf maps

void TensorElement::add(const Word& a, const Word& b, const QCoeff& c) {
  if (c.is_zero()) return;
  auto key = std::make_pair(reduce_word(a), reduce_word(b));
  auto [it, fresh] = t_.try_emplace(std::move(key), c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

TensorElement operator*(const TensorElement& x, const TensorElement& y) {
  TensorElement r(std::max(x.n_, y.n_));
  for (auto& [k1, c1] : x.t_)
    for (auto& [k2, c2] : y.t_) {
      Word a = k1.first, b = k1.second;
      a.insert(a.end(), k2.first.begin(), k2.first.end());
      b.insert(b.end(), k2.second.begin(), k2.second.end());
      r.add(a, b, c1 * c2);
    }
  return r;
}

std::string TensorElement::str() const {
  if (t_.empty()) return "0";
  std::string s;
  for (auto& [k, c] : t_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ") " + word_str(k.first) + " (x) " + word_str(k.second);
  }
  return s;
}

namespace {

TensorElement coproduct_gen(int n, Gen g) {
  TensorElement t(n);
  Gen ki{GenKind::Kinv, g.i}, k{GenKind::K, g.i};
  switch (g.kind) {
    case GenKind::K:
    case GenKind::Kinv: t.add({g}, {g}, 1); break;
    case GenKind::E:
      t.add({g}, {}, 1);
      t.add({ki}, {g}, 1);
      break;
    case GenKind::F:
      t.add({g}, {k}, 1);
      t.add({}, {g}, 1);
      break;
  }
  return t;
}

AlgebraElement antipode_gen(int n, Gen g) {
  Gen ki{GenKind::Kinv, g.i}, k{GenKind::K, g.i};
  switch (g.kind) {
    case GenKind::K: return AlgebraElement::from_word(n, {ki});
    case GenKind::Kinv: return AlgebraElement::from_word(n, {k});
    case GenKind::E: return AlgebraElement::from_word(n, {k, g}, -1);
    case GenKind::F: return AlgebraElement::from_word(n, {g, ki}, -1);
  }
  return AlgebraElement(n);
}

}  // namespace

TensorElement coproduct(const AlgebraElement& a) {
  const int n = a.rank();
  TensorElement r(n);
  for (auto& [w, c] : a.terms()) {
    TensorElement t(n);
    t.add({}, {}, c);
    for (auto& g : w) t = t * coproduct_gen(n, g);
    for (auto& [k, v] : t.terms()) r.add(k.first, k.second, v);
  }
  return r;
}

AlgebraElement antipode(const AlgebraElement& a) {
  const int n = a.rank();
  AlgebraElement r(n);
  for (auto& [w, c] : a.terms()) {
    AlgebraElement p(n, c);
    for (auto it = w.rbegin(); it != w.rend(); ++it) p = p * antipode_gen(n, *it);
    r += p;
  }
  return r;
}

QCoeff counit(const AlgebraElement& a) {
  QCoeff s;
  for (auto& [w, c] : a.terms()) {
    bool grouplike = true;
    for (auto& g : w) grouplike &= (g.kind == GenKind::K || g.kind == GenKind::Kinv);
    if (grouplike) s += c;
  }
  return s;
}

AlgebraElement counit_left(const TensorElement& t) {
  AlgebraElement r(t.rank());
  for (auto& [k, c] : t.terms()) r += counit(AlgebraElement::from_word(t.rank(), k.first)) * AlgebraElement::from_word(t.rank(), k.second, c);
  return r;
}

AlgebraElement counit_right(const TensorElement& t) {
  AlgebraElement r(t.rank());
  for (auto& [k, c] : t.terms()) r += counit(AlgebraElement::from_word(t.rank(), k.second)) * AlgebraElement::from_word(t.rank(), k.first, c);
  return r;
}

AlgebraElement multiply_antipode_left(const TensorElement& t) {
  AlgebraElement r(t.rank());
  for (auto& [k, c] : t.terms())
    r += antipode(AlgebraElement::from_word(t.rank(), k.first, c)) * AlgebraElement::from_word(t.rank(), k.second);
  return r;
}

AlgebraElement star_form(const AlgebraElement& a, const StarForm& form) {
  const int n = a.rank();
  if (form.kind == StarForm::natural && int(form.iota.size()) != n + 1)
    throw std::invalid_argument("iota must have n+1 entries");
  for (int s : form.iota)
    if (s != 1 && s != -1) throw std::invalid_argument("iota entries must be +-1");
  auto image = [&](Gen g) {
    int sign = 1;
    if (form.kind == StarForm::natural) sign = form.iota[g.i - 1] * form.iota[g.i];
    Gen k{GenKind::K, g.i}, ki{GenKind::Kinv, g.i};
    switch (g.kind) {
      case GenKind::E: return AlgebraElement::from_word(n, {ki, ki, {GenKind::F, g.i}}, sign);
      case GenKind::F: return AlgebraElement::from_word(n, {{GenKind::E, g.i}, k, k}, sign);
      default: return AlgebraElement::from_word(n, {g});
    }
  };
  AlgebraElement r(n);
  for (auto& [w, c] : a.terms()) {
    AlgebraElement p(n, c);  // q, c, d are real: conjugation is trivial on coefficients
    for (auto it = w.rbegin(); it != w.rend(); ++it) p = p * image(*it);
    r += p;
  }
  return r;
}

AlgebraElement omega(const AlgebraElement& a, const StarForm& form) {
  const int n = a.rank();
  auto image = [&](Gen g) {
    int sign = form.kind == StarForm::natural ? form.iota.at(g.i - 1) * form.iota.at(g.i) : 1;
    switch (g.kind) {
      case GenKind::E: return AlgebraElement::from_word(n, {{GenKind::F, g.i}}, -sign * RatFunc::qpow(-1));
      case GenKind::F: return AlgebraElement::from_word(n, {{GenKind::E, g.i}}, -sign * RatFunc::q());
      case GenKind::K: return AlgebraElement::from_word(n, {{GenKind::Kinv, g.i}});
      case GenKind::Kinv: return AlgebraElement::from_word(n, {{GenKind::K, g.i}});
    }
    return AlgebraElement(n);
  };
  AlgebraElement r(n);
  for (auto& [w, c] : a.terms()) {
    AlgebraElement p(n, c);
    for (auto& g : w) p = p * image(g);
    r += p;
  }
  return r;
}

AlgebraElement omega_antipode(const AlgebraElement& a, const StarForm& form) { return star_form(antipode(a), form); }

AlgebraElement adjoint_action(const AlgebraElement& a, const AlgebraElement& b) {
  const int n = std::max(a.rank(), b.rank());
  AlgebraElement r(n);
  for (auto& [k, c] : coproduct(a).terms())
    r += AlgebraElement::from_word(n, k.first, c) * b * antipode(AlgebraElement::from_word(n, k.second));
  return r;
}

AlgebraElement casimir_sl2() {
  using A = AlgebraElement;
  QCoeff a = qdiff();
  QCoeff k = (RatFunc::qpow(-1) + RatFunc::q()) / (QCoeff(2) * a * a);
  A e = A::E(1, 1), f = A::F(1, 1);
  return QCoeff(mpq_class(1, 2)) * (e * f + f * e) + k * (A::K(1, 1) - A(1, QCoeff(2)) + A::Kinv(1, 1));
}

AlgebraElement automorphism_I(int i, const AlgebraElement& a) {
  AlgebraElement r(a.rank());
  for (auto& [w, c] : a.terms()) {
    int sign = 1;
    for (auto& g : w)
      if (g.i == i && g.kind != GenKind::F) sign = -sign;
    r.add(w, sign > 0 ? c : -c);
  }
  return r;
}

// ---------------------------------------------------------------- representations

SparseMat<QCoeff> act(const AlgebraElement& a, const Representation& rep) {
  const int d = rep.dim();
  SparseMat<QCoeff> r(d, d);
  for (auto& [w, c] : a.terms()) {
    SparseMat<QCoeff> m = SparseMat<QCoeff>::identity(d);
    for (auto it = w.rbegin(); it != w.rend(); ++it) m = rep.generator(it->kind, it->i) * m;
    r += m.scaled(c);
  }
  return r;
}

std::map<int, QCoeff> act(const AlgebraElement& a, const Representation& rep, const std::map<int, QCoeff>& v) {
  std::map<int, QCoeff> out;
  for (auto& [w, c] : a.terms()) {
    std::map<int, QCoeff> x = v;
    for (auto it = w.rbegin(); it != w.rend() && !x.empty(); ++it) x = rep.generator(it->kind, it->i).apply(x);
    for (auto& [i, val] : x) {
      auto [pos, fresh] = out.try_emplace(i, val * c);
      if (!fresh) pos->second += val * c;
    }
  }
  std::erase_if(out, [](const auto& p) { return p.second.is_zero(); });
  return out;
}

bool equal_on(const AlgebraElement& a, const AlgebraElement& b, const Representation& rep) {
  return act(a - b, rep).zero();
}

std::vector<NamedRelation> defining_relations(int n) {
  using A = AlgebraElement;
  std::vector<NamedRelation> rel;
  auto cartan = [](int i, int j) { return i == j ? 2 : (std::abs(i - j) == 1 ? -1 : 0); };
  const QCoeff a = qdiff(), qq = RatFunc::q() + RatFunc::qpow(-1);
  auto nm = [](const std::string& s, int i, int j) { return s + "(" + std::to_string(i) + "," + std::to_string(j) + ")"; };
  for (int i = 1; i <= n; ++i) {
    rel.push_back({nm("KKinv", i, i), A::K(n, i) * A::Kinv(n, i) - A::one(n)});
    for (int j = 1; j <= n; ++j) {
      int aij = cartan(i, j);
      if (i < j) rel.push_back({nm("KK", i, j), A::K(n, i) * A::K(n, j) - A::K(n, j) * A::K(n, i)});
      rel.push_back({nm("KE", i, j), A::K(n, i) * A::E(n, j) - RatFunc::qpow(-aij) * (A::E(n, j) * A::K(n, i))});
      rel.push_back({nm("KF", i, j), A::K(n, i) * A::F(n, j) - RatFunc::qpow(aij) * (A::F(n, j) * A::K(n, i))});
      A ef = A::E(n, i) * A::F(n, j) - A::F(n, j) * A::E(n, i);
      if (i == j) ef -= a.inv() * (A::K(n, i) - A::Kinv(n, i));
      rel.push_back({nm("EF", i, j), ef});
      if (std::abs(i - j) > 1 && i < j) {
        rel.push_back({nm("EE", i, j), A::E(n, i) * A::E(n, j) - A::E(n, j) * A::E(n, i)});
        rel.push_back({nm("FF", i, j), A::F(n, i) * A::F(n, j) - A::F(n, j) * A::F(n, i)});
      }
      if (std::abs(i - j) == 1) {
        A ei = A::E(n, i), ej = A::E(n, j), fi = A::F(n, i), fj = A::F(n, j);
        rel.push_back({nm("SerreE", i, j), ei * ei * ej - qq * (ei * ej * ei) + ej * ei * ei});
        rel.push_back({nm("SerreF", i, j), fi * fi * fj - qq * (fi * fj * fi) + fj * fi * fi});
      }
    }
  }
  return rel;
}

// ---------------------------------------------------------------- parser

AlgebraElement parse_algebra(const std::string& text, int n) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("cannot parse algebra expression at " + std::to_string(i) + ": " + why);
  };
  auto integer = [&] {
    std::size_t st = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (st == i) fail("expected integer");
    return std::stoi(text.substr(st, i - st));
  };
  AlgebraElement total(n);
  bool first = true;
  for (;;) {
    skip();
    if (i >= text.size()) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      fail("expected + or -");
    }
    first = false;
    AlgebraElement term(n, QCoeff(sign));
    bool any = false;
    for (;;) {
      skip();
      if (i >= text.size() || text[i] == '+' || text[i] == '-') break;
      any = true;
      if (text[i] == '(') {
        int depth = 0;
        std::size_t st = i;
        for (; i < text.size(); ++i) {
          if (text[i] == '(') ++depth;
          if (text[i] == ')' && --depth == 0) break;
        }
        if (depth != 0) fail("unbalanced parenthesis");
        ++i;
        term = parse_ratfunc(text.substr(st, i - st)) * term;
      } else if (std::isdigit(static_cast<unsigned char>(text[i]))) {
        term = QCoeff(integer()) * term;
      } else if (text[i] == 'E' || text[i] == 'F' || text[i] == 'K') {
        char g = text[i++];
        int idx = integer();
        if (idx < 1 || idx > n) fail("generator index out of range");
        AlgebraElement x = g == 'E' ? AlgebraElement::E(n, idx) : g == 'F' ? AlgebraElement::F(n, idx) : AlgebraElement::K(n, idx);
        if (i < text.size() && text[i] == '^') {
          ++i;
          bool neg = i < text.size() && text[i] == '-';
          if (neg) ++i;
          int p = integer();
          if (neg && g != 'K') fail("negative power of a non-invertible generator");
          AlgebraElement base = neg ? AlgebraElement::Kinv(n, idx) : x;
          x = AlgebraElement::one(n);
          for (int k = 0; k < p; ++k) x = x * base;
        }
        term = term * x;
      } else {
        fail("unexpected character");
      }
    }
    if (!any) fail("empty term");
    total += term;
  }
  return total;
}

}  // namespace qorbit
