#include "qorbit/heis.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>

namespace qorbit {

std::string hword_str(const HWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (auto& l : w) {
    if (!s.empty()) s += " ";
    if (l.kind == HKind::C)
      s += "C";
    else
      s += (l.kind == HKind::Z ? "z" : "zh") + std::to_string(l.i);
  }
  return s;
}

int hdegree(const HWord& w) {
  int d = 0;
  for (auto& l : w) d += l.kind == HKind::C ? 2 : 1;
  return d;
}

bool is_normal(const HWord& w) { return std::is_sorted(w.begin(), w.end()); }

namespace {

struct Rewrite {
  QCoeff coef;
  HWord rep;
};

// Rewrite rule for an out-of-order adjacent pair (a, b) with b < a.
std::vector<Rewrite> rewrite(int n, HLetter a, HLetter b) {
  const QCoeff qi = RatFunc::qpow(-1), q = RatFunc::q();
  if (a.kind == HKind::Z && b.kind == HKind::Z) return {{qi, {b, a}}};        // z_j z_i, j > i
  if (a.kind == HKind::C && b.kind == HKind::Z) return {{qi * qi, {b, a}}};   // C z_i
  if (a.kind == HKind::ZH && b.kind == HKind::C) return {{qi * qi, {b, a}}};  // zh_i C
  if (a.kind == HKind::ZH && b.kind == HKind::ZH) return {{q, {b, a}}};       // zh_j zh_i, j > i
  // a = zh_j, b = z_i
  if (a.i != b.i) return {{qi, {b, a}}};
  std::vector<Rewrite> out{{QCoeff(1), {b, a}}, {QCoeff(-1), {Cl()}}};
  const QCoeff s = -(qi * qi - 1);
  for (int k = a.i + 1; k <= n; ++k) out.push_back({s, {z(k), zh(k)}});
  return out;
}

struct Memo {
  std::mutex mu;
  std::map<std::tuple<int, int, HWord>, HeisElement> table;
};
Memo& memo() {
  static Memo m;
  return m;
}

HeisElement nf_impl(int n, const HWord& w, RewriteStrategy s) {
  int p = -1;
  if (s == RewriteStrategy::leftmost) {
    for (std::size_t k = 0; k + 1 < w.size(); ++k)
      if (w[k + 1] < w[k]) {
        p = int(k);
        break;
      }
  } else {
    for (int k = int(w.size()) - 2; k >= 0; --k)
      if (w[k + 1] < w[k]) {
        p = k;
        break;
      }
  }
  HeisElement r(n);
  if (p < 0) {
    r.add_normal(w, QCoeff(1));
    return r;
  }
  {
    std::lock_guard lk(memo().mu);
    auto it = memo().table.find({n, int(s), w});
    if (it != memo().table.end()) return it->second;
  }
  for (auto& rw : rewrite(n, w[p], w[p + 1])) {
    HWord nw(w.begin(), w.begin() + p);
    nw.insert(nw.end(), rw.rep.begin(), rw.rep.end());
    nw.insert(nw.end(), w.begin() + p + 2, w.end());
    r += rw.coef * nf_impl(n, nw, s);
  }
  std::lock_guard lk(memo().mu);
  memo().table.emplace(std::make_tuple(n, int(s), w), r);
  return r;
}

}  // namespace

HeisElement heis_normal_form(int n, const HWord& w, RewriteStrategy s) {
  for (auto& l : w)
    if (l.kind != HKind::C && l.i > n) throw std::out_of_range("letter index exceeds rank");
  return nf_impl(n, w, s);
}

// ---------------------------------------------------------------- HeisElement

HeisElement::HeisElement(int n, const QCoeff& s) : n_(n) {
  if (!s.is_zero()) t_[HWord{}] = s;
}

HeisElement HeisElement::letter(int n, HLetter l) { return word(n, {l}); }

HeisElement HeisElement::word(int n, const HWord& w) { return heis_normal_form(n, w); }

QCoeff HeisElement::coeff(const HWord& w) const {
  auto it = t_.find(w);
  return it == t_.end() ? QCoeff() : it->second;
}

void HeisElement::add_normal(const HWord& w, const QCoeff& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = t_.try_emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

HeisElement& HeisElement::operator+=(const HeisElement& o) {
  for (auto& [w, c] : o.t_) add_normal(w, c);
  return *this;
}

HeisElement& HeisElement::operator-=(const HeisElement& o) {
  for (auto& [w, c] : o.t_) add_normal(w, -c);
  return *this;
}

HeisElement operator*(const HeisElement& a, const HeisElement& b) {
  const int n = std::max(a.n_, b.n_);
  HeisElement r(n);
  for (auto& [wa, ca] : a.t_)
    for (auto& [wb, cb] : b.t_) {
      HWord w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      r += (ca * cb) * heis_normal_form(n, w);
    }
  return r;
}

HeisElement operator*(const QCoeff& s, const HeisElement& a) {
  HeisElement r(a.n_);
  if (s.is_zero()) return r;
  for (auto& [w, c] : a.t_) r.t_.emplace(w, s * c);
  return r;
}

std::string HeisElement::str() const {
  if (t_.empty()) return "0";
  std::string s;
  for (auto& [w, c] : t_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")";
    if (!w.empty()) s += " " + hword_str(w);
  }
  return s;
}

// ---------------------------------------------------------------- U_q action

int k_weight(int i, HLetter l) {
  if (l.kind == HKind::C) return 0;
  int s = l.kind == HKind::Z ? 1 : -1;
  if (l.i == i) return s;
  if (l.i == i - 1) return -s;
  return 0;
}

namespace {

// Image of one letter under E_i or F_i, as (coefficient, letter) or nothing.
bool letter_image(Gen g, HLetter l, QCoeff& coef, HLetter& out) {
  const int i = g.i;
  if (l.kind == HKind::C) return false;
  if (g.kind == GenKind::E) {
    if (l.kind == HKind::Z && l.i == i) {
      coef = 1;
      out = z(i - 1);
      return true;
    }
    if (l.kind == HKind::ZH && l.i == i - 1) {
      coef = -RatFunc::qpow(-1);
      out = zh(i);
      return true;
    }
    return false;
  }
  if (l.kind == HKind::Z && l.i == i - 1) {
    coef = 1;
    out = z(i);
    return true;
  }
  if (l.kind == HKind::ZH && l.i == i) {
    coef = -RatFunc::q();
    out = zh(i - 1);
    return true;
  }
  return false;
}

}  // namespace

HeisElement uq_act_heis(Gen g, const HeisElement& f) {
  const int n = f.rank();
  HeisElement r(n);
  for (auto& [w, c] : f.terms()) {
    if (g.kind == GenKind::K || g.kind == GenKind::Kinv) {
      int s = 0;
      for (auto& l : w) s += k_weight(g.i, l);
      r.add_normal(w, c * RatFunc::qpow(g.kind == GenKind::K ? s : -s));
      continue;
    }
    for (std::size_t p = 0; p < w.size(); ++p) {
      QCoeff lc;
      HLetter img;
      if (!letter_image(g, w[p], lc, img)) continue;
      int s = 0;
      if (g.kind == GenKind::E)
        for (std::size_t t = 0; t < p; ++t) s -= k_weight(g.i, w[t]);
      else
        for (std::size_t t = p + 1; t < w.size(); ++t) s += k_weight(g.i, w[t]);
      HWord nw = w;
      nw[p] = img;
      r += (c * lc * RatFunc::qpow(s)) * heis_normal_form(n, nw);
    }
  }
  return r;
}

HeisElement uq_act_heis(const AlgebraElement& a, const HeisElement& f) {
  HeisElement r(f.rank());
  for (auto& [w, c] : a.terms()) {
    HeisElement x = f;
    for (auto it = w.rbegin(); it != w.rend() && !x.is_zero(); ++it) x = uq_act_heis(*it, x);
    r += c * x;
  }
  return r;
}

HeisElement invariants_x(int i, int n) {
  if (i < 0 || i > n + 1) throw std::out_of_range("x index out of range");
  HeisElement x(n);
  for (int k = i; k <= n; ++k) x.add_normal({z(k), zh(k)}, QCoeff(1));
  x.add_normal({Cl()}, RatFunc::q() / qdiff());
  return x;
}

HeisElement heis_star(const HeisElement& f, const HeisStar& s) {
  const int n = f.rank();
  if (!s.iota.empty() && int(s.iota.size()) != n + 1) throw std::invalid_argument("iota must have n+1 entries");
  HeisElement r(n);
  for (auto& [w, c] : f.terms()) {
    HWord nw;
    int sign = 1;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      if (it->kind == HKind::C) {
        nw.push_back(*it);
        continue;
      }
      if (!s.iota.empty()) sign *= s.iota[it->i];
      nw.push_back(it->kind == HKind::Z ? zh(it->i) : z(it->i));
    }
    r += (sign > 0 ? c : -c) * heis_normal_form(n, nw);
  }
  return r;
}

bool module_algebra_law(const AlgebraElement& g, const HeisElement& f, const HeisElement& h) {
  const int n = g.rank();
  HeisElement lhs = uq_act_heis(g, f * h), rhs(f.rank());
  for (auto& [k, c] : coproduct(g).terms())
    rhs += c * (uq_act_heis(AlgebraElement::from_word(n, k.first), f) * uq_act_heis(AlgebraElement::from_word(n, k.second), h));
  return lhs == rhs;
}

// ---------------------------------------------------------------- W

WModule::WModule(int n, int N) : n_(n), N_(N) {
  if (N < 1 && N != 0) throw std::invalid_argument("degree must be >= 0");
  std::vector<int> m(n + 1, 0);
  for (int d = 0; d <= N; ++d) {
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == n) {
        m[n] = left;
        index_[m] = int(basis_.size());
        basis_.push_back(m);
        return;
      }
      for (int v = left; v >= 0; --v) {
        m[pos] = v;
        rec(pos + 1, left - v);
      }
    };
    rec(0, d);
  }
  const int D = dim();
  auto build = [&](auto letter_fn) {
    SparseMat<QCoeff> M(D, D);
    for (int j = 0; j < D; ++j) {
      HeisElement v = letter_fn(j);
      for (auto& [k, c] : apply_word_to_vacuum(v)) M.set(k, j, c);
    }
    return M;
  };
  auto monomial = [&](int j) {
    HWord w;
    for (int k = 0; k <= n; ++k)
      for (int t = 0; t < basis_[j][k]; ++t) w.push_back(z(k));
    return w;
  };
  for (int i = 0; i <= n; ++i) {
    z_.push_back(build([&](int j) {
      HWord w{z(i)};
      auto mw = monomial(j);
      w.insert(w.end(), mw.begin(), mw.end());
      return heis_normal_form(n, w);
    }));
    zh_.push_back(build([&](int j) {
      HWord w{zh(i)};
      auto mw = monomial(j);
      w.insert(w.end(), mw.begin(), mw.end());
      return heis_normal_form(n, w);
    }));
  }
  c_ = build([&](int j) {
    HWord w{Cl()};
    auto mw = monomial(j);
    w.insert(w.end(), mw.begin(), mw.end());
    return heis_normal_form(n, w);
  });
  for (int i = 1; i <= n; ++i) {
    auto gen_mat = [&](GenKind k) {
      return build([&](int j) { return uq_act_heis(Gen{k, std::uint8_t(i)}, heis_normal_form(n, monomial(j))); });
    };
    e_.push_back(gen_mat(GenKind::E));
    f_.push_back(gen_mat(GenKind::F));
    k_.push_back(gen_mat(GenKind::K));
    kinv_.push_back(gen_mat(GenKind::Kinv));
  }
}

std::map<int, QCoeff> WModule::apply_word_to_vacuum(const HeisElement& f) const {
  std::map<int, QCoeff> out;
  for (auto& [w, c] : f.terms()) {
    std::vector<int> m(n_ + 1, 0);
    bool killed = false;
    for (auto& l : w) {
      if (l.kind == HKind::ZH) killed = true;
      if (l.kind == HKind::Z) ++m[l.i];
    }
    if (killed) continue;
    int k = index(m);
    if (k < 0) continue;
    auto [it, fresh] = out.try_emplace(k, c);
    if (!fresh) it->second += c;
  }
  std::erase_if(out, [](const auto& p) { return p.second.is_zero(); });
  return out;
}

int WModule::index(const std::vector<int>& m) const {
  auto it = index_.find(m);
  return it == index_.end() ? -1 : it->second;
}

int WModule::degree_of(int idx) const { return std::accumulate(basis_[idx].begin(), basis_[idx].end(), 0); }

const SparseMat<QCoeff>& WModule::generator(GenKind k, int i) const {
  switch (k) {
    case GenKind::E: return e_.at(i - 1);
    case GenKind::F: return f_.at(i - 1);
    case GenKind::K: return k_.at(i - 1);
    case GenKind::Kinv: return kinv_.at(i - 1);
  }
  throw std::logic_error("bad generator");
}

SparseMat<QCoeff> WModule::heis_op(const HeisElement& f) const {
  const int D = dim();
  SparseMat<QCoeff> r(D, D);
  for (auto& [w, c] : f.terms()) {
    SparseMat<QCoeff> m = SparseMat<QCoeff>::identity(D);
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      const auto& g = it->kind == HKind::Z ? z_[it->i] : it->kind == HKind::ZH ? zh_[it->i] : c_;
      m = g * m;
    }
    r += m.scaled(c);
  }
  return r;
}

QCoeff WModule::x_eigen(int i, int idx) const {
  // sum_{k>=i} z_k zh_k + q c on a single basis vector
  std::map<int, QCoeff> v{{idx, QCoeff(1)}};
  QCoeff s;
  for (int k = i; k <= n_; ++k) {
    auto r = z_[k].apply(zh_[k].apply(v));
    auto it = r.find(idx);
    if (it != r.end()) s += it->second;
  }
  auto cv = c_.apply(v);
  s += RatFunc::q() / qdiff() * cv[idx];
  return s;
}

// ---------------------------------------------------------------- checks

mpq_class eval_at_q(const QCoeff& c, const mpq_class& q0) {
  auto ev = [&](const Poly& p) {
    mpq_class s = 0;
    for (auto& [e, a] : p.terms()) {
      for (int v = 1; v < kNumVars; ++v)
        if (e[v]) throw std::invalid_argument("eval_at_q: symbol other than q present");
      mpq_class t = a;
      for (int k = 0; k < e[kQ]; ++k) t *= q0;
      s += t;
    }
    return s;
  };
  mpq_class d = ev(c.den());
  if (d == 0) throw PoleError("pole at q = " + q0.get_str());
  return ev(c.num()) / d;
}

CheckReport check_relations_on_W(int n, int N) {
  CheckReport rep;
  rep.check = "relations";
  WModule W(n, N);
  auto rels = defining_relations(n);
  for (auto& r : rels) {
    auto M = act(r.lhs, W);
    if (!M.zero()) {
      rep.pass = false;
      if (rep.counterexample.empty()) rep.counterexample = r.name + " fails on W";
    }
  }
  rep.details.push_back("relations=" + std::to_string(rels.size()));
  rep.details.push_back("dim=" + std::to_string(W.dim()));
  return rep;
}

CheckReport check_confluence(int n, int max_len) {
  CheckReport rep;
  rep.check = "confluence";
  std::vector<HLetter> alphabet;
  for (int i = 0; i <= n; ++i) alphabet.push_back(z(i));
  alphabet.push_back(Cl());
  for (int i = 0; i <= n; ++i) alphabet.push_back(zh(i));
  long words = 0;
  HWord w;
  std::function<void()> rec = [&] {
    if (!w.empty()) {
      ++words;
      auto l = heis_normal_form(n, w, RewriteStrategy::leftmost);
      auto r = heis_normal_form(n, w, RewriteStrategy::rightmost);
      if (!(l == r) && rep.pass) {
        rep.pass = false;
        rep.counterexample = hword_str(w);
      }
      for (auto& [nw, c] : l.terms()) {
        auto again = heis_normal_form(n, nw);
        bool fixed = is_normal(nw) && again.terms().size() == 1 && again.coeff(nw).is_one();
        if (!fixed && rep.pass) {
          rep.pass = false;
          rep.counterexample = "normal form not idempotent on " + hword_str(w);
        }
      }
    }
    if (int(w.size()) == max_len) return;
    for (auto& a : alphabet) {
      w.push_back(a);
      rec();
      w.pop_back();
    }
  };
  rec();
  rep.details.push_back("words=" + std::to_string(words));
  return rep;
}

namespace {

// Rank over Q of a set of sparse rows, by Gaussian elimination.
int rank_q(std::vector<std::map<long, mpq_class>> rows) {
  int rank = 0;
  std::map<long, std::map<long, mpq_class>> pivots;  // pivot column -> row
  for (auto& r : rows) {
    for (;;) {
      std::erase_if(r, [](const auto& p) { return p.second == 0; });
      if (r.empty()) break;
      auto [col, val] = *r.begin();
      auto it = pivots.find(col);
      if (it == pivots.end()) {
        pivots.emplace(col, r);
        ++rank;
        break;
      }
      mpq_class f = val / it->second.begin()->second;
      for (auto& [c, v] : it->second) r[c] -= f * v;
    }
  }
  return rank;
}

}  // namespace

CheckReport check_pbw(int n, int max_deg) {
  CheckReport rep;
  rep.check = "pbw";
  const mpq_class q0(3, 11);
  for (int d = 0; d <= max_deg; ++d) {
    WModule W(n, std::max(d, 1));
    // normal-ordered monomials of degree d
    std::vector<HWord> monos;
    std::vector<HLetter> alphabet;
    for (int i = 0; i <= n; ++i) alphabet.push_back(z(i));
    alphabet.push_back(Cl());
    for (int i = 0; i <= n; ++i) alphabet.push_back(zh(i));
    HWord w;
    std::function<void(std::size_t, int)> rec = [&](std::size_t from, int left) {
      if (left == 0) {
        monos.push_back(w);
        return;
      }
      for (std::size_t a = from; a < alphabet.size(); ++a) {
        int dg = alphabet[a].kind == HKind::C ? 2 : 1;
        if (dg > left) continue;
        w.push_back(alphabet[a]);
        rec(a, left - dg);
        w.pop_back();
      }
    };
    rec(0, d);
    std::vector<std::map<long, mpq_class>> rows;
    const long D = W.dim();
    for (auto& m : monos) {
      HeisElement e(n);
      e.add_normal(m, QCoeff(1));
      auto M = W.heis_op(e);
      std::map<long, mpq_class> row;
      for (int j = 0; j < D; ++j)
        for (auto& [i, v] : M.col(j)) row[i * D + j] = eval_at_q(v, q0);
      rows.push_back(std::move(row));
    }
    int rk = rank_q(rows);
    rep.details.push_back("degree " + std::to_string(d) + ": monomials=" + std::to_string(monos.size()) +
                          " rank=" + std::to_string(rk));
    if (rk != int(monos.size()) && rep.pass) {
      rep.pass = false;
      rep.counterexample = "degree " + std::to_string(d) + " rank deficit";
    }
  }
  return rep;
}

CheckReport check_I0_invariance(int n) {
  CheckReport rep;
  rep.check = "i0";
  using Tensor = std::map<std::pair<HWord, HWord>, QCoeff>;
  Tensor v;
  for (int k = 0; k <= n; ++k) {
    v[{{z(k)}, {zh(k)}}] += QCoeff(1);
    v[{{zh(k)}, {z(k)}}] += -RatFunc::qpow(-2 * k);
  }
  auto act_tensor = [&](const AlgebraElement& xi) {
    Tensor out;
    for (auto& [k, c] : coproduct(xi).terms())
      for (auto& [ab, cv] : v) {
        auto l = uq_act_heis(AlgebraElement::from_word(n, k.first), heis_normal_form(n, ab.first));
        auto r = uq_act_heis(AlgebraElement::from_word(n, k.second), heis_normal_form(n, ab.second));
        for (auto& [wl, cl] : l.terms())
          for (auto& [wr, cr] : r.terms()) out[{wl, wr}] += c * cv * cl * cr;
      }
    std::erase_if(out, [](const auto& p) { return p.second.is_zero(); });
    return out;
  };
  auto same = [&](Tensor a, Tensor b) {
    for (auto& [k, c] : b) a[k] -= c;
    for (auto& [k, c] : a)
      if (!c.is_zero()) return false;
    return true;
  };
  for (int i = 1; i <= n; ++i) {
    struct Case {
      std::string name;
      AlgebraElement xi;
      bool fixed;
    };
    std::vector<Case> cases{{"E" + std::to_string(i), AlgebraElement::E(n, i), false},
                            {"F" + std::to_string(i), AlgebraElement::F(n, i), false},
                            {"K" + std::to_string(i), AlgebraElement::K(n, i), true}};
    for (auto& cs : cases) {
      Tensor r = act_tensor(cs.xi);
      bool ok = cs.fixed ? same(r, v) : r.empty();
      if (!ok && rep.pass) {
        rep.pass = false;
        rep.counterexample = cs.name + " does not act by its counit";
      }
    }
  }
  rep.details.push_back("generators=" + std::to_string(3 * n));
  return rep;
}

}  // namespace qorbit
