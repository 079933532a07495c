#include "qorbit/moment.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace qorbit {

const char* form_name(MomentForm f) {
  switch (f) {
    case MomentForm::literal: return "literal";
    case MomentForm::standard: return "standard";
    case MomentForm::equivariant: return "equivariant";
  }
  return "?";
}

double MomentImage::constant(double q0) const {
  double a = 1 / q0 - q0;
  return evaluate(coeff, q0).real() * std::pow(q0, 0.5 * q_half) * std::pow(a, 0.5 * a_half);
}

cplx MomentImage::prefactor(double q0, const std::vector<cplx>& x) const {
  cplx even = 1, odd = 1;
  for (std::size_t j = 0; j < x_half.size(); ++j) {
    int e = x_half[j];
    if (e == 0) continue;
    if (e % 2 == 0)
      even *= std::pow(x[j], e / 2);
    else
      odd *= std::pow(x[j], e);
  }
  return constant(q0) * even * std::sqrt(odd);
}

std::string MomentImage::str() const {
  std::ostringstream s;
  s << "(" << coeff.str() << ")";
  if (q_half) s << " q^(" << q_half << "/2)";
  if (a_half) s << " (q^-1-q)^(" << a_half << "/2)";
  for (std::size_t j = 0; j < x_half.size(); ++j)
    if (x_half[j]) s << " x" << j << "^(" << x_half[j] << "/2)";
  if (!(letters == HeisElement(n, QCoeff(1)))) s << " [" << letters.str() << "]";
  return s.str();
}

MomentImage moment_map(Gen g, int n, MomentForm form, const std::vector<int>& twist) {
  const int i = g.i;
  if (i < 1 || i > n) throw std::out_of_range("generator index out of range");
  MomentImage m;
  m.gen = g;
  m.n = n;
  m.x_half.assign(n + 2, 0);
  m.letters = HeisElement(n, QCoeff(1));
  bool flip = std::find(twist.begin(), twist.end(), i) != twist.end();
  switch (g.kind) {
    case GenKind::K:
    case GenKind::Kinv: {
      int s = g.kind == GenKind::K ? 1 : -1;
      m.x_half[i] = 2 * s;
      m.x_half[i - 1] = -s;
      m.x_half[i + 1] = -s;
      break;
    }
    case GenKind::E:
      m.letters = HeisElement::word(n, {z(i - 1), zh(i)});
      if (form == MomentForm::equivariant) {
        m.coeff = -RatFunc::qpow(-1);
        m.a_half = -2;
        m.x_half[i] = -2;
      } else {
        m.x_half[i - 1] = m.x_half[i + 1] = -1;
        if (form == MomentForm::literal) {
          m.a_half = 1;
        } else {
          m.q_half = 1;
          m.a_half = -2;
        }
      }
      break;
    case GenKind::F:
      m.letters = HeisElement::word(n, {z(i), zh(i - 1)});
      if (form == MomentForm::equivariant) {
        m.coeff = -1;
        m.a_half = -2;
        m.x_half[i - 1] = m.x_half[i + 1] = -1;
      } else {
        m.x_half[i] = -2;
        if (form == MomentForm::literal) {
          m.a_half = 1;
        } else {
          m.q_half = 1;
          m.a_half = -2;
        }
      }
      flip = false;
      break;
  }
  if (flip) m.coeff = -m.coeff;
  return m;
}

// ---------------------------------------------------------------- operators

namespace {

CMat to_dense(const SparseMat<QCoeff>& s, double q0) {
  CMat m = CMat::Zero(s.rows(), s.cols());
  for (int j = 0; j < s.cols(); ++j)
    for (auto& [i, v] : s.col(j)) m(i, j) = evaluate(v, q0);
  return m;
}

std::vector<cplx> point(const XDiagModule& m, int idx) {
  std::vector<cplx> p(m.n + 2);
  for (int j = 0; j <= m.n + 1; ++j) p[j] = m.x[j][idx];
  return p;
}

CMat diag_of(const XDiagModule& m, const std::function<cplx(std::vector<cplx>)>& f) {
  CMat d = CMat::Zero(m.dim, m.dim);
  for (int r = 0; r < m.dim; ++r) d(r, r) = f(point(m, r));
  return d;
}

}  // namespace

XDiagModule w_numeric(const WModule& w, double q0) {
  XDiagModule m;
  m.n = w.rank();
  m.dim = w.dim();
  m.q0 = q0;
  m.name = "W(n=" + std::to_string(m.n) + ",N=" + std::to_string(w.max_degree()) + ")";
  m.x.assign(m.n + 2, std::vector<cplx>(m.dim));
  for (int j = 0; j <= m.n + 1; ++j)
    for (int k = 0; k < m.dim; ++k) m.x[j][k] = evaluate(w.x_eigen(j, k), q0);
  const WModule* wp = &w;
  m.letters = [wp, q0](const HeisElement& h) { return to_dense(wp->heis_op(h), q0); };
  for (int k = 0; k < m.dim; ++k) m.interior.push_back(k);
  return m;
}

CMat moment_operator(const MomentImage& im, const XDiagModule& m) {
  CMat d = diag_of(m, [&](const std::vector<cplx>& p) { return im.prefactor(m.q0, p); });
  return d * m.letters(im.letters);
}

CMat moment_operator(const AlgebraElement& a, const XDiagModule& m, MomentForm form, const std::vector<int>& twist) {
  std::map<std::pair<int, int>, CMat> cache;
  auto gen_op = [&](Gen g) -> const CMat& {
    auto key = std::make_pair(int(g.kind), int(g.i));
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, moment_operator(moment_map(g, m.n, form, twist), m)).first;
    return it->second;
  };
  CMat r = CMat::Zero(m.dim, m.dim);
  for (auto& [w, c] : a.terms()) {
    CMat p = CMat::Identity(m.dim, m.dim);
    for (auto& g : w) p = p * gen_op(g);
    r += evaluate(c, m.q0) * p;
  }
  return r;
}

CMat act_on_image(Gen g, const MomentImage& b, const XDiagModule& m) {
  const int n = m.n, i = g.i;
  const double q0 = m.q0;
  auto D = [&](std::vector<cplx> p) { return b.prefactor(q0, p); };
  auto shifted = [&](std::vector<cplx> p, double f) {
    p[i] *= f;
    return D(p);
  };
  const HeisElement& h = b.letters;
  switch (g.kind) {
    case GenKind::E: {
      CMat dd = diag_of(m, [&](const std::vector<cplx>& p) { return (D(p) - shifted(p, q0 * q0)) / ((1 - q0 * q0) * p[i]); });
      HeisElement l = HeisElement::word(n, {z(i - 1), zh(i)});
      return dd * m.letters(l * h) + diag_of(m, D) * m.letters(uq_act_heis(g, h));
    }
    case GenKind::F: {
      CMat dd = diag_of(m, [&](const std::vector<cplx>& p) {
        return -q0 * (shifted(p, 1 / (q0 * q0)) - D(p)) / ((1 / (q0 * q0) - 1) * p[i]);
      });
      HeisElement l = HeisElement::word(n, {z(i), zh(i - 1)});
      HeisElement kh = uq_act_heis(Gen{GenKind::K, g.i}, h);
      return dd * m.letters(l * kh) + diag_of(m, D) * m.letters(uq_act_heis(g, h));
    }
    default:
      return diag_of(m, D) * m.letters(uq_act_heis(g, h));
  }
}

double interior_residual(const CMat& a, const XDiagModule& m) {
  double r = 0;
  for (int j : m.interior) r = std::max(r, a.col(j).cwiseAbs().maxCoeff());
  return r;
}

MomentReport verify_moment_relations(const XDiagModule& m, MomentForm form, const std::vector<int>& twist, double tol) {
  MomentReport rep;
  for (auto& rel : defining_relations(m.n)) {
    CMat op = moment_operator(rel.lhs, m, form, twist);
    double res = interior_residual(op, m);
    // relative to the size of the individual terms
    double scale = 1;
    for (auto& [w, c] : rel.lhs.terms())
      scale = std::max(scale, interior_residual(moment_operator(AlgebraElement::from_word(m.n, w, c), m, form, twist), m));
    res /= scale;
    rep.residuals.emplace_back(rel.name, res);
    rep.max_residual = std::max(rep.max_residual, res);
  }
  rep.pass = rep.max_residual < tol;
  return rep;
}

MomentReport verify_intertwining(const XDiagModule& m, MomentForm form, double tol) {
  MomentReport rep;
  const char* kn[] = {"E", "F", "K", "Kinv"};
  for (int i = 1; i <= m.n; ++i)
    for (auto ka : {GenKind::E, GenKind::F, GenKind::K})
      for (int j = 1; j <= m.n; ++j)
        for (auto kb : {GenKind::E, GenKind::F, GenKind::K}) {
          Gen a{ka, std::uint8_t(i)}, b{kb, std::uint8_t(j)};
          AlgebraElement ad = adjoint_action(AlgebraElement::gen(m.n, ka, i), AlgebraElement::gen(m.n, kb, j));
          CMat lhs = moment_operator(ad, m, form);
          CMat rhs = act_on_image(a, moment_map(b, m.n, form), m);
          double scale = std::max(1.0, interior_residual(rhs, m));
          double res = interior_residual(lhs - rhs, m) / scale;
          rep.residuals.emplace_back(std::string("ad_") + kn[int(ka)] + std::to_string(i) + "(" + kn[int(kb)] +
                                         std::to_string(j) + ")",
                                     res);
          rep.max_residual = std::max(rep.max_residual, res);
        }
  rep.pass = rep.max_residual < tol;
  return rep;
}

// ---------------------------------------------------------------- Casimir

cplx casimir_image(double q0, cplx c0, cplx d0) {
  double a = 1 / q0 - q0;
  cplx r = c0 / std::sqrt(c0 * d0);
  return (r + 1.0 / r - q0 - 1 / q0) / (a * a);
}

cplx casimir_image_literal(double q0, cplx c0, cplx d0) {
  double a = 1 / q0 - q0;
  return (c0 / d0 + d0 / c0 - q0 - 1 / q0) / (a * a);
}

cplx casimir_from_spin(double q0, cplx l) {
  double a = 1 / q0 - q0;
  auto p = [&](cplx e) { return std::pow(cplx(q0), e); };
  return (p(l) - p(-l)) * (p(l + 1.0) - p(-l - 1.0)) / (a * a);
}

bool casimir_spin_identity() {
  // u stands for q^l; the variable c is used as its carrier.
  RatFunc u = RatFunc::var(kC), q = RatFunc::q();
  RatFunc ratio = u * u * q;  // c0/d0 = q^(2l+1)
  RatFunc lhs = ratio + ratio.inv() - q - q.inv();
  RatFunc rhs = (u - u.inv()) * (u * q - (u * q).inv());
  return lhs == rhs;
}

}  // namespace qorbit
