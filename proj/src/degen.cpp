#include "qorbit/degen.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <mutex>
#include <set>

namespace qorbit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct RatioPair {
  RatFunc star_zeta, zeta_star;
};

// zeta_i^* zeta_i and zeta_i zeta_i^* as functions of x_0..x_{n+1}.
const std::vector<RatioPair>& symbolic_ratios(int n, const std::vector<int>& iota) {
  static std::mutex mu;
  static std::map<std::pair<int, std::vector<int>>, std::vector<RatioPair>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, iota);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  // signs on z_0..z_n with iota_i = s_{i-1} s_i
  std::vector<int> s(n + 1, 1);
  for (int i = 1; i <= n; ++i) s[i] = s[i - 1] * iota[i - 1];
  std::vector<RatioPair> out;
  for (int i = 1; i <= n; ++i) {
    FuncXElement z = FuncXElement::zeta(n, i);
    FuncXElement zs = involution_fx(z, FxInvolution{FxInvolution::star_real, s});
    out.push_back({(zs * z).function_part(), (z * zs).function_part()});
  }
  return cache.emplace(key, std::move(out)).first->second;
}

// num/den with exact zero and infinity detection
double ratio(const RatFunc& f, double q, const std::vector<double>& lam, double scale) {
  Point p = make_point(q);
  for (size_t j = 0; j < lam.size(); ++j) p[xvar(int(j))] = lam[j];
  double num = f.num().eval(p).real(), den = f.den().eval(p).real();
  (void)scale;
  auto size = [&](const Poly& a) {
    double m = 0;
    for (auto& [e, c] : a.terms()) m += std::abs(Poly::monomial(e, c).eval(p));
    return m;
  };
  bool zn = std::abs(num) <= 1e-11 * size(f.num()), zd = std::abs(den) <= 1e-11 * size(f.den());
  if (zn && zd) return std::numeric_limits<double>::quiet_NaN();
  if (zn) return 0;
  if (zd) return kInf;
  return num / den;
}

double lam_scale(const std::vector<double>& lam) {
  double s = 1;
  for (double v : lam) s = std::max(s, std::abs(v));
  return s;
}

bool le(double a, double b, double tol) { return a <= b + tol * std::max(std::abs(a), std::abs(b)); }
bool eq(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)); }

}  // namespace

std::vector<double> LatticeChar::full(const std::vector<double>& lam) const {
  std::vector<double> f;
  f.push_back(d0 / q);
  f.insert(f.end(), lam.begin(), lam.end());
  f.push_back(q * c0);
  return f;
}

std::vector<IndexPositivity> positivity_conditions(double q, const std::vector<int>& iota, const std::vector<double>& lam) {
  const int n = int(lam.size()) - 2;
  if (n < 1 || int(iota.size()) != n) throw std::invalid_argument("positivity_conditions: need lambda_0..lambda_{n+1} and n signs");
  double scale = lam_scale(lam);
  auto div = [&](double a, double b, bool& boundary) {
    if (std::abs(a) <= 1e-12 * scale || std::abs(b) <= 1e-12 * scale) boundary = true;
    return std::abs(b) <= 1e-12 * scale ? kInf : a / b;
  };
  std::vector<IndexPositivity> out(n);
  for (int i = 1; i <= n; ++i) {
    auto& r = out[i - 1];
    r.r1 = iota[i - 1] * div(lam[i - 1] - lam[i], lam[i] - lam[i + 1] / (q * q), r.boundary);
    r.r2 = iota[i - 1] * div(q * q * lam[i - 1] - lam[i], lam[i] - lam[i + 1], r.boundary);
    r.ll1 = r.r1 > 0 && std::isfinite(r.r1) && !r.boundary;
    r.ll2 = r.r2 > 0 && std::isfinite(r.r2) && !r.boundary;
  }
  return out;
}

double zeta_star_zeta(const LatticeChar& ch, int i, const std::vector<double>& lam) {
  return ratio(symbolic_ratios(ch.n, ch.iota)[i - 1].star_zeta, ch.q, lam, lam_scale(lam));
}

double zeta_zeta_star(const LatticeChar& ch, int i, const std::vector<double>& lam) {
  return ratio(symbolic_ratios(ch.n, ch.iota)[i - 1].zeta_star, ch.q, lam, lam_scale(lam));
}

Region su21_region(double q, double c0, double d0, double l1, double l2, double tol) {
  double a = d0 / q, b = l2 / (q * q), c = q * c0;
  bool r1 = le(a, l1, tol) && le(b, l1, tol) && le(c, b, tol);
  bool r2 = le(l1, a, tol) && le(l1, b, tol) && le(b, c, tol);
  return Region(int(r1) + 2 * int(r2));
}

Region su21_region_exact(double q, double c0, double d0, double l1, double l2, double tol) {
  bool r1 = le(d0 / q, l1, tol) && le(l2 / (q * q), l1, tol) && le(c0 / q, l2, tol);
  bool r2 = le(l1, q * d0, tol) && le(l1, l2, tol) && le(l2, q * c0, tol);
  return Region(int(r1) + 2 * int(r2));
}

bool su21_boundary(double q, double c0, double d0, double l1, double l2, double tol) {
  if (su21_region(q, c0, d0, l1, l2, tol) == Region::none) return false;
  double a = d0 / q, b = l2 / (q * q), c = q * c0;
  return eq(l1, a, tol) || eq(l1, b, tol) || eq(b, c, tol);
}

std::vector<double> ScanReport::eigenvalues(const LatticeChar& ch, const LatticePoint& p) const {
  std::vector<double> lam(ch.n);
  for (int i = 0; i < ch.n; ++i) lam[i] = ch.lambda[i] * std::pow(ch.q, -2.0 * p[i]);
  return ch.full(lam);
}

ScanReport lattice_scan(const LatticeChar& ch, int bound) {
  if (int(ch.lambda.size()) != ch.n || int(ch.iota.size()) != ch.n) throw std::invalid_argument("lattice_scan: size mismatch");
  ScanReport rep;
  const int n = ch.n;
  std::set<LatticePoint> seen;
  std::deque<LatticePoint> todo;
  LatticePoint start(n, 0);
  seen.insert(start);
  todo.push_back(start);
  while (!todo.empty()) {
    LatticePoint p = todo.front();
    todo.pop_front();
    for (int i = 1; i <= n; ++i) {
      // edge p -- p + e_i carries zeta_i^* zeta_i evaluated at p; edge p - e_i -- p the same at p - e_i
      for (int dir : {+1, -1}) {
        LatticePoint lo = p;
        if (dir < 0) lo[i - 1] -= 1;
        LatticePoint hi = lo;
        hi[i - 1] += 1;
        double r = zeta_star_zeta(ch, i, rep.eigenvalues(ch, lo));
        if (std::isnan(r)) {
          if (p == start) rep.start_singular = true;
          continue;
        }
        if (r == 0 || std::isinf(r)) {
          // the generator crossing this edge annihilates p
          rep.walls.push_back({p, i, dir < 0});
          continue;
        }
        if (r < 0) {
          rep.negative = true;
          rep.negative_edges.emplace_back(lo, i);
        }
        LatticePoint nb = dir > 0 ? hi : lo;
        if (std::abs(nb[i - 1]) > bound) {
          rep.hit_bound = true;
          continue;
        }
        if (seen.insert(nb).second) todo.push_back(nb);
      }
    }
  }
  rep.points.assign(seen.begin(), seen.end());
  std::sort(rep.negative_edges.begin(), rep.negative_edges.end());
  rep.negative_edges.erase(std::unique(rep.negative_edges.begin(), rep.negative_edges.end()), rep.negative_edges.end());
  std::sort(rep.walls.begin(), rep.walls.end(),
            [](const Wall& a, const Wall& b) { return std::tie(a.at, a.i, a.hat) < std::tie(b.at, b.i, b.hat); });
  if (n == 2)
    for (auto& p : rep.points) {
      auto l = rep.eigenvalues(ch, p);
      rep.region_counts[int(su21_region(ch.q, ch.c0, ch.d0, l[1], l[2]))]++;
      rep.exact_region_counts[int(su21_region_exact(ch.q, ch.c0, ch.d0, l[1], l[2]))]++;
    }
  return rep;
}

DegenGram degen_gram(const LatticeChar& ch, const ScanReport& scan, size_t max_points) {
  DegenGram out;
  const int n = ch.n;
  std::set<LatticePoint> allowed(scan.points.begin(), scan.points.end());
  LatticePoint start(n, 0);
  std::deque<LatticePoint> todo{start};
  out.g[start] = 1;
  while (!todo.empty() && out.g.size() < max_points) {
    LatticePoint p = todo.front();
    todo.pop_front();
    for (int i = 1; i <= n && out.g.size() < max_points; ++i)
      for (int dir : {+1, -1}) {
        LatticePoint nb = p;
        nb[i - 1] += dir;
        if (!allowed.count(nb) || out.g.count(nb)) continue;
        const LatticePoint& lo = dir > 0 ? p : nb;
        double r = zeta_star_zeta(ch, i, scan.eigenvalues(ch, lo));
        if (!std::isfinite(r) || r == 0) continue;
        out.g[nb] = dir > 0 ? out.g[p] * r : out.g[p] / r;
        todo.push_back(nb);
        if (out.g.size() >= max_points) break;
      }
  }
  // |zeta_2 zeta_1 v|^2 = q^-2 |zeta_1 zeta_2 v|^2
  if (n == 2)
    for (auto& [p, gp] : out.g) {
      LatticePoint a = p, b = p, c = p;
      a[0] += 1;
      b[1] += 1;
      c[0] += 1;
      c[1] += 1;
      if (!out.g.count(a) || !out.g.count(b) || !out.g.count(c)) continue;
      double via1 = zeta_star_zeta(ch, 1, scan.eigenvalues(ch, p)) * zeta_star_zeta(ch, 2, scan.eigenvalues(ch, a));
      double via2 = zeta_star_zeta(ch, 2, scan.eigenvalues(ch, p)) * zeta_star_zeta(ch, 1, scan.eigenvalues(ch, b));
      if (!std::isfinite(via1) || !std::isfinite(via2) || via2 == 0) continue;
      out.plaquette_residual = std::max(out.plaquette_residual, std::abs(via1 * ch.q * ch.q / via2 - 1));
    }
  out.min_eigenvalue = kInf;
  for (auto& [p, v] : out.g) out.min_eigenvalue = std::min(out.min_eigenvalue, v);
  out.positive = out.min_eigenvalue > 0;
  return out;
}

TraceResult trace_integral(const LatticeChar& ch, const ScanReport& scan, const FuncXElement& f, double tail_tol) {
  TraceResult t;
  if (f.rank() != ch.n) throw std::invalid_argument("trace_integral: rank mismatch");
  auto zf = f.zeta_form();
  auto it = zf.find(std::vector<int>(ch.n, 0));
  if (it == zf.end()) {
    t.certified = true;
    return t;
  }
  const RatFunc& g0 = it->second;
  int outer = 0;
  for (auto& p : scan.points)
    for (int k : p) outer = std::max(outer, std::abs(k));
  Point pt = make_point(ch.q);
  for (auto& p : scan.points) {
    auto lam = scan.eigenvalues(ch, p);
    for (size_t j = 0; j < lam.size(); ++j) pt[xvar(int(j))] = lam[j];
    // J(q^rho) = prod_i x_i (x_{i-1} x_{i+1})^-1/2
    double w = 1;
    for (int i = 1; i <= ch.n; ++i) w *= lam[i] / std::sqrt(lam[i - 1] * lam[i + 1]);
    cplx term = w * g0.eval(pt);
    t.value += term;
    bool edge = false;
    for (int k : p) edge = edge || std::abs(k) == outer;
    if (edge) t.tail += std::abs(term);
  }
  t.certified = !scan.hit_bound || t.tail <= tail_tol * std::max(1.0, std::abs(t.value));
  return t;
}

const char* su21_name(Su21Case c) {
  switch (c) {
    case Su21Case::DegenerateHolomorphic: return "DegenerateHolomorphic";
    case Su21Case::DegenerateAntiHolomorphic: return "DegenerateAntiHolomorphic";
    case Su21Case::DegenerateComplimentary: return "DegenerateComplimentary";
    case Su21Case::None: return "None";
  }
  return "?";
}

Su21Case classify_su21_literal(double q, double c0, double d0, double l1, double l2, double tol) {
  bool start = eq(l1, d0 / q, tol) && eq(l2, q * c0, tol);
  if (start && le(d0, c0 / (q * q), tol)) return Su21Case::DegenerateHolomorphic;
  if (start && le(c0 / (q * q), d0, tol)) return Su21Case::DegenerateAntiHolomorphic;
  double r = d0 / c0;
  if (r > 1 * (1 + tol) && r < std::pow(q, -4) * (1 - tol) && eq(l2, q * c0, tol)) {
    Region a = su21_region(q, c0, d0, l1, l2, tol), b = su21_region(q, c0, d0, l1 * q * q, l2, tol);
    if ((int(a) & 1) && (int(b) & 2)) return Su21Case::DegenerateComplimentary;
  }
  return Su21Case::None;
}

Su21Result classify_su21(double q, double c0, double d0, double l1, double l2, int bound) {
  Su21Result r;
  r.literal = classify_su21_literal(q, c0, d0, l1, l2);
  LatticeChar ch{2, q, c0, d0, {l1, l2}, {-1, 1}};
  r.scan = lattice_scan(ch, bound);
  const auto& s = r.scan;
  if (s.negative || s.start_singular) return r;
  bool cut[2] = {false, false};
  for (auto& w : s.walls) cut[w.i - 1] = true;
  if (!cut[0] || !cut[1]) return r;
  int only1 = 0, only2 = 0, outside = 0;
  for (auto& [reg, cnt] : s.exact_region_counts) {
    if (reg == int(Region::R1)) only1 += cnt;
    if (reg == int(Region::R2)) only2 += cnt;
    if (reg == int(Region::none)) outside += cnt;
  }
  if (outside > 0) return r;
  if (only1 > 0 && only2 > 0)
    r.scanned = Su21Case::DegenerateComplimentary;
  else if (only1 > 0)
    r.scanned = Su21Case::DegenerateAntiHolomorphic;
  else
    r.scanned = Su21Case::DegenerateHolomorphic;
  return r;
}

}  // namespace qorbit
