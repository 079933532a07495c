// Acceptance run: one line per criterion. Usage: qorbit_acceptance <path to qorbit CLI>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "qorbit/degen.hpp"
#include "qorbit/funcx.hpp"
#include "qorbit/heis.hpp"
#include "qorbit/moment.hpp"
#include "qorbit/qfun.hpp"
#include "qorbit/series.hpp"

using namespace qorbit;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Criteria that cannot be met as stated; see the README.
const std::set<int> kKnownFailures{4, 9, 10};

std::string num(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3g", v);
  return b;
}

RepParams real_params(double q, double c0, double nu0) { return RepParams{q, c0, 1 / c0, nu0}; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome c1_relations() {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  for (int n : {1, 2}) {
    CheckReport r = check_relations_on_W(n, 6);
    o.pass = o.pass && r.pass;
    if (!r.pass) o.detail += "n=" + std::to_string(n) + ": " + r.counterexample + "; ";
  }
  double s = seconds_since(t0);
  o.pass = o.pass && s < 30;
  o.detail += "n in {1,2}, degree 6, " + num(s) + " s";
  return o;
}

Outcome c2_presentation() {
  Outcome o;
  for (int n : {1, 2}) {
    CheckReport c = check_confluence(n, 4), p = check_pbw(n, 4);
    o.pass = o.pass && c.pass && p.pass;
    if (!c.pass) o.detail += "confluence n=" + std::to_string(n) + ": " + c.counterexample + "; ";
    if (!p.pass) o.detail += "pbw n=" + std::to_string(n) + ": " + p.counterexample + "; ";
  }
  o.detail += "words of length <= 4 and PBW degree <= 4, n <= 2";
  return o;
}

Outcome c3_invariant() {
  Outcome o;
  for (int n : {1, 2}) {
    CheckReport r = check_I0_invariance(n);
    o.pass = o.pass && r.pass;
    if (!r.pass) o.detail += "n=" + std::to_string(n) + ": " + r.counterexample + "; ";
  }
  o.detail += "n in {1,2}";
  return o;
}

Outcome c4_moment() {
  Outcome o;
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> uq(0.3, 0.8), uc(0.2, 0.95), un(-2, 2), ut(0.1, 1.4);
  double rel = 0, corrected = 0, literal = 0;
  bool relations = true, scalar = true;
  for (int t = 0; t < 20; ++t) {
    double q = uq(rng);
    RepParams p = t % 4 == 3 ? RepParams{q, std::polar(1.0, ut(rng)), 0, un(rng)} : real_params(q, uc(rng), un(rng));
    if (t % 4 == 3) p.d0 = std::conj(p.c0);
    if (p.nu0 == 0) p.nu0 = 0.5;
    MomentReport m = verify_moment_relations(build_pi(p, 12).as_xdiag(), MomentForm::standard);
    relations = relations && m.pass;
    rel = std::max(rel, m.max_residual);
    CasimirCheck c = casimir_spectrum_check(p, 12);
    scalar = scalar && c.pass;
    corrected = std::max(corrected, c.residual);
    literal = std::max(literal, c.literal_residual);
  }
  bool identity = casimir_spin_identity();
  o.pass = relations && scalar && literal < 1e-10 && identity;
  o.detail = "relations max " + num(rel) + (relations ? "" : " FAIL") + "; J(C) scalar, normalised residual " + num(corrected) +
             "; displayed J-C residual " + num(literal) + "; spin identity " + (identity ? "holds" : "fails");
  return o;
}

Outcome c5_unitarity() {
  Outcome o;
  const double q = 0.5;
  int total = 0, agree = 0, unit = 0;
  auto run = [&](double c0, double nu0) {
    RepParams p = real_params(q, c0, nu0);
    int N = 20 + int(std::ceil(std::abs(std::log(std::abs(nu0))) / (-2 * std::log(q))));
    bool pos = gram_matrix(p, N).hermitian_positive;
    bool pred = unitarity_predicted(p);
    ++total;
    agree += pos == pred;
    unit += pred;
  };
  // 20 x 20 regular grid and 100 points on the truncation walls
  for (int a = 0; a < 20; ++a)
    for (int b = 0; b < 20; ++b) {
      double c0 = 0.05 + 0.95 * a / 19.0;
      double nu0 = -3 + 6 * (b + 0.5) / 20.0;
      run(c0, nu0);
    }
  for (int a = 0; a < 25; ++a) {
    double c0 = 0.06 + 0.9 * a / 24.0;
    for (int s : {0, 1}) {
      run(c0, q * c0 * std::pow(q, 2 * s));
      run(c0, 1 / c0 / q * std::pow(q, -2 * s));
    }
  }
  o.pass = agree == total;
  o.detail = std::to_string(total) + " points, " + std::to_string(total - agree) + " disagreements, " + std::to_string(unit) +
             " unitary";
  return o;
}

Outcome c6_spectra() {
  Outcome o;
  const double q = 0.5, c0 = 0.7, wp = q * c0, wm = 1 / c0 / q;
  std::vector<std::pair<double, SpectrumKind>> cases{{0.41, SpectrumKind::full},       {-0.3, SpectrumKind::full},
                                                     {wp * q * q, SpectrumKind::plus}, {wp, SpectrumKind::plus},
                                                     {wm / q / q, SpectrumKind::minus}, {wm, SpectrumKind::minus}};
  int bad = 0;
  for (auto& [nu0, kind] : cases) {
    RepParams p = real_params(q, c0, nu0);
    Spectrum s = x_spectrum(p);
    OperatorSpectrum os = operator_spectrum(p, 40);
    bool ok = s.kind == kind && os.ok;
    if (ok) {
      auto pts = s.points(os.eigenvalues.front(), os.eigenvalues.back());
      ok = pts.size() == os.eigenvalues.size();
      for (size_t i = 0; ok && i < pts.size(); ++i) ok = std::abs(pts[i] - os.eigenvalues[i]) < 1e-9 * std::abs(pts[i]);
      ok = ok && os.bounded_above == (kind == SpectrumKind::plus) && os.bounded_below == (kind == SpectrumKind::minus);
    }
    bad += !ok;
  }
  o.pass = bad == 0;
  o.detail = std::to_string(cases.size()) + " cases (M, M+, M-) at truncation 40, " + std::to_string(bad) + " mismatches";
  return o;
}

LatticeElement random_element(std::mt19937& rng, const IntegralContext& ctx) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_int_distribution<int> kk(-2, 2), len(1, 5);
  LatticeElement f;
  int j0 = ctx.sp.jmin > -100 ? ctx.sp.jmin : (ctx.sp.jmax < 100 ? ctx.sp.jmax - 6 : -3);
  for (int t = 0; t < 4; ++t) {
    int k = kk(rng), n = len(rng);
    for (int j = j0; j < j0 + n; ++j)
      if (orbit_supported(ctx, k, j)) f.g[k][j] += cplx(u(rng), u(rng));
  }
  return f;
}

Outcome c7_integral() {
  Outcome o;
  std::mt19937 rng(7);
  const double q = 0.6;
  std::vector<RepParams> cases{real_params(q, 0.8, 0.37), real_params(q, 0.8, -0.5), real_params(q, 0.8, q * 0.8 * q * q),
                               real_params(q, 0.8, 1.25 / q / (q * q)),
                               RepParams{q, std::polar(1.0, 0.4), std::polar(1.0, -0.4), 0.9}};
  double worst = 0;
  for (auto& p : cases) {
    IntegralContext ctx = integral_context(p);
    for (int t = 0; t < 50; ++t) {
      LatticeElement f = random_element(rng, ctx);
      double scale = 1;
      for (auto& [k, g] : f.g)
        for (auto& [j, v] : g) scale = std::max(scale, std::abs(v));
      cplx i0 = invariant_integral(f, ctx);
      worst = std::max(worst, std::abs(invariant_integral(act_lattice(GenKind::E, f, ctx), ctx)) / scale);
      worst = std::max(worst, std::abs(invariant_integral(act_lattice(GenKind::F, f, ctx), ctx)) / scale);
      worst = std::max(worst, std::abs(invariant_integral(act_lattice(GenKind::K, f, ctx), ctx) - i0) / scale);
    }
  }
  o.pass = worst < 1e-10;
  o.detail = "5 spectra x 50 elements, max residual " + num(worst);
  return o;
}

Outcome c8_classification() {
  Outcome o;
  const double q = 0.5;
  const double c0 = std::sqrt(q);  // l = -1/4
  cplx cc = std::polar(1.0, 0.5);
  struct Row {
    RepParams p;
    Series want;
  };
  std::vector<Row> rows{{RepParams{q, cc, std::conj(cc), 0.9}, Series::PrincipalContinuous},
                        {real_params(q, 0.9, 0.3), Series::Complimentary},
                        {real_params(q, c0, q * c0), Series::HolomorphicDiscrete},
                        {real_params(q, c0, 1 / c0 / q), Series::AntiHolomorphicDiscrete},
                        {real_params(q, c0, -0.9), Series::Strange}};
  int bad = 0;
  for (auto& r : rows) {
    SeriesLabel s = classify(r.p);
    bool ok = s.series == r.want;
    ok = ok && std::abs(s.casimir - casimir_from_spin(q, s.l)) < 1e-10;
    ok = ok && std::abs(s.casimir - casimir_image(q, r.p.c0, r.p.d0)) < 1e-10;
    RepParams sw = r.p;
    std::swap(sw.c0, sw.d0);
    if (!r.p.complex_case()) {
      SeriesLabel t = classify(sw);
      ok = ok && std::abs(s.l + t.l + 1.0) < 1e-10 && std::abs(s.casimir - t.casimir) < 1e-10;
    }
    bad += !ok;
  }
  // label discipline on a random sweep
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> uq(0.2, 0.9), uc(0.05, 1), un(-4, 4);
  int comp = 0, strange = 0, wrong = 0;
  for (int t = 0; t < 2000; ++t) {
    double qq = uq(rng);
    RepParams p = real_params(qq, uc(rng), un(rng));
    if (p.nu0 == 0) continue;
    Series s = classify(p).series;
    if (s == Series::Complimentary) {
      ++comp;
      // no lattice point nu0 q^(2k) inside (q c0, q d0)
      double lo = qq * p.c0.real(), hi = qq * p.d0.real();
      double k = std::floor(std::log(hi / p.nu0) / (2 * std::log(qq)));
      bool gap_point = false;
      for (double kk = k - 2; kk <= k + 2; ++kk) {
        double x = p.nu0 * std::pow(qq, 2 * kk);
        gap_point = gap_point || (x > lo && x < hi);
      }
      wrong += p.nu0 <= 0 || gap_point;
    }
    if (s == Series::Strange) {
      ++strange;
      wrong += p.nu0 >= 0;
    }
  }
  o.pass = bad == 0 && wrong == 0 && comp > 0 && strange > 0;
  o.detail = "5 series, Casimir and l -> -l-1 checks: " + std::to_string(bad) + " bad; sweep " + std::to_string(comp) +
             " complimentary, " + std::to_string(strange) + " strange, " + std::to_string(wrong) + " misplaced";
  return o;
}

Outcome c9_degen() {
  Outcome o;
  const double q = 0.5, c0 = 1;
  int points = 0, mismatch = 0, literal_hits = 0, scanned_hits = 0;
  for (int e : {1, 2, 3, 5}) {
    double d0 = std::pow(q, -e);
    std::vector<std::pair<double, double>> starts{{d0 / q, q * c0}, {q * c0, q * c0}, {c0 / (q * q * q), c0 / q}};
    for (int a = -4; a <= 4; ++a)
      for (int b = -4; b <= 4; ++b) starts.push_back({d0 * std::pow(q, 0.5 * a), c0 * std::pow(q, 0.5 * b)});
    for (auto [l1, l2] : starts) {
      Su21Result r = classify_su21(q, c0, d0, l1, l2, 10);
      ++points;
      literal_hits += r.literal != Su21Case::None;
      scanned_hits += r.scanned != Su21Case::None;
      mismatch += r.literal != r.scanned;
    }
  }
  // Gram positivity against the conditions, pointwise
  int edges = 0, gram_bad = 0;
  double plaquette = 0;
  for (int e : {1, 2, 3, 5}) {
    double d0 = std::pow(q, -e);
    for (auto start : {std::pair{q, q}, std::pair{1 / (q * q * q), 1 / q}, std::pair{d0 / q, q}, std::pair{0.77, 1.9}}) {
      LatticeChar ch{2, q, c0, d0, {start.first, start.second}, {-1, 1}};
      ScanReport s = lattice_scan(ch, 6);
      DegenGram g = degen_gram(ch, s, 200);
      plaquette = std::max(plaquette, g.plaquette_residual);
      for (auto& [p, gp] : g.g) {
        auto pc = positivity_conditions(q, ch.iota, s.eigenvalues(ch, p));
        for (int i = 1; i <= 2; ++i) {
          LatticePoint up = p;
          up[i - 1] += 1;
          auto it = g.g.find(up);
          if (it == g.g.end() || pc[i - 1].boundary) continue;
          ++edges;
          gram_bad += (it->second / gp > 0) != pc[i - 1].ll2;
        }
      }
    }
  }
  bool gram_ok = gram_bad == 0 && plaquette < 1e-9;
  o.pass = mismatch == 0 && gram_ok;
  o.detail = std::to_string(points) + " characters: stated predicates fire " + std::to_string(literal_hits) + ", scan finds " +
             std::to_string(scanned_hits) + ", " + std::to_string(mismatch) + " disagree; Gram vs conditions " +
             std::to_string(edges) + " edges, " + std::to_string(gram_bad) + " bad";
  return o;
}

// (a; t)_k as a plain product
double poch(double a, double t, int k) {
  double r = 1;
  for (int i = 0; i < k; ++i) r *= 1 - a * std::pow(t, i);
  return r;
}

Outcome c10_kernels() {
  Outcome o;
  const double q = 0.5;
  // Taylor coefficients of z -> K(z, 1) by a discrete Cauchy integral on |z| = r
  double taylor = 0;
  for (double l : {-0.5, -0.75, -1.0, -1.5, -2.5}) {
    const int M = 1024;
    const double r = 0.9;
    std::vector<cplx> vals(M);
    for (int j = 0; j < M; ++j) vals[j] = kernel_plus(std::polar(r, 2 * M_PI * j / M), 1.0, l, q);
    for (int k = 0; k <= 20; ++k) {
      cplx s = 0;
      for (int j = 0; j < M; ++j) s += vals[j] * std::polar(1.0, -2 * M_PI * double(j) * k / M);
      double ck = (s / double(M)).real() / std::pow(r, k);
      double ref = poch(std::pow(q, -4 * l), q * q, k) / poch(q * q, q * q, k);
      taylor = std::max(taylor, std::abs(ck - ref) / std::max(1.0, std::abs(ref)));
    }
  }
  std::mt19937_64 rng(10);
  auto points = [&](double lo, double hi) {
    std::uniform_real_distribution<double> ur(lo, hi), th(0, 2 * M_PI);
    std::vector<cplx> p;
    for (int i = 0; i < 12; ++i) p.push_back(std::polar(ur(rng), th(rng)));
    return p;
  };
  double plus_eig = INFINITY, strange_eig = INFINITY;
  for (double l : {-0.5, -1.0, -1.5, -2.5})
    for (int s = 0; s < 10; ++s)
      plus_eig = std::min(plus_eig, kernel_min_eigenvalue([&](cplx a, cplx b) { return kernel_plus(a, b, l, q); }, points(0, 0.9)));
  bool atoms = true, repro = true;
  double repro_worst = 0;
  for (double alpha : {0.0, 0.5, 1.0, 1.5})
    for (double eps : {0.2, -0.3}) {
      double rc = std::pow(q, alpha + 0.5);
      for (int s = 0; s < 10; ++s)
        strange_eig = std::min(strange_eig, kernel_min_eigenvalue([&](cplx a, cplx b) { return kernel_strange(a, b, alpha, eps, q); },
                                                                  points(0.98 * rc, 1.02 * rc)));
      atoms = atoms && strange_measure(alpha, eps, q).atoms() == int(std::lround(2 * alpha + 2));
      ReproduceReport rr = reproduce_check_strange(alpha, eps, q, std::polar(rc, 0.7), 10, 1e-6);
      repro = repro && rr.pass;
      repro_worst = std::max(repro_worst, rr.max_residual);
    }
  bool taylor_ok = taylor < 1e-12, psd = plus_eig >= -1e-10 && strange_eig >= -1e-10;
  o.pass = taylor_ok && psd && atoms && repro;
  o.detail = "Taylor max " + num(taylor) + "; min eigenvalue discrete " + num(plus_eig) + ", strange " + num(strange_eig) +
             "; strange atoms " + (atoms ? "2a+2" : "wrong") + "; reproducing max " + num(repro_worst);
  return o;
}

std::string run_capture(const std::string& cmd) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return "<popen failed>";
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int rc = pclose(p);
  return out + "\nrc=" + std::to_string(rc);
}

Outcome c11_determinism(const std::string& cli) {
  Outcome o;
  if (cli.empty()) return {false, "no CLI path given"};
  std::string grid = "qorbit_acceptance_grid.json";
  {
    std::ofstream g(grid);
    g << R"({"q":[0.4,0.5,0.7],"c0":[0.2,0.5,0.9,[0.8,0.6]],"d0":"inverse","nu0":[-1.3,0.3,0.45,2.2]})";
  }
  std::vector<std::string> cmds{
      "'" + cli + "' classify --q 0.5 --c0 1 --d0 1 --nu0 0.5",
      "'" + cli + "' sweep --grid " + grid,
      "QORBIT_THREADS=1 '" + cli + "' sweep --grid " + grid,
      "'" + cli + "' kernel --q 0.5 --l -1.5 --check psd",
      "'" + cli + "' kernel --q 0.5 --l -1.5 --check reproduce",
      "'" + cli + "' degen --q 0.5 --c0 1 --d0 2 --lambda1 0.5 --lambda2 0.5 --bound 8",
      "'" + cli + "' moment --q 0.6 --c0 0.8 --d0 1.25 --nu0 0.37 --degree 12 --check casimir",
      "'" + cli + "' heis --n 1 --degree 6 --check relations"};
  int runs = 0, diffs = 0;
  std::string sweep_ref;
  for (auto& c : cmds) {
    std::string a = run_capture(c + " 2>&1"), b = run_capture(c + " 2>&1");
    runs += 2;
    diffs += a != b;
    if (c.find("sweep") != std::string::npos) {
      if (sweep_ref.empty())
        sweep_ref = a;
      else
        diffs += a != sweep_ref;
    }
  }
  std::remove(grid.c_str());
  o.pass = diffs == 0;
  o.detail = std::to_string(runs) + " runs of " + std::to_string(cmds.size()) + " commands, " + std::to_string(diffs) +
             " differences (thread counts 1 and default)";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";
  std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, c1_relations}, {2, c2_presentation}, {3, c3_invariant},      {4, c4_moment},
      {5, c5_unitarity}, {6, c6_spectra},      {7, c7_integral},       {8, c8_classification},
      {9, c9_degen},     {10, c10_kernels},    {11, [&] { return c11_determinism(cli); }}};
  int unexpected = 0;
  for (auto& [id, f] : criteria) {
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    bool known = kKnownFailures.count(id) > 0;
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << (known && !o.pass ? " (known)" : "") << "  "
              << o.detail << std::endl;
    if (!o.pass && !known) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
