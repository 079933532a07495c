// qorbit: command-line front end for the library checks.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "qorbit/degen.hpp"
#include "qorbit/funcx.hpp"
#include "qorbit/heis.hpp"
#include "qorbit/moment.hpp"
#include "qorbit/qfun.hpp"
#include "qorbit/series.hpp"

using json = nlohmann::ordered_json;
using namespace qorbit;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string fmt_double(double v) {
  if (!std::isfinite(v)) return "null";
  if (v == 0) v = 0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// nlohmann prints the shortest round-trip form; the schema fixes 17 significant digits.
void write_json(std::ostream& os, const json& j) {
  switch (j.type()) {
    case json::value_t::object: {
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        first = false;
        os << json(it.key()).dump() << ':';
        write_json(os, it.value());
      }
      os << '}';
      break;
    }
    case json::value_t::array: {
      os << '[';
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) os << ',';
        write_json(os, j[i]);
      }
      os << ']';
      break;
    }
    case json::value_t::number_float:
      os << fmt_double(j.get<double>());
      break;
    default:
      os << j.dump();
  }
}

json cjson(cplx z) {
  if (z.imag() == 0) return z.real();
  return json::array({z.real(), z.imag()});
}

cplx parse_complex(const std::string& s, const char* name) {
  try {
    size_t pos = 0;
    auto comma = s.find(',');
    double re = std::stod(s.substr(0, comma), &pos);
    if (comma == std::string::npos) {
      if (pos != s.size()) throw std::invalid_argument("");
      return re;
    }
    std::string rest = s.substr(comma + 1);
    double im = std::stod(rest, &pos);
    if (pos != rest.size()) throw std::invalid_argument("");
    return {re, im};
  } catch (const std::exception&) {
    throw UsageError(std::string("cannot parse --") + name + " '" + s + "'");
  }
}

void check_q(double q) {
  if (!(q > 0 && q < 1)) throw InvalidParams("q must lie in (0, 1)");
}

unsigned worker_count(size_t jobs) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QORBIT_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) hw = std::min<unsigned>(hw, unsigned(v));
  }
  return unsigned(std::max<size_t>(1, std::min<size_t>(hw, jobs)));
}

// Runs f(i) for i < n on a pool; results land in slot i, so output order is fixed.
template <class F>
std::vector<json> parallel_map(size_t n, F f) {
  std::vector<json> out(n);
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < worker_count(n); ++t)
    pool.emplace_back([&] {
      for (size_t i; (i = next++) < n;) out[i] = f(i);
    });
  for (auto& th : pool) th.join();
  return out;
}

struct Out {
  json j;
  bool pass = true;
  std::vector<std::vector<std::string>> csv;
};

json report_json(const CheckReport& r, int n, int degree) {
  json j{{"check", r.check}, {"n", n}, {"degree", degree}, {"status", r.pass ? "pass" : "fail"}};
  if (!r.pass) j["counterexample"] = r.counterexample;
  if (!r.details.empty()) j["details"] = r.details;
  return j;
}

Out run_heis(int n, int degree, const std::string& check) {
  if (n < 1 || n > 3) throw InvalidParams("n must be 1, 2 or 3");
  if (degree < 0) throw InvalidParams("degree must be non-negative");
  CheckReport r;
  if (check == "relations")
    r = check_relations_on_W(n, degree);
  else if (check == "pbw")
    r = check_pbw(n, degree);
  else if (check == "i0")
    r = check_I0_invariance(n);
  else
    r = check_confluence(n, degree);
  return {report_json(r, n, degree), r.pass, {}};
}

mpq_class exact_of(double v) { return mpq_class(v); }

Out run_funcx(int n, cplx c0, cplx d0, const std::string& check) {
  if (n != 1) throw InvalidParams("funcx checks are implemented for n = 1");
  bool cx = std::abs(c0.imag()) > 0 || std::abs(d0.imag()) > 0;
  if (!cx && (c0.real() == 0 || d0.real() == 0)) throw InvalidParams("c0 and d0 must be non-zero");
  if (cx && std::abs(c0 - std::conj(d0)) > 1e-12) throw InvalidParams("complex c0, d0 must be conjugate");
  // Complex pairs stay symbolic: the algebra only sees c and d.
  RatFunc c = cx ? RatFunc::var(kC) : RatFunc(exact_of(c0.real()));
  RatFunc d = cx ? RatFunc::var(kD) : RatFunc(exact_of(d0.real()));
  json j{{"check", check}, {"n", n}, {"complex_case", cx}};
  bool pass = true;
  XcdAlgebra a = xcd_algebra(c, d, cx);
  if (check == "phi") {
    pass = a.phi_identity;
    j["zeta_zeta_star"] = a.zeta_zeta_star.str();
    j["zeta_star_zeta"] = a.zeta_star_zeta.str();
  } else if (check == "relations") {
    RatFunc x = RatFunc::var(xvar(1)), qq = RatFunc::q();
    bool ok1 = a.zeta_zeta_star == (x - d / qq) / (x - c / qq);
    bool ok2 = a.zeta_star_zeta == (x - qq * d) / (x - qq * c);
    bool ok3 = a.zeta * FuncXElement::xfun(1, 1) == FuncXElement::function(1, T_shift(RatFunc::var(xvar(1)), 1, 1)) * a.zeta;
    bool ok4 = true;
    for (auto k : {GenKind::E, GenKind::F, GenKind::K})
      ok4 = ok4 && fx_module_algebra_law(AlgebraElement::gen(1, k, 1), a.zeta, a.zeta_star);
    j["zeta_zeta_star"] = ok1;
    j["zeta_star_zeta"] = ok2;
    j["zeta_x_commutation"] = ok3;
    j["module_algebra_law"] = ok4;
    pass = ok1 && ok2 && ok3 && ok4;
  } else {
    FxInvolution inv;
    if (cx) inv.kind = FxInvolution::star_complex;
    std::vector<FuncXElement> els{a.zeta, a.zeta_star, FuncXElement::xfun(1, 1), a.zeta * a.zeta * FuncXElement::xfun(1, 1)};
    bool invol = true, anti = true;
    for (auto& f : els) {
      invol = invol && involution_fx(involution_fx(f, inv), inv) == f;
      for (auto& g : els) anti = anti && involution_fx(f * g, inv) == involution_fx(g, inv) * involution_fx(f, inv);
    }
    j["involutive"] = invol;
    j["anti_multiplicative"] = anti;
    pass = invol && anti;
  }
  j["status"] = pass ? "pass" : "fail";
  return {j, pass, {}};
}

MomentForm parse_form(const std::string& s) {
  if (s == "literal") return MomentForm::literal;
  if (s == "equivariant") return MomentForm::equivariant;
  return MomentForm::standard;
}

Out run_moment(int n, const RepParams& p, int degree, const std::string& check, const std::string& form) {
  if (n != 1) throw InvalidParams("moment checks on induced modules are implemented for n = 1");
  validate(p);
  MomentForm f = parse_form(form);
  json j{{"check", check}, {"n", n}, {"form", form_name(f)}, {"degree", degree}};
  bool pass;
  if (check == "relations") {
    PiModule pi = build_pi(p, degree);
    MomentReport r = verify_moment_relations(pi.as_xdiag(), f);
    json res = json::object();
    for (auto& [name, v] : r.residuals) res[name] = v;
    j["residuals"] = res;
    j["max_residual"] = r.max_residual;
    pass = r.pass;
  } else {
    CasimirCheck c = casimir_spectrum_check(p, degree, f);
    j["expected"] = cjson(c.expected);
    j["residual"] = c.residual;
    j["literal_residual"] = c.literal_residual;
    pass = c.pass;
  }
  j["status"] = pass ? "pass" : "fail";
  return {j, pass, {}};
}

json classify_json(const RepParams& p) {
  SeriesLabel s = classify(p);
  return json{{"series", series_name(s.series)},
              {"l", cjson(s.l)},
              {"epsilon", s.epsilon},
              {"casimir", cjson(s.casimir)},
              {"spectrum_kind", spectrum_name(s.spectrum)}};
}

Out run_classify(const RepParams& p) {
  validate(p);
  return {classify_json(p), true, {}};
}

std::vector<json> values_of(const json& g, const char* key) {
  if (!g.contains(key)) throw InvalidParams(std::string("grid is missing '") + key + "'");
  const json& v = g[key];
  if (v.is_array()) return std::vector<json>(v.begin(), v.end());
  return {v};
}

cplx json_complex(const json& v) {
  if (v.is_array() && v.size() == 2) return {v[0].get<double>(), v[1].get<double>()};
  if (v.is_number()) return v.get<double>();
  throw InvalidParams("grid values must be numbers or [re, im] pairs");
}

// Grid: {"q": [..], "c0": [..], "d0": [..] or "inverse", "nu0": [..]}, or {"points": [{q, c0, d0, nu0}, ..]}.
Out run_sweep(const std::string& path, std::vector<std::vector<std::string>>& csv) {
  std::ifstream in(path);
  if (!in) throw InvalidParams("cannot open grid file '" + path + "'");
  json g;
  try {
    g = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidParams(std::string("grid file is not valid JSON: ") + e.what());
  }
  std::vector<RepParams> pts;
  auto from = [](const json& q, const json& c0, const json& d0, const json& nu0) {
    RepParams p;
    p.q = q.get<double>();
    p.c0 = json_complex(c0);
    p.d0 = d0.is_string() ? 1.0 / p.c0 : json_complex(d0);
    p.nu0 = nu0.get<double>();
    return p;
  };
  try {
    if (g.contains("points")) {
      for (auto& e : g["points"]) pts.push_back(from(e.at("q"), e.at("c0"), e.at("d0"), e.at("nu0")));
    } else {
      for (auto& q : values_of(g, "q"))
        for (auto& c0 : values_of(g, "c0"))
          for (auto& d0 : values_of(g, "d0"))
            for (auto& nu0 : values_of(g, "nu0")) pts.push_back(from(q, c0, d0, nu0));
    }
  } catch (const json::exception& e) {
    throw InvalidParams(std::string("malformed grid: ") + e.what());
  }
  auto rows = parallel_map(pts.size(), [&](size_t i) {
    const RepParams& p = pts[i];
    json r{{"q", p.q}, {"c0", cjson(p.c0)}, {"d0", cjson(p.d0)}, {"nu0", p.nu0}};
    try {
      validate(p);
      r["result"] = classify_json(p);
      r["unitarity_predicted"] = unitarity_predicted(p);
    } catch (const InvalidParams& e) {
      r["error"] = e.what();
    }
    return r;
  });
  csv.push_back({"q", "c0", "d0", "nu0", "series", "l", "epsilon"});
  for (auto& r : rows) {
    std::vector<std::string> line{fmt_double(r["q"]), r["c0"].is_array() ? fmt_double(r["c0"][0]) + "+" + fmt_double(r["c0"][1]) + "i" : fmt_double(r["c0"]),
                                  r["d0"].is_array() ? fmt_double(r["d0"][0]) + "+" + fmt_double(r["d0"][1]) + "i" : fmt_double(r["d0"]),
                                  fmt_double(r["nu0"])};
    if (r.contains("result")) {
      auto& s = r["result"];
      line.push_back(s["series"].get<std::string>());
      line.push_back(s["l"].is_array() ? fmt_double(s["l"][0]) + "+" + fmt_double(s["l"][1]) + "i" : fmt_double(s["l"]));
      line.push_back(fmt_double(s["epsilon"]));
    } else {
      line.insert(line.end(), {"error", "", ""});
    }
    csv.push_back(line);
  }
  return {json{{"count", rows.size()}, {"rows", rows}}, true, {}};
}

json point_json(const LatticePoint& p) { return json(p); }

Out run_degen(double q, double c0, double d0, double l1, double l2, int bound) {
  check_q(q);
  if (!(c0 > 0 && d0 > 0 && l1 > 0 && l2 > 0)) throw InvalidParams("c0, d0, lambda1, lambda2 must be positive");
  if (bound < 1) throw InvalidParams("bound must be positive");
  Su21Result r = classify_su21(q, c0, d0, l1, l2, bound);
  const char* names[] = {"none", "R1", "R2", "both"};
  json rc = json::object(), erc = json::object();
  for (auto& [k, v] : r.scan.region_counts) rc[names[k]] = v;
  for (auto& [k, v] : r.scan.exact_region_counts) erc[names[k]] = v;
  json walls = json::array();
  for (auto& w : r.scan.walls) walls.push_back(json{{"at", point_json(w.at)}, {"i", w.i}, {"hat", w.hat}});
  json j{{"case", su21_name(r.scanned)},
         {"literal_case", su21_name(r.literal)},
         {"points", r.scan.points.size()},
         {"negative", r.scan.negative},
         {"start_singular", r.scan.start_singular},
         {"hit_bound", r.scan.hit_bound},
         {"region_counts", rc},
         {"exact_region_counts", erc},
         {"truncation_walls", walls}};
  return {j, true, {}};
}

std::vector<cplx> random_points(std::mt19937_64& rng, double rlo, double rhi, int count) {
  std::uniform_real_distribution<double> r(rlo, rhi), th(0, 2 * M_PI);
  std::vector<cplx> pts;
  for (int i = 0; i < count; ++i) pts.push_back(std::polar(r(rng), th(rng)));
  return pts;
}

Out run_kernel(double q, double l, const std::string& series, double alpha, double eps, const std::string& check,
               int kmax, unsigned seed) {
  check_q(q);
  bool strange = series == "strange";
  if (strange) {
    if (alpha < 0 || std::abs(2 * alpha - std::round(2 * alpha)) > 1e-12)
      throw InvalidParams("alpha must be a non-negative half-integer");
    if (std::abs(eps) > 0.5) throw InvalidParams("|eps| must be at most 1/2");
  } else if (!(l < 0)) {
    throw InvalidParams("the discrete-series kernel needs l < 0");
  }
  json j{{"check", check}, {"series", series}, {"q", q}};
  if (strange) {
    j["alpha"] = alpha;
    j["eps"] = eps;
  } else {
    j["l"] = l;
  }
  Out o;
  bool pass = true;
  if (check == "expand") {
    json rows = json::array();
    o.csv.push_back({"k", "coefficient", "reference", "residual"});
    double worst = 0;
    if (strange) {
      // c_k m_k is constant for the reproducing pair; report the coefficients with that product.
      RadialMeasure m = strange_measure(alpha, eps, q);
      double base = kernel_strange_coeff(0, alpha, eps, q) * radial_moment(m, 0);
      for (int k = -kmax; k <= kmax; ++k) {
        double c = kernel_strange_coeff(k, alpha, eps, q), prod = c * radial_moment(m, k);
        double res = std::abs(prod / base - 1);
        worst = std::max(worst, res);
        rows.push_back(json{{"k", k}, {"coefficient", c}, {"normalized_product", prod / base}});
        o.csv.push_back({std::to_string(k), fmt_double(c), fmt_double(prod / base), fmt_double(res)});
      }
      pass = worst < 1e-6;
    } else {
      for (int k = 0; k <= kmax; ++k) {
        double c = kernel_plus_coeff(k, l, q);
        double ref = std::real(qpoch(std::pow(q, -4 * l), q * q, k) / qpoch(q * q, q * q, k));
        double res = std::abs(c - ref) / std::max(1.0, std::abs(ref));
        worst = std::max(worst, res);
        rows.push_back(json{{"k", k}, {"coefficient", c}, {"reference", ref}, {"residual", res}});
        o.csv.push_back({std::to_string(k), fmt_double(c), fmt_double(ref), fmt_double(res)});
      }
      pass = worst < 1e-12;
    }
    j["rows"] = rows;
    j["max_residual"] = worst;
  } else if (check == "psd") {
    std::mt19937_64 rng(seed);
    json sets = json::array();
    double worst = INFINITY;
    o.csv.push_back({"set", "min_eigenvalue"});
    for (int s = 0; s < 10; ++s) {
      double ev;
      if (strange) {
        double rc = std::pow(q, alpha + 0.5);
        auto pts = random_points(rng, rc * 0.98, rc * 1.02, 12);
        ev = kernel_min_eigenvalue([&](cplx a, cplx b) { return kernel_strange(a, b, alpha, eps, q); }, pts);
      } else {
        auto pts = random_points(rng, 0.0, 0.9, 12);
        ev = kernel_min_eigenvalue([&](cplx a, cplx b) { return kernel_plus(a, b, l, q); }, pts);
      }
      worst = std::min(worst, ev);
      sets.push_back(ev);
      o.csv.push_back({std::to_string(s), fmt_double(ev)});
    }
    j["min_eigenvalues"] = sets;
    j["min_eigenvalue"] = worst;
    pass = worst >= -1e-10;
  } else {
    json rows = json::array();
    ReproduceReport r;
    MeasureReport m;
    if (strange) {
      cplx mu = std::polar(std::pow(q, alpha + 0.5), 0.7);
      r = reproduce_check_strange(alpha, eps, q, mu, kmax);
      m = measure_check_strange(alpha, eps, q, kmax);
    } else {
      cplx mu = std::polar(0.5, 0.7);
      r = reproduce_check_plus(l, q, mu, kmax);
      m = measure_check_plus(l, q, kmax);
    }
    o.csv.push_back({"degree", "residual"});
    for (auto& [k, v] : r.residuals) {
      rows.push_back(json{{"degree", k}, {"residual", v}});
      o.csv.push_back({std::to_string(k), fmt_double(v)});
    }
    j["atoms"] = m.atoms;
    j["measure_orthogonal"] = m.orthogonal;
    j["rows"] = rows;
    j["max_residual"] = r.max_residual;
    pass = r.pass;
  }
  j["status"] = pass ? "pass" : "fail";
  o.j = j;
  o.pass = pass;
  return o;
}

void write_csv(const std::string& path, const std::vector<std::vector<std::string>>& rows) {
  std::ofstream f(path);
  if (!f) throw InvalidParams("cannot write '" + path + "'");
  for (auto& r : rows) {
    for (size_t i = 0; i < r.size(); ++i) f << (i ? "," : "") << r[i];
    f << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qorbit: quantum orbit method workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string csv_path;
  app.add_option("--emit-csv", csv_path, "also write table rows as CSV to this file");
  app.add_flag("--json", "JSON output (the default)");

  int n = 1, degree = 6, bound = 40, kmax = 10;
  unsigned seed = 1;
  double q = 0.5, nu0 = 1, l = -1, alpha = 0, eps = 0, l1 = 1, l2 = 1;
  std::string c0s = "1", d0s = "1", check, form = "standard", grid, series = "plus";

  auto* heis = app.add_subcommand("heis", "Heisenberg algebra and module W checks");
  heis->add_option("--n", n);
  heis->add_option("--degree", degree);
  heis->add_option("--check", check)->required()->check(CLI::IsMember({"relations", "pbw", "i0", "confluence"}));

  auto* funcx = app.add_subcommand("funcx", "function algebra checks");
  funcx->add_option("--n", n);
  funcx->add_option("--c0", c0s);
  funcx->add_option("--d0", d0s);
  funcx->add_option("--check", check)->required()->check(CLI::IsMember({"phi", "relations", "star"}));

  auto* moment = app.add_subcommand("moment", "moment map on induced modules");
  moment->add_option("--n", n);
  moment->add_option("--q", q);
  moment->add_option("--c0", c0s);
  moment->add_option("--d0", d0s);
  moment->add_option("--nu0", nu0);
  moment->add_option("--degree", degree);
  moment->add_option("--form", form)->check(CLI::IsMember({"literal", "standard", "equivariant"}));
  moment->add_option("--check", check)->required()->check(CLI::IsMember({"relations", "casimir"}));

  auto* cls = app.add_subcommand("classify", "series of the induced representation");
  cls->add_option("--q", q)->required();
  cls->add_option("--c0", c0s)->required();
  cls->add_option("--d0", d0s)->required();
  cls->add_option("--nu0", nu0)->required();

  auto* sweep = app.add_subcommand("sweep", "classify a parameter grid");
  sweep->add_option("--grid", grid)->required();

  auto* degen = app.add_subcommand("degen", "degenerate su(2,1) characters");
  degen->add_option("--q", q);
  degen->add_option("--c0", c0s);
  degen->add_option("--d0", d0s);
  degen->add_option("--lambda1", l1)->required();
  degen->add_option("--lambda2", l2)->required();
  degen->add_option("--bound", bound);

  auto* kernel = app.add_subcommand("kernel", "reproducing kernels");
  kernel->add_option("--q", q);
  kernel->add_option("--l", l);
  kernel->add_option("--series", series)->check(CLI::IsMember({"plus", "strange"}));
  kernel->add_option("--alpha", alpha);
  kernel->add_option("--eps", eps);
  kernel->add_option("--kmax", kmax);
  kernel->add_option("--seed", seed);
  kernel->add_option("--check", check)->required()->check(CLI::IsMember({"expand", "psd", "reproduce"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }

  Out out;
  try {
    auto rep = [&] {
      RepParams p;
      check_q(q);
      p.q = q;
      p.c0 = parse_complex(c0s, "c0");
      p.d0 = parse_complex(d0s, "d0");
      p.nu0 = nu0;
      return p;
    };
    if (*heis) {
      out = run_heis(n, degree, check);
    } else if (*funcx) {
      out = run_funcx(n, parse_complex(c0s, "c0"), parse_complex(d0s, "d0"), check);
    } else if (*moment) {
      out = run_moment(n, rep(), degree, check, form);
    } else if (*cls) {
      out = run_classify(rep());
    } else if (*sweep) {
      std::vector<std::vector<std::string>> csv;
      out = run_sweep(grid, csv);
      out.csv = std::move(csv);
    } else if (*degen) {
      out = run_degen(q, parse_complex(c0s, "c0").real(), parse_complex(d0s, "d0").real(), l1, l2, bound);
    } else {
      out = run_kernel(q, l, series, alpha, eps, check, kmax, seed);
    }
    if (!csv_path.empty()) write_csv(csv_path, out.csv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const InvalidParams& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return 2;
  } catch (const QDomainError& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return 2;
  }

  json doc{{"schema", 1}};
  for (auto it = out.j.begin(); it != out.j.end(); ++it) doc[it.key()] = it.value();
  std::ostringstream os;
  write_json(os, doc);
  std::cout << os.str() << '\n';
  return out.pass ? 0 : 1;
}
