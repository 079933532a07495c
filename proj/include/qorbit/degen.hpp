#pragma once
// Degenerate series of U_q(su<iota>): eigenvalue lattices of x_1..x_n and their positivity.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qorbit/funcx.hpp"

namespace qorbit {

struct LatticeChar {
  int n = 2;
  double q = 0.5;
  double c0 = 1, d0 = 1;
  std::vector<double> lambda;  // chi(x_1)..chi(x_n), positive
  std::vector<int> iota;       // iota_1..iota_n
  // (lambda_0, .., lambda_{n+1}) with lambda_0 = q^-1 d0, lambda_{n+1} = q c0
  std::vector<double> full(const std::vector<double>& lam) const;
};

struct IndexPositivity {
  bool ll1 = false, ll2 = false;
  bool boundary = false;  // a numerator or denominator vanishes
  double r1 = 0, r2 = 0;  // the two ratios (inf on a zero denominator)
};
// lam = (lambda_0 .. lambda_{n+1}); entries for i = 1..n.
std::vector<IndexPositivity> positivity_conditions(double q, const std::vector<int>& iota, const std::vector<double>& lam);

// zeta_i^* zeta_i and zeta_i zeta_i^* on an eigenvector, from the involution on Func(X)_q.
double zeta_star_zeta(const LatticeChar& ch, int i, const std::vector<double>& lam);
double zeta_zeta_star(const LatticeChar& ch, int i, const std::vector<double>& lam);

using LatticePoint = std::vector<int>;  // lambda_i q^(-2 k_i)

enum class Region { none = 0, R1 = 1, R2 = 2, both = 3 };
// Membership in the two closed regions of the su(2,1) example (literal inequalities).
Region su21_region(double q, double c0, double d0, double l1, double l2, double tol = 1e-12);
// The regions cut out by the positivity conditions themselves (closed):
// R1: l1 >= q^-1 d0, l1 >= q^-2 l2, l2 >= q^-1 c0;  R2: l1 <= q d0, l1 <= l2 <= q c0.
Region su21_region_exact(double q, double c0, double d0, double l1, double l2, double tol = 1e-12);
bool su21_boundary(double q, double c0, double d0, double l1, double l2, double tol = 1e-12);

struct Wall {
  LatticePoint at;
  int i = 0;
  bool hat = false;  // true: zeta_i^* (lowers k_i) annihilates, else zeta_i (raises k_i)
};

struct ScanReport {
  std::vector<LatticePoint> points;  // reachable, sorted
  std::vector<Wall> walls;
  bool negative = false;  // a negative norm ratio on some edge
  std::vector<std::pair<LatticePoint, int>> negative_edges;
  bool hit_bound = false;  // reached |k_i| = bound without a wall
  bool start_singular = false;
  std::map<int, int> region_counts;        // Region -> count (n = 2), displayed inequalities
  std::map<int, int> exact_region_counts;  // same with su21_region_exact
  std::vector<double> eigenvalues(const LatticeChar& ch, const LatticePoint& p) const;
};

// Breadth-first walk from lambda along zeta_i^{+-1}, cutting zero or infinite norm ratios.
ScanReport lattice_scan(const LatticeChar& ch, int bound = 40);

// Diagonal Gram form on the reachable points, normalised to 1 at the start.
struct DegenGram {
  std::map<LatticePoint, double> g;
  double plaquette_residual = 0;  // path independence (zeta_1 zeta_2 = q zeta_2 zeta_1)
  bool positive = true;
  double min_eigenvalue = 0;
};
DegenGram degen_gram(const LatticeChar& ch, const ScanReport& scan, size_t max_points = 200);

// nu_W(f) = tr_W(f J(q^rho)) over the scanned points, J(q^rho) = prod_i J(K_i).
struct TraceResult {
  cplx value = 0;
  double tail = 0;  // contribution of the outermost shell
  bool certified = false;
};
TraceResult trace_integral(const LatticeChar& ch, const ScanReport& scan, const FuncXElement& f, double tail_tol = 1e-8);

enum class Su21Case { DegenerateHolomorphic, DegenerateAntiHolomorphic, DegenerateComplimentary, None };
const char* su21_name(Su21Case c);

struct Su21Result {
  Su21Case literal = Su21Case::None;  // the three stated predicates
  Su21Case scanned = Su21Case::None;  // from the truncation scan and (ll)
  ScanReport scan;
};
Su21Case classify_su21_literal(double q, double c0, double d0, double l1, double l2, double tol = 1e-12);
Su21Result classify_su21(double q, double c0, double d0, double l1, double l2, int bound = 40);

}  // namespace qorbit
