#ifndef FWDIS_ORACLE_HPP
#define FWDIS_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fwdis/objectives.hpp"
#include "fwdis/point.hpp"
#include "fwdis/regions.hpp"
#include "fwdis/schedule.hpp"
#include "fwdis/solver.hpp"

namespace fwdis {

// Brute-force stand-ins for the unknown maximizer x*, and checkers for the
// inequalities the 1/4 guarantee is built from. Everything here works by
// enumeration or sampling and never calls the solver.

enum class OracleMethod { CornerEnumeration, GridSearch };

inline std::string to_string(OracleMethod m) {
  return m == OracleMethod::CornerEnumeration ? "corner-enumeration" : "grid-search";
}

struct OracleResult {
  Point x;
  double f = 0.0;
  OracleMethod method = OracleMethod::CornerEnumeration;
  double resolution = 0.0;  // grid step; 0 for exact corner enumeration
};

/// Exact maximum of a multilinear extension over the full box: the function
/// is affine in each coordinate, so some corner is optimal. Corner values are
/// the table entries. Ties go to the lowest bitmask.
inline OracleResult corner_maximize(const MultilinearObjective& f, const Region& region) {
  if (!std::holds_alternative<BoxKind>(region.kind()))
    throw InvalidArgument("corner_maximize: corners are only optimal over the full box, got " +
                          region.kind_name());
  if (region.dimension() != f.dimension()) throw InvalidArgument("corner_maximize: dimension mismatch");
  const auto& values = f.table().values;
  std::size_t best = 0;
  for (std::size_t m = 1; m < values.size(); ++m)
    if (values[m] > values[best]) best = m;
  OracleResult res;
  res.x.assign(f.dimension(), 0.0);
  for (std::size_t i = 0; i < f.dimension(); ++i) res.x[i] = (best >> i) & 1U ? 1.0 : 0.0;
  res.f = f.value(res.x);
  res.method = OracleMethod::CornerEnumeration;
  return res;
}

inline OracleResult corner_maximize(const AnyObjective& f, const Region& region) {
  const auto* ml = f.target<MultilinearObjective>();
  if (!ml) throw InvalidArgument("corner_maximize: objective is not a multilinear extension");
  return corner_maximize(*ml, region);
}

inline constexpr std::size_t kMaxGridDimension = 6;

/// Maximum over the feasible points of the grid {0, r, ..., 1}^n, visited in
/// lexicographic order; ties keep the first point. The true maximum can exceed
/// the grid value by up to grid_gap().
template <DrObjective O>
OracleResult grid_maximize(const O& f, const Region& region, double resolution) {
  const std::size_t n = f.dimension();
  if (n != region.dimension()) throw InvalidArgument("grid_maximize: dimension mismatch");
  if (n > kMaxGridDimension)
    throw InvalidArgument("grid_maximize: n = " + std::to_string(n) + " exceeds the grid limit of " +
                          std::to_string(kMaxGridDimension));
  if (!(resolution > 0.0) || resolution > 1.0) throw InvalidArgument("grid_maximize: resolution must be in (0,1]");
  const auto steps = static_cast<std::size_t>(std::llround(1.0 / resolution));
  if (std::abs(static_cast<double>(steps) * resolution - 1.0) > 1e-9)
    throw InvalidArgument("grid_maximize: 1/resolution must be an integer");

  OracleResult res;
  res.method = OracleMethod::GridSearch;
  res.resolution = resolution;
  res.f = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> idx(n, 0);
  Point x(n, 0.0);
  const double sd = static_cast<double>(steps);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(idx[i]) / sd;
    if (contains(region, x, 1e-9)) {
      const double v = f.value(x);
      if (v > res.f) {
        res.f = v;
        res.x = x;
      }
    }
    std::size_t k = n;
    bool done = true;
    while (k > 0) {
      --k;
      if (++idx[k] <= steps) {
        done = false;
        break;
      }
      idx[k] = 0;
    }
    if (done) break;
  }
  if (res.x.empty())
    throw InfeasibleRegion("grid_maximize: no grid point of resolution " + std::to_string(resolution) +
                           " lies in the region; use a finer resolution");
  return res;
}

/// Smoothness allowance between grid and true maxima: L sqrt(n) r.
inline double grid_gap(double L, std::size_t n, double resolution) {
  return L * std::sqrt(static_cast<double>(n)) * resolution;
}

// ---------------------------------------------------------------------------
// Reports.

struct CheckReport {
  std::string check;
  std::string instance;
  double margin = 0.0;  // worst slack; negative beyond tolerance means failure
  bool pass = true;
  std::string detail;
};

inline std::string format_report(const CheckReport& r) {
  std::ostringstream os;
  os.precision(12);
  os << "check=" << r.check << " instance=" << r.instance << " margin=" << r.margin
     << " result=" << (r.pass ? "PASS" : "FAIL");
  if (!r.detail.empty()) os << " detail=\"" << r.detail << '"';
  return os.str();
}

// ---------------------------------------------------------------------------
// Objective properties.

/// Slack of <grad F(x), y - x> >= F(x v y) + F(x ^ y) - 2 F(x).
template <DrObjective O>
double dr_inequality_slack(const O& f, const Point& x, const Point& y) {
  const Point g = f.gradient(x);
  Point d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = y[i] - x[i];
  return dot(g, d) - (f.value(join(x, y)) + f.value(meet(x, y)) - 2.0 * f.value(x));
}

/// Samples uniform pairs; passes iff the largest violation is <= tol.
template <DrObjective O>
CheckReport check_dr_inequality(const O& f, std::size_t trials, std::uint64_t seed, double tol = 1e-9) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t n = f.dimension();
  Point x(n), y(n);
  double worst = std::numeric_limits<double>::infinity();
  std::string where;
  for (std::size_t s = 0; s < trials; ++s) {
    for (auto& v : x) v = u(rng);
    for (auto& v : y) v = u(rng);
    const double slack = dr_inequality_slack(f, x, y);
    if (slack < worst) {
      worst = slack;
      where = "x=" + to_string(x) + " y=" + to_string(y);
    }
  }
  CheckReport r{"dr-inequality", "", trials ? worst : 0.0, true, ""};
  r.pass = r.margin >= -tol;
  if (!r.pass) r.detail = where;
  return r;
}

/// For sampled x <= y: grad F(x)_i >= grad F(y)_i - tol.
template <DrObjective O>
CheckReport check_gradient_antitone(const O& f, std::size_t trials, std::uint64_t seed, double tol = 1e-9) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t n = f.dimension();
  Point x(n), y(n);
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < trials; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = u(rng);
      y[i] = x[i] + u(rng) * (1.0 - x[i]);
    }
    const Point gx = f.gradient(x), gy = f.gradient(y);
    for (std::size_t i = 0; i < n; ++i) worst = std::min(worst, gx[i] - gy[i]);
  }
  CheckReport r{"gradient-antitone", "", trials ? worst : 0.0, true, ""};
  r.pass = r.margin >= -tol;
  return r;
}

/// Central differences (F(x + d e_i) - F(x - d e_i)) / 2d. Needs
/// d <= x_i <= 1 - d.
template <DrObjective O>
Point finite_difference_gradient(const O& f, const Point& x, double delta) {
  if (!(delta > 0.0)) throw InvalidArgument("finite_difference_gradient: delta must be positive");
  for (double v : x)
    if (v < delta || v > 1.0 - delta)
      throw InvalidArgument("finite_difference_gradient: x must stay delta inside the box");
  Point g(x.size());
  Point probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + delta;
    const double up = f.value(probe);
    probe[i] = x[i] - delta;
    const double down = f.value(probe);
    probe[i] = x[i];
    g[i] = (up - down) / (2.0 * delta);
  }
  return g;
}

/// Relative agreement max_i |fd_i - g_i| / max(1, |g_i|) at `points` interior
/// samples.
template <DrObjective O>
CheckReport check_finite_differences(const O& f, std::size_t points, std::uint64_t seed, double delta = 1e-4,
                                     double tol = 1e-5) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(delta, 1.0 - delta);
  Point x(f.dimension());
  double worst = 0.0;
  for (std::size_t s = 0; s < points; ++s) {
    for (auto& v : x) v = u(rng);
    const Point fd = finite_difference_gradient(f, x, delta);
    const Point g = f.gradient(x);
    for (std::size_t i = 0; i < g.size(); ++i)
      worst = std::max(worst, std::abs(fd[i] - g[i]) / std::max(1.0, std::abs(g[i])));
  }
  return {"finite-difference", "", tol - worst, worst <= tol, ""};
}

/// Samples F(x v x*) >= (1 - ||x||_inf) F(x*) at uniform x.
template <DrObjective O>
CheckReport check_join_lower_bound(const O& f, const Point& x_star, std::size_t trials, std::uint64_t seed,
                                   double tol = 1e-9) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double f_star = f.value(x_star);
  Point x(f.dimension());
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < trials; ++s) {
    for (auto& v : x) v = u(rng);
    worst = std::min(worst, f.value(join(x, x_star)) - (1.0 - inf_norm(x)) * f_star);
  }
  return {"join-lower-bound", "", trials ? worst : 0.0, !trials || worst >= -tol, ""};
}

// ---------------------------------------------------------------------------
// Solver-run checks.

/// 1 - x_i(t_j) >= (1 - ||x(t_0)||_inf) / sqrt(a_j) for every i, j. For the
/// origin start the factor is 1.
inline CheckReport check_lemma1(const SolveTrace& trace, const Schedule& schedule, double tol = 1e-9) {
  if (trace.records.size() != schedule.iterations + 1)
    throw InvalidArgument("check_lemma1: trace and schedule lengths differ");
  const double start_room = 1.0 - trace.start_inf_norm();
  double worst = std::numeric_limits<double>::infinity();
  std::size_t at = 0;
  for (std::size_t j = 0; j < trace.records.size(); ++j) {
    const double m = (1.0 - trace.records[j].x_inf_norm) - start_room / schedule.sqrt_a[j];
    if (m < worst) {
      worst = m;
      at = j;
    }
  }
  CheckReport r{"lemma1-coordinate-bound", "", worst, worst >= -tol, ""};
  if (!r.pass) r.detail = "j=" + std::to_string(at);
  return r;
}

/// F(x(t_j) v x*) >= (1 - ||x(t_0)||_inf) F* / sqrt(a_j) along the stored
/// iterates. Holds for any feasible comparison point x*, so a grid maximizer
/// is a valid stand-in for the true optimum.
template <DrObjective O>
CheckReport check_lemma2(const O& f, const SolveTrace& trace, const OracleResult& oracle, const Schedule& schedule,
                         double tol = 1e-9) {
  if (trace.iterates.size() != schedule.iterations + 1)
    throw InvalidArgument("check_lemma2: trace has no stored iterates (enable store_iterates)");
  const double start_room = 1.0 - trace.start_inf_norm();
  double worst = std::numeric_limits<double>::infinity();
  std::size_t at = 0;
  for (std::size_t j = 0; j < trace.iterates.size(); ++j) {
    const double m = f.value(join(trace.iterates[j], oracle.x)) - start_room * oracle.f / schedule.sqrt_a[j];
    if (m < worst) {
      worst = m;
      at = j;
    }
  }
  CheckReport r{"lemma2-join-bound", "", worst, worst >= -tol, ""};
  if (!r.pass) r.detail = "j=" + std::to_string(at);
  return r;
}

/// Wherever E(t_j) <= 0:
///   E(t_{j+1}) - E(t_j) + (nL/2)(sqrt(a_{j+1}) - sqrt(a_j))^2 >= -tol.
/// Wherever E(t_j) > 0, F(x(t_j)) > F*/4 must hold instead. The margin is the
/// worst increment slack; the detail counts early-exit rows.
inline CheckReport check_lyapunov_increment(const SolveTrace& trace, double f_star, const Schedule& schedule,
                                            double tol = 1e-7) {
  const std::vector<double> E = lyapunov_series(trace, f_star, schedule);
  const double nL = static_cast<double>(trace.dimension) * trace.smoothness;
  double worst = std::numeric_limits<double>::infinity();
  std::size_t positive = 0;
  bool implication_ok = true;
  for (std::size_t j = 0; j + 1 < E.size(); ++j) {
    if (E[j] > 0.0) {
      ++positive;
      if (!(trace.records[j].f > 0.25 * f_star)) implication_ok = false;
      continue;
    }
    const double d = schedule.sqrt_a[j + 1] - schedule.sqrt_a[j];
    worst = std::min(worst, E[j + 1] - E[j] + 0.5 * nL * d * d);
  }
  if (!std::isfinite(worst)) worst = 0.0;
  CheckReport r{"lyapunov-increment", "", worst, worst >= -tol && implication_ok, ""};
  r.detail = "positive_rows=" + std::to_string(positive) + (implication_ok ? "" : " early-exit-implication=FAIL");
  return r;
}

/// F(x(t_T)) >= F*/4 - beta and best F >= final F. Pass `f_star_lower` as
/// the (possibly gap-corrected) optimum estimate.
inline CheckReport check_certificate(const SolveTrace& trace, double f_star_lower, double tol = 0.0) {
  const double margin = trace.final_f - (0.25 * f_star_lower - trace.beta);
  const bool best_ok = trace.best_f >= trace.final_f;
  CheckReport r{"quarter-certificate", "", margin, margin >= -tol && best_ok, ""};
  if (!best_ok) r.detail = "best below final";
  return r;
}

/// Start-dependent form:
/// F(x(t_T)) - F(x(0))/4 >= (1 - ||x(0)||_inf) F*/4 - beta.
inline CheckReport check_generalized_start(const SolveTrace& trace, double f_star_lower, double tol = 1e-7) {
  const double lhs = trace.final_f - 0.25 * trace.start_f();
  const double rhs = 0.25 * (1.0 - trace.start_inf_norm()) * f_star_lower - trace.beta;
  return {"generalized-start-certificate", "", lhs - rhs, lhs - rhs >= -tol, ""};
}

// ---------------------------------------------------------------------------
// Vertex enumeration for LMO checks.

inline constexpr std::size_t kMaxVertexDimension = 6;
inline constexpr std::size_t kMaxVertexRows = 8;

namespace detail {

// Solves the square system M y = r by Gaussian elimination with partial
// pivoting; false if singular.
inline bool solve_square(Matrix M, Point r, Point& y) {
  const std::size_t n = r.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t k = c + 1; k < n; ++k)
      if (std::abs(M[k][c]) > std::abs(M[p][c])) p = k;
    if (std::abs(M[p][c]) < 1e-12) return false;
    std::swap(M[p], M[c]);
    std::swap(r[p], r[c]);
    for (std::size_t k = c + 1; k < n; ++k) {
      const double f = M[k][c] / M[c][c];
      if (f == 0.0) continue;
      for (std::size_t j = c; j < n; ++j) M[k][j] -= f * M[c][j];
      r[k] -= f * r[c];
    }
  }
  y.assign(n, 0.0);
  for (std::size_t c = n; c-- > 0;) {
    double s = r[c];
    for (std::size_t j = c + 1; j < n; ++j) s -= M[c][j] * y[j];
    y[c] = s / M[c][c];
  }
  return true;
}

}  // namespace detail

/// All basic feasible points of P ∩ [0,1]^n: every choice of n linearly
/// independent active constraints (region rows plus box faces) whose
/// intersection point is feasible within 1e-9.
inline std::vector<Point> enumerate_vertices(const Region& region) {
  const std::size_t n = region.dimension();
  const Inequalities ineq = region.inequalities();
  if (n > kMaxVertexDimension || ineq.A.size() > kMaxVertexRows)
    throw InvalidArgument("enumerate_vertices: limited to n <= 6 and at most 8 region rows");
  Matrix rows = ineq.A;
  Point rhs = ineq.b;
  for (std::size_t i = 0; i < n; ++i) {
    Point lo(n, 0.0), hi(n, 0.0);
    lo[i] = -1.0;
    hi[i] = 1.0;
    rows.push_back(lo);
    rhs.push_back(0.0);
    rows.push_back(hi);
    rhs.push_back(1.0);
  }
  std::vector<Point> out;
  const std::size_t R = rows.size();
  std::vector<std::size_t> pick(n);
  for (std::size_t i = 0; i < n; ++i) pick[i] = i;
  Point y;
  while (true) {
    Matrix M(n);
    Point r(n);
    for (std::size_t i = 0; i < n; ++i) {
      M[i] = rows[pick[i]];
      r[i] = rhs[pick[i]];
    }
    if (detail::solve_square(M, r, y) && region.residual(y) <= 1e-9) out.push_back(y);
    // next n-combination of R rows
    std::size_t k = n;
    while (k > 0 && pick[k - 1] == R - n + (k - 1)) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t i = k; i < n; ++i) pick[i] = pick[i - 1] + 1;
  }
  return out;
}

/// Compares lmo(g) with the best enumerated vertex; margin is
/// <g, lmo(g)> - max_v <g, v> (should be >= -1e-8) and lmo(g) must be
/// feasible within 1e-9.
inline CheckReport check_lmo(const Region& region, const Point& g, const std::vector<Point>& vertices) {
  const Point v = lmo(region, g);
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& w : vertices) best = std::max(best, dot(g, w));
  const double margin = dot(g, v) - best;
  const double res = region.residual(v);
  CheckReport r{"lmo-optimality", "", margin, margin >= -1e-8 && res <= 1e-9, ""};
  if (res > 1e-9) r.detail = "residual=" + std::to_string(res);
  return r;
}

}  // namespace fwdis

#endif  // FWDIS_ORACLE_HPP
