#ifndef FWDIS_REGIONS_HPP
#define FWDIS_REGIONS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fwdis/lp.hpp"
#include "fwdis/point.hpp"

namespace fwdis {

struct BoxKind {};
struct CardinalityKind {
  double k = 0.0;  // sum_i x_i <= k
};
struct KnapsackKind {
  Point w;  // w >= 0, w'x <= b
  double b = 0.0;
};
struct HalfspacesKind {
  Matrix A;  // A x <= b
  Point b;
};

/// A linear inequality system A x <= b, not including the box bounds.
struct Inequalities {
  Matrix A;
  Point b;
};

/// Convex feasible set P, always intersected with [0,1]^n. Construction
/// validates that the intersection is nonempty.
class Region {
 public:
  using Kind = std::variant<BoxKind, CardinalityKind, KnapsackKind, HalfspacesKind>;

  static Region box(std::size_t n) { return Region(n, BoxKind{}); }

  static Region cardinality(std::size_t n, double k) {
    if (!std::isfinite(k)) throw InvalidArgument("cardinality budget must be finite");
    return Region(n, CardinalityKind{k});
  }

  static Region knapsack(Point w, double b) {
    if (w.empty()) throw InvalidArgument("knapsack weights must be nonempty");
    for (double v : w)
      if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("knapsack weights must be finite and >= 0");
    if (!std::isfinite(b)) throw InvalidArgument("knapsack capacity must be finite");
    const std::size_t n = w.size();
    return Region(n, KnapsackKind{std::move(w), b});
  }

  static Region halfspaces(Matrix A, Point b) {
    if (A.empty()) throw InvalidArgument("halfspace region needs at least one row");
    if (A.size() != b.size()) throw InvalidArgument("halfspace region: A and b row counts differ");
    const std::size_t n = A.front().size();
    if (n == 0) throw InvalidArgument("halfspace region: zero columns");
    for (const auto& row : A) {
      if (row.size() != n) throw InvalidArgument("halfspace region: ragged A");
      if (!all_finite(row)) throw InvalidArgument("halfspace region: non-finite A");
    }
    if (!all_finite(b)) throw InvalidArgument("halfspace region: non-finite b");
    return Region(n, HalfspacesKind{std::move(A), std::move(b)});
  }

  std::size_t dimension() const { return n_; }
  const Kind& kind() const { return kind_; }

  std::string kind_name() const {
    return std::visit(
        [](const auto& k) -> std::string {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, BoxKind>) return "box";
          else if constexpr (std::is_same_v<K, CardinalityKind>) return "cardinality";
          else if constexpr (std::is_same_v<K, KnapsackKind>) return "knapsack";
          else return "halfspaces";
        },
        kind_);
  }

  /// The defining inequalities, without the box bounds.
  Inequalities inequalities() const {
    return std::visit(
        [this](const auto& k) -> Inequalities {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, BoxKind>) return {};
          else if constexpr (std::is_same_v<K, CardinalityKind>) return {{Point(n_, 1.0)}, {k.k}};
          else if constexpr (std::is_same_v<K, KnapsackKind>) return {{k.w}, {k.b}};
          else return {k.A, k.b};
        },
        kind_);
  }

  /// Largest violation of the box bounds and defining inequalities at x; 0
  /// when x is feasible.
  double residual(std::span<const double> x) const {
    if (x.size() != n_) throw InvalidArgument("region: dimension mismatch");
    double r = 0.0;
    for (double v : x) r = std::max({r, -v, v - 1.0});
    std::visit(
        [&](const auto& k) {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, CardinalityKind>) {
            r = std::max(r, std::accumulate(x.begin(), x.end(), 0.0) - k.k);
          } else if constexpr (std::is_same_v<K, KnapsackKind>) {
            r = std::max(r, dot(k.w, x) - k.b);
          } else if constexpr (std::is_same_v<K, HalfspacesKind>) {
            for (std::size_t i = 0; i < k.A.size(); ++i) r = std::max(r, dot(k.A[i], x) - k.b[i]);
          }
        },
        kind_);
    return r;
  }

  bool contains_origin(double tol = 0.0) const { return residual(Point(n_, 0.0)) <= tol; }

 private:
  Region(std::size_t n, Kind kind) : n_(n), kind_(std::move(kind)) {
    if (n_ == 0) throw InvalidArgument("region dimension must be positive");
    const Inequalities ineq = inequalities();
    if (ineq.A.empty()) return;
    LpProblem feas{Sense::Maximize, Point(n_, 0.0), ineq.A, ineq.b, {}};
    if (solve_lp(feas).status == LpStatus::Infeasible)
      throw InfeasibleRegion(kind_name() + " region has no point in [0,1]^" + std::to_string(n_));
  }

  std::size_t n_;
  Kind kind_;
};

/// True iff every defining inequality and box bound holds within tol.
inline bool contains(const Region& region, std::span<const double> x, double tol) {
  return region.residual(x) <= tol;
}

namespace detail {

// Indices sorted by key descending, ties by lower index.
inline std::vector<std::size_t> order_desc(const std::vector<double>& key) {
  std::vector<std::size_t> idx(key.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });
  return idx;
}

}  // namespace detail

/// A vertex of P maximizing <g, v>. Box, cardinality and knapsack regions use
/// greedy closed forms; halfspace regions go through the simplex solver.
/// Coordinates with zero gradient stay at 0 in the closed forms.
inline Point lmo(const Region& region, std::span<const double> g) {
  const std::size_t n = region.dimension();
  if (g.size() != n) throw InvalidArgument("lmo: gradient dimension mismatch");
  if (!all_finite(g)) throw NumericalError("lmo: non-finite gradient " + to_string(g));

  return std::visit(
      [&](const auto& k) -> Point {
        using K = std::decay_t<decltype(k)>;
        Point v(n, 0.0);
        if constexpr (std::is_same_v<K, BoxKind>) {
          for (std::size_t i = 0; i < n; ++i) v[i] = g[i] > 0.0 ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<K, CardinalityKind>) {
          double budget = k.k;
          for (std::size_t i : detail::order_desc(Point(g.begin(), g.end()))) {
            if (g[i] <= 0.0 || budget <= 0.0) break;
            v[i] = std::min(1.0, budget);
            budget -= v[i];
          }
        } else if constexpr (std::is_same_v<K, KnapsackKind>) {
          double budget = k.b;
          Point ratio(n, -1.0);
          for (std::size_t i = 0; i < n; ++i) {
            if (g[i] <= 0.0) continue;
            if (k.w[i] == 0.0)
              v[i] = 1.0;
            else
              ratio[i] = g[i] / k.w[i];
          }
          for (std::size_t i : detail::order_desc(ratio)) {
            if (ratio[i] <= 0.0 || budget <= 0.0) break;
            v[i] = std::min(1.0, budget / k.w[i]);
            budget -= v[i] * k.w[i];
          }
        } else {
          LpProblem lp{Sense::Maximize, Point(g.begin(), g.end()), k.A, k.b, {}};
          const LpResult res = solve_lp(lp);
          if (res.status != LpStatus::Optimal) throw InfeasibleRegion("lmo: halfspace region is infeasible");
          v = res.x;
        }
        return v;
      },
      region.kind());
}

/// A feasible point minimizing max_i x_i, from the LP
/// min s  s.t.  x in P,  x_i <= s,  0 <= x, s <= 1.
inline Point min_inf_norm_point(const Region& region) {
  const std::size_t n = region.dimension();
  if (region.contains_origin()) return Point(n, 0.0);

  const Inequalities ineq = region.inequalities();
  LpProblem lp;
  lp.sense = Sense::Minimize;
  lp.c.assign(n + 1, 0.0);
  lp.c[n] = 1.0;
  for (std::size_t r = 0; r < ineq.A.size(); ++r) {
    Point row = ineq.A[r];
    row.push_back(0.0);
    lp.A.push_back(std::move(row));
    lp.b.push_back(ineq.b[r]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    Point row(n + 1, 0.0);
    row[i] = 1.0;
    row[n] = -1.0;
    lp.A.push_back(std::move(row));
    lp.b.push_back(0.0);
  }
  const LpResult res = solve_lp(lp);
  if (res.status != LpStatus::Optimal) throw InfeasibleRegion("min_inf_norm_point: region is infeasible");
  return Point(res.x.begin(), res.x.begin() + static_cast<std::ptrdiff_t>(n));
}

}  // namespace fwdis

#endif  // FWDIS_REGIONS_HPP
