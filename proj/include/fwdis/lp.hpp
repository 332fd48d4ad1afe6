#ifndef FWDIS_LP_HPP
#define FWDIS_LP_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "fwdis/point.hpp"

namespace fwdis {

enum class Sense { Maximize, Minimize };
enum class LpStatus { Optimal, Infeasible };

/// optimize c'x  s.t.  A x <= b,  0 <= x <= upper.
/// An empty `upper` means upper bounds of 1 on every variable, so every
/// problem is bounded.
struct LpProblem {
  Sense sense = Sense::Maximize;
  Point c;
  Matrix A;
  Point b;
  Point upper;
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Point x;
  double objective = 0.0;
  std::size_t pivots = 0;
  bool unstable = false;  // some pivot element had magnitude below 1e-10
};

namespace detail {

// Dense tableau for max d'x over {T x = rhs, x >= 0} with an explicit basis.
// Pivoting follows Bland's rule: lowest-index improving column enters, ties in
// the ratio test go to the lowest-index basic variable.
class Tableau {
 public:
  static constexpr double kEps = 1e-11;
  static constexpr double kSmallPivot = 1e-10;

  Tableau(std::size_t rows, std::size_t cols)
      : a_(rows, std::vector<double>(cols, 0.0)), rhs_(rows, 0.0), basis_(rows, 0), cols_(cols) {}

  std::vector<double>& row(std::size_t r) { return a_[r]; }
  double& rhs(std::size_t r) { return rhs_[r]; }
  std::size_t& basis(std::size_t r) { return basis_[r]; }
  std::size_t rows() const { return a_.size(); }
  std::size_t cols() const { return cols_; }
  std::size_t pivots() const { return pivots_; }
  bool unstable() const { return unstable_; }

  /// Installs cost vector c and prices out the current basis.
  void set_costs(const std::vector<double>& c) {
    cost_ = c;
    reduced_ = c;
    value_ = 0.0;
    for (std::size_t r = 0; r < rows(); ++r) {
      const double cb = c[basis_[r]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) reduced_[j] -= cb * a_[r][j];
      value_ += cb * rhs_[r];
    }
  }

  double value() const { return value_; }

  void pivot(std::size_t r, std::size_t col) {
    const double p = a_[r][col];
    if (std::abs(p) < kSmallPivot) unstable_ = true;
    for (auto& v : a_[r]) v /= p;
    rhs_[r] /= p;
    a_[r][col] = 1.0;
    for (std::size_t k = 0; k < rows(); ++k) {
      if (k == r) continue;
      const double f = a_[k][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) a_[k][j] -= f * a_[r][j];
      a_[k][col] = 0.0;
      rhs_[k] -= f * rhs_[r];
      if (rhs_[k] < 0.0 && rhs_[k] > -kEps) rhs_[k] = 0.0;
    }
    const double d = reduced_[col];
    if (d != 0.0) {
      for (std::size_t j = 0; j < cols_; ++j) reduced_[j] -= d * a_[r][j];
      reduced_[col] = 0.0;
      value_ += d * rhs_[r];
    }
    basis_[r] = col;
    ++pivots_;
  }

  /// Runs to optimality over columns [0, allowed_cols).
  void optimize(std::size_t allowed_cols) {
    const std::size_t limit = 100000;
    for (std::size_t it = 0; it < limit; ++it) {
      std::size_t enter = allowed_cols;
      for (std::size_t j = 0; j < allowed_cols; ++j)
        if (reduced_[j] > kEps) {
          enter = j;
          break;
        }
      if (enter == allowed_cols) return;

      std::size_t leave = rows();
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows(); ++r) {
        const double p = a_[r][enter];
        if (p <= kEps) continue;
        const double ratio = rhs_[r] / p;
        if (leave == rows() || ratio < best - kEps ||
            (std::abs(ratio - best) <= kEps && basis_[r] < basis_[leave])) {
          best = ratio;
          leave = r;
        }
      }
      if (leave == rows()) throw NumericalError("simplex: unbounded direction in a bounded problem");
      pivot(leave, enter);
    }
    throw NumericalError("simplex: iteration limit reached");
  }

 private:
  std::vector<std::vector<double>> a_;
  std::vector<double> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<double> cost_, reduced_;
  std::size_t cols_;
  double value_ = 0.0;
  std::size_t pivots_ = 0;
  bool unstable_ = false;
};

}  // namespace detail

/// Two-phase dense simplex with Bland's rule.
inline LpResult solve_lp(const LpProblem& p) {
  const std::size_t n = p.c.size();
  const std::size_t m = p.A.size();
  if (p.b.size() != m) throw InvalidArgument("lp: A and b row counts differ");
  for (const auto& row : p.A)
    if (row.size() != n) throw InvalidArgument("lp: A has wrong column count");
  if (!p.upper.empty() && p.upper.size() != n) throw InvalidArgument("lp: upper has wrong size");

  // Rows: the m general constraints, then one x_i <= u_i row per variable.
  const std::size_t R = m + n;
  std::vector<double> rhs(R);
  for (std::size_t r = 0; r < m; ++r) rhs[r] = p.b[r];
  for (std::size_t i = 0; i < n; ++i) {
    const double u = p.upper.empty() ? 1.0 : p.upper[i];
    if (u < 0.0) return {};  // empty box
    rhs[m + i] = u;
  }
  std::size_t n_art = 0;
  for (double v : rhs)
    if (v < 0.0) ++n_art;

  // Columns: structural [0,n), slacks [n, n+R), artificials after.
  const std::size_t real_cols = n + R;
  detail::Tableau tab(R, real_cols + n_art);
  std::size_t next_art = real_cols;
  for (std::size_t r = 0; r < R; ++r) {
    auto& row = tab.row(r);
    if (r < m)
      for (std::size_t j = 0; j < n; ++j) row[j] = p.A[r][j];
    else
      row[r - m] = 1.0;
    row[n + r] = 1.0;
    tab.rhs(r) = rhs[r];
    if (rhs[r] < 0.0) {
      for (auto& v : row) v = -v;
      tab.rhs(r) = -rhs[r];
      row[next_art] = 1.0;
      tab.basis(r) = next_art++;
    } else {
      tab.basis(r) = n + r;
    }
  }

  if (n_art > 0) {
    std::vector<double> phase1(tab.cols(), 0.0);
    for (std::size_t j = real_cols; j < tab.cols(); ++j) phase1[j] = -1.0;
    tab.set_costs(phase1);
    tab.optimize(tab.cols());
    if (tab.value() < -1e-9) {
      LpResult res;
      res.status = LpStatus::Infeasible;
      res.pivots = tab.pivots();
      res.unstable = tab.unstable();
      return res;
    }
    // Drive zero-valued artificials out of the basis where possible.
    for (std::size_t r = 0; r < R; ++r) {
      if (tab.basis(r) < real_cols) continue;
      for (std::size_t j = 0; j < real_cols; ++j)
        if (std::abs(tab.row(r)[j]) > 1e-9) {
          tab.pivot(r, j);
          break;
        }
    }
  }

  std::vector<double> cost(tab.cols(), 0.0);
  const double sign = p.sense == Sense::Maximize ? 1.0 : -1.0;
  for (std::size_t j = 0; j < n; ++j) cost[j] = sign * p.c[j];
  tab.set_costs(cost);
  tab.optimize(real_cols);

  LpResult res;
  res.status = LpStatus::Optimal;
  res.x.assign(n, 0.0);
  for (std::size_t r = 0; r < R; ++r)
    if (tab.basis(r) < n) res.x[tab.basis(r)] = tab.rhs(r);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = p.upper.empty() ? 1.0 : p.upper[i];
    // Clean round-off at the bounds.
    if (std::abs(res.x[i]) < 1e-13) res.x[i] = 0.0;
    if (std::abs(res.x[i] - u) < 1e-13) res.x[i] = u;
  }
  res.objective = dot(p.c, res.x);
  res.pivots = tab.pivots();
  res.unstable = tab.unstable();
  return res;
}

}  // namespace fwdis

#endif  // FWDIS_LP_HPP
