#ifndef FWDIS_TESTS_BRUTE_HPP
#define FWDIS_TESTS_BRUTE_HPP

// Test-only reference computations. Deliberately naive and independent of the
// library code paths they are compared against.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "fwdis/point.hpp"

namespace fwdis::testing {

/// sum_S f(S) prod_{i in S} x_i prod_{i not in S} (1 - x_i), term by term.
inline double naive_multilinear(const std::vector<double>& values, std::size_t n, const Point& x) {
  double total = 0.0;
  for (std::uint32_t S = 0; S < values.size(); ++S) {
    double p = 1.0;
    for (std::size_t i = 0; i < n; ++i) p *= (S >> i) & 1U ? x[i] : 1.0 - x[i];
    total += values[S] * p;
  }
  return total;
}

inline long double naive_harmonic(std::size_t j) {
  long double s = 0.0L;
  for (std::size_t i = 1; i <= j; ++i) s += 1.0L / static_cast<long double>(i);
  return s;
}

inline long double naive_harmonic_sq(std::size_t T) {
  long double s = 0.0L;
  for (std::size_t i = 1; i <= T; ++i) s += 1.0L / (static_cast<long double>(i) * static_cast<long double>(i));
  return s;
}

inline double naive_beta(std::size_t n, double L, std::size_t T) {
  const long double H = naive_harmonic(T);
  return static_cast<double>(static_cast<long double>(n) * L * naive_harmonic_sq(T) / (2.0L * H * H));
}

/// max c'x over {A x <= b, 0 <= x <= 1} by trying every square subsystem of
/// active constraints (Cramer-free: Gauss-Jordan on a copy). nullopt when
/// no feasible vertex exists.
struct BruteLp {
  double value;
  Point x;
};

inline std::optional<BruteLp> brute_lp_max(const Point& c, const Matrix& A, const Point& b) {
  const std::size_t n = c.size();
  Matrix rows = A;
  Point rhs = b;
  for (std::size_t i = 0; i < n; ++i) {
    Point e(n, 0.0);
    e[i] = 1.0;
    rows.push_back(e);
    rhs.push_back(1.0);
    e[i] = -1.0;
    rows.push_back(e);
    rhs.push_back(0.0);
  }
  const std::size_t R = rows.size();
  std::optional<BruteLp> best;
  // iterate over all bitmasks of R rows with exactly n bits
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << R); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != n) continue;
    Matrix M;
    Point r;
    for (std::size_t k = 0; k < R; ++k)
      if ((mask >> k) & 1U) {
        Point row = rows[k];
        row.push_back(rhs[k]);
        M.push_back(row);
      }
    bool ok = true;
    for (std::size_t col = 0; col < n && ok; ++col) {
      std::size_t piv = col;
      for (std::size_t k = col; k < n; ++k)
        if (std::abs(M[k][col]) > std::abs(M[piv][col])) piv = k;
      if (std::abs(M[piv][col]) < 1e-12) {
        ok = false;
        break;
      }
      std::swap(M[piv], M[col]);
      for (std::size_t k = 0; k < n; ++k) {
        if (k == col) continue;
        const double f = M[k][col] / M[col][col];
        for (std::size_t j = 0; j <= n; ++j) M[k][j] -= f * M[col][j];
      }
    }
    if (!ok) continue;
    Point x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = M[i][n] / M[i][i];
    bool feasible = true;
    for (std::size_t k = 0; k < R && feasible; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += rows[k][i] * x[i];
      feasible = s <= rhs[k] + 1e-9;
    }
    if (!feasible) continue;
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) v += c[i] * x[i];
    if (!best || v > best->value) best = BruteLp{v, x};
  }
  return best;
}

}  // namespace fwdis::testing

#endif  // FWDIS_TESTS_BRUTE_HPP
