#ifndef FWDIS_POINT_HPP
#define FWDIS_POINT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fwdis {

/// A point of the unit box [0,1]^n. Iterates, LMO vertices and oracle
/// maximizers all use this representation.
using Point = std::vector<double>;
using Matrix = std::vector<std::vector<double>>;

/// Raised for malformed inputs: dimension mismatches, invalid objectives or
/// regions, violated preconditions.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a region has no point inside the unit box.
class InfeasibleRegion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an objective returns a non-finite value or gradient, or an
/// iterate leaves the feasible region.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require_same_dimension(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw InvalidArgument("dimension mismatch: " + std::to_string(x.size()) + " vs " +
                          std::to_string(y.size()));
  }
}

/// Componentwise maximum x ∨ y.
inline Point join(std::span<const double> x, std::span<const double> y) {
  require_same_dimension(x, y);
  Point out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::max(x[i], y[i]);
  return out;
}

/// Componentwise minimum x ∧ y.
inline Point meet(std::span<const double> x, std::span<const double> y) {
  require_same_dimension(x, y);
  Point out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::min(x[i], y[i]);
  return out;
}

inline double dot(std::span<const double> x, std::span<const double> y) {
  require_same_dimension(x, y);
  return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

inline double inf_norm(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

inline double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

inline double distance(std::span<const double> x, std::span<const double> y) {
  require_same_dimension(x, y);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return std::sqrt(s);
}

/// True iff x <= y componentwise.
inline bool dominated_by(std::span<const double> x, std::span<const double> y) {
  require_same_dimension(x, y);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] > y[i]) return false;
  return true;
}

inline bool all_finite(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

inline std::string to_string(std::span<const double> x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(x[i]);
  }
  return s + ")";
}

}  // namespace fwdis

#endif  // FWDIS_POINT_HPP
