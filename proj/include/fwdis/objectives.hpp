#ifndef FWDIS_OBJECTIVES_HPP
#define FWDIS_OBJECTIVES_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "fwdis/point.hpp"

namespace fwdis {

/// Value/gradient-evaluable function on [0,1]^n with a smoothness constant.
/// Implementations must be pure: concurrent calls on one object are safe.
template <class O>
concept DrObjective = requires(const O& f, std::span<const double> x) {
  { f.dimension() } -> std::convertible_to<std::size_t>;
  { f.value(x) } -> std::convertible_to<double>;
  { f.gradient(x) } -> std::convertible_to<Point>;
  { f.smoothness() } -> std::convertible_to<double>;
};

/// Whether constructors enforce the DR-submodularity and nonnegativity
/// preconditions. `Skip` exists for the verifier, which must be able to load
/// a broken instance in order to report on it.
enum class Validation { Strict, Skip };

// ---------------------------------------------------------------------------
// Quadratics F(x) = h'x + x'Hx/2 with H symmetric and entrywise <= 0.

struct QuadraticSpec {
  Matrix H;
  Point h;
  std::optional<double> declared_L;  // defaults to the spectral norm of H
};

/// Largest absolute eigenvalue of a symmetric matrix.
inline double spectral_norm(const Matrix& H) {
  const auto n = static_cast<Eigen::Index>(H.size());
  if (n == 0) return 0.0;
  Eigen::MatrixXd M(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) M(i, j) = H[i][j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

class QuadraticObjective {
 public:
  QuadraticObjective(Matrix H, Point h, double L) : H_(std::move(H)), h_(std::move(h)), L_(L) {}

  std::size_t dimension() const { return h_.size(); }
  double smoothness() const { return L_; }
  const Matrix& hessian() const { return H_; }
  const Point& linear() const { return h_; }

  double value(std::span<const double> x) const {
    check(x);
    double v = 0.0;
    for (std::size_t i = 0; i < h_.size(); ++i) {
      double hx = 0.0;
      for (std::size_t j = 0; j < h_.size(); ++j) hx += H_[i][j] * x[j];
      v += x[i] * (h_[i] + 0.5 * hx);
    }
    return v;
  }

  Point gradient(std::span<const double> x) const {
    check(x);
    Point g = h_;
    for (std::size_t i = 0; i < h_.size(); ++i)
      for (std::size_t j = 0; j < h_.size(); ++j) g[i] += H_[i][j] * x[j];
    return g;
  }

 private:
  void check(std::span<const double> x) const {
    if (x.size() != h_.size())
      throw InvalidArgument("quadratic objective: expected dimension " + std::to_string(h_.size()));
  }

  Matrix H_;
  Point h_;
  double L_;
};

namespace detail {

// Odometer over the grid {0, r, 2r, ..., 1}^n; calls visit(point).
template <class Visit>
void for_each_grid_point(std::size_t n, std::size_t steps, Visit&& visit) {
  std::vector<std::size_t> idx(n, 0);
  Point x(n, 0.0);
  const double r = 1.0 / static_cast<double>(steps);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) x[i] = std::min(1.0, static_cast<double>(idx[i]) * r);
    visit(std::as_const(x));
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++idx[k] <= steps) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (n == 0) return;
  }
}

}  // namespace detail

/// Smallest value found on the nonnegativity gate for quadratics: a grid of
/// step 1/4 when it has at most 1e5 points, all corners for n <= 12, and 4096
/// seeded uniform samples otherwise.
inline std::pair<double, Point> quadratic_min_on_gate(const QuadraticObjective& f) {
  const std::size_t n = f.dimension();
  double best = 0.0;
  Point arg(n, 0.0);
  auto visit = [&](const Point& x) {
    const double v = f.value(x);
    if (v < best) {
      best = v;
      arg = x;
    }
  };
  if (std::pow(5.0, static_cast<double>(n)) <= 1e5) detail::for_each_grid_point(n, 4, visit);
  if (n <= 12) detail::for_each_grid_point(n, 1, visit);
  if (n > 12) {
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Point x(n);
    for (int s = 0; s < 4096; ++s) {
      for (auto& xi : x) xi = u(rng);
      visit(x);
    }
  }
  return {best, arg};
}

inline QuadraticObjective quadratic_objective(const QuadraticSpec& spec,
                                              Validation validation = Validation::Strict) {
  const std::size_t n = spec.h.size();
  if (n == 0) throw InvalidArgument("quadratic objective: empty linear term");
  if (spec.H.size() != n) throw InvalidArgument("quadratic objective: H must be n x n");
  for (const auto& row : spec.H)
    if (row.size() != n) throw InvalidArgument("quadratic objective: H must be n x n");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(spec.h[i])) throw InvalidArgument("quadratic objective: non-finite h");
    for (std::size_t j = 0; j < n; ++j)
      if (!std::isfinite(spec.H[i][j])) throw InvalidArgument("quadratic objective: non-finite H");
  }

  const double op_norm = spectral_norm(spec.H);
  double L = spec.declared_L.value_or(op_norm);

  if (validation == Validation::Strict) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (spec.H[i][j] != spec.H[j][i])
          throw InvalidArgument("quadratic objective: H is not symmetric at (" + std::to_string(i) +
                                "," + std::to_string(j) + ")");
        if (spec.H[i][j] > 0.0)
          throw InvalidArgument("quadratic objective: H has a positive entry at (" + std::to_string(i) +
                                "," + std::to_string(j) + "); DR-submodularity needs H <= 0");
      }
    if (spec.declared_L && *spec.declared_L < op_norm * (1.0 - 1e-12))
      throw InvalidArgument("quadratic objective: declared L " + std::to_string(*spec.declared_L) +
                            " is below the operator norm of H " + std::to_string(op_norm));
  }
  QuadraticObjective f(spec.H, spec.h, L);
  if (validation == Validation::Strict) {
    auto [lowest, where] = quadratic_min_on_gate(f);
    if (lowest < -1e-12)
      throw InvalidArgument("quadratic objective: negative value " + std::to_string(lowest) + " at " +
                            to_string(where) + "; the objective must be nonnegative on [0,1]^n");
  }
  return f;
}

// ---------------------------------------------------------------------------
// Multilinear extensions of set functions given by a full table.

inline constexpr std::size_t kMaxTableSize = 20;

/// Set function on {0..n-1}; values[mask] = f(S) with element i in S iff bit
/// i of mask is set.
struct SetFunctionTable {
  std::size_t n = 0;
  std::vector<double> values;

  double operator()(std::uint32_t mask) const { return values[mask]; }
};

struct SubmodularityViolation {
  std::uint32_t set = 0;
  std::uint32_t superset = 0;
  std::size_t element = 0;
  double amount = 0.0;
};

/// Checks f(S+i) - f(S) >= f(T+i) - f(T) for S ⊆ T, i ∉ T. Uses the
/// equivalent local form f(S+i) + f(S+j) >= f(S+i+j) + f(S) (exhaustive) for
/// n <= 12 and `samples` random (S, T, i) triples above.
inline std::optional<SubmodularityViolation> find_submodularity_violation(const SetFunctionTable& t,
                                                                          double tol = 1e-12,
                                                                          std::size_t samples = 20000,
                                                                          std::uint64_t seed = 1) {
  const std::uint32_t full = (std::uint32_t{1} << t.n);
  if (t.n <= 12) {
    for (std::uint32_t S = 0; S < full; ++S)
      for (std::size_t i = 0; i < t.n; ++i) {
        const std::uint32_t bi = std::uint32_t{1} << i;
        if (S & bi) continue;
        for (std::size_t j = i + 1; j < t.n; ++j) {
          const std::uint32_t bj = std::uint32_t{1} << j;
          if (S & bj) continue;
          const double gap = (t(S | bi) - t(S)) - (t(S | bi | bj) - t(S | bj));
          if (gap < -tol) return SubmodularityViolation{S, S | bj, i, -gap};
        }
      }
    return std::nullopt;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> any(0, full - 1);
  std::uniform_int_distribution<std::size_t> elem(0, t.n - 1);
  for (std::size_t s = 0; s < samples; ++s) {
    const std::uint32_t T = any(rng);
    const std::uint32_t S = T & any(rng);
    const std::size_t i = elem(rng);
    const std::uint32_t bi = std::uint32_t{1} << i;
    if (T & bi) continue;
    const double gap = (t(S | bi) - t(S)) - (t(T | bi) - t(T));
    if (gap < -tol) return SubmodularityViolation{S, T, i, -gap};
  }
  return std::nullopt;
}

class MultilinearObjective {
 public:
  MultilinearObjective(SetFunctionTable table, double L) : table_(std::move(table)), L_(L) {}

  std::size_t dimension() const { return table_.n; }
  double smoothness() const { return L_; }
  const SetFunctionTable& table() const { return table_; }

  /// sum_S f(S) prod_{i in S} x_i prod_{i not in S} (1 - x_i), evaluated by
  /// contracting the table one coordinate at a time.
  double value(std::span<const double> x) const {
    check(x);
    std::vector<double> buf(table_.values);
    return contract(buf, x, table_.n);
  }

  /// dF/dx_i = F(x | x_i = 1) - F(x | x_i = 0), contracted over the other
  /// coordinates from the table of marginals f(S+i) - f(S).
  Point gradient(std::span<const double> x) const {
    check(x);
    const std::size_t n = table_.n;
    Point g(n, 0.0);
    if (n == 0) return g;
    const std::uint32_t half = std::uint32_t{1} << (n - 1);
    std::vector<double> marg(half);
    Point rest(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t low = (std::uint32_t{1} << i) - 1;
      for (std::uint32_t m = 0; m < half; ++m) {
        const std::uint32_t without = (m & low) | ((m & ~low) << 1);
        marg[m] = table_.values[without | (std::uint32_t{1} << i)] - table_.values[without];
      }
      for (std::size_t k = 0, r = 0; k < n; ++k)
        if (k != i) rest[r++] = x[k];
      g[i] = contract(marg, rest, n - 1);
    }
    return g;
  }

 private:
  static double contract(std::vector<double>& buf, std::span<const double> x, std::size_t n) {
    std::size_t len = buf.size();
    for (std::size_t i = 0; i < n; ++i) {
      const double xi = x[i];
      len /= 2;
      for (std::size_t k = 0; k < len; ++k) buf[k] = (1.0 - xi) * buf[2 * k] + xi * buf[2 * k + 1];
    }
    return buf[0];
  }

  void check(std::span<const double> x) const {
    if (x.size() != table_.n)
      throw InvalidArgument("multilinear objective: expected dimension " + std::to_string(table_.n));
  }

  SetFunctionTable table_;
  double L_;
};

/// Smoothness bound used for multilinear extensions: n^2 * max_S f(S).
inline double multilinear_smoothness_bound(const SetFunctionTable& t) {
  const double fmax = *std::max_element(t.values.begin(), t.values.end());
  return static_cast<double>(t.n * t.n) * std::max(0.0, fmax);
}

inline MultilinearObjective multilinear_objective(SetFunctionTable table,
                                                  Validation validation = Validation::Strict) {
  if (table.n == 0) throw InvalidArgument("set function table: ground set must be nonempty");
  if (table.n > kMaxTableSize)
    throw InvalidArgument("set function table: n = " + std::to_string(table.n) +
                          " exceeds the enumeration limit of " + std::to_string(kMaxTableSize));
  if (table.values.size() != (std::size_t{1} << table.n))
    throw InvalidArgument("set function table: expected 2^n = " + std::to_string(std::size_t{1} << table.n) +
                          " values, got " + std::to_string(table.values.size()));
  for (double v : table.values)
    if (!std::isfinite(v)) throw InvalidArgument("set function table: non-finite value");
  if (table.values[0] != 0.0) throw InvalidArgument("set function table: f(empty set) must be 0");
  if (validation == Validation::Strict) {
    for (std::size_t m = 0; m < table.values.size(); ++m)
      if (table.values[m] < 0.0)
        throw InvalidArgument("set function table: negative value at mask " + std::to_string(m));
    if (auto v = find_submodularity_violation(table))
      throw InvalidArgument("set function table: not submodular (element " + std::to_string(v->element) +
                            ", sets " + std::to_string(v->set) + " ⊆ " + std::to_string(v->superset) +
                            ", violation " + std::to_string(v->amount) + ")");
  }
  const double L = multilinear_smoothness_bound(table);
  return MultilinearObjective(std::move(table), L);
}

// ---------------------------------------------------------------------------
// Type erasure and smoothness handling.

/// Type-erased objective with shared, immutable state.
class AnyObjective {
 public:
  template <DrObjective O>
    requires(!std::same_as<std::remove_cvref_t<O>, AnyObjective>)
  AnyObjective(O obj)  // NOLINT(google-explicit-constructor)
      : self_(std::make_shared<Model<O>>(std::move(obj))) {}

  std::size_t dimension() const { return self_->dimension(); }
  double value(std::span<const double> x) const { return self_->value(x); }
  Point gradient(std::span<const double> x) const { return self_->gradient(x); }
  double smoothness() const { return self_->smoothness(); }

  template <class O>
  const O* target() const {
    auto* m = dynamic_cast<const Model<O>*>(self_.get());
    return m ? &m->obj : nullptr;
  }

 private:
  struct Concept {
    virtual ~Concept() = default;
    virtual std::size_t dimension() const = 0;
    virtual double value(std::span<const double>) const = 0;
    virtual Point gradient(std::span<const double>) const = 0;
    virtual double smoothness() const = 0;
  };
  template <class O>
  struct Model final : Concept {
    explicit Model(O o) : obj(std::move(o)) {}
    std::size_t dimension() const override { return obj.dimension(); }
    double value(std::span<const double> x) const override { return obj.value(x); }
    Point gradient(std::span<const double> x) const override { return obj.gradient(x); }
    double smoothness() const override { return obj.smoothness(); }
    O obj;
  };

  std::shared_ptr<const Concept> self_;
};

/// Forwards to an objective but reports a different smoothness constant.
template <DrObjective O>
class WithSmoothness {
 public:
  WithSmoothness(O inner, double L) : inner_(std::move(inner)), L_(L) {}
  std::size_t dimension() const { return inner_.dimension(); }
  double value(std::span<const double> x) const { return inner_.value(x); }
  Point gradient(std::span<const double> x) const { return inner_.gradient(x); }
  double smoothness() const { return L_; }

 private:
  O inner_;
  double L_;
};

/// Multiplier applied to a sampled smoothness estimate before it is used in
/// an error certificate; sampling only ever underestimates L.
inline constexpr double kSmoothnessSafetyFactor = 1.5;

/// Largest observed ||grad F(x) - grad F(y)|| / ||x - y|| over `samples`
/// uniform pairs in [0,1]^n. A lower bound on the true constant.
template <DrObjective O>
double estimate_smoothness(const O& f, std::size_t samples, std::uint64_t seed) {
  const std::size_t n = f.dimension();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Point x(n), y(n);
  double best = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    for (auto& v : x) v = u(rng);
    for (auto& v : y) v = u(rng);
    const double d = distance(x, y);
    if (d < 1e-12) continue;
    const Point gx = f.gradient(x);
    const Point gy = f.gradient(y);
    best = std::max(best, distance(gx, gy) / d);
  }
  return best;
}

/// estimate_smoothness inflated by kSmoothnessSafetyFactor.
template <DrObjective O>
double certified_smoothness_estimate(const O& f, std::size_t samples, std::uint64_t seed) {
  return kSmoothnessSafetyFactor * estimate_smoothness(f, samples, seed);
}

}  // namespace fwdis

#endif  // FWDIS_OBJECTIVES_HPP
