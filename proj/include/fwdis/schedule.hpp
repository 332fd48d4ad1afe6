#ifndef FWDIS_SCHEDULE_HPP
#define FWDIS_SCHEDULE_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "fwdis/point.hpp"

namespace fwdis {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Final time of the grid, 1/(1 - ln 2) - 1.
inline double final_time() { return 1.0 / (1.0 - std::log(2.0)) - 1.0; }

/// Time grid and step coefficients of the discretized Frank-Wolfe scheme for
/// a fixed iteration count T. Immutable once built.
///
/// Indexing: harmonic, times and sqrt_a have T+1 entries (j = 0..T);
/// step_coeffs has T entries, step_coeffs[j] weighting x(t_j) in the update
/// that produces x(t_{j+1}).
struct Schedule {
  std::size_t iterations = 0;
  std::vector<double> harmonic;     // H_0 = 0, H_j = sum_{i<=j} 1/i
  double harmonic_sq = 0.0;         // H_{2,T} = sum_{i<=T} 1/i^2
  std::vector<double> times;        // t_j
  std::vector<double> sqrt_a;       // 1 + H_j / H_T
  std::vector<double> step_coeffs;  // (H_T + H_j) / (H_T + H_{j+1})

  double harmonic_total() const { return harmonic.back(); }
  double a(std::size_t j) const { return sqrt_a[j] * sqrt_a[j]; }

  /// exp(-1/(1+t_j) + 1/(1+t_{j+1})); equal to step_coeffs[j] up to round-off.
  double exponential_step_coeff(std::size_t j) const {
    return std::exp(-1.0 / (1.0 + times[j]) + 1.0 / (1.0 + times[j + 1]));
  }
};

inline Schedule build_schedule(std::size_t T) {
  if (T == 0) throw InvalidArgument("schedule needs at least one iteration (T >= 1)");

  Schedule s;
  s.iterations = T;
  s.harmonic.resize(T + 1);
  s.harmonic[0] = 0.0;
  CompensatedSum h, h2;
  for (std::size_t i = 1; i <= T; ++i) {
    const double inv = 1.0 / static_cast<double>(i);
    h.add(inv);
    h2.add(inv * inv);
    s.harmonic[i] = h.value();
  }
  s.harmonic_sq = h2.value();

  const double HT = s.harmonic[T];
  s.times.resize(T + 1);
  s.sqrt_a.resize(T + 1);
  for (std::size_t j = 0; j <= T; ++j) {
    const double ratio = s.harmonic[j] / HT;
    s.sqrt_a[j] = 1.0 + ratio;
    s.times[j] = 1.0 / (1.0 - std::log1p(ratio)) - 1.0;
  }
  s.step_coeffs.resize(T);
  for (std::size_t j = 0; j < T; ++j)
    s.step_coeffs[j] = (HT + s.harmonic[j]) / (HT + s.harmonic[j + 1]);
  return s;
}

namespace detail {
inline double beta_from_sums(std::size_t n, double L, double HT, double H2T) {
  return static_cast<double>(n) * L * H2T / (2.0 * HT * HT);
}
inline void check_beta_args(std::size_t n, double L) {
  if (n == 0) throw InvalidArgument("dimension must be positive");
  if (!(L >= 0.0) || !std::isfinite(L)) throw InvalidArgument("smoothness constant must be finite and >= 0");
}
}  // namespace detail

/// Additive error of the 1/4 guarantee after T iterations:
/// beta = n L H_{2,T} / (2 H_T^2).
inline double beta_bound(std::size_t n, double L, std::size_t T) {
  detail::check_beta_args(n, L);
  if (T == 0) throw InvalidArgument("T must be >= 1");
  CompensatedSum h, h2;
  for (std::size_t i = 1; i <= T; ++i) {
    const double inv = 1.0 / static_cast<double>(i);
    h.add(inv);
    h2.add(inv * inv);
  }
  return detail::beta_from_sums(n, L, h.value(), h2.value());
}

inline double beta_bound(std::size_t n, double L, const Schedule& s) {
  detail::check_beta_args(n, L);
  return detail::beta_from_sums(n, L, s.harmonic_total(), s.harmonic_sq);
}

struct IterationChoice {
  std::size_t iterations = 0;
  double beta = 0.0;
  bool reached = false;  // false: cap hit before beta <= eps
};

/// Smallest T <= cap with beta_bound(n, L, T) <= eps. When no such T exists,
/// returns cap with reached == false; the required T grows like
/// exp(sqrt(nL/eps)) and can be far beyond any practical cap.
inline IterationChoice iterations_for_epsilon(std::size_t n, double L, double eps, std::size_t cap) {
  detail::check_beta_args(n, L);
  if (!(eps > 0.0)) throw InvalidArgument("epsilon must be positive");
  if (cap == 0) throw InvalidArgument("cap must be >= 1");
  CompensatedSum h, h2;
  double beta = 0.0;
  for (std::size_t T = 1; T <= cap; ++T) {
    const double inv = 1.0 / static_cast<double>(T);
    h.add(inv);
    h2.add(inv * inv);
    beta = detail::beta_from_sums(n, L, h.value(), h2.value());
    if (beta <= eps) return {T, beta, true};
  }
  return {cap, beta, false};
}

}  // namespace fwdis

#endif  // FWDIS_SCHEDULE_HPP
