#ifndef FWDIS_SOLVER_HPP
#define FWDIS_SOLVER_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fwdis/objectives.hpp"
#include "fwdis/point.hpp"
#include "fwdis/regions.hpp"
#include "fwdis/schedule.hpp"

namespace fwdis {

enum class StartMode { Origin, MinInfNorm };

inline std::string to_string(StartMode m) { return m == StartMode::Origin ? "origin" : "mininf"; }

struct SolveConfig {
  std::size_t iterations = 1;
  StartMode start = StartMode::Origin;
  /// Records E(t_j) = a_j F(x_j) - sqrt(a_j) F*; needs f_star.
  bool record_lyapunov = false;
  std::optional<double> f_star;
  /// Keeps every iterate x(t_0)..x(t_T) in the trace (needed by check_lemma2).
  bool store_iterates = false;
  /// Feasibility is checked every `feasibility_stride` iterations and at the
  /// last one; 0 selects ceil(T/100).
  std::size_t feasibility_stride = 1;
  double feasibility_tol = 1e-9;
};

inline constexpr double kNotRecorded = std::numeric_limits<double>::quiet_NaN();

/// One row per iterate x(t_j), j = 0..T. Fields that do not apply to a row
/// (the step coefficient of the last row, a disabled Lyapunov value, an
/// unchecked residual) hold NaN.
struct IterationRecord {
  std::size_t j = 0;
  double t = 0.0;
  double sqrt_a = 0.0;
  double step_coeff = kNotRecorded;
  double f = 0.0;
  double best_f = 0.0;
  double lyapunov = kNotRecorded;
  double residual = kNotRecorded;
  double x_inf_norm = 0.0;
};

struct SolveTrace {
  std::string method;
  std::size_t dimension = 0;
  std::size_t iterations = 0;
  StartMode start_mode = StartMode::Origin;
  std::vector<IterationRecord> records;
  std::vector<Point> iterates;  // empty unless SolveConfig::store_iterates
  Point start;
  Point best_point;
  Point final_point;
  std::size_t best_index = 0;
  double best_f = 0.0;
  double final_f = 0.0;
  double smoothness = 0.0;
  double beta = kNotRecorded;  // additive error of the 1/4 certificate

  double start_f() const { return records.front().f; }
  double start_inf_norm() const { return records.front().x_inf_norm; }
  double max_residual() const {
    double r = 0.0;
    for (const auto& rec : records)
      if (!std::isnan(rec.residual)) r = std::max(r, rec.residual);
    return r;
  }
};

namespace detail {

template <DrObjective O>
double checked_value(const O& f, const Point& x, std::size_t j) {
  const double v = f.value(x);
  if (!std::isfinite(v))
    throw NumericalError("objective returned non-finite value " + std::to_string(v) + " at iterate j=" +
                         std::to_string(j) + " x=" + to_string(x));
  return v;
}

template <DrObjective O>
Point checked_gradient(const O& f, const Point& x, std::size_t j) {
  Point g = f.gradient(x);
  if (g.size() != x.size() || !all_finite(g))
    throw NumericalError("objective returned a non-finite gradient at iterate j=" + std::to_string(j) +
                         " x=" + to_string(x));
  return g;
}

template <DrObjective O>
Point initial_point(const O& f, const Region& region, StartMode mode, double tol) {
  if (f.dimension() != region.dimension())
    throw InvalidArgument("objective dimension " + std::to_string(f.dimension()) + " != region dimension " +
                          std::to_string(region.dimension()));
  if (mode == StartMode::Origin) {
    if (!region.contains_origin(tol))
      throw InvalidArgument("origin start requires 0 in the region; use the min-inf-norm start");
    return Point(region.dimension(), 0.0);
  }
  return min_inf_norm_point(region);
}

inline std::size_t stride_for(std::size_t requested, std::size_t T) {
  return requested != 0 ? requested : std::max<std::size_t>(1, (T + 99) / 100);
}

// Shared bookkeeping for both solvers.
class TraceBuilder {
 public:
  TraceBuilder(SolveTrace& trace, const Region& region, const SolveConfig& cfg)
      : trace_(trace), region_(region), cfg_(cfg), stride_(stride_for(cfg.feasibility_stride, cfg.iterations)) {}

  void record(std::size_t j, const Point& x, double f, double t, double sqrt_a, double coeff, bool last) {
    IterationRecord rec;
    rec.j = j;
    rec.t = t;
    rec.sqrt_a = sqrt_a;
    rec.step_coeff = coeff;
    rec.f = f;
    rec.x_inf_norm = inf_norm(x);
    if (j == 0 || f > trace_.best_f) {
      trace_.best_f = f;
      trace_.best_index = j;
      trace_.best_point = x;
    }
    rec.best_f = trace_.best_f;
    if (cfg_.record_lyapunov) rec.lyapunov = sqrt_a * sqrt_a * f - sqrt_a * *cfg_.f_star;
    if (j % stride_ == 0 || last) {
      rec.residual = region_.residual(x);
      if (rec.residual > cfg_.feasibility_tol)
        throw NumericalError("iterate j=" + std::to_string(j) + " left the region (residual " +
                             std::to_string(rec.residual) + ") x=" + to_string(x));
    }
    if (cfg_.store_iterates) trace_.iterates.push_back(x);
    trace_.records.push_back(rec);
  }

 private:
  SolveTrace& trace_;
  const Region& region_;
  const SolveConfig& cfg_;
  std::size_t stride_;
};

}  // namespace detail

/// Discretized Frank-Wolfe for non-monotone DR-submodular maximization over a
/// general convex region: T linear-maximization steps, each moving x toward
/// the LMO vertex with weight 1 - step_coeffs[j]. The trace carries both the
/// best iterate and the final one; the 1/4 certificate applies to the final
/// iterate.
template <DrObjective O>
SolveTrace fw_dis(const O& f, const Region& region, const SolveConfig& cfg, const Schedule& schedule) {
  if (cfg.iterations == 0) throw InvalidArgument("iterations must be >= 1");
  if (schedule.iterations != cfg.iterations) throw InvalidArgument("schedule built for a different T");
  if (cfg.record_lyapunov && !cfg.f_star) throw InvalidArgument("Lyapunov recording needs f_star");

  const std::size_t T = cfg.iterations;
  SolveTrace trace;
  trace.method = "fw-dis";
  trace.dimension = f.dimension();
  trace.iterations = T;
  trace.start_mode = cfg.start;
  trace.smoothness = f.smoothness();
  trace.beta = beta_bound(f.dimension(), f.smoothness(), schedule);
  trace.records.reserve(T + 1);
  if (cfg.store_iterates) trace.iterates.reserve(T + 1);

  Point x = detail::initial_point(f, region, cfg.start, cfg.feasibility_tol);
  trace.start = x;
  detail::TraceBuilder out(trace, region, cfg);

  double fx = detail::checked_value(f, x, 0);
  for (std::size_t j = 0; j < T; ++j) {
    out.record(j, x, fx, schedule.times[j], schedule.sqrt_a[j], schedule.step_coeffs[j], false);
    const Point g = detail::checked_gradient(f, x, j);
    const Point v = lmo(region, g);
    const double c = schedule.step_coeffs[j];
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = c * x[i] + (1.0 - c) * v[i];
    fx = detail::checked_value(f, x, j + 1);
  }
  out.record(T, x, fx, schedule.times[T], schedule.sqrt_a[T], kNotRecorded, true);

  trace.final_point = x;
  trace.final_f = fx;
  return trace;
}

template <DrObjective O>
SolveTrace fw_dis(const O& f, const Region& region, const SolveConfig& cfg) {
  return fw_dis(f, region, cfg, build_schedule(cfg.iterations));
}

/// Classic Frank-Wolfe ascent with the uniform step 1/T:
/// x <- x + (v - x) / T. Same trace layout, no certificate (beta is NaN,
/// sqrt_a is NaN, t_j = j/T).
template <DrObjective O>
SolveTrace classic_fw_baseline(const O& f, const Region& region, const SolveConfig& cfg) {
  if (cfg.iterations == 0) throw InvalidArgument("iterations must be >= 1");
  const std::size_t T = cfg.iterations;
  SolveConfig plain = cfg;
  plain.record_lyapunov = false;

  SolveTrace trace;
  trace.method = "classic-fw";
  trace.dimension = f.dimension();
  trace.iterations = T;
  trace.start_mode = cfg.start;
  trace.smoothness = f.smoothness();
  trace.records.reserve(T + 1);

  Point x = detail::initial_point(f, region, cfg.start, cfg.feasibility_tol);
  trace.start = x;
  detail::TraceBuilder out(trace, region, plain);

  const double gamma = 1.0 / static_cast<double>(T);
  const double Td = static_cast<double>(T);
  double fx = detail::checked_value(f, x, 0);
  for (std::size_t j = 0; j < T; ++j) {
    out.record(j, x, fx, static_cast<double>(j) / Td, kNotRecorded, 1.0 - gamma, false);
    const Point g = detail::checked_gradient(f, x, j);
    const Point v = lmo(region, g);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = (1.0 - gamma) * x[i] + gamma * v[i];
    fx = detail::checked_value(f, x, j + 1);
  }
  out.record(T, x, fx, 1.0, kNotRecorded, kNotRecorded, true);

  trace.final_point = x;
  trace.final_f = fx;
  return trace;
}

template <DrObjective O>
SolveTrace classic_fw_baseline(const O& f, const Region& region, std::size_t T) {
  SolveConfig cfg;
  cfg.iterations = T;
  return classic_fw_baseline(f, region, cfg);
}

/// E(t_j) = a_j F(x(t_j)) - sqrt(a_j) f_star for every recorded iterate.
inline std::vector<double> lyapunov_series(const SolveTrace& trace, double f_star, const Schedule& schedule) {
  if (trace.records.size() != schedule.iterations + 1)
    throw InvalidArgument("lyapunov_series: trace and schedule lengths differ");
  std::vector<double> E(trace.records.size());
  for (std::size_t j = 0; j < E.size(); ++j)
    E[j] = schedule.a(j) * trace.records[j].f - schedule.sqrt_a[j] * f_star;
  return E;
}

}  // namespace fwdis

#endif  // FWDIS_SOLVER_HPP
