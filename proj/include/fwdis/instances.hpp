#ifndef FWDIS_INSTANCES_HPP
#define FWDIS_INSTANCES_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fwdis/objectives.hpp"
#include "fwdis/regions.hpp"

namespace fwdis {

// Seeded generators for test and benchmark instances.

/// Cut function of an undirected weighted graph on n nodes:
/// f(S) = total weight of edges with exactly one endpoint in S.
struct Edge {
  std::size_t u, v;
  double w = 1.0;
};

inline SetFunctionTable cut_table(std::size_t n, const std::vector<Edge>& edges) {
  if (n == 0 || n > kMaxTableSize) throw InvalidArgument("cut_table: n out of range");
  SetFunctionTable t{n, std::vector<double>(std::size_t{1} << n, 0.0)};
  for (std::size_t m = 0; m < t.values.size(); ++m)
    for (const auto& e : edges)
      if (((m >> e.u) & 1U) != ((m >> e.v) & 1U)) t.values[m] += e.w;
  return t;
}

/// The single-edge cut on two nodes: F(x) = x1 (1 - x2) + x2 (1 - x1).
inline SetFunctionTable two_node_cut() { return cut_table(2, {{0, 1, 1.0}}); }

/// Random weighted cut function on n nodes, each pair joined with
/// probability `density`.
inline SetFunctionTable random_cut_table(std::size_t n, double density, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (u(rng) < density) edges.push_back({a, b, 0.1 + u(rng)});
  return cut_table(n, edges);
}

/// Random DR quadratic: H symmetric with entries in [-1, 0] (diagonal
/// included), h_i = s_i * sum_j |H_ij| with s_i in [1/2, 1]. Then
/// F(x) = sum_i x_i (h_i + (Hx)_i / 2) >= 0 on the box, while the gradient
/// h + Hx changes sign, so F is non-monotone.
inline QuadraticSpec random_dr_quadratic(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  QuadraticSpec spec;
  spec.H.assign(n, Point(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) spec.H[i][j] = spec.H[j][i] = -u(rng);
  spec.h.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (double v : spec.H[i]) row -= v;
    spec.h[i] = row * (0.5 + 0.5 * u(rng));
  }
  return spec;
}

enum class RegionFamily { Box, Cardinality, Knapsack, Halfspaces3 };

inline std::string to_string(RegionFamily f) {
  switch (f) {
    case RegionFamily::Box: return "box";
    case RegionFamily::Cardinality: return "cardinality";
    case RegionFamily::Knapsack: return "knapsack";
    case RegionFamily::Halfspaces3: return "halfspaces3";
  }
  return "?";
}

/// Random region containing the origin. Halfspace rows have entries in
/// [-1, 1] and right-hand sides in [0.3, 1], so they are generally not
/// down-closed.
inline Region random_region(RegionFamily family, std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  switch (family) {
    case RegionFamily::Box:
      return Region::box(n);
    case RegionFamily::Cardinality:
      return Region::cardinality(n, 0.5 + u(rng) * (static_cast<double>(n) - 1.0));
    case RegionFamily::Knapsack: {
      Point w(n);
      double total = 0.0;
      for (auto& v : w) total += (v = 0.2 + 0.8 * u(rng));
      return Region::knapsack(std::move(w), total * (0.3 + 0.4 * u(rng)));
    }
    case RegionFamily::Halfspaces3: {
      Matrix A(3, Point(n));
      Point b(3);
      for (std::size_t r = 0; r < 3; ++r) {
        for (auto& v : A[r]) v = 2.0 * u(rng) - 1.0;
        b[r] = 0.3 + 0.7 * u(rng);
      }
      return Region::halfspaces(std::move(A), std::move(b));
    }
  }
  throw InvalidArgument("random_region: unknown family");
}

/// {x in [0,1]^n : x_1 + ... + x_n >= 1}; excludes the origin.
inline Region covering_region(std::size_t n) {
  return Region::halfspaces({Point(n, -1.0)}, {-1.0});
}

}  // namespace fwdis

#endif  // FWDIS_INSTANCES_HPP
