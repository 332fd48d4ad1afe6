#include <random>

#include <gtest/gtest.h>

#include "fwdis/instances.hpp"
#include "fwdis/oracle.hpp"
#include "fwdis/regions.hpp"

namespace fwdis {
namespace {

TEST(Lmo, BoxTakesPositiveCoordinates) {
  EXPECT_EQ(lmo(Region::box(3), Point{0.3, -0.2, 0.0}), (Point{1.0, 0.0, 0.0}));
}

TEST(Lmo, CardinalityTopK) {
  EXPECT_EQ(lmo(Region::cardinality(3, 1.0), Point{0.5, 0.9, 0.1}), (Point{0.0, 1.0, 0.0}));
  // fractional budget fills the runner-up partially; ties keep the lower index
  EXPECT_EQ(lmo(Region::cardinality(3, 1.5), Point{0.5, 0.9, 0.5}), (Point{0.5, 1.0, 0.0}));
  EXPECT_EQ(lmo(Region::cardinality(3, 2.0), Point{-1.0, 0.0, 0.2}), (Point{0.0, 0.0, 1.0}));
}

TEST(Lmo, KnapsackFractionalGreedy) {
  const Region r = Region::knapsack({1.0, 2.0}, 2.0);
  const Point v = lmo(r, Point{1.0, 1.0});
  EXPECT_EQ(v, (Point{1.0, 0.5}));
  EXPECT_DOUBLE_EQ(dot(Point{1.0, 1.0}, v), 1.5);
  // every vertex of {x1 + 2 x2 <= 2} ∩ [0,1]^2: (0,0) (1,0) (0,1) (1,0.5)
  double best = 0.0;
  for (const auto& w : enumerate_vertices(r)) best = std::max(best, dot(Point{1.0, 1.0}, w));
  EXPECT_DOUBLE_EQ(best, 1.5);
}

TEST(Lmo, KnapsackZeroWeightItemsAreFree) {
  EXPECT_EQ(lmo(Region::knapsack({0.0, 1.0}, 0.5), Point{0.1, 1.0}), (Point{1.0, 0.5}));
}

TEST(Lmo, HalfspacesUseSimplex) {
  const Region r = Region::halfspaces({{1.0, 2.0}}, {2.0});
  const Point v = lmo(r, Point{2.0, 1.0});
  EXPECT_NEAR(v[0], 1.0, 1e-12);
  EXPECT_NEAR(v[1], 0.5, 1e-12);
}

TEST(Lmo, RejectsBadGradients) {
  EXPECT_THROW(lmo(Region::box(2), Point{1.0}), InvalidArgument);
  EXPECT_THROW(lmo(Region::box(2), Point{1.0, std::nan("")}), NumericalError);
}

TEST(Contains, Examples) {
  EXPECT_TRUE(contains(Region::box(2), Point{0.5, 0.5}, 0.0));
  EXPECT_FALSE(contains(Region::cardinality(2, 1.0), Point{0.7, 0.7}, 1e-9));
  EXPECT_TRUE(contains(Region::knapsack({1.0, 2.0}, 2.0), Point{1.0, 0.5}, 1e-9));
  EXPECT_FALSE(contains(Region::box(2), Point{1.1, 0.5}, 1e-9));
  EXPECT_FALSE(contains(Region::box(2), Point{-0.1, 0.5}, 1e-9));
}

TEST(Region, ConstructionValidates) {
  EXPECT_THROW(Region::box(0), InvalidArgument);
  EXPECT_THROW(Region::cardinality(2, -1.0), InfeasibleRegion);
  EXPECT_THROW(Region::knapsack({1.0, -1.0}, 1.0), InvalidArgument);
  EXPECT_THROW(Region::halfspaces({{-1.0, -1.0}}, {-3.0}), InfeasibleRegion);
  EXPECT_THROW(Region::halfspaces({{1.0, 1.0}}, {1.0, 2.0}), InvalidArgument);
  EXPECT_FALSE(covering_region(3).contains_origin());
  EXPECT_TRUE(Region::knapsack({1.0, 1.0}, 0.5).contains_origin());
}

TEST(MinInfNorm, OriginWhenFeasible) {
  EXPECT_EQ(min_inf_norm_point(Region::box(3)), (Point{0.0, 0.0, 0.0}));
  EXPECT_EQ(min_inf_norm_point(Region::cardinality(3, 1.0)), (Point{0.0, 0.0, 0.0}));
}

TEST(MinInfNorm, CoveringHalfspace) {
  const Region r = Region::halfspaces({{-1.0, -1.0}}, {-1.0});
  const Point x = min_inf_norm_point(r);
  EXPECT_NEAR(x[0], 0.5, 1e-12);
  EXPECT_NEAR(x[1], 0.5, 1e-12);
  // grid search at resolution 0.01 over the region
  double best = 2.0;
  for (int i = 0; i <= 100; ++i)
    for (int j = 0; j <= 100; ++j) {
      const Point y{i / 100.0, j / 100.0};
      if (contains(r, y, 1e-12)) best = std::min(best, inf_norm(y));
    }
  EXPECT_NEAR(inf_norm(x), best, 1e-12);
}

TEST(MinInfNorm, BeatsRandomFeasibleSamples) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int inst = 0; inst < 5; ++inst) {
    const std::size_t n = 2 + inst % 3;
    // covering row plus a random extra row kept feasible at the all-ones point
    Point a(n);
    for (auto& v : a) v = u(rng) - 0.3;
    double s = 0.0;
    for (double v : a) s += v;
    const Region r = Region::halfspaces({Point(n, -1.0), a}, {-1.0, s + 0.1});
    const Point x = min_inf_norm_point(r);
    ASSERT_TRUE(contains(r, x, 1e-9));
    Point y(n);
    int feasible = 0;
    for (int k = 0; k < 10000; ++k) {
      for (auto& v : y) v = u(rng);
      if (!contains(r, y, 0.0)) continue;
      ++feasible;
      EXPECT_LE(inf_norm(x), inf_norm(y) + 1e-12);
    }
    EXPECT_GT(feasible, 0);
  }
}

TEST(Lmo, MatchesVertexEnumerationOnRandomRegions) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> z(0.0, 1.0);
  for (int inst = 0; inst < 40; ++inst) {
    const std::size_t n = 2 + inst % 5;
    const Region r = random_region(static_cast<RegionFamily>(inst % 4), n, rng);
    const auto vertices = enumerate_vertices(r);
    ASSERT_FALSE(vertices.empty());
    Point g(n);
    for (int k = 0; k < 10; ++k) {
      for (auto& v : g) v = z(rng);
      const CheckReport rep = check_lmo(r, g, vertices);
      EXPECT_TRUE(rep.pass) << r.kind_name() << " " << format_report(rep);
    }
  }
}

TEST(Lmo, Deterministic) {
  const Region r = Region::halfspaces({{1.0, -0.5, 0.3}, {-0.2, 1.0, 1.0}}, {0.7, 0.9});
  const Point g{0.4, 0.4, -0.1};
  EXPECT_EQ(lmo(r, g), lmo(r, g));
}

}  // namespace
}  // namespace fwdis
