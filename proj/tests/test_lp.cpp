#include <random>

#include <gtest/gtest.h>

#include "fwdis/lp.hpp"
#include "support/brute.hpp"

namespace fwdis {
namespace {

TEST(SolveLp, UnitSquare) {
  const LpResult r = solve_lp({Sense::Maximize, {1.0, 1.0}, {}, {}, {}});
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_DOUBLE_EQ(r.objective, 2.0);
  EXPECT_EQ(r.x, (Point{1.0, 1.0}));
}

TEST(SolveLp, SingleCut) {
  const LpResult r = solve_lp({Sense::Maximize, {1.0, 0.0}, {{1.0, 1.0}}, {0.5}, {}});
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_NEAR(r.objective, 0.5, 1e-12);
  EXPECT_NEAR(r.x[0], 0.5, 1e-12);
  EXPECT_NEAR(r.x[1], 0.0, 1e-12);
}

TEST(SolveLp, KnapsackVertex) {
  const LpResult r = solve_lp({Sense::Maximize, {2.0, 1.0}, {{1.0, 2.0}}, {2.0}, {}});
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_NEAR(r.objective, 2.5, 1e-12);
  EXPECT_NEAR(r.x[0], 1.0, 1e-12);
  EXPECT_NEAR(r.x[1], 0.5, 1e-12);
  const auto brute = testing::brute_lp_max({2.0, 1.0}, {{1.0, 2.0}}, {2.0});
  ASSERT_TRUE(brute);
  EXPECT_NEAR(brute->value, 2.5, 1e-12);
}

TEST(SolveLp, Infeasible) {
  // x1 + x2 >= 3 cannot hold in the unit square
  const LpResult r = solve_lp({Sense::Maximize, {1.0, 1.0}, {{-1.0, -1.0}}, {-3.0}, {}});
  EXPECT_EQ(r.status, LpStatus::Infeasible);
}

TEST(SolveLp, MinimizeWithCoveringRow) {
  const LpResult r = solve_lp({Sense::Minimize, {1.0, 2.0}, {{-1.0, -1.0}}, {-1.0}, {}});
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_NEAR(r.objective, 1.0, 1e-12);
  EXPECT_NEAR(r.x[0], 1.0, 1e-12);
}

TEST(SolveLp, DegenerateProblemTerminates) {
  // Several constraints through the optimum; Bland's rule must not cycle.
  const Matrix A{{1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}, {2, 1, 1}};
  const Point b{1, 1, 1, 1.5, 2};
  const LpResult r = solve_lp({Sense::Maximize, {1, 1, 1}, A, b, {}});
  ASSERT_EQ(r.status, LpStatus::Optimal);
  const auto brute = testing::brute_lp_max({1, 1, 1}, A, b);
  EXPECT_NEAR(r.objective, brute->value, 1e-10);
}

TEST(SolveLp, CustomUpperBounds) {
  const LpResult r = solve_lp({Sense::Maximize, {1.0, 1.0}, {}, {}, {0.3, 0.7}});
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_NEAR(r.objective, 1.0, 1e-12);
}

TEST(SolveLp, RejectsMalformed) {
  EXPECT_THROW(solve_lp({Sense::Maximize, {1.0, 1.0}, {{1.0}}, {1.0}, {}}), InvalidArgument);
  EXPECT_THROW(solve_lp({Sense::Maximize, {1.0}, {{1.0}}, {}, {}}), InvalidArgument);
}

TEST(SolveLp, RandomProblemsMatchVertexEnumeration) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int feasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const std::size_t m = 1 + trial % 4;
    Matrix A(m, Point(n));
    Point b(m), c(n);
    for (auto& row : A)
      for (auto& v : row) v = u(rng);
    for (auto& v : b) v = 0.8 * u(rng);
    for (auto& v : c) v = u(rng);
    const LpResult r = solve_lp({Sense::Maximize, c, A, b, {}});
    const auto brute = testing::brute_lp_max(c, A, b);
    if (!brute) {
      EXPECT_EQ(r.status, LpStatus::Infeasible) << trial;
      continue;
    }
    ++feasible;
    ASSERT_EQ(r.status, LpStatus::Optimal) << trial;
    EXPECT_NEAR(r.objective, brute->value, 1e-9) << trial;
    for (std::size_t i = 0; i < m; ++i) EXPECT_LE(dot(A[i], r.x), b[i] + 1e-9);
  }
  EXPECT_GT(feasible, 100);
}

TEST(SolveLp, Deterministic) {
  const LpProblem p{Sense::Maximize, {0.3, 0.3, 0.3}, {{1, 1, 1}}, {1.5}, {}};
  const LpResult a = solve_lp(p), b = solve_lp(p);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.pivots, b.pivots);
}

}  // namespace
}  // namespace fwdis
