#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rspan/cover.hpp"
#include "rspan/generators.hpp"
#include "rspan/planar.hpp"

using namespace rspan;

PlaneGraph triangle() {
  WeightedGraph g(3);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 1.0);
  g.add_edge(0, 2, 1.0);
  return {g, {{1, 2}, {2, 0}, {0, 1}}};
}

PlaneGraph square() {
  WeightedGraph g(4);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 1.0);
  g.add_edge(2, 3, 1.0);
  g.add_edge(3, 0, 1.0);
  return {g, {{1, 3}, {2, 0}, {3, 1}, {0, 2}}};
}

PlaneGraph k4() {
  WeightedGraph g(4);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) g.add_edge(i, j, 1.0);
  // 3 at the centre of triangle 0,1,2.
  return {g, {{1, 3, 2}, {2, 3, 0}, {0, 3, 1}, {0, 1, 2}}};
}

void expect_separator(const PlaneGraph& pg, const SeparatorResult& s) {
  const int n = pg.n();
  std::vector<int> side(n, -1);
  for (int v : s.A) side[v] = 0;
  for (int v : s.B) side[v] = 1;
  for (int v : s.C) side[v] = 2;
  for (int v = 0; v < n; ++v) EXPECT_NE(side[v], -1) << v;
  EXPECT_EQ(s.A.size() + s.B.size() + s.C.size(), static_cast<std::size_t>(n));
  for (const auto& e : pg.graph.edges()) EXPECT_FALSE(side[e.u] + side[e.v] == 1 && side[e.u] != side[e.v]);
  EXPECT_LE(3 * s.A.size(), static_cast<std::size_t>(2 * n));
  EXPECT_LE(3 * s.B.size(), static_cast<std::size_t>(2 * n));
}

TEST(PlaneGraph, GridEuler) {
  for (int side = 2; side <= 6; ++side) EXPECT_TRUE(euler_ok(grid_graph(side, side)));
}

TEST(PlaneGraph, BrokenRotationFailsEuler) {
  PlaneGraph pg = k4();
  std::swap(pg.rotation[3][0], pg.rotation[3][1]);
  EXPECT_FALSE(euler_ok(pg));
}

TEST(Triangulate, TriangleUnchanged) {
  const PlaneGraph t = triangulate(triangle());
  EXPECT_EQ(t.graph.m(), 3);
}

TEST(Triangulate, SquareGetsHeavyChordPerFace) {
  // Inner and outer faces are both quadrilaterals, so the result is K4.
  const PlaneGraph t = triangulate(square());
  ASSERT_EQ(t.graph.m(), 6);
  EXPECT_DOUBLE_EQ(t.graph.weight(0, 2), 2.0);
  EXPECT_DOUBLE_EQ(t.graph.weight(1, 3), 2.0);
  EXPECT_TRUE(euler_ok(t));
}

TEST(Triangulate, PreservesDistances) {
  for (const PlaneGraph& pg : {grid_graph(3, 3), grid_graph(4, 5), random_planar(30, 2)}) {
    const PlaneGraph t = triangulate(pg);
    EXPECT_TRUE(is_triangulated(t));
    EXPECT_TRUE(euler_ok(t));
    const auto before = oracle::apsp(pg.graph);
    const auto after = oracle::apsp(t.graph);
    for (int i = 0; i < pg.n(); ++i)
      for (int j = 0; j < pg.n(); ++j) EXPECT_NEAR(before[i][j], after[i][j], 1e-9);
  }
}

TEST(CycleSeparator, K4) {
  const PlaneGraph pg = k4();
  const SeparatorResult s = cycle_separator(pg);
  expect_separator(pg, s);
  EXPECT_LE(s.A.size(), 2u);
  EXPECT_LE(s.B.size(), 2u);
}

TEST(CycleSeparator, TriangleDegenerate) {
  const SeparatorResult s = cycle_separator(triangle());
  EXPECT_TRUE(s.A.empty());
  EXPECT_TRUE(s.B.empty());
  EXPECT_EQ(s.C, (PointSet{0, 1, 2}));
}

TEST(CycleSeparator, TriangulatedGrids) {
  for (int side = 4; side <= 7; ++side) {
    const PlaneGraph pg = triangulate(grid_graph(side, side));
    const SeparatorResult s = cycle_separator(pg);
    expect_separator(pg, s);
    EXPECT_LE(s.A.size(), static_cast<std::size_t>(2 * side * side / 3));
  }
}

TEST(CycleSeparator, PathsAreShortest) {
  const PlaneGraph pg = triangulate(random_planar(40, 8));
  const SeparatorResult s = cycle_separator(pg);
  expect_separator(pg, s);
  const FiniteMetric m = shortest_path_metric(pg.graph);
  EXPECT_TRUE(is_shortest_path(pg.graph, m, s.path1));
  EXPECT_TRUE(is_shortest_path(pg.graph, m, s.path2));
}

TEST(BallDepth, UnitPath) {
  const PlaneGraph path = grid_graph(1, 11);
  std::vector<int> p(11);
  for (int i = 0; i < 11; ++i) p[i] = i;
  EXPECT_LE(ball_depth_check(path, p, 1.0, 2.0).max_degree, 5);
  EXPECT_EQ(ball_depth_check(path, p, 1.0, 0.4).max_degree, 1);
}

TEST(BallDepth, HalfSpacingMatchesBruteForce) {
  const PlaneGraph path = grid_graph(1, 11);
  std::vector<int> p(11);
  for (int i = 0; i < 11; ++i) p[i] = i;
  const BallDepthReport r = ball_depth_check(path, p, 0.5, 2.0);
  // r = 0.5 below unit spacing: the net is every vertex.
  int brute = 0;
  for (int v = 0; v < 11; ++v) {
    int c = 0;
    for (int u = 0; u < 11; ++u) c += std::abs(u - v) <= 2 ? 1 : 0;
    brute = std::max(brute, c);
  }
  EXPECT_EQ(r.max_degree, brute);
  EXPECT_LE(r.max_degree, 9);
}

TEST(BallDepth, RejectsNonShortestPath) {
  const PlaneGraph g = grid_graph(3, 3);
  const std::vector<int> detour{0, 1, 4, 3};
  EXPECT_THROW(ball_depth_check(g, detour, 1.0, 2.0), Error);
}
