#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "rspan/cover.hpp"
#include "rspan/generators.hpp"

using namespace rspan;

PointSet all_points(int n) {
  PointSet s(n);
  for (int i = 0; i < n; ++i) s[i] = i;
  return s;
}

/// Independent cover check: every pair needs a cluster with
/// diam/t <= d(p,q) <= diam.
bool brute_cover_ok(const FiniteMetric& m, const Cover& c, double t) {
  for (int p = 0; p < m.n(); ++p)
    for (int q = p + 1; q < m.n(); ++q) {
      bool hit = false;
      for (const auto& s : c.clusters) {
        if (!std::binary_search(s.begin(), s.end(), p) || !std::binary_search(s.begin(), s.end(), q)) continue;
        double diam = 0.0;
        for (int a : s)
          for (int b : s) diam = std::max(diam, m(a, b));
        if (diam <= t * m(p, q) * (1 + 1e-9) && m(p, q) <= diam * (1 + 1e-9)) hit = true;
      }
      if (!hit) return false;
    }
  return true;
}

TEST(ValidateCover, UniformWholeSet) {
  const FiniteMetric m = uniform_metric(4);
  CoverBuilder cb(m, 1.0);
  cb.add(all_points(4));
  EXPECT_TRUE(validate_cover(m, cb.take(), 1.0).ok);
}

TEST(ValidateCover, PathMissingPair) {
  const FiniteMetric m = FiniteMetric::from_rows({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  CoverBuilder cb(m, 1.0);
  cb.add({0, 1});
  cb.add({1, 2});
  const CoverReport r = validate_cover(m, cb.take(), 1.0);
  EXPECT_FALSE(r.ok);
  ASSERT_EQ(r.uncovered.size(), 1u);
  EXPECT_EQ(r.uncovered[0], std::make_pair(0, 2));
}

TEST(ValidateCover, LayeredNestedCover) {
  const FiniteMetric m = layered_metric(6, 3, 2.0, 0.1);
  CoverBuilder cb(m, 2.2);
  PointSet prefix;
  for (int level = 0; level < 3; ++level) {
    prefix.push_back(2 * level);
    prefix.push_back(2 * level + 1);
    cb.add(prefix);
  }
  const Cover c = cb.take();
  EXPECT_TRUE(validate_cover(m, c, 2.2).ok);
  EXPECT_TRUE(brute_cover_ok(m, c, 2.2));
}

TEST(ValidateCover, IndexOutOfRange) {
  const FiniteMetric m = uniform_metric(3);
  Cover c;
  c.n = 3;
  c.clusters = {{0, 5}};
  EXPECT_THROW(validate_cover(m, c, 1.0), Error);
}

TEST(CoverBuilder, PrunesSingletonsAndDuplicates) {
  const FiniteMetric m = uniform_metric(5);
  CoverBuilder cb(m, 1.0);
  cb.add({3});
  cb.add({1, 0});
  cb.add({0, 1});
  const Cover c = cb.take();
  ASSERT_EQ(c.count(), 1u);
  EXPECT_EQ(c.clusters[0], (PointSet{0, 1}));
  EXPECT_DOUBLE_EQ(c.diam[0], 1.0);
}

TEST(HstCover, SingleRoot) {
  const Cover c = hst_cover(hst_from_ultrametric(uniform_metric(5), 1.0), 0.5);
  ASSERT_EQ(c.count(), 1u);
  EXPECT_EQ(c.clusters[0], all_points(5));
  EXPECT_EQ(c.depth(), 1);
}

TEST(HstCover, TwoLevel) {
  const FiniteMetric m = FiniteMetric::from_rows({{0, 1, 4, 4}, {1, 0, 4, 4}, {4, 4, 0, 1}, {4, 4, 1, 0}});
  const Cover c = hst_cover(hst_from_ultrametric(m, 2.0), 1.0);
  std::set<PointSet> got(c.clusters.begin(), c.clusters.end());
  EXPECT_EQ(got, (std::set<PointSet>{{0, 1}, {2, 3}, {0, 1, 2, 3}}));
  EXPECT_TRUE(validate_cover(m, c, 2.0).ok);
}

TEST(HstCover, ThreeLevelsHalfEps) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const FiniteMetric m = random_ultrametric(48, seed);
    const Cover c = hst_cover(hst_from_ultrametric(m, 1.0), 0.5);
    EXPECT_DOUBLE_EQ(c.t, 1.5);
    EXPECT_TRUE(validate_cover(m, c, 1.5).ok);
    EXPECT_TRUE(brute_cover_ok(m, c, 1.5));
    const double envelope = std::ceil(std::log(spread(m)) / std::log(1.5) - 1e-9) + 1;
    EXPECT_LE(c.depth(), envelope);
  }
}

TEST(TreeCover, PathOfThree) {
  WeightedGraph t(3);
  t.add_edge(0, 1, 1.0);
  t.add_edge(1, 2, 1.0);
  const Cover c = tree_cover(t, 1.0);
  const FiniteMetric m = shortest_path_metric(t);
  EXPECT_TRUE(validate_cover(m, c, 3.0).ok);
  bool whole = false;
  for (std::size_t i = 0; i < c.count(); ++i) {
    if (c.clusters[i] == PointSet{0, 1, 2}) {
      whole = true;
      EXPECT_EQ(c.meta[i].center, 1);
    }
  }
  EXPECT_TRUE(whole);
}

TEST(TreeCover, SingleEdge) {
  WeightedGraph t(2);
  t.add_edge(0, 1, 3.0);
  const Cover c = tree_cover(t, 0.5);
  ASSERT_EQ(c.count(), 1u);
  EXPECT_EQ(c.clusters[0], (PointSet{0, 1}));
}

TEST(TreeCover, RandomTrees) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const WeightedGraph t = random_tree(64, seed);
    const FiniteMetric m = shortest_path_metric(t);
    const Cover c = tree_cover(t, 0.5);
    EXPECT_TRUE(validate_cover(m, c, 2.5).ok);
    EXPECT_TRUE(brute_cover_ok(m, c, 2.5));
    const double envelope = 2.0 * (std::ceil(std::log(spread(m)) / std::log(1.25)) + 1) * std::ceil(std::log2(64.0));
    EXPECT_LE(c.depth(), envelope);
    // Ring clusters stay within their radius of the separator.
    for (std::size_t i = 0; i < c.count(); ++i) {
      if (c.meta[i].kind != "ring") continue;
      for (int p : c.clusters[i]) EXPECT_LE(m(p, c.meta[i].center), c.meta[i].radius * (1 + 1e-9));
    }
  }
}

TEST(TreeCover, RejectsCycle) {
  WeightedGraph g(3);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 1.0);
  g.add_edge(2, 0, 1.0);
  try {
    tree_cover(g, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotATree);
  }
}

TEST(PlanarCover, TriangleGivesPairs) {
  WeightedGraph g(3);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 1.0);
  g.add_edge(0, 2, 1.0);
  const PlaneGraph pg{g, {{1, 2}, {2, 0}, {0, 1}}};
  const Cover c = planar_cover(pg, 1.0);
  EXPECT_TRUE(validate_cover(shortest_path_metric(g), c, 1.0).ok);
  for (const auto& s : c.clusters) EXPECT_EQ(s.size(), 2u);
}

TEST(PlanarCover, Grids) {
  for (auto [side, eps] : {std::pair{3, 1.0}, std::pair{6, 0.5}, std::pair{5, 1.0}}) {
    const PlaneGraph pg = grid_graph(side, side);
    const FiniteMetric m = shortest_path_metric(pg.graph);
    const Cover c = planar_cover(pg, eps);
    EXPECT_TRUE(validate_cover(m, c, 2.0 + eps).ok) << side;
    EXPECT_TRUE(brute_cover_ok(m, c, 2.0 + eps)) << side;
    const double n = side * side;
    EXPECT_LE(c.depth(), 64.0 / (eps * eps) * std::log2(n) * std::log2(spread(m)));
  }
}

TEST(PlanarCover, RandomPlanarWeighted) {
  const PlaneGraph pg = random_planar(40, 6);
  const FiniteMetric m = shortest_path_metric(pg.graph);
  const Cover c = planar_cover(pg, 0.5);
  EXPECT_TRUE(brute_cover_ok(m, c, 2.5));
  for (std::size_t i = 0; i < c.count(); ++i) {
    if (c.meta[i].kind != "ball") continue;
    for (int p : c.clusters[i]) EXPECT_LE(m(p, c.meta[i].center), c.meta[i].radius * (1 + 1e-9));
  }
}
