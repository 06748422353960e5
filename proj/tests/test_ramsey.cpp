#include <gtest/gtest.h>

#include "rspan/generators.hpp"
#include "rspan/ramsey.hpp"

using namespace rspan;

TEST(RamseyCover, TwoPoints) {
  const FiniteMetric m = FiniteMetric::from_rows({{0, 3}, {3, 0}});
  for (int k : {1, 2, 5}) {
    const Cover c = ramsey_cover(m, k, 1);
    ASSERT_EQ(c.count(), 1u);
    EXPECT_EQ(c.clusters[0], (PointSet{0, 1}));
  }
}

TEST(RamseyCover, UniformValidatesAtReportedT) {
  const FiniteMetric m = uniform_metric(16);
  const Cover c = ramsey_cover(m, 2, 4);
  EXPECT_TRUE(validate_cover(m, c, c.t).ok);
  EXPECT_LE(c.t, kRamseyConstant * 2);
}

TEST(RamseyCover, LayeredGrows) {
  const FiniteMetric m = layered_metric(32, 4, 2.0);
  const Cover c = ramsey_cover(m, 3, 7);
  EXPECT_TRUE(validate_cover(m, c, c.t).ok);
  EXPECT_GE(c.size(), 32);
}

TEST(RamseyCover, GeneralMetricsAcrossSeeds) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const FiniteMetric tree = shortest_path_metric(random_tree(40, seed));
    const FiniteMetric planar = shortest_path_metric(random_planar(30, seed).graph);
    for (int k : {2, 3}) {
      const Cover a = ramsey_cover(tree, k, seed);
      const Cover b = ramsey_cover(planar, k, seed);
      EXPECT_TRUE(validate_cover(tree, a, a.t).ok);
      EXPECT_TRUE(validate_cover(planar, b, b.t).ok);
      EXPECT_LE(a.size(), 8.0 * a.info.at("target_size"));
    }
  }
}

TEST(RamseyCover, DeterministicPerSeed) {
  const FiniteMetric m = shortest_path_metric(random_tree(30, 2));
  EXPECT_EQ(ramsey_cover(m, 2, 9), ramsey_cover(m, 2, 9));
}

TEST(RamseyCover, RejectsBadK) { EXPECT_THROW(ramsey_cover(uniform_metric(4), 0, 1), Error); }
