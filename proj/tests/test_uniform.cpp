#include <gtest/gtest.h>

#include <queue>

#include "rspan/uniform.hpp"

using namespace rspan;

/// Max BFS hop distance between survivors, -1 if some pair is disconnected.
int max_hops(const WeightedGraph& g, const std::vector<int>& removed) {
  const int n = g.n();
  std::vector<char> dead(n, 0);
  for (int v : removed) dead[v] = 1;
  int worst = 0;
  for (int s = 0; s < n; ++s) {
    if (dead[s]) continue;
    std::vector<int> dist(n, -1);
    dist[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (const auto& a : g.adj(u)) {
        if (dead[a.to] || dist[a.to] >= 0) continue;
        dist[a.to] = dist[u] + 1;
        q.push(a.to);
      }
    }
    for (int v = 0; v < n; ++v) {
      if (dead[v]) continue;
      if (dist[v] < 0) return -1;
      worst = std::max(worst, dist[v]);
    }
  }
  return worst;
}

TEST(Constellation, SizeFormula) {
  EXPECT_EQ(constellation_size(0.25), 13);
  EXPECT_EQ(constellation_size(0.5), 2 * static_cast<int>(std::ceil(2 * std::log(2.0))) + 1);
}

TEST(Constellation, TwoPoints) {
  const Spanner s = constellation(2, 0.25, 3);
  EXPECT_EQ(s.graph.m(), 1);
}

TEST(Constellation, EdgeBoundAndStars) {
  const Spanner s = constellation(100, 0.25, 5);
  EXPECT_LE(s.graph.m(), 13 * 99);
  EXPECT_EQ(s.centers.size(), 13u);
  for (int v = 0; v < 100; ++v)
    for (int c : s.centers)
      if (v != c) {
        EXPECT_TRUE(s.graph.has_edge(v, c));
      }
  EXPECT_LE(max_hops(s.graph, {}), 2);
}

TEST(ConstellationDamage, Cases) {
  const Spanner s = constellation(100, 0.25, 5);
  EXPECT_TRUE(constellation_damage(s, PointSet{}).B_hat.empty());
  const PointSet centers = normalized(s.centers);
  EXPECT_EQ(constellation_damage(s, centers).B_hat.size(), 100u);
  int other = 0;
  while (std::binary_search(centers.begin(), centers.end(), other)) ++other;
  const DamageResult d = constellation_damage(s, PointSet{other});
  EXPECT_EQ(d.B_hat, PointSet{other});
  EXPECT_DOUBLE_EQ(d.loss, 0.0);
  EXPECT_THROW(shadow_damage(s, PointSet{}), Error);
}

TEST(ConstellationDamage, ResidualWithinTwoHops) {
  const Spanner s = constellation(200, 0.25, 8);
  Rng rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    const PointSet B = rng.subset(200, 20);
    const DamageResult d = constellation_damage(s, B);
    if (d.B_hat.size() == 200u) continue;
    EXPECT_LE(max_hops(s.graph, B), 2);
    EXPECT_GE(max_hops(s.graph, B), 0);
  }
}

TEST(SelectDegree, PracticalFirstTerm) {
  EXPECT_EQ(select_degree(256, 2, 0.5, ConstantMode::Practical).d, 64);
  EXPECT_EQ(select_degree(65536, 2, 0.5, ConstantMode::Practical).d, 1024);
  EXPECT_FALSE(select_degree(65536, 2, 0.5, ConstantMode::Practical).clamped);
}

TEST(SelectDegree, PaperClamps) {
  const DegreeChoice c = select_degree(100, 2, 0.25, ConstantMode::Paper);
  EXPECT_TRUE(c.clamped);
  EXPECT_EQ(c.d, 98);
  EXPECT_GT(c.second_term, 1e9);
  EXPECT_EQ(select_degree(101, 2, 0.25, ConstantMode::Paper).d, 100);
}

TEST(BuildG2t, SmallClampsToComplete) {
  const Spanner s = build_g2t(16, 0.25, 1, 2);
  EXPECT_TRUE(s.clamped);
  EXPECT_EQ(s.graph.m(), 16 * 15 / 2);
  EXPECT_NEAR(s.lambda, 1.0 / 15.0, 1e-9);
}

TEST(BuildG2t, ModerateSize) {
  const Spanner s = build_g2t(1024, 0.5, 2, 3);
  EXPECT_EQ(s.d, 128);
  EXPECT_FALSE(s.clamped);
  EXPECT_EQ(s.raw.regular_degree(), 128);
  EXPECT_LE(s.graph.m(), 1024 * 64);
  EXPECT_GT(s.graph.m(), 1024 * 56);
  const int h = max_hops(s.graph, {});
  EXPECT_GE(h, 1);
  EXPECT_LE(h, 4);
}

TEST(BuildG2tMinus1, RejectsT1) {
  try {
    build_g2t_minus_1(64, 0.5, 1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadParams);
  }
  try {
    build_g2t_minus_1(250, 0.5, 2, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfeasibleBlocking);
  }
}

TEST(BuildG2tMinus1, SixteenBlocks) {
  const Spanner s = build_g2t_minus_1(256, 0.5, 2, 4);
  ASSERT_EQ(s.blocks.size(), 16u);
  for (const auto& in : s.inner) {
    EXPECT_EQ(in.n(), 16);
    EXPECT_TRUE(in.clamped);
    EXPECT_EQ(in.graph.m(), 120);
  }
  int max_deg = 0;
  for (int v = 0; v < 256; ++v) max_deg = std::max(max_deg, s.graph.degree(v));
  EXPECT_LE(max_deg, s.d);
  EXPECT_LE(max_hops(s.graph, {}), 3);
}

TEST(BuildG2tMinus1, BalancedUnevenBlocks) {
  const Spanner s = build_g2t_minus_1_balanced(250, 0.25, 2, 4);
  std::size_t lo = 1000, hi = 0;
  for (const auto& b : s.blocks) {
    lo = std::min(lo, b.size());
    hi = std::max(hi, b.size());
  }
  EXPECT_LE(hi - lo, 1u);
  EXPECT_LE(max_hops(s.graph, {}), 3);
}

TEST(Bipartite, Clamps) {
  const BipartiteGraph one = bipartite_expander(1, 1, 0.3, 1);
  EXPECT_EQ(one.graph.m(), 1);
  EXPECT_EQ(bipartite_degree(0.5), 24);
  const BipartiteGraph k88 = bipartite_expander(8, 8, 0.5, 1);
  EXPECT_EQ(k88.graph.m(), 64);
  EXPECT_THROW(bipartite_expander(4, 5, 0.5, 1), Error);
}

TEST(Bipartite, LargeSetsExpand) {
  const BipartiteGraph bg = bipartite_expander(64, 64, 0.5, 9);
  Rng rng(2);
  for (int i = 0; i < 1000; ++i) {
    const int size = 32 + rng.index(33);
    const PointSet X = rng.subset(64, size);
    std::vector<char> hit(128, 0);
    int gamma = 0;
    for (int x : X)
      for (const auto& a : bg.graph.adj(x))
        if (!hit[a.to]) {
          hit[a.to] = 1;
          ++gamma;
        }
    EXPECT_GT(gamma, 32);
  }
}

TEST(ShadowDamage, Guards) {
  const Spanner s = build_g2t(256, 0.25, 2, 6);
  const DamageResult none = shadow_damage(s, PointSet{});
  EXPECT_TRUE(none.B_hat.empty());
  PointSet all(256);
  for (int i = 0; i < 256; ++i) all[i] = i;
  EXPECT_EQ(shadow_damage(s, all).B_hat.size(), 256u);
}

TEST(ShadowDamage, FixpointAndSmallLoss) {
  const Spanner s = build_g2t(1024, 0.25, 2, 7);
  Rng rng(8);
  int small = 0;
  for (int trial = 0; trial < 5; ++trial) {
    const PointSet B = rng.subset(1024, 64);
    const DamageResult d = shadow_damage(s, B);
    EXPECT_DOUBLE_EQ(d.eps, shadow_threshold(1024, 64, 0.25, s.lambda));
    std::vector<char> in(1024, 0);
    for (int v : d.B_hat) in[v] = 1;
    for (int u = 0; u < 1024; ++u) {
      if (in[u]) continue;
      int e = 0;
      for (int v : s.raw.adj[u]) e += in[v];
      EXPECT_LT(e, d.eps * s.d);
    }
    small += d.B_hat.size() - B.size() <= 0.25 * B.size() ? 1 : 0;
  }
  EXPECT_GE(small, 4);
}

TEST(ShadowClosure, AbsorbsHeavyVertex) {
  // Star: the hub falls in round one, then every leaf in round two.
  MultiGraph g = MultiGraph::from_pairs(4, {{0, 1}, {0, 2}, {0, 3}});
  const DamageResult d = shadow_closure(g, 3, PointSet{1}, 0.3);
  EXPECT_EQ(d.B_hat, (PointSet{0, 1, 2, 3}));
  EXPECT_EQ(d.trace, (std::vector<int>{1, 3}));
  EXPECT_TRUE(shadow_closure(g, 3, PointSet{1}, 0.5).B_hat == PointSet{1});
}

TEST(ResidualHopCheck, CountsViolations) {
  WeightedGraph path(4);
  path.add_edge(0, 1, 1);
  path.add_edge(1, 2, 1);
  path.add_edge(2, 3, 1);
  std::vector<std::pair<int, int>> bad;
  const HopReport r = residual_hop_check(path, PointSet{}, 2, &bad);
  EXPECT_EQ(r.violations, 1);
  EXPECT_EQ(r.max_hops, 3);
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_EQ(bad[0], std::make_pair(0, 3));
  const HopReport cut = residual_hop_check(path, PointSet{1}, 2);
  EXPECT_EQ(cut.max_hops, -1);
}
