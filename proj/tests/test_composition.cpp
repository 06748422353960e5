#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rspan/composition.hpp"
#include "rspan/generators.hpp"

using namespace rspan;

ReliableParams params(double eps, int t, Parity parity, std::uint64_t seed) {
  ReliableParams p;
  p.eps = eps;
  p.t = t;
  p.parity = parity;
  p.seed = seed;
  return p;
}

/// Checks several random attacks against the hop-bounded oracle.
void expect_residual_ok(const ReliableSpanner& rs, int attack_size, std::uint64_t seed) {
  Rng rng(seed);
  for (int trial = 0; trial < 4; ++trial) {
    const PointSet B = rng.subset(rs.n(), attack_size);
    const DamageResult d = constructive_damage(rs, B);
    EXPECT_TRUE(std::includes(d.B_hat.begin(), d.B_hat.end(), B.begin(), B.end()));
    const double w = oracle::worst_stretch(rs.graph, rs.metric, rs.hop_adv, B, d.B_hat);
    EXPECT_LE(w, rs.improved_bound * (1 + 1e-9));
    const VerificationReport v = verify_residual(rs, B, d.B_hat);
    EXPECT_EQ(v.violation_count, 0);
    EXPECT_NEAR(v.worst_stretch, w, 1e-9);
  }
}

TEST(HopBound, Values) {
  EXPECT_EQ(hop_bound(Model::Oblivious, Parity::Odd, 5), 2);
  EXPECT_EQ(hop_bound(Model::Deterministic, Parity::Odd, 3), 5);
  EXPECT_EQ(hop_bound(Model::Deterministic, Parity::Even, 3), 6);
}

TEST(Compose, UniformOblivious) {
  const ReliableSpanner rs = build_reliable(uniform_metric(60), Family::Uniform, Model::Oblivious,
                                            params(0.5, 2, Parity::Odd, 3));
  ASSERT_EQ(rs.clusters.size(), 1u);
  EXPECT_EQ(rs.clusters[0].sub_mode, "constellation");
  EXPECT_DOUBLE_EQ(rs.improved_bound, 2.0);
  EXPECT_LE(rs.graph.m(), 13 * 59);
  expect_residual_ok(rs, 6, 1);
}

TEST(Compose, UniformDeterministicEven) {
  const ReliableSpanner rs = build_reliable(uniform_metric(64), Family::Uniform, Model::Deterministic,
                                            params(0.5, 2, Parity::Even, 3));
  EXPECT_EQ(rs.hop_adv, 4);
  EXPECT_EQ(rs.clusters[0].sub_mode, "expander_2t");
  expect_residual_ok(rs, 6, 2);
}

TEST(Compose, PairClustersGetCompleteGraphs) {
  const FiniteMetric m = FiniteMetric::from_rows({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  CoverBuilder cb(m, 1.0);
  cb.add({0, 1}, {"pair", 0, 1.0, 0});
  cb.add({1, 2}, {"pair", 1, 1.0, 0});
  cb.add({0, 2}, {"pair", 0, 2.0, 0});
  const ReliableSpanner rs = det_from_cover(m, cb.take(), 0.25, 2, Parity::Odd, 1);
  for (const auto& cs : rs.clusters) EXPECT_EQ(cs.sub_mode, "complete");
  EXPECT_EQ(rs.graph.m(), 3);
  EXPECT_DOUBLE_EQ(rs.graph.weight(0, 2), 2.0);
  EXPECT_EQ(union_graph(m, rs.clusters), rs.graph);
}

TEST(Compose, CoverMustHoldAtItsT) {
  const FiniteMetric m = FiniteMetric::from_rows({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  CoverBuilder cb(m, 1.0);
  cb.add({0, 1, 2}, {"whole", 1, 1.0, 0});
  try {
    oblivious_from_cover(m, cb.take(), 0.25, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidCover);
  }
}

TEST(Compose, TreeDeterministicOdd) {
  const ReliableSpanner rs = build_reliable(random_tree(40, 5), Family::Tree, Model::Deterministic,
                                            params(0.5, 2, Parity::Odd, 4));
  EXPECT_EQ(rs.hop_adv, 3);
  EXPECT_TRUE(rs.improved);
  EXPECT_LE(rs.improved_bound, 6.0 + 1e-9);
  expect_residual_ok(rs, 3, 3);
}

TEST(Compose, UltrametricOblivious) {
  const ReliableSpanner rs = build_reliable(random_ultrametric(40, 6), Family::Ultrametric, Model::Oblivious,
                                            params(1.0, 2, Parity::Odd, 5));
  EXPECT_TRUE(rs.improved);
  EXPECT_DOUBLE_EQ(rs.improved_bound, 3.0);
  expect_residual_ok(rs, 3, 4);
}

TEST(Compose, PlanarOblivious) {
  const ReliableSpanner rs = build_reliable(grid_graph(5, 5), Family::Planar, Model::Oblivious,
                                            params(0.5, 2, Parity::Odd, 6));
  EXPECT_TRUE(rs.improved);
  EXPECT_DOUBLE_EQ(rs.improved_bound, 4.0);
  expect_residual_ok(rs, 2, 5);
}

TEST(Compose, GeneralUsesGenericBound) {
  const ReliableSpanner rs = build_reliable(random_tree(30, 2), Family::General, Model::Oblivious,
                                            params(0.5, 2, Parity::Odd, 7));
  EXPECT_FALSE(rs.improved);
  EXPECT_DOUBLE_EQ(rs.improved_bound, 2.0 * rs.cover_t);
  expect_residual_ok(rs, 3, 6);
}

TEST(Compose, FamilyMismatch) {
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::BadParams;
  };
  const ReliableParams p = params(0.5, 2, Parity::Odd, 1);
  EXPECT_EQ(code([&] { build_reliable(random_tree(10, 1), Family::Planar, Model::Oblivious, p); }),
            ErrorCode::FamilyMismatch);
  EXPECT_EQ(code([&] { build_reliable(grid_graph(3, 3).graph, Family::Tree, Model::Oblivious, p); }),
            ErrorCode::FamilyMismatch);
  EXPECT_EQ(code([&] { build_reliable(layered_metric(12, 3, 2.0), Family::Uniform, Model::Oblivious, p); }),
            ErrorCode::FamilyMismatch);
}

TEST(ConstructiveDamage, WholeClusterFails) {
  const ReliableSpanner rs = build_reliable(uniform_metric(20), Family::Uniform, Model::Oblivious,
                                            params(0.5, 2, Parity::Odd, 1));
  PointSet all(20);
  for (int i = 0; i < 20; ++i) all[i] = i;
  const DamageResult d = constructive_damage(rs, all);
  EXPECT_EQ(d.failed_clusters, 1);
  EXPECT_EQ(d.B_hat.size(), 20u);
  EXPECT_DOUBLE_EQ(d.loss, 0.0);
  const VerificationReport v = verify_residual(rs, PointSet{0}, all);
  EXPECT_EQ(v.pairs, 0);
  EXPECT_EQ(v.violation_count, 0);
  EXPECT_TRUE(constructive_damage(rs, PointSet{}).B_hat.empty());
  EXPECT_THROW(constructive_damage(rs, PointSet{20}), Error);
}

TEST(Verify, FlagsMissingEdges) {
  const FiniteMetric m = uniform_metric(3);
  WeightedGraph path(3);
  path.add_edge(0, 1, 1);
  path.add_edge(1, 2, 1);
  const VerificationReport one = verify_residual(path, m, PointSet{}, PointSet{}, 2.0, 1);
  EXPECT_EQ(one.violation_count, 1);
  ASSERT_EQ(one.violations.size(), 1u);
  EXPECT_EQ(one.violations[0].p, 0);
  EXPECT_EQ(one.violations[0].q, 2);
  const VerificationReport two = verify_residual(path, m, PointSet{}, PointSet{}, 2.0, 2);
  EXPECT_EQ(two.violation_count, 0);
  EXPECT_DOUBLE_EQ(two.worst_stretch, 2.0);
  EXPECT_EQ(two.worst_hops, 2);
  EXPECT_EQ(verify_residual(path, m, PointSet{1}, PointSet{1}, 2.0, 2).violation_count, 1);
}

TEST(Reseed, RebuildsLocals) {
  const ReliableSpanner rs = build_reliable(random_tree(30, 3), Family::Tree, Model::Oblivious,
                                            params(0.5, 2, Parity::Odd, 1));
  const ReliableSpanner again = reseed(rs, 1);
  const ReliableSpanner other = reseed(rs, 2);
  EXPECT_EQ(again.graph, rs.graph);
  EXPECT_EQ(other.clusters.size(), rs.clusters.size());
  for (std::size_t i = 0; i < rs.clusters.size(); ++i) EXPECT_EQ(other.clusters[i].members, rs.clusters[i].members);
  EXPECT_EQ(union_graph(other.metric, other.clusters), other.graph);
}

TEST(GreedyCover, PicksHeaviestFirst) {
  const std::vector<std::pair<int, int>> bad{{0, 1}, {0, 2}, {0, 3}, {4, 5}};
  EXPECT_EQ(greedy_cover(6, PointSet{}, bad), (PointSet{0, 4}));
  EXPECT_EQ(greedy_cover(6, PointSet{2}, {}), (PointSet{2}));
  const PointSet prefer{1, 2, 3, 5};
  EXPECT_EQ(greedy_cover(6, PointSet{}, bad, &prefer), (PointSet{1, 2, 3, 5}));
}
