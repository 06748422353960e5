#include <gtest/gtest.h>

#include <mutex>

#include "rspan/attack.hpp"

using namespace rspan;

WeightedGraph star(int n) {
  WeightedGraph g(n);
  for (int v = 1; v < n; ++v) g.add_edge(0, v, 1.0);
  return g;
}

TEST(MakeAttack, HighDegreeOnStar) {
  const WeightedGraph g = star(17);
  AttackTarget target;
  target.graph = &g;
  AttackSpec spec;
  spec.kind = AttackKind::HighDegree;
  spec.t = 2;
  EXPECT_EQ(make_attack(spec, target), PointSet{0});
  spec.threshold = 0.5;
  EXPECT_EQ(make_attack(spec, target).size(), 17u);
}

TEST(MakeAttack, RandomIsDeterministic) {
  const WeightedGraph g = star(50);
  AttackTarget target;
  target.graph = &g;
  AttackSpec spec;
  spec.size = 12;
  spec.seed = 9;
  const PointSet a = make_attack(spec, target);
  EXPECT_EQ(a.size(), 12u);
  EXPECT_EQ(a, make_attack(spec, target));
  spec.seed = 10;
  EXPECT_NE(a, make_attack(spec, target));
}

TEST(MakeAttack, CenterTargeted) {
  const Spanner s = constellation(100, 0.25, 4);
  AttackSpec spec;
  spec.kind = AttackKind::CenterTargeted;
  spec.size = 20;
  const PointSet B = make_attack(spec, attack_target(s));
  EXPECT_EQ(B.size(), 20u);
  for (int c : s.centers) EXPECT_TRUE(std::binary_search(B.begin(), B.end(), c));
  EXPECT_EQ(constellation_damage(s, B).B_hat.size(), 100u);
  spec.size = 0;
  EXPECT_EQ(make_attack(spec, attack_target(s)), normalized(s.centers));
}

TEST(MakeAttack, ClusterTargetedSmallestFirst) {
  const WeightedGraph g(12);
  AttackTarget target;
  target.graph = &g;
  target.clusters = {{0, 1, 2, 3, 4}, {5, 6}, {7, 8, 9}};
  AttackSpec spec;
  spec.kind = AttackKind::ClusterTargeted;
  spec.size = 6;
  const PointSet B = make_attack(spec, target);
  ASSERT_EQ(B.size(), 6u);
  EXPECT_TRUE(std::includes(B.begin(), B.end(), target.clusters[1].begin(), target.clusters[1].end()));
  EXPECT_TRUE(std::includes(B.begin(), B.end(), target.clusters[2].begin(), target.clusters[2].end()));
  EXPECT_LT(B.front(), 5);
}

TEST(MakeAttack, SpecMismatch) {
  const WeightedGraph g = star(5);
  AttackTarget target;
  target.graph = &g;
  AttackSpec spec;
  spec.kind = AttackKind::CenterTargeted;
  try {
    make_attack(spec, target);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SpecMismatch);
  }
  spec.kind = AttackKind::ClusterTargeted;
  EXPECT_THROW(make_attack(spec, target), Error);
  spec.kind = AttackKind::Random;
  spec.size = 6;
  EXPECT_THROW(make_attack(spec, target), Error);
  EXPECT_THROW(make_attack(spec, AttackTarget{}), Error);
  EXPECT_THROW(parse_attack_kind("nope"), Error);
}

TEST(HighDegreeDemo, StarSplitsApart) {
  const LowerBoundDemo d = high_degree_demo(star(17), 2);
  EXPECT_EQ(d.attacked, 1);
  EXPECT_EQ(d.survivors, 16);
  EXPECT_EQ(d.max_ball, 1);
  EXPECT_FALSE(d.large_attack);
  EXPECT_TRUE(d.no_large_core);
  EXPECT_TRUE(d.fires());
}

TEST(HighDegreeDemo, CompleteGraphLosesEverything) {
  const LowerBoundDemo d = high_degree_demo(complete_graph(16), 2);
  EXPECT_FALSE(d.sparse);
  EXPECT_EQ(d.attacked, 16);
  EXPECT_TRUE(d.large_attack);
}

ExperimentConfig config(int trials, int size) {
  ExperimentConfig c;
  c.trials = trials;
  c.attack.size = size;
  c.attack.seed = 3;
  c.seed = 5;
  return c;
}

TEST(RunExperiment, ConstellationRows) {
  const auto build = [](std::uint64_t seed) { return wrap_uniform(constellation(200, 0.25, seed)); };
  const AttackReport r = run_experiment(build, config(8, 20));
  ASSERT_EQ(r.rows.size(), 8u);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const AttackRow& row = r.rows[i];
    EXPECT_EQ(row.trial, static_cast<int>(i));
    EXPECT_EQ(row.b, 20);
    EXPECT_LE(row.bhat_greedy, row.bhat_constructive);
    EXPECT_GE(row.bhat_greedy, row.b);
    EXPECT_EQ(row.violations, 0);
    EXPECT_DOUBLE_EQ(row.seconds, 0.0);
  }
  EXPECT_EQ(r.summary, aggregate(r.rows));
  EXPECT_EQ(r.summary.greedy_larger, 0);
  EXPECT_EQ(run_experiment(build, config(8, 20)).rows, r.rows);
}

TEST(RunExperiment, ResampleKeepsAttackFixed) {
  std::vector<std::uint64_t> seen;
  std::mutex mu;
  const auto build = [&](std::uint64_t seed) {
    std::lock_guard<std::mutex> lock(mu);
    seen.push_back(seed);
    return wrap_uniform(constellation(100, 0.25, seed));
  };
  ExperimentConfig c = config(4, 10);
  c.resample = true;
  const AttackReport r = run_experiment(build, c);
  std::sort(seen.begin(), seen.end());
  EXPECT_EQ(std::unique(seen.begin(), seen.end()) - seen.begin(), 4);
  for (const auto& row : r.rows) EXPECT_EQ(row.b, 10);
}

TEST(RunExperiment, ExpanderGreedyWithinConstructive) {
  const auto build = [](std::uint64_t seed) { return wrap_uniform(build_g2t(256, 0.25, 2, seed)); };
  const AttackReport r = run_experiment(build, config(4, 16));
  EXPECT_EQ(r.summary.violations, 0);
  EXPECT_EQ(r.summary.greedy_larger, 0);
  EXPECT_LE(r.summary.max_worst_hops, 4);
}

TEST(RunExperiment, RejectsZeroTrials) {
  const auto build = [](std::uint64_t seed) { return wrap_uniform(constellation(10, 0.25, seed)); };
  EXPECT_THROW(run_experiment(build, config(0, 1)), Error);
}

TEST(Aggregate, Means) {
  std::vector<AttackRow> rows(2);
  rows[0].loss_constructive = 0.5;
  rows[1].loss_constructive = 1.5;
  rows[1].bhat_greedy = 3;
  rows[0].worst_stretch = 2.0;
  const AttackAggregate a = aggregate(rows);
  EXPECT_DOUBLE_EQ(a.mean_loss_constructive, 1.0);
  EXPECT_DOUBLE_EQ(a.max_loss_constructive, 1.5);
  EXPECT_DOUBLE_EQ(a.max_worst_stretch, 2.0);
  EXPECT_EQ(a.greedy_larger, 1);
  EXPECT_EQ(aggregate({}).trials, 0);
}
