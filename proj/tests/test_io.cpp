#include <gtest/gtest.h>

#include <filesystem>

#include "rspan/io.hpp"

using namespace rspan;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::BadParams;
}

TEST(Json, Instances) {
  const Instance tree = random_tree(12, 4);
  EXPECT_EQ(std::get<WeightedGraph>(instance_from_json(to_json(tree))), std::get<WeightedGraph>(tree));
  const Instance grid = grid_graph(3, 4);
  EXPECT_EQ(std::get<PlaneGraph>(instance_from_json(to_json(grid))), std::get<PlaneGraph>(grid));
  const Instance metric = layered_metric(12, 3, 2.0);
  EXPECT_EQ(std::get<FiniteMetric>(instance_from_json(to_json(metric))), std::get<FiniteMetric>(metric));
}

TEST(Json, RejectsMalformed) {
  EXPECT_EQ(code_of([] { parse_json("{not json"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { instance_from_json(json{{"type", "banana"}}); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { metric_from_json(json{{"type", "metric"}, {"n", 2}}); }), ErrorCode::ParseError);
  json g = to_json(random_tree(5, 1));
  g["edges"].push_back(json::array({0, 9, 1.0}));
  EXPECT_EQ(code_of([&] { graph_from_json(g); }), ErrorCode::ParseError);
}

TEST(Json, Cover) {
  const Cover c = tree_cover(random_tree(20, 2), 0.5);
  EXPECT_EQ(cover_from_json(to_json(c)), c);
}

TEST(Json, SpannersRebuildAndCheckEdges) {
  for (const Spanner& s : {constellation(40, 0.25, 3), build_g2t(100, 0.25, 2, 4), build_g2t_minus_1(64, 0.5, 2, 5)}) {
    EXPECT_EQ(spanner_from_json(to_json(s)), s);
    json j = to_json(s);
    j["edges"].erase(j["edges"].begin());
    EXPECT_EQ(code_of([&] { spanner_from_json(j); }), ErrorCode::ParseError);
  }
}

TEST(Json, ReliableSpanner) {
  ReliableParams p;
  p.t = 2;
  const ReliableSpanner rs = build_reliable(random_tree(25, 6), Family::Tree, Model::Deterministic, p);
  const ReliableSpanner back = reliable_from_json(to_json(rs));
  EXPECT_TRUE(same_reliable(rs, back));
  json j = to_json(rs);
  j["clusters"][0]["seed"] = rs.clusters[0].seed + 1;
  if (rs.clusters[0].sub_mode != "complete") {
    EXPECT_EQ(code_of([&] { reliable_from_json(j); }), ErrorCode::ParseError);
  }
  json k = to_json(rs);
  k["edges"].erase(k["edges"].begin());
  EXPECT_EQ(code_of([&] { reliable_from_json(k); }), ErrorCode::ParseError);
}

TEST(Json, ExpanderReport) {
  const PermutationGraph g = permutation_regular_graph(64, 6, 2);
  const ExpanderReport r = inspect_expander(g.raw, &g.simple);
  const ExpanderReport back = expander_report_from_json(to_json(r));
  EXPECT_EQ(back.n, r.n);
  EXPECT_EQ(back.d, r.d);
  EXPECT_DOUBLE_EQ(back.lambda, r.lambda);
  EXPECT_EQ(back.mixing.violations, r.mixing.violations);
  EXPECT_EQ(back.expansion.p2_checked, r.expansion.p2_checked);
  EXPECT_EQ(back.self_edges.samples, r.self_edges.samples);
  EXPECT_EQ(back.ok(), r.ok());
}

TEST(Csv, DoublesRoundTrip) {
  for (double x : {0.0, 0.1, 1.0 / 3.0, 1e-300, 12345.678, kInf}) EXPECT_EQ(parse_double(format_double(x)), x);
  EXPECT_THROW(parse_double("1.5x"), Error);
}

TEST(Csv, ReportRoundTrip) {
  AttackReport r;
  r.config.trials = 2;
  r.config.attack.size = 3;
  r.rows.resize(2);
  r.rows[0] = {0, "random", 3, 5, 4, 2.0 / 3.0, 1.0 / 3.0, 1.5, 2, 0.0, 0};
  r.rows[1] = {1, "random", 3, 3, 3, 0.0, 0.0, kInf, 2, 0.25, 7};
  r.summary = aggregate(r.rows);
  const auto dir = std::filesystem::temp_directory_path() / ("rspan_io_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "report.csv").string();
  write_report(path, r);
  EXPECT_TRUE(std::filesystem::exists(dir / "report.json"));
  const AttackReport back = read_report(path);
  EXPECT_EQ(back.rows, r.rows);
  EXPECT_EQ(back.summary, r.summary);
  EXPECT_EQ(back.config.attack, r.config.attack);
  EXPECT_EQ(report_csv(back.rows), report_csv(r.rows));
  EXPECT_THROW(report_rows_from_csv("trial,kind\n"), Error);
  std::filesystem::remove_all(dir);
}
