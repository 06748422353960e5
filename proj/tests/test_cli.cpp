#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "rspan/cli.hpp"

using namespace rspan;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("rspan_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(const std::vector<std::string>& args) {
    out_.str("");
    err_.str("");
    return dispatch(args, out_, err_);
  }

  std::filesystem::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}), 2);
  EXPECT_EQ(run({"frobnicate"}), 2);
  EXPECT_EQ(run({"gen", "--kind", "nope", "--out", path("x.json")}), 2);
  EXPECT_EQ(run({"cover", "--method", "tree", "--in", path("missing.json"), "--out", path("c.json")}), 2);
  EXPECT_FALSE(err_.str().empty());
  EXPECT_EQ(run({"--help"}), 0);
}

TEST_F(Cli, CoverPipeline) {
  ASSERT_EQ(run({"gen", "--kind", "random_tree", "--n", "20", "--seed", "3", "--out", path("tree.json")}), 0);
  ASSERT_EQ(run({"cover", "--method", "tree", "--eps", "0.5", "--in", path("tree.json"), "--out", path("c.json")}), 0);
  EXPECT_EQ(run({"cover-check", "--in", path("c.json"), "--out", path("r.json")}), 0);
  EXPECT_TRUE(read_json(path("r.json")).at("ok").get<bool>());
  EXPECT_EQ(run({"cover", "--method", "planar", "--in", path("tree.json"), "--out", path("p.json")}), 2);

  json c = read_json(path("c.json"));
  for (const char* key : {"clusters", "diam", "meta"}) c[key] = json::array({c[key][0]});
  write_json(path("broken.json"), c);
  EXPECT_EQ(run({"cover-check", "--in", path("broken.json")}), 1);
  EXPECT_NE(out_.str().find("uncovered "), std::string::npos);
}

TEST_F(Cli, SpannerAttackEval) {
  ASSERT_EQ(run({"gen", "--kind", "uniform", "--n", "60", "--out", path("u.json")}), 0);
  ASSERT_EQ(run({"spanner", "--family", "uniform", "--model", "deterministic", "--parity", "even", "--in",
                 path("u.json"), "--out", path("s.json")}),
            0);
  EXPECT_EQ(read_json(path("s.json")).at("type"), "reliable_spanner");
  EXPECT_EQ(run({"attack", "--kind", "random", "--size", "6", "--trials", "3", "--in", path("s.json"), "--out",
                 path("a.csv")}),
            0);
  const AttackReport rep = read_report(path("a.csv"));
  EXPECT_EQ(rep.rows.size(), 3u);
  EXPECT_EQ(rep.summary.violations, 0);
  EXPECT_EQ(run({"eval", "--kind", "random", "--size", "6", "--in", path("s.json")}), 0);
  EXPECT_EQ(run({"attack", "--kind", "center_targeted", "--in", path("s.json"), "--out", path("b.csv")}), 2);
}

TEST_F(Cli, BareSpannerAndExpanderCheck) {
  ASSERT_EQ(run({"spanner", "--family", "uniform", "--method", "expander_2t", "--n", "200", "--t", "2", "--out",
                 path("e.json")}),
            0);
  EXPECT_EQ(read_json(path("e.json")).at("type"), "spanner");
  EXPECT_EQ(run({"expander-check", "--in", path("e.json"), "--out", path("x.json")}), 0);
  EXPECT_EQ(read_json(path("x.json")).at("type"), "expander_report");
  EXPECT_EQ(run({"expander-check", "--n", "128", "--d", "16"}), 0);
  EXPECT_EQ(run({"attack", "--kind", "high_degree", "--in", path("e.json"), "--out", path("h.csv")}), 0);
}
