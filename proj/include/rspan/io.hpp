#pragma once

// JSON and CSV file formats. Writers go through a temporary file and a
// rename, so readers never observe partial output.

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "json.hpp"
#include "rspan/attack.hpp"
#include "rspan/composition.hpp"
#include "rspan/cover.hpp"
#include "rspan/expander.hpp"
#include "rspan/generators.hpp"
#include "rspan/graph.hpp"
#include "rspan/metric.hpp"
#include "rspan/planar.hpp"
#include "rspan/uniform.hpp"

namespace rspan {

using json = nlohmann::json;

inline void write_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::BadParams, "cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::BadParams, "write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorCode::BadParams, "cannot move output into " + path + ": " + ec.message());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

inline void expect_type(const json& j, const char* type) {
  if (!j.is_object() || j.value("type", std::string()) != type) {
    throw Error(ErrorCode::ParseError, std::string("expected a '") + type + "' document");
  }
}

/// Runs `f`, turning json access errors into ParseError.
template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

// ---- metric, graphs, instances ----

inline json to_json(const FiniteMetric& m) {
  json rows = json::array();
  for (int i = 0; i < m.n(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.n(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  json j = {{"type", "metric"}, {"n", m.n()}, {"dist", std::move(rows)}};
  if (!m.labels().empty()) j["labels"] = m.labels();
  return j;
}

inline FiniteMetric metric_from_json(const json& j) {
  expect_type(j, "metric");
  return guarded([&] {
    const int n = j.at("n").get<int>();
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    const auto& rows = j.at("dist");
    if (static_cast<int>(rows.size()) != n) throw Error(ErrorCode::ParseError, "distance rows do not match n");
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != n) throw Error(ErrorCode::ParseError, "distance row length differs from n");
      for (const auto& x : row) flat.push_back(x.get<double>());
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return FiniteMetric(n, std::move(flat), std::move(labels));
  });
}

inline json edges_json(const WeightedGraph& g) {
  json e = json::array();
  for (const auto& x : g.edges()) e.push_back(json::array({x.u, x.v, x.w}));
  return e;
}

inline WeightedGraph graph_from_edges(int n, const json& edges) {
  WeightedGraph g(n);
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 3) throw Error(ErrorCode::ParseError, "edge must be [u, v, w]");
    const int u = e[0].get<int>();
    const int v = e[1].get<int>();
    if (u < 0 || u >= n || v < 0 || v >= n) throw Error(ErrorCode::ParseError, "edge endpoint out of range");
    g.add_edge(e[0].get<int>(), e[1].get<int>(), e[2].get<double>());
  }
  return g;
}

inline json to_json(const WeightedGraph& g) { return {{"type", "graph"}, {"n", g.n()}, {"edges", edges_json(g)}}; }

inline WeightedGraph graph_from_json(const json& j) {
  expect_type(j, "graph");
  return guarded([&] { return graph_from_edges(j.at("n").get<int>(), j.at("edges")); });
}

inline json to_json(const PlaneGraph& pg) {
  return {{"type", "plane_graph"}, {"n", pg.n()}, {"edges", edges_json(pg.graph)}, {"rotation", pg.rotation}};
}

inline PlaneGraph plane_graph_from_json(const json& j) {
  expect_type(j, "plane_graph");
  return guarded([&] {
    PlaneGraph pg{graph_from_edges(j.at("n").get<int>(), j.at("edges")),
                  j.at("rotation").get<std::vector<std::vector<int>>>()};
    check_rotation(pg);
    return pg;
  });
}

inline json to_json(const Instance& inst) {
  return std::visit([](const auto& x) { return to_json(x); }, inst);
}

inline Instance instance_from_json(const json& j) {
  const std::string type = j.is_object() ? j.value("type", std::string()) : std::string();
  if (type == "metric") return metric_from_json(j);
  if (type == "graph") return graph_from_json(j);
  if (type == "plane_graph") return plane_graph_from_json(j);
  throw Error(ErrorCode::ParseError, "not an instance document (type '" + type + "')");
}

/// Metric of any instance: graphs give their shortest-path metric.
inline FiniteMetric instance_metric(const Instance& inst) {
  if (const auto* m = std::get_if<FiniteMetric>(&inst)) return *m;
  if (const auto* g = std::get_if<WeightedGraph>(&inst)) return shortest_path_metric(*g);
  return shortest_path_metric(std::get<PlaneGraph>(inst).graph);
}

// ---- covers ----

inline json to_json(const Cover& c) {
  json meta = json::array();
  for (const auto& m : c.meta) {
    meta.push_back({{"kind", m.kind}, {"center", m.center}, {"radius", m.radius}, {"level", m.level}});
  }
  return {{"type", "cover"}, {"t", c.t},           {"n", c.n},       {"clusters", c.clusters},
          {"diam", c.diam},  {"meta", std::move(meta)}, {"info", c.info}};
}

inline Cover cover_from_json(const json& j) {
  expect_type(j, "cover");
  return guarded([&] {
    Cover c;
    c.t = j.at("t").get<double>();
    c.n = j.at("n").get<int>();
    c.clusters = j.at("clusters").get<std::vector<PointSet>>();
    c.diam = j.at("diam").get<std::vector<double>>();
    for (const auto& m : j.at("meta")) {
      c.meta.push_back({m.at("kind").get<std::string>(), m.at("center").get<int>(), m.at("radius").get<double>(),
                        m.at("level").get<int>()});
    }
    c.info = j.at("info").get<std::map<std::string, double>>();
    if (c.meta.size() != c.clusters.size() || c.diam.size() != c.clusters.size()) {
      throw Error(ErrorCode::ParseError, "clusters, diam and meta lengths differ");
    }
    return c;
  });
}

// ---- uniform spanners ----

inline json to_json(const Spanner& s) {
  json j = {{"type", "spanner"},
            {"n", s.n()},
            {"mode", to_string(s.mode)},
            {"theta", s.theta},
            {"t", s.t},
            {"d", s.d},
            {"seed", s.seed},
            {"constants", to_string(s.constants)},
            {"clamped", s.clamped},
            {"edges", edges_json(s.graph)}};
  if (s.mode == SpannerMode::Constellation) j["centers"] = s.centers;
  if (s.mode == SpannerMode::Expander2t) j["lambda"] = s.lambda;
  if (s.mode == SpannerMode::Expander2tMinus1) {
    j["blocks"] = s.blocks;
    j["d_bip"] = s.d_bip;
  }
  return j;
}

/// Rebuilds the spanner from its parameters and checks the stored edges. The
/// balanced blocking coincides with the strict one whenever the latter exists.
inline Spanner spanner_from_json(const json& j) {
  expect_type(j, "spanner");
  return guarded([&] {
    const int n = j.at("n").get<int>();
    const SpannerMode mode = parse_spanner_mode(j.at("mode").get<std::string>());
    const double theta = j.at("theta").get<double>();
    const int t = j.at("t").get<int>();
    const auto seed = j.at("seed").get<std::uint64_t>();
    const ConstantMode cm = parse_constant_mode(j.at("constants").get<std::string>());
    Spanner s = mode == SpannerMode::Constellation ? constellation(n, theta, seed)
                : mode == SpannerMode::Expander2t  ? build_g2t(n, theta, t, seed, cm)
                                                   : build_g2t_minus_1_balanced(n, theta, t, seed, cm);
    if (!(s.graph == graph_from_edges(n, j.at("edges")))) {
      throw Error(ErrorCode::ParseError, "stored edges do not match the recorded construction");
    }
    return s;
  });
}

// ---- reliable spanners ----

inline json to_json(const ReliableSpanner& rs) {
  json clusters = json::array();
  for (const auto& cs : rs.clusters) {
    json c = {{"members", cs.members}, {"sub_mode", cs.sub_mode}, {"seed", cs.seed}};
    if (cs.sub_mode == "constellation") {
      PointSet centers;
      for (int x : cs.local.centers) centers.push_back(cs.members[static_cast<std::size_t>(x)]);
      c["centers"] = centers;
    } else {
      c["d"] = cs.local.d;
      c["lambda"] = cs.local.lambda;
    }
    clusters.push_back(std::move(c));
  }
  return {{"type", "reliable_spanner"},
          {"family", to_string(rs.family)},
          {"model", to_string(rs.model)},
          {"parity", to_string(rs.parity)},
          {"theta", rs.theta},
          {"theta_prime", rs.theta_prime},
          {"t", rs.t},
          {"eps", rs.eps},
          {"seed", rs.seed},
          {"constants", to_string(rs.constants)},
          {"cover_t", rs.cover_t},
          {"cover_depth", rs.cover_depth},
          {"delta_adv", rs.delta_adv},
          {"hop_adv", rs.hop_adv},
          {"improved_bound", rs.improved_bound},
          {"improved", rs.improved},
          {"metric", to_json(rs.metric)},
          {"edges", edges_json(rs.graph)},
          {"clusters", std::move(clusters)}};
}

/// Cluster spanners are rebuilt from their recorded mode and seed; the union
/// must reproduce the stored edge list.
inline ReliableSpanner reliable_from_json(const json& j) {
  expect_type(j, "reliable_spanner");
  return guarded([&] {
    ReliableSpanner rs;
    rs.family = parse_family(j.at("family").get<std::string>());
    rs.model = parse_model(j.at("model").get<std::string>());
    rs.parity = parse_parity(j.at("parity").get<std::string>());
    rs.theta = j.at("theta").get<double>();
    rs.theta_prime = j.at("theta_prime").get<double>();
    rs.t = j.at("t").get<int>();
    rs.eps = j.at("eps").get<double>();
    rs.seed = j.at("seed").get<std::uint64_t>();
    rs.constants = parse_constant_mode(j.at("constants").get<std::string>());
    rs.cover_t = j.at("cover_t").get<double>();
    rs.cover_depth = j.at("cover_depth").get<int>();
    rs.delta_adv = j.at("delta_adv").get<double>();
    rs.hop_adv = j.at("hop_adv").get<int>();
    rs.improved_bound = j.at("improved_bound").get<double>();
    rs.improved = j.at("improved").get<bool>();
    rs.metric = metric_from_json(j.at("metric"));
    rs.graph = graph_from_edges(rs.metric.n(), j.at("edges"));
    for (const auto& c : j.at("clusters")) {
      ClusterSpanner cs;
      cs.members = c.at("members").get<PointSet>();
      cs.sub_mode = c.at("sub_mode").get<std::string>();
      cs.seed = c.at("seed").get<std::uint64_t>();
      for (int p : cs.members) {
        if (p < 0 || p >= rs.metric.n()) throw Error(ErrorCode::ParseError, "cluster member out of range");
      }
      cs.local = build_cluster_spanner(cs.sub_mode, static_cast<int>(cs.members.size()), rs.theta_prime, rs.t,
                                       cs.seed, rs.constants);
      rs.clusters.push_back(std::move(cs));
    }
    const WeightedGraph check = union_graph(rs.metric, rs.clusters);
    if (!(check == rs.graph)) throw Error(ErrorCode::ParseError, "stored edges do not match the cluster spanners");
    return rs;
  });
}

inline bool same_reliable(const ReliableSpanner& a, const ReliableSpanner& b) {
  if (!(a.metric == b.metric && a.graph == b.graph && a.family == b.family && a.model == b.model &&
        a.parity == b.parity && a.theta == b.theta && a.theta_prime == b.theta_prime && a.t == b.t &&
        a.eps == b.eps && a.seed == b.seed && a.constants == b.constants && a.cover_t == b.cover_t &&
        a.cover_depth == b.cover_depth && a.delta_adv == b.delta_adv && a.hop_adv == b.hop_adv &&
        a.improved_bound == b.improved_bound && a.improved == b.improved && a.clusters.size() == b.clusters.size())) {
    return false;
  }
  for (std::size_t i = 0; i < a.clusters.size(); ++i) {
    const auto& x = a.clusters[i];
    const auto& y = b.clusters[i];
    if (!(x.members == y.members && x.sub_mode == y.sub_mode && x.seed == y.seed && x.local == y.local)) return false;
  }
  return true;
}

// ---- expander reports ----

inline json to_json(const ExpanderReport& r) {
  return {{"type", "expander_report"},
          {"n", r.n},
          {"d", r.d},
          {"constants", to_string(r.mode)},
          {"lambda", r.lambda},
          {"lambda_simple", r.lambda_simple},
          {"spectral_bound", r.spectral_bound},
          {"mixing",
           {{"samples", r.mixing.samples},
            {"violations", r.mixing.violations},
            {"worst_ratio", r.mixing.worst_ratio},
            {"worst_s", r.mixing.worst_s},
            {"worst_t", r.mixing.worst_t}}},
          {"expansion",
           {{"mode", r.expansion.mode == ExpansionMode::Exhaustive ? "exhaustive" : "sampled"},
            {"p1_threshold", r.expansion.p1_threshold},
            {"p2_threshold", r.expansion.p2_threshold},
            {"p1_checked", r.expansion.p1_checked},
            {"p1_failures", r.expansion.p1_failures},
            {"p2_checked", r.expansion.p2_checked},
            {"p2_failures", r.expansion.p2_failures},
            {"p2_worst_ratio", r.expansion.p2_worst_ratio},
            {"p1_witness", r.expansion.p1_witness},
            {"p2_witness", r.expansion.p2_witness}}},
          {"self_edges",
           {{"samples", r.self_edges.samples},
            {"rejected", r.self_edges.rejected},
            {"violations", r.self_edges.violations},
            {"worst_ratio", r.self_edges.worst_ratio},
            {"witness", r.self_edges.witness}}}};
}

inline ExpanderReport expander_report_from_json(const json& j) {
  expect_type(j, "expander_report");
  return guarded([&] {
    ExpanderReport r;
    r.n = j.at("n").get<int>();
    r.d = j.at("d").get<int>();
    r.mode = parse_constant_mode(j.at("constants").get<std::string>());
    r.lambda = j.at("lambda").get<double>();
    r.lambda_simple = j.at("lambda_simple").get<double>();
    r.spectral_bound = j.at("spectral_bound").get<double>();
    const auto& m = j.at("mixing");
    r.mixing.samples = m.at("samples").get<int>();
    r.mixing.violations = m.at("violations").get<int>();
    r.mixing.worst_ratio = m.at("worst_ratio").get<double>();
    r.mixing.worst_s = m.at("worst_s").get<PointSet>();
    r.mixing.worst_t = m.at("worst_t").get<PointSet>();
    const auto& e = j.at("expansion");
    r.expansion.mode = e.at("mode").get<std::string>() == "exhaustive" ? ExpansionMode::Exhaustive
                                                                        : ExpansionMode::Sampled;
    r.expansion.p1_threshold = e.at("p1_threshold").get<int>();
    r.expansion.p2_threshold = e.at("p2_threshold").get<int>();
    r.expansion.p1_checked = e.at("p1_checked").get<long long>();
    r.expansion.p1_failures = e.at("p1_failures").get<long long>();
    r.expansion.p2_checked = e.at("p2_checked").get<long long>();
    r.expansion.p2_failures = e.at("p2_failures").get<long long>();
    r.expansion.p2_worst_ratio = e.at("p2_worst_ratio").get<double>();
    r.expansion.p1_witness = e.at("p1_witness").get<PointSet>();
    r.expansion.p2_witness = e.at("p2_witness").get<PointSet>();
    const auto& s = j.at("self_edges");
    r.self_edges.samples = s.at("samples").get<int>();
    r.self_edges.rejected = s.at("rejected").get<int>();
    r.self_edges.violations = s.at("violations").get<int>();
    r.self_edges.worst_ratio = s.at("worst_ratio").get<double>();
    r.self_edges.witness = s.at("witness").get<PointSet>();
    return r;
  });
}

// ---- attack reports ----

/// Shortest decimal form that reads back to the same double.
inline std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
  if (s == "inf") return kInf;
  if (s == "-inf") return -kInf;
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw Error(ErrorCode::ParseError, "bad number '" + s + "'");
  return x;
}

inline const char* kReportColumns =
    "trial,kind,b,bhat_constructive,bhat_greedy,loss_constructive,loss_greedy,worst_stretch,worst_hops,seconds";

inline std::string report_csv(const std::vector<AttackRow>& rows) {
  std::string out = std::string(kReportColumns) + "\n";
  for (const auto& r : rows) {
    out += std::to_string(r.trial) + "," + r.kind + "," + std::to_string(r.b) + "," +
           std::to_string(r.bhat_constructive) + "," + std::to_string(r.bhat_greedy) + "," +
           format_double(r.loss_constructive) + "," + format_double(r.loss_greedy) + "," +
           format_double(r.worst_stretch) + "," + std::to_string(r.worst_hops) + "," + format_double(r.seconds) + "\n";
  }
  return out;
}

inline std::vector<AttackRow> report_rows_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kReportColumns) throw Error(ErrorCode::ParseError, "unexpected CSV header");
  std::vector<AttackRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() != 10) throw Error(ErrorCode::ParseError, "CSV row needs 10 fields");
    AttackRow r;
    try {
      r.trial = std::stoi(f[0]);
      r.kind = f[1];
      r.b = std::stoi(f[2]);
      r.bhat_constructive = std::stoi(f[3]);
      r.bhat_greedy = std::stoi(f[4]);
      r.worst_hops = std::stoi(f[8]);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad integer in CSV row");
    }
    r.loss_constructive = parse_double(f[5]);
    r.loss_greedy = parse_double(f[6]);
    r.worst_stretch = parse_double(f[7]);
    r.seconds = parse_double(f[9]);
    rows.push_back(std::move(r));
  }
  return rows;
}

inline json to_json(const ExperimentConfig& c) {
  return {{"kind", to_string(c.attack.kind)},
          {"size", c.attack.size},
          {"threshold", c.attack.threshold},
          {"attack_t", c.attack.t},
          {"attack_seed", c.attack.seed},
          {"trials", c.trials},
          {"resample", c.resample},
          {"greedy", c.greedy},
          {"timing", c.timing},
          {"seed", c.seed},
          {"constants", c.constants}};
}

inline ExperimentConfig experiment_config_from_json(const json& j) {
  return guarded([&] {
    ExperimentConfig c;
    c.attack.kind = parse_attack_kind(j.at("kind").get<std::string>());
    c.attack.size = j.at("size").get<int>();
    c.attack.threshold = j.at("threshold").get<double>();
    c.attack.t = j.at("attack_t").get<int>();
    c.attack.seed = j.at("attack_seed").get<std::uint64_t>();
    c.trials = j.at("trials").get<int>();
    c.resample = j.at("resample").get<bool>();
    c.greedy = j.at("greedy").get<bool>();
    c.timing = j.at("timing").get<bool>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.constants = j.at("constants").get<std::string>();
    return c;
  });
}

/// Config echo written next to the CSV: config, aggregates and violations.
inline json report_json(const AttackReport& r, const json& extra = json::object()) {
  const auto& a = r.summary;
  json j = {{"type", "attack_report"},
            {"config", to_json(r.config)},
            {"summary",
             {{"trials", a.trials},
              {"mean_loss_constructive", a.mean_loss_constructive},
              {"max_loss_constructive", a.max_loss_constructive},
              {"mean_loss_greedy", a.mean_loss_greedy},
              {"max_loss_greedy", a.max_loss_greedy},
              {"max_worst_stretch", a.max_worst_stretch},
              {"max_worst_hops", a.max_worst_hops},
              {"violations", a.violations},
              {"greedy_larger", a.greedy_larger}}}};
  json v = json::array();
  for (const auto& row : r.rows) v.push_back(row.violations);
  j["row_violations"] = std::move(v);
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  return j;
}

inline std::string sidecar_path(const std::string& csv_path) {
  std::filesystem::path p(csv_path);
  p.replace_extension(".json");
  return p.string();
}

inline void write_report(const std::string& csv_path, const AttackReport& r, const json& extra = json::object()) {
  write_atomic(csv_path, report_csv(r.rows));
  write_atomic(sidecar_path(csv_path), report_json(r, extra).dump(2) + "\n");
}

inline AttackReport read_report(const std::string& csv_path) {
  AttackReport r;
  r.rows = report_rows_from_csv(read_file(csv_path));
  const json j = parse_json(read_file(sidecar_path(csv_path)));
  expect_type(j, "attack_report");
  r.config = experiment_config_from_json(j.at("config"));
  const auto v = guarded([&] { return j.at("row_violations").get<std::vector<long long>>(); });
  if (v.size() != r.rows.size()) throw Error(ErrorCode::ParseError, "row violation count mismatch");
  for (std::size_t i = 0; i < v.size(); ++i) r.rows[i].violations = v[i];
  r.summary = aggregate(r.rows);
  return r;
}

// ---- generic helpers ----

inline void write_json(const std::string& path, const json& j) { write_atomic(path, j.dump(2) + "\n"); }

inline json read_json(const std::string& path) { return parse_json(read_file(path)); }

}  // namespace rspan
