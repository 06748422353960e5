#pragma once

// Command-line front end. Exit codes: 0 success, 1 violations found,
// 2 usage or input errors. Output files are written atomically.

#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rspan/attack.hpp"
#include "rspan/composition.hpp"
#include "rspan/cover.hpp"
#include "rspan/expander.hpp"
#include "rspan/generators.hpp"
#include "rspan/io.hpp"
#include "rspan/ramsey.hpp"
#include "rspan/suite.hpp"
#include "rspan/uniform.hpp"

namespace rspan {

enum ExitCode { kExitOk = 0, kExitViolation = 1, kExitUsage = 2 };

struct CliConfig {
  std::string kind;
  std::string method;
  std::string model = "oblivious";
  std::string family;
  std::string parity = "odd";
  std::string mode = "practical";
  std::string in;
  std::string out;
  std::string metric_path;
  std::string suite = "smoke";
  int n = 16;
  int h = 4;
  double t = 2.0;
  int k = 2;
  int d = 0;
  int size = 0;
  double eps = 0.5;
  double theta = 0.25;
  double delta = 0.0;
  int trials = 1;
  std::uint64_t seed = 1;
  bool timing = false;
  bool no_greedy = false;
};

namespace detail {

inline int t_int(const CliConfig& c) {
  const int t = static_cast<int>(c.t);
  if (t < 1 || static_cast<double>(t) != c.t) throw Error(ErrorCode::BadParams, "--t must be a positive integer here");
  return t;
}

/// Cover files written by the CLI carry their metric.
inline FiniteMetric cover_metric(const json& doc, const CliConfig& c) {
  if (!c.metric_path.empty()) return instance_metric(instance_from_json(read_json(c.metric_path)));
  if (doc.contains("metric")) return metric_from_json(doc.at("metric"));
  throw Error(ErrorCode::ParseError, "cover has no embedded metric; pass --metric");
}

inline ReliableSpanner load_target(const std::string& path) {
  const json doc = read_json(path);
  const std::string type = doc.is_object() ? doc.value("type", std::string()) : std::string();
  if (type == "spanner") return wrap_uniform(spanner_from_json(doc));
  return reliable_from_json(doc);
}

inline int run_gen(const CliConfig& c, std::ostream& out) {
  GenParams p;
  p.n = c.n;
  p.h = c.h;
  p.t = c.t;
  p.eps = c.eps;
  const Instance inst = gen_instance(c.kind, p, c.seed);
  write_json(c.out, to_json(inst));
  out << "wrote " << c.kind << " instance with " << instance_metric(inst).n() << " points to " << c.out << "\n";
  return kExitOk;
}

inline int run_cover(const CliConfig& c, std::ostream& out) {
  const Instance inst = instance_from_json(read_json(c.in));
  FiniteMetric m = instance_metric(inst);
  Cover cover;
  if (c.method == "hst") {
    if (ultrametric_witness(m)) throw Error(ErrorCode::NotUltrametric, "hst covers need an ultrametric instance");
    cover = hst_cover(hst_from_ultrametric(m, 1.0), c.eps);
  } else if (c.method == "tree") {
    if (!std::holds_alternative<WeightedGraph>(inst)) throw Error(ErrorCode::NotATree, "tree covers need a graph instance");
    cover = tree_cover(std::get<WeightedGraph>(inst), c.eps);
  } else if (c.method == "planar") {
    if (!std::holds_alternative<PlaneGraph>(inst)) throw Error(ErrorCode::NotPlanar, "planar covers need a plane graph");
    cover = planar_cover(std::get<PlaneGraph>(inst), c.eps);
  } else if (c.method == "ramsey") {
    cover = ramsey_cover(m, c.k, c.seed);
  } else {
    throw Error(ErrorCode::BadParams, "unknown cover method '" + c.method + "'");
  }
  json doc = to_json(cover);
  doc["metric"] = to_json(m);
  write_json(c.out, doc);
  out << c.method << " cover: t=" << cover.t << " clusters=" << cover.count() << " size=" << cover.size()
      << " depth=" << cover.depth() << "\n";
  return kExitOk;
}

inline int run_cover_check(const CliConfig& c, bool t_given, std::ostream& out) {
  const json doc = read_json(c.in);
  const Cover cover = cover_from_json(doc);
  const FiniteMetric m = cover_metric(doc, c);
  const double t = t_given ? c.t : cover.t;
  const CoverReport rep = validate_cover(m, cover, t);
  out << "t=" << t << " clusters=" << cover.count() << " size=" << rep.size << " depth=" << rep.depth
      << " uncovered=" << rep.uncovered_count << " stale_diameters=" << rep.bad_cached_diameters << "\n";
  for (auto [p, q] : rep.uncovered) out << "uncovered " << p << " " << q << " d=" << m(p, q) << "\n";
  if (!c.out.empty()) {
    json pairs = json::array();
    for (auto [p, q] : rep.uncovered) pairs.push_back(json::array({p, q}));
    write_json(c.out, {{"type", "cover_report"},
                       {"t", t},
                       {"ok", rep.ok},
                       {"size", rep.size},
                       {"depth", rep.depth},
                       {"uncovered_count", rep.uncovered_count},
                       {"uncovered", pairs}});
  }
  return rep.ok ? kExitOk : kExitViolation;
}

inline int run_spanner(const CliConfig& c, std::ostream& out) {
  const ConstantMode cm = parse_constant_mode(c.mode);
  const Family family = parse_family(c.family);
  if (family == Family::Uniform && !c.method.empty()) {
    const int n = c.in.empty() ? c.n : instance_metric(instance_from_json(read_json(c.in))).n();
    const SpannerMode sm = parse_spanner_mode(c.method);
    const Spanner s = sm == SpannerMode::Constellation ? constellation(n, c.theta, c.seed)
                      : sm == SpannerMode::Expander2t  ? build_g2t(n, c.theta, t_int(c), c.seed, cm)
                                                       : build_g2t_minus_1(n, c.theta, t_int(c), c.seed, cm);
    write_json(c.out, to_json(s));
    out << to_string(sm) << ": n=" << n << " edges=" << s.graph.m() << " d=" << s.d
        << (s.clamped ? " (clamped: complete graph)" : "") << "\n";
    return kExitOk;
  }
  const Instance inst = c.in.empty() && family == Family::Uniform ? Instance(uniform_metric(c.n))
                                                                  : instance_from_json(read_json(c.in));
  ReliableParams p;
  p.eps = c.eps;
  p.theta = c.theta;
  p.t = t_int(c);
  p.parity = parse_parity(c.parity);
  p.k = c.k;
  p.seed = c.seed;
  p.constants = cm;
  const ReliableSpanner rs = build_reliable(inst, family, parse_model(c.model), p);
  write_json(c.out, to_json(rs));
  out << to_string(rs.family) << " " << to_string(rs.model) << ": n=" << rs.n() << " edges=" << rs.graph.m()
      << " clusters=" << rs.clusters.size() << " depth=" << rs.cover_depth << " hops=" << rs.hop_adv
      << " stretch=" << rs.improved_bound << (rs.improved ? " (improved)" : " (generic)") << "\n";
  return kExitOk;
}

inline int run_expander_check(const CliConfig& c, std::ostream& out) {
  ExpanderCheckOptions opt;
  opt.mode = parse_constant_mode(c.mode);
  opt.seed = c.seed;
  if (c.delta > 0.0) opt.delta = c.delta;
  ExpanderReport rep;
  if (!c.in.empty()) {
    const Spanner s = spanner_from_json(read_json(c.in));
    if (s.mode != SpannerMode::Expander2t) throw Error(ErrorCode::WrongMode, "expander-check needs an expander_2t spanner");
    rep = inspect_expander(s.raw, &s.graph, opt);
  } else {
    const int d = c.d > 0 ? c.d : select_degree(c.n, t_int(c), c.theta, opt.mode).d;
    const PermutationGraph g = permutation_regular_graph(c.n, d, c.seed);
    rep = inspect_expander(g.raw, &g.simple, opt);
  }
  out << "n=" << rep.n << " d=" << rep.d << " lambda=" << rep.lambda << " bound=" << rep.spectral_bound
      << " mixing_violations=" << rep.mixing.violations << " p1_failures=" << rep.expansion.p1_failures
      << " p2_failures=" << rep.expansion.p2_failures << " self_edge_violations=" << rep.self_edges.violations
      << "\n";
  if (!c.out.empty()) write_json(c.out, to_json(rep));
  return rep.ok() ? kExitOk : kExitViolation;
}

inline int run_attack(const CliConfig& c, std::ostream& out) {
  const ReliableSpanner rs = load_target(c.in);
  ExperimentConfig cfg;
  cfg.attack.kind = parse_attack_kind(c.kind.empty() ? "random" : c.kind);
  cfg.attack.size = c.size;
  cfg.attack.threshold = c.delta;
  cfg.attack.t = t_int(c);
  cfg.attack.seed = c.seed;
  cfg.trials = c.trials;
  cfg.resample = rs.model == Model::Oblivious && cfg.attack.kind == AttackKind::Random;
  cfg.greedy = !c.no_greedy;
  cfg.timing = c.timing;
  cfg.seed = c.seed;
  cfg.constants = to_string(rs.constants);
  const AttackReport rep = run_experiment(
      [&](std::uint64_t seed) { return cfg.resample ? reseed(rs, seed) : rs; }, cfg);
  write_report(c.out, rep);
  const auto& a = rep.summary;
  out << to_string(cfg.attack.kind) << " x" << a.trials << (cfg.resample ? " (resampled)" : " (fixed)")
      << ": mean loss " << a.mean_loss_constructive << " max loss " << a.max_loss_constructive << " greedy mean "
      << a.mean_loss_greedy << " worst stretch " << a.max_worst_stretch << " violations " << a.violations << "\n";
  return a.violations == 0 ? kExitOk : kExitViolation;
}

inline int run_eval(const CliConfig& c, std::ostream& out) {
  const ReliableSpanner rs = load_target(c.in);
  PointSet B;
  if (c.size > 0 || !c.kind.empty()) {
    AttackSpec spec;
    spec.kind = parse_attack_kind(c.kind.empty() ? "random" : c.kind);
    spec.size = c.size;
    spec.threshold = c.delta;
    spec.t = t_int(c);
    spec.seed = c.seed;
    B = make_attack(spec, attack_target(rs));
  }
  const DamageResult dmg = constructive_damage(rs, B);
  const VerificationReport v = check_attack(rs, B, dmg.B_hat);
  out << "n=" << rs.n() << " |B|=" << B.size() << " |B_hat|=" << dmg.B_hat.size() << " loss=" << dmg.loss
      << " pairs=" << v.pairs << " worst_stretch=" << v.worst_stretch << " (bound " << v.stretch_bound << ")"
      << " worst_hops=" << v.worst_hops << " (bound " << v.hop_bound << ") violations=" << v.violation_count << "\n";
  for (const auto& x : v.violations) {
    out << "violation " << x.p << " " << x.q << " spanner=" << x.spanner_distance << " metric=" << x.metric_distance
        << "\n";
  }
  if (!c.out.empty()) {
    json viol = json::array();
    for (const auto& x : v.violations) viol.push_back(json::array({x.p, x.q, x.spanner_distance, x.metric_distance}));
    write_json(c.out, {{"type", "evaluation"},
                       {"B", B},
                       {"B_hat", dmg.B_hat},
                       {"loss", dmg.loss},
                       {"pairs", v.pairs},
                       {"worst_stretch", v.worst_stretch},
                       {"worst_hops", v.worst_hops},
                       {"stretch_bound", v.stretch_bound},
                       {"hop_bound", v.hop_bound},
                       {"violation_count", v.violation_count},
                       {"violations", viol}});
  }
  return v.ok() ? kExitOk : kExitViolation;
}

inline int run_suite_cmd(const CliConfig& c, std::ostream& out) {
  if (c.suite != "smoke" && c.suite != "acceptance") {
    throw Error(ErrorCode::BadParams, "suite must be smoke or acceptance");
  }
  SuiteOptions o;
  o.full = c.suite == "acceptance";
  o.mode = parse_constant_mode(c.mode);
  o.seed = c.seed;
  out << c.suite << " suite, constants " << c.mode << "\n";
  bool all = true;
  int passed = 0;
  const auto rows = run_acceptance(o, [&](const CriterionResult& r) {
    out << format_row(r) << "\n" << std::flush;
  });
  for (const auto& r : rows) {
    all = all && r.pass;
    passed += r.pass ? 1 : 0;
  }
  out << passed << "/" << rows.size() << " criteria passed\n";
  if (!c.out.empty()) {
    json j = json::array();
    for (const auto& r : rows) {
      j.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"seconds", r.seconds}, {"detail", r.detail}});
    }
    write_json(c.out, {{"type", "suite_report"}, {"suite", c.suite}, {"constants", c.mode}, {"criteria", j}});
  }
  return all ? kExitOk : kExitViolation;
}

}  // namespace detail

/// Parses argv and runs one subcommand.
inline int dispatch(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CliConfig c;
  CLI::App app{"Reliable spanners: covers, expanders, composition and attacks"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  auto seed = [&](CLI::App* s) { s->add_option("--seed", c.seed, "Random seed")->capture_default_str(); };
  auto io = [&](CLI::App* s, bool need_in, bool need_out) {
    auto* i = s->add_option("--in", c.in, "Input file");
    auto* o = s->add_option("--out", c.out, "Output file");
    if (need_in) i->required();
    if (need_out) o->required();
  };
  auto mode = [&](CLI::App* s) {
    s->add_option("--mode", c.mode, "Constant mode")->check(CLI::IsMember({"paper", "practical"}))->capture_default_str();
  };

  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("--kind", c.kind, "uniform, random_tree, grid, random_planar, layered, ultrametric")
      ->required()
      ->check(CLI::IsMember({"uniform", "random_tree", "grid", "random_planar", "layered", "ultrametric"}));
  gen->add_option("--n", c.n, "Number of points")->capture_default_str();
  gen->add_option("--layers", c.h, "Layers of the layered metric")->capture_default_str();
  gen->add_option("--t", c.t, "Stretch parameter of the layered metric")->capture_default_str();
  auto* gen_eps = gen->add_option("--eps", c.eps, "Gap of the layered metric (default 0.01)");
  seed(gen);
  io(gen, false, true);

  auto* cover = app.add_subcommand("cover", "Build a cover of an instance");
  cover->add_option("--method", c.method, "hst, tree, planar, ramsey")
      ->required()
      ->check(CLI::IsMember({"hst", "tree", "planar", "ramsey"}));
  cover->add_option("--eps", c.eps, "Accuracy")->capture_default_str();
  cover->add_option("--k", c.k, "Ramsey parameter")->capture_default_str();
  seed(cover);
  io(cover, true, true);

  auto* check = app.add_subcommand("cover-check", "Validate a cover over all pairs");
  auto* check_t = check->add_option("--t", c.t, "Stretch to validate at (default: the cover's own)");
  check->add_option("--metric", c.metric_path, "Instance file, when the cover carries no metric");
  io(check, true, false);

  auto* span = app.add_subcommand("spanner", "Build a reliable spanner");
  span->add_option("--family", c.family, "uniform, ultrametric, tree, planar, general")
      ->required()
      ->check(CLI::IsMember({"uniform", "ultrametric", "tree", "planar", "general"}));
  span->add_option("--model", c.model, "oblivious or deterministic")
      ->check(CLI::IsMember({"oblivious", "deterministic"}))
      ->capture_default_str();
  span->add_option("--method", c.method, "Bare uniform spanner: constellation, expander_2t, expander_2t_minus_1")
      ->check(CLI::IsMember({"constellation", "expander_2t", "expander_2t_minus_1"}));
  span->add_option("--parity", c.parity, "odd (2t-1 hops) or even (2t hops)")
      ->check(CLI::IsMember({"odd", "even"}))
      ->capture_default_str();
  span->add_option("--n", c.n, "Points of a uniform metric when no --in is given")->capture_default_str();
  span->add_option("--t", c.t, "Hop parameter")->capture_default_str();
  span->add_option("--k", c.k, "Ramsey parameter")->capture_default_str();
  span->add_option("--eps", c.eps, "Accuracy")->capture_default_str();
  span->add_option("--theta", c.theta, "Reliability parameter")->capture_default_str();
  seed(span);
  mode(span);
  io(span, false, true);

  auto* exp = app.add_subcommand("expander-check", "Spectral, mixing and expansion checks");
  exp->add_option("--n", c.n, "Vertices of a fresh permutation graph")->capture_default_str();
  exp->add_option("--d", c.d, "Degree (default: the spanner degree rule)");
  exp->add_option("--t", c.t, "Hop parameter for the degree rule")->capture_default_str();
  exp->add_option("--theta", c.theta, "Reliability parameter for the degree rule")->capture_default_str();
  exp->add_option("--delta", c.delta, "Expansion slack (default 0.5)");
  seed(exp);
  mode(exp);
  io(exp, false, false);

  auto* atk = app.add_subcommand("attack", "Run attack trials against a spanner");
  atk->add_option("--kind", c.kind, "random, high_degree, center_targeted, cluster_targeted")
      ->check(CLI::IsMember({"random", "high_degree", "center_targeted", "cluster_targeted"}));
  atk->add_option("--size", c.size, "Attack size")->capture_default_str();
  atk->add_option("--delta", c.delta, "Degree threshold (default n^{1/t}/4)");
  atk->add_option("--t", c.t, "Hop parameter of the default threshold")->capture_default_str();
  atk->add_option("--trials", c.trials, "Trials")->capture_default_str()->check(CLI::PositiveNumber);
  atk->add_flag("--timing", c.timing, "Record wall time per trial");
  atk->add_flag("--no-greedy", c.no_greedy, "Skip the greedy damaged set");
  seed(atk);
  io(atk, true, true);

  auto* ev = app.add_subcommand("eval", "Verify a spanner's residual after an optional attack");
  ev->add_option("--kind", c.kind, "Attack kind")
      ->check(CLI::IsMember({"random", "high_degree", "center_targeted", "cluster_targeted"}));
  ev->add_option("--size", c.size, "Attack size")->capture_default_str();
  ev->add_option("--delta", c.delta, "Degree threshold");
  ev->add_option("--t", c.t, "Hop parameter of the default threshold")->capture_default_str();
  seed(ev);
  io(ev, true, false);

  auto* suite = app.add_subcommand("suite", "Run the smoke or acceptance battery");
  suite->add_option("name", c.suite, "smoke or acceptance")
      ->check(CLI::IsMember({"smoke", "acceptance"}))
      ->capture_default_str();
  seed(suite);
  mode(suite);
  suite->add_option("--out", c.out, "Summary JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) {
      if (gen_eps->count() == 0) c.eps = 0.01;
      return detail::run_gen(c, out);
    }
    if (*cover) return detail::run_cover(c, out);
    if (*check) return detail::run_cover_check(c, check_t->count() > 0, out);
    if (*span) return detail::run_spanner(c, out);
    if (*exp) return detail::run_expander_check(c, out);
    if (*atk) return detail::run_attack(c, out);
    if (*ev) return detail::run_eval(c, out);
    if (*suite) return detail::run_suite_cmd(c, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

inline int dispatch(const std::vector<std::string>& args, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  std::vector<const char*> argv{"rspan"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace rspan
