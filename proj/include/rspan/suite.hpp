#pragma once

// The acceptance battery. Each criterion returns one row; the smoke scale
// shrinks instance sizes and trial counts so the whole run stays short.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rspan/attack.hpp"
#include "rspan/composition.hpp"
#include "rspan/cover.hpp"
#include "rspan/expander.hpp"
#include "rspan/generators.hpp"
#include "rspan/io.hpp"
#include "rspan/metric.hpp"
#include "rspan/ramsey.hpp"
#include "rspan/uniform.hpp"

namespace rspan {

struct SuiteOptions {
  bool full = true;  // false: smoke scale
  ConstantMode mode = ConstantMode::Practical;
  std::uint64_t seed = 1;
  std::filesystem::path scratch = std::filesystem::temp_directory_path();
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

namespace detail {

class Detail {
 public:
  template <class T>
  Detail& operator<<(const T& x) {
    ss_ << x;
    return *this;
  }
  std::string str() const { return ss_.str(); }

 private:
  std::ostringstream ss_;
};

inline double log_base(double x, double b) { return std::log(x) / std::log(b); }

// ---- 1 and 2: covers ----

struct CoverCase {
  std::string label;
  FiniteMetric metric;
  Cover cover;
  double envelope = kInf;  // depth envelope, kInf when none applies
};

inline std::vector<CoverCase> cover_cases(const SuiteOptions& o) {
  std::vector<CoverCase> cases;
  for (double eps : {0.5, 1.0}) {
    const int seeds = o.full ? 3 : 1;
    for (int s = 0; s < seeds; ++s) {
      const FiniteMetric m = random_ultrametric(64, derive_seed(o.seed, 100 + s));
      Cover c = hst_cover(hst_from_ultrametric(m, 1.0), eps);
      const double env = std::ceil(log_base(spread(m), 1.0 + eps) - 1e-9) + 1.0;
      cases.push_back({"hst n=64 eps=" + format_double(eps) + " seed=" + std::to_string(s), m, std::move(c), env});
    }
    for (int n : o.full ? std::vector<int>{32, 128} : std::vector<int>{32}) {
      const WeightedGraph tree = random_tree(n, derive_seed(o.seed, 200 + n));
      const FiniteMetric m = shortest_path_metric(tree);
      Cover c = tree_cover(tree, eps);
      const double env = 4.0 / eps * std::log2(spread(m)) * std::log2(n);
      cases.push_back({"tree n=" + std::to_string(n) + " eps=" + format_double(eps), m, std::move(c), env});
    }
    for (int side = 4; side <= (o.full ? 8 : 5); ++side) {
      const PlaneGraph pg = grid_graph(side, side);
      const FiniteMetric m = shortest_path_metric(pg.graph);
      Cover c = planar_cover(pg, eps);
      const int n = side * side;
      const double env = 64.0 / (eps * eps) * std::log2(n) * std::log2(spread(m));
      cases.push_back({"planar " + std::to_string(side) + "x" + std::to_string(side) + " eps=" + format_double(eps), m,
                       std::move(c), env});
    }
  }
  for (int k : {2, 3}) {
    const FiniteMetric u = uniform_metric(o.full ? 64 : 32);
    cases.push_back({"ramsey uniform k=" + std::to_string(k), u, ramsey_cover(u, k, derive_seed(o.seed, 300 + k)), kInf});
    const FiniteMetric l = layered_metric(o.full ? 60 : 30, 5, 2.0);
    cases.push_back({"ramsey layered k=" + std::to_string(k), l, ramsey_cover(l, k, derive_seed(o.seed, 400 + k)), kInf});
  }
  return cases;
}

inline CriterionResult c1_cover_validity(const std::vector<CoverCase>& cases, double build_seconds) {
  CriterionResult r{1, "cover validity battery", true, 0.0, {}};
  const auto start = std::chrono::steady_clock::now();
  int failed = 0;
  Detail d;
  for (const auto& cc : cases) {
    const CoverReport rep = validate_cover(cc.metric, cc.cover, cc.cover.t);
    if (!rep.ok) {
      ++failed;
      d << cc.label << " uncovered=" << rep.uncovered_count << "; ";
    }
  }
  r.seconds = build_seconds + std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.pass = failed == 0 && r.seconds < 60.0;
  d << cases.size() << " covers, " << failed << " invalid, " << r.seconds << " s (budget 60 s)";
  r.detail = d.str();
  return r;
}

inline CriterionResult c2_depth_envelopes(const std::vector<CoverCase>& cases) {
  CriterionResult r{2, "depth envelopes", true, 0.0, {}};
  Detail d;
  double worst_hst = 0.0, worst_tree = 0.0, worst_planar = 0.0;
  for (const auto& cc : cases) {
    if (cc.envelope == kInf) continue;
    const double ratio = cc.cover.depth() / cc.envelope;
    if (cc.label.starts_with("hst")) worst_hst = std::max(worst_hst, ratio);
    if (cc.label.starts_with("tree")) worst_tree = std::max(worst_tree, ratio);
    if (cc.label.starts_with("planar")) worst_planar = std::max(worst_planar, ratio);
    if (cc.cover.depth() > cc.envelope + 1e-9) {
      r.pass = false;
      d << cc.label << " depth " << cc.cover.depth() << " > " << cc.envelope << "; ";
    }
  }
  d << "max depth/envelope: hst " << worst_hst << ", tree " << worst_tree << ", planar " << worst_planar;
  r.detail = d.str();
  return r;
}

// ---- 3: ball depth ----

inline CriterionResult c3_ball_depth() {
  CriterionResult r{3, "ball-depth lemma", true, 0.0, {}};
  const PlaneGraph path = grid_graph(1, 64);
  std::vector<int> p(64);
  for (int i = 0; i < 64; ++i) p[static_cast<std::size_t>(i)] = i;
  Detail d;
  for (double R : {2.0, 4.0, 8.0}) {
    const BallDepthReport rep = ball_depth_check(path, p, 1.0, R);
    const bool ok = rep.max_degree <= 2.0 * R + 1.0;
    r.pass = r.pass && ok;
    d << "R=" << R << ": " << rep.max_degree << " <= " << 2.0 * R + 1.0 << (ok ? "" : " FAILED") << "; ";
  }
  r.detail = d.str();
  return r;
}

// ---- 4: constellations ----

inline CriterionResult c4_constellation(const SuiteOptions& o) {
  CriterionResult r{4, "constellation reliability", true, 0.0, {}};
  const int n = 1000;
  const double theta = 0.25;
  const int seeds = o.full ? 1000 : 200;
  Rng rng(derive_seed(o.seed, 4));
  const PointSet B = rng.subset(n, 100);
  std::vector<double> loss(static_cast<std::size_t>(seeds));
  parallel_for(seeds, [&](int i) {
    const Spanner s = constellation(n, theta, derive_seed(o.seed, 4000 + static_cast<std::uint64_t>(i)));
    loss[static_cast<std::size_t>(i)] = constellation_damage(s, B).loss;
  });
  double mean = 0.0;
  for (double x : loss) mean += x;
  mean /= seeds;
  // Residual check on a few samples: survivors outside B_hat within 2 hops.
  long long bad = 0;
  for (int i = 0; i < 3; ++i) {
    const Spanner s = constellation(n, theta, derive_seed(o.seed, 4000 + static_cast<std::uint64_t>(i)));
    const DamageResult dmg = constellation_damage(s, B);
    std::vector<std::pair<int, int>> pairs;
    residual_hop_check(s.graph, B, 2, &pairs);
    const auto skip = membership(n, dmg.B_hat);
    for (auto [u, v] : pairs) bad += skip[static_cast<std::size_t>(u)] || skip[static_cast<std::size_t>(v)] ? 0 : 1;
  }
  const Spanner fixed = constellation(n, theta, derive_seed(o.seed, 4999));
  AttackSpec spec{AttackKind::CenterTargeted, constellation_size(theta), 0.0, 2, derive_seed(o.seed, 41)};
  const PointSet Bc = make_attack(spec, attack_target(fixed));
  const double adaptive = constellation_damage(fixed, Bc).loss;
  const double expected = (n - 1.0 - 13.0) / 13.0;
  const bool adaptive_ok = std::abs(adaptive - expected) <= 1.0 / 13.0 + 1e-12;
  r.pass = mean <= theta && bad == 0 && adaptive_ok;
  Detail d;
  d << "k=" << constellation_size(theta) << ", mean loss " << mean << " over " << seeds
    << " seeds (<= 0.25), residual violations " << bad << ", center-targeted loss " << adaptive << " vs "
    << expected << " +- 1/13";
  r.detail = d.str();
  return r;
}

// ---- 5 and 6: permutation graphs ----

struct SpectralCase {
  int d = 0;
  std::uint64_t seed = 0;
  double lambda = 0.0;
  MixingReport mixing;
};

inline std::vector<SpectralCase> spectral_cases(const SuiteOptions& o) {
  const int n = o.full ? 4096 : 1024;
  const int seeds = o.full ? 5 : 2;
  std::vector<SpectralCase> cases;
  for (int d : {16, 64}) {
    for (int s = 0; s < seeds; ++s) cases.push_back({d, derive_seed(o.seed, 500 + 10 * d + s), 0.0, {}});
  }
  parallel_for(static_cast<int>(cases.size()), [&](int i) {
    auto& c = cases[static_cast<std::size_t>(i)];
    const PermutationGraph g = permutation_regular_graph(n, c.d, c.seed);
    EigenOptions eo;
    eo.seed = c.seed;
    c.lambda = second_eigenvalue(g.raw, eo);
    c.mixing = mixing_check(g.raw, c.lambda, 1000, derive_seed(c.seed, 6));
  });
  return cases;
}

inline CriterionResult c5_spectral(const std::vector<SpectralCase>& cases, double seconds, bool full) {
  CriterionResult r{5, "spectral property", true, seconds, {}};
  Detail d;
  double worst = 0.0;
  for (const auto& c : cases) {
    const double practical = 3.0 / std::sqrt(static_cast<double>(c.d));
    const double paper = 41000.0 / std::sqrt(static_cast<double>(c.d));
    worst = std::max(worst, c.lambda * std::sqrt(static_cast<double>(c.d)));
    if (!(c.lambda <= practical) || !(c.lambda <= paper)) {
      r.pass = false;
      d << "d=" << c.d << " lambda " << c.lambda << " > " << practical << "; ";
    }
  }
  r.pass = r.pass && (!full || seconds < 60.0);
  d << cases.size() << " graphs, max lambda*sqrt(d) = " << worst << " (<= 3), " << seconds << " s (budget 60 s)";
  r.detail = d.str();
  return r;
}

inline CriterionResult c6_mixing(const std::vector<SpectralCase>& cases) {
  CriterionResult r{6, "mixing lemma", true, 0.0, {}};
  long long samples = 0, violations = 0;
  double worst = 0.0;
  for (const auto& c : cases) {
    samples += c.mixing.samples;
    violations += c.mixing.violations;
    worst = std::max(worst, c.mixing.worst_ratio);
  }
  r.pass = violations == 0;
  Detail d;
  d << samples << " (S,T) samples, " << violations << " violations, worst deviation/bound " << worst;
  r.detail = d.str();
  return r;
}

// ---- 7 and 8: uniform expanders ----

struct ShadowRun {
  PointSet B;
  DamageResult dmg;
  double eps = 0.0;
  long long fixpoint_violations = 0;
  bool small = false;
  HopReport hops;
  long long survivor_violations = 0;
};

/// Counts survivor pairs outside B_hat that the hop check flagged.
inline long long survivor_violations(const Spanner& s, const PointSet& B_hat, int hop_bound, HopReport& rep) {
  std::vector<std::pair<int, int>> pairs;
  rep = residual_hop_check(s.graph, B_hat, hop_bound, &pairs);
  return static_cast<long long>(pairs.size());
}

inline std::vector<ShadowRun> shadow_runs(const Spanner& s, int attacks, int size, std::uint64_t seed) {
  std::vector<ShadowRun> runs(static_cast<std::size_t>(attacks));
  const int hop = s.mode == SpannerMode::Expander2t ? 2 * s.t : 2 * s.t - 1;
  parallel_for(attacks, [&](int i) {
    auto& run = runs[static_cast<std::size_t>(i)];
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    run.B = rng.subset(s.n(), size);
    run.dmg = shadow_damage(s, run.B);
    if (s.mode == SpannerMode::Expander2t) {
      // Fixpoint recomputed from scratch: raw incidences into B_hat.
      run.eps = shadow_threshold(s.n(), run.B.size(), s.theta, s.lambda);
      const auto in_hat = membership(s.n(), run.dmg.B_hat);
      for (int u = 0; u < s.n(); ++u) {
        if (in_hat[static_cast<std::size_t>(u)]) continue;
        long long e = 0;
        for (int v : s.raw.adj[static_cast<std::size_t>(u)]) e += in_hat[static_cast<std::size_t>(v)];
        if (!(static_cast<double>(e) < run.eps * s.d)) ++run.fixpoint_violations;
      }
    }
    run.small = static_cast<double>(run.dmg.B_hat.size() - run.B.size()) <= s.theta * run.B.size() + 1e-9;
    run.survivor_violations = survivor_violations(s, run.dmg.B_hat, hop, run.hops);
  });
  return runs;
}

inline CriterionResult c7_shadow(const Spanner& s, const std::vector<ShadowRun>& runs) {
  CriterionResult r{7, "shadow closure", true, 0.0, {}};
  long long fix = 0;
  int small = 0;
  int guards = 0;
  for (const auto& run : runs) {
    fix += run.fixpoint_violations;
    small += run.small ? 1 : 0;
    guards += run.dmg.guard ? 1 : 0;
  }
  const int need = static_cast<int>(std::ceil(0.9 * static_cast<double>(runs.size()) - 1e-9));
  r.pass = fix == 0 && small >= need;
  Detail d;
  d << "n=" << s.n() << " d=" << s.d << (s.clamped ? " (clamped: complete graph)" : "") << " lambda=" << s.lambda
    << ": fixpoint violations " << fix << ", |S| <= theta|B| in " << small << "/" << runs.size() << " (need " << need
    << "), guards " << guards;
  r.detail = d.str();
  return r;
}

inline CriterionResult c8_residual_uniform(const Spanner& even, const std::vector<ShadowRun>& even_runs,
                                           const Spanner& odd, const std::vector<ShadowRun>& odd_runs, double seconds,
                                           bool full) {
  CriterionResult r{8, "residual hops, uniform", true, seconds, {}};
  long long ev = 0, ov = 0;
  int eh = 0, oh = 0;
  for (const auto& run : even_runs) {
    ev += run.survivor_violations;
    eh = std::max(eh, run.hops.max_hops < 0 ? 1 << 20 : run.hops.max_hops);
  }
  for (const auto& run : odd_runs) {
    ov += run.survivor_violations;
    oh = std::max(oh, run.hops.max_hops < 0 ? 1 << 20 : run.hops.max_hops);
  }
  r.pass = ev == 0 && ov == 0 && (!full || seconds < 120.0);
  Detail d;
  bool inner_clamped = false;
  for (const auto& in : odd.inner) inner_clamped = inner_clamped || in.clamped;
  d << "2t=" << 2 * even.t << " on n=" << even.n() << (even.clamped ? " (clamped)" : "") << ": " << ev
    << " violations, max hops " << eh << "; 2t-1=" << 2 * odd.t - 1 << " on n=" << odd.n() << " (" << odd.blocks.size()
    << " blocks, d_bip " << odd.d_bip << (inner_clamped ? ", inner clamped" : "") << "): " << ov
    << " violations, max hops " << oh << "; " << seconds << " s (budget 120 s)";
  r.detail = d.str();
  return r;
}

// ---- 9: composed spanners ----

inline CriterionResult c9_composed(const SuiteOptions& o) {
  CriterionResult r{9, "composed spanners", true, 0.0, {}};
  Detail d;
  auto note = [&](const char* tag, bool ok, const std::string& what) {
    r.pass = r.pass && ok;
    d << tag << " " << what << (ok ? "" : " FAILED") << "; ";
  };
  ReliableParams p;
  p.theta = 0.25;
  p.t = 2;
  p.constants = o.mode;
  const int n = 128;
  const Instance tree = random_tree(n, derive_seed(o.seed, 9));
  {
    p.eps = 0.5;
    p.seed = derive_seed(o.seed, 91);
    const ReliableSpanner rs = build_reliable(tree, Family::Tree, Model::Oblivious, p);
    const VerificationReport v = verify_residual(rs.graph, rs.metric, {}, {}, 3.5, rs.hop_adv);
    std::ostringstream w;
    w << "tree oblivious worst stretch " << v.worst_stretch << " <= 3.5";
    note("(a)", v.ok() && v.worst_stretch <= 3.5 + 1e-9, w.str());
  }
  {
    p.eps = 0.5;
    p.seed = derive_seed(o.seed, 92);
    p.parity = Parity::Odd;
    const ReliableSpanner rs = build_reliable(tree, Family::Tree, Model::Deterministic, p);
    ExperimentConfig cfg;
    cfg.attack = {AttackKind::Random, n / 10, 0.0, 2, derive_seed(o.seed, 93)};
    cfg.trials = o.full ? 20 : 5;
    cfg.seed = p.seed;
    const AttackReport rep = run_experiment([&](std::uint64_t) { return rs; }, cfg);
    double worst = 0.0;
    bool ok = rep.summary.violations == 0;
    for (const auto& row : rep.rows) worst = std::max(worst, row.worst_stretch);
    ok = ok && worst <= 6.0 + 1e-9 && rep.summary.max_loss_constructive <= 5.0 * p.theta + 1e-9;
    std::ostringstream w;
    w << "tree deterministic worst stretch " << worst << " <= 6, max loss " << rep.summary.max_loss_constructive
      << " <= 1.25, greedy mean loss " << rep.summary.mean_loss_greedy;
    note("(b)", ok, w.str());
  }
  {
    p.eps = 0.5;
    p.seed = derive_seed(o.seed, 94);
    const Instance grid = grid_graph(6, 6);
    const ReliableSpanner rs = build_reliable(grid, Family::Planar, Model::Oblivious, p);
    const VerificationReport v = verify_residual(rs.graph, rs.metric, {}, {}, 4.0, rs.hop_adv);
    std::ostringstream w;
    w << "planar oblivious worst stretch " << v.worst_stretch << " <= 4";
    note("(c)", v.ok() && v.worst_stretch <= 4.0 + 1e-9, w.str());
  }
  {
    p.eps = 1.0;
    p.seed = derive_seed(o.seed, 95);
    const Instance um = random_ultrametric(64, derive_seed(o.seed, 96));
    const ReliableSpanner rs = build_reliable(um, Family::Ultrametric, Model::Oblivious, p);
    const VerificationReport v = verify_residual(rs.graph, rs.metric, {}, {}, 3.0, rs.hop_adv);
    std::ostringstream w;
    w << "ultrametric oblivious worst stretch " << v.worst_stretch << " <= 3";
    note("(d)", v.ok() && v.worst_stretch <= 3.0 + 1e-9, w.str());
  }
  r.detail = d.str();
  return r;
}

// ---- 10: lower bounds ----

inline CriterionResult c10_lower_bounds(const SuiteOptions& o) {
  CriterionResult r{10, "lower-bound demonstrations", true, 0.0, {}};
  Detail d;
  const int n = 60, h = 5;
  const FiniteMetric m = layered_metric(n, h, 2.0);
  std::vector<std::pair<std::string, Cover>> covers;
  for (double eps : {0.5, 1.0}) {
    covers.emplace_back("hst eps=" + format_double(eps), hst_cover(hst_from_ultrametric(m, 1.0), eps));
  }
  {
    CoverBuilder cb(m, 1.0);
    PointSet prefix;
    for (int level = 0; level < h; ++level) {
      for (int i = 0; i < n / h; ++i) prefix.push_back(level * (n / h) + i);
      cb.add(prefix, {"nested", -1, 0.0, level});
    }
    covers.emplace_back("nested", cb.take());
  }
  for (const auto& [label, c] : covers) {
    const bool valid = validate_cover(m, c, 2.0).ok;
    const bool big = c.size() >= n * h / 2;
    r.pass = r.pass && valid && big;
    d << label << " size " << c.size() << (valid ? "" : " INVALID") << (big ? "" : " < 150") << "; ";
  }
  struct Case {
    int n, deg;
  };
  for (Case c : {Case{4096, 2}, Case{o.full ? 16384 : 4096, 4}}) {
    const PermutationGraph g = permutation_regular_graph(c.n, c.deg, derive_seed(o.seed, 1000 + c.deg));
    const LowerBoundDemo demo = high_degree_demo(g.simple, 2);
    const bool ok = demo.sparse && demo.fires();
    r.pass = r.pass && ok;
    d << "d=" << c.deg << " n=" << c.n << ": edges " << demo.edges << " < " << demo.delta * c.n / 8.0 << ", |B|="
      << demo.attacked << ", max 2-hop ball " << demo.max_ball << (ok ? "" : " FAILED") << "; ";
  }
  r.detail = d.str();
  return r;
}

// ---- 11: determinism and round trips ----

inline CriterionResult c11_determinism(const SuiteOptions& o) {
  CriterionResult r{11, "determinism and round trip", true, 0.0, {}};
  Detail d;
  auto check = [&](const char* what, bool ok) {
    r.pass = r.pass && ok;
    if (!ok) d << what << " FAILED; ";
  };
  ReliableParams p;
  p.constants = o.mode;
  p.seed = derive_seed(o.seed, 11);
  const Instance tree = random_tree(48, derive_seed(o.seed, 111));
  auto build = [&](std::uint64_t seed) {
    ReliableParams q = p;
    q.seed = seed;
    return build_reliable(tree, Family::Tree, Model::Oblivious, q);
  };
  ExperimentConfig cfg;
  cfg.attack = {AttackKind::Random, 5, 0.0, 2, derive_seed(o.seed, 112)};
  cfg.trials = 4;
  cfg.resample = true;
  cfg.seed = p.seed;
  const AttackReport a = run_experiment(build, cfg);
  const AttackReport b = run_experiment(build, cfg);
  check("report rows", report_csv(a.rows) == report_csv(b.rows));

  const auto dir = o.scratch / ("rspan_suite_" + std::to_string(derive_seed(o.seed, 113) % 1000000));
  std::filesystem::create_directories(dir);
  const auto path = [&](const char* name) { return (dir / name).string(); };

  write_json(path("tree.json"), to_json(tree));
  check("graph", std::get<WeightedGraph>(instance_from_json(read_json(path("tree.json")))) == std::get<WeightedGraph>(tree));
  const PlaneGraph grid = grid_graph(4, 5);
  write_json(path("grid.json"), to_json(grid));
  const PlaneGraph grid2 = plane_graph_from_json(read_json(path("grid.json")));
  check("plane graph", grid2.graph == grid.graph && grid2.rotation == grid.rotation);
  const FiniteMetric m = layered_metric(20, 4, 2.0);
  write_json(path("metric.json"), to_json(m));
  check("metric", metric_from_json(read_json(path("metric.json"))) == m);
  const Cover c = planar_cover(grid, 0.5);
  write_json(path("cover.json"), to_json(c));
  check("cover", cover_from_json(read_json(path("cover.json"))) == c);
  const Spanner s2t = build_g2t(64, 0.25, 2, derive_seed(o.seed, 114), o.mode);
  write_json(path("g2t.json"), to_json(s2t));
  check("expander spanner", spanner_from_json(read_json(path("g2t.json"))) == s2t);
  const Spanner s2t1 = build_g2t_minus_1(64, 0.25, 2, derive_seed(o.seed, 115), o.mode);
  write_json(path("g2t1.json"), to_json(s2t1));
  check("block spanner", spanner_from_json(read_json(path("g2t1.json"))) == s2t1);
  const Spanner cst = constellation(64, 0.25, derive_seed(o.seed, 116));
  write_json(path("cst.json"), to_json(cst));
  check("constellation", spanner_from_json(read_json(path("cst.json"))) == cst);
  const ReliableSpanner rs = build(p.seed);
  write_json(path("rs.json"), to_json(rs));
  check("reliable spanner", same_reliable(reliable_from_json(read_json(path("rs.json"))), rs));
  ReliableParams dp = p;
  dp.parity = Parity::Even;
  const ReliableSpanner rd = build_reliable(tree, Family::Tree, Model::Deterministic, dp);
  write_json(path("rd.json"), to_json(rd));
  check("deterministic spanner", same_reliable(reliable_from_json(read_json(path("rd.json"))), rd));
  const PermutationGraph pg = permutation_regular_graph(24, 6, derive_seed(o.seed, 117));
  ExpanderCheckOptions eo;
  eo.mode = o.mode;
  const ExpanderReport er = inspect_expander(pg.raw, &pg.simple, eo);
  write_json(path("er.json"), to_json(er));
  check("expander report", to_json(expander_report_from_json(read_json(path("er.json")))) == to_json(er));
  write_report(path("report.csv"), a);
  const AttackReport a2 = read_report(path("report.csv"));
  check("attack report", a2.rows == a.rows && a2.config.attack == a.config.attack &&
                             to_json(a2.config) == to_json(a.config) &&
                             report_json(a2) == report_json(a));
  std::filesystem::remove_all(dir);
  d << "2 identical experiment runs, 11 file formats checked";
  r.detail = d.str();
  return r;
}

template <class F>
CriterionResult timed(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = f();
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  if (r.seconds == 0.0) r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace detail

/// Runs criteria 1-11 in order, calling `on_row` as each finishes.
inline std::vector<CriterionResult> run_acceptance(const SuiteOptions& o,
                                                   const std::function<void(const CriterionResult&)>& on_row = {}) {
  using namespace detail;
  std::vector<CriterionResult> rows;
  auto emit = [&](CriterionResult r, int id, const char* name) {
    r.id = id;
    if (r.name.empty()) r.name = name;
    if (on_row) on_row(r);
    rows.push_back(std::move(r));
  };
  auto elapsed = [](auto start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  std::vector<CoverCase> covers;
  double cover_seconds = 0.0;
  std::string cover_error;
  {
    const auto start = std::chrono::steady_clock::now();
    try {
      covers = cover_cases(o);
    } catch (const std::exception& e) {
      cover_error = e.what();
    }
    cover_seconds = elapsed(start);
  }
  auto cover_failure = [&]() {
    CriterionResult r;
    r.detail = "exception: " + cover_error;
    return r;
  };
  emit(cover_error.empty() ? timed([&] { return c1_cover_validity(covers, cover_seconds); }) : cover_failure(), 1,
       "cover validity battery");
  emit(cover_error.empty() ? timed([&] { return c2_depth_envelopes(covers); }) : cover_failure(), 2,
       "depth envelopes");
  emit(timed([] { return c3_ball_depth(); }), 3, "ball-depth lemma");
  emit(timed([&] { return c4_constellation(o); }), 4, "constellation reliability");

  std::vector<SpectralCase> spectral;
  CriterionResult c5;
  {
    const auto start = std::chrono::steady_clock::now();
    c5 = timed([&] {
      spectral = spectral_cases(o);
      return c5_spectral(spectral, elapsed(start), o.full);
    });
  }
  emit(c5, 5, "spectral property");
  if (spectral.empty()) {
    CriterionResult r;
    r.detail = "no graphs: " + c5.detail;
    emit(r, 6, "mixing lemma");
  } else {
    emit(timed([&] { return c6_mixing(spectral); }), 6, "mixing lemma");
  }

  const int n_even = o.full ? 1024 : 256;
  const int attacks = o.full ? 20 : 10;
  Spanner even, odd;
  std::vector<ShadowRun> even_runs, odd_runs;
  double even_seconds = 0.0;
  std::string uniform_error;
  try {
    const auto start = std::chrono::steady_clock::now();
    even = build_g2t(n_even, 0.25, 2, derive_seed(o.seed, 7), o.mode);
    even_runs = shadow_runs(even, attacks, n_even / 16, derive_seed(o.seed, 71));
    even_seconds = elapsed(start);
  } catch (const std::exception& e) {
    uniform_error = e.what();
  }
  if (uniform_error.empty()) {
    emit(timed([&] { return c7_shadow(even, even_runs); }), 7, "shadow closure");
  } else {
    CriterionResult r;
    r.detail = "exception: " + uniform_error;
    emit(r, 7, "shadow closure");
  }
  emit(timed([&] {
         if (!uniform_error.empty()) throw std::runtime_error(uniform_error);
         const auto start = std::chrono::steady_clock::now();
         odd = build_g2t_minus_1(256, 0.25, 2, derive_seed(o.seed, 8), o.mode);
         odd_runs = shadow_runs(odd, attacks, 16, derive_seed(o.seed, 81));
         return c8_residual_uniform(even, even_runs, odd, odd_runs, even_seconds + elapsed(start), o.full);
       }),
       8, "residual hops, uniform");
  emit(timed([&] { return c9_composed(o); }), 9, "composed spanners");
  emit(timed([&] { return c10_lower_bounds(o); }), 10, "lower-bound demonstrations");
  emit(timed([&] { return c11_determinism(o); }), 11, "determinism and round trip");
  return rows;
}

inline std::string format_row(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "%-4s %2d  %-28s %8.2fs  ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds);
  return head + r.detail;
}

}  // namespace rspan
