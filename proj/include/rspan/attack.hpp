#pragma once

// Attacks on reliable spanners, batch experiments and their reports.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rspan/common.hpp"
#include "rspan/composition.hpp"
#include "rspan/uniform.hpp"

namespace rspan {

enum class AttackKind { Random, HighDegree, CenterTargeted, ClusterTargeted };

inline std::string to_string(AttackKind k) {
  switch (k) {
    case AttackKind::Random: return "random";
    case AttackKind::HighDegree: return "high_degree";
    case AttackKind::CenterTargeted: return "center_targeted";
    case AttackKind::ClusterTargeted: return "cluster_targeted";
  }
  return "unknown";
}

inline AttackKind parse_attack_kind(const std::string& s) {
  for (AttackKind k : {AttackKind::Random, AttackKind::HighDegree, AttackKind::CenterTargeted,
                       AttackKind::ClusterTargeted}) {
    if (to_string(k) == s) return k;
  }
  throw Error(ErrorCode::BadParams, "unknown attack kind '" + s + "'");
}

struct AttackSpec {
  AttackKind kind = AttackKind::Random;
  int size = 0;            // random, center_targeted fill, cluster_targeted
  double threshold = 0.0;  // high_degree; <= 0 means n^{1/t}/4
  int t = 2;               // high_degree default threshold
  std::uint64_t seed = 1;

  friend bool operator==(const AttackSpec&, const AttackSpec&) = default;
};

/// Structure an attack may inspect.
struct AttackTarget {
  const WeightedGraph* graph = nullptr;
  PointSet centers;                 // constellation centers, global ids
  std::vector<PointSet> clusters;   // clusters or blocks, global ids
};

inline AttackTarget attack_target(const Spanner& s) {
  AttackTarget t;
  t.graph = &s.graph;
  if (s.mode == SpannerMode::Constellation) t.centers = s.centers;
  t.clusters = s.blocks;
  return t;
}

inline AttackTarget attack_target(const ReliableSpanner& rs) {
  AttackTarget t;
  t.graph = &rs.graph;
  for (const auto& cs : rs.clusters) {
    if (cs.local.mode == SpannerMode::Constellation && cs.sub_mode == "constellation") {
      for (int c : cs.local.centers) t.centers.push_back(cs.members[static_cast<std::size_t>(c)]);
    }
    t.clusters.push_back(cs.members);
  }
  return t;
}

inline double high_degree_threshold(int n, int t) { return std::pow(static_cast<double>(n), 1.0 / t) / 4.0; }

/// Deterministic per seed. high_degree takes every vertex of degree at least
/// the threshold; center_targeted takes the distinct centers, then random
/// fill up to `size`; cluster_targeted takes whole clusters, smallest first,
/// then random members of the next one.
inline PointSet make_attack(const AttackSpec& spec, const AttackTarget& target) {
  if (!target.graph) throw Error(ErrorCode::SpecMismatch, "attack target has no graph");
  const int n = target.graph->n();
  if (spec.size < 0 || spec.size > n) throw Error(ErrorCode::SpecMismatch, "attack size out of range");
  Rng rng(spec.seed);
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  int count = 0;
  auto take = [&](int v) {
    if (!in[static_cast<std::size_t>(v)]) {
      in[static_cast<std::size_t>(v)] = 1;
      ++count;
    }
  };
  auto fill_random = [&](int size) {
    std::vector<int> order = rng.permutation(n);
    for (int v : order) {
      if (count >= size) break;
      take(v);
    }
  };
  switch (spec.kind) {
    case AttackKind::Random:
      for (int v : rng.subset(n, spec.size)) take(v);
      break;
    case AttackKind::HighDegree: {
      const double delta = spec.threshold > 0.0 ? spec.threshold : high_degree_threshold(n, spec.t);
      for (int v = 0; v < n; ++v) {
        if (static_cast<double>(target.graph->degree(v)) >= delta) take(v);
      }
      break;
    }
    case AttackKind::CenterTargeted:
      if (target.centers.empty()) throw Error(ErrorCode::SpecMismatch, "center_targeted needs constellation centers");
      for (int c : target.centers) take(c);
      fill_random(spec.size);
      break;
    case AttackKind::ClusterTargeted: {
      if (target.clusters.empty()) throw Error(ErrorCode::SpecMismatch, "cluster_targeted needs clusters");
      std::vector<std::size_t> order(target.clusters.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return target.clusters[a].size() < target.clusters[b].size();
      });
      for (std::size_t i : order) {
        const auto& c = target.clusters[i];
        int fresh = 0;
        for (int v : c) fresh += in[static_cast<std::size_t>(v)] ? 0 : 1;
        if (count + fresh <= spec.size) {
          for (int v : c) take(v);
          continue;
        }
        std::vector<int> rest;
        for (int v : c) {
          if (!in[static_cast<std::size_t>(v)]) rest.push_back(v);
        }
        rng.shuffle(rest);
        for (int v : rest) {
          if (count >= spec.size) break;
          take(v);
        }
        break;
      }
      break;
    }
  }
  PointSet out;
  for (int v = 0; v < n; ++v) {
    if (in[static_cast<std::size_t>(v)]) out.push_back(v);
  }
  return out;
}

struct LowerBoundDemo {
  int n = 0;
  double delta = 0.0;        // degree threshold n^{1/t}/4
  long long edges = 0;
  bool sparse = false;       // edges < delta n / 8
  int attacked = 0;          // |B|
  int max_ball = 0;          // largest t-hop ball among survivors
  int survivors = 0;
  bool large_attack = false; // |B| > n/4
  bool no_large_core = false; // every t-hop ball of a survivor has < n/2 points
  bool fires() const { return large_attack || no_large_core; }
};

/// Removes every vertex of degree >= n^{1/t}/4. Either more than n/4
/// vertices go, or all t-hop balls in the residual are smaller than n/2, so
/// no n/2 survivors are pairwise within t hops.
inline LowerBoundDemo high_degree_demo(const WeightedGraph& g, int t) {
  LowerBoundDemo r;
  r.n = g.n();
  r.delta = high_degree_threshold(r.n, t);
  r.edges = g.m();
  r.sparse = static_cast<double>(r.edges) < r.delta * r.n / 8.0;
  AttackSpec spec;
  spec.kind = AttackKind::HighDegree;
  spec.t = t;
  AttackTarget target;
  target.graph = &g;
  const PointSet B = make_attack(spec, target);
  r.attacked = static_cast<int>(B.size());
  r.large_attack = 4 * r.attacked > r.n;
  const auto removed = membership(r.n, B);
  std::vector<int> dist(static_cast<std::size_t>(r.n));
  for (int s = 0; s < r.n; ++s) {
    if (removed[static_cast<std::size_t>(s)]) continue;
    ++r.survivors;
    std::fill(dist.begin(), dist.end(), -1);
    dist[static_cast<std::size_t>(s)] = 0;
    std::vector<int> queue{s};
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const int u = queue[h];
      if (dist[static_cast<std::size_t>(u)] == t) continue;
      for (const auto& a : g.adj(u)) {
        if (removed[static_cast<std::size_t>(a.to)] || dist[static_cast<std::size_t>(a.to)] >= 0) continue;
        dist[static_cast<std::size_t>(a.to)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(a.to);
      }
    }
    r.max_ball = std::max(r.max_ball, static_cast<int>(queue.size()));
  }
  r.no_large_core = 2 * r.max_ball < r.n;
  return r;
}

struct AttackRow {
  int trial = 0;
  std::string kind;
  int b = 0;
  int bhat_constructive = 0;
  int bhat_greedy = 0;
  double loss_constructive = 0.0;
  double loss_greedy = 0.0;
  double worst_stretch = 0.0;
  int worst_hops = 0;
  double seconds = 0.0;
  long long violations = 0;  // residual failures outside the constructive set

  friend bool operator==(const AttackRow&, const AttackRow&) = default;
};

struct AttackAggregate {
  int trials = 0;
  double mean_loss_constructive = 0.0;
  double max_loss_constructive = 0.0;
  double mean_loss_greedy = 0.0;
  double max_loss_greedy = 0.0;
  double max_worst_stretch = 0.0;
  int max_worst_hops = 0;
  long long violations = 0;
  int greedy_larger = 0;  // rows where the greedy set outgrew the constructive one

  friend bool operator==(const AttackAggregate&, const AttackAggregate&) = default;
};

inline AttackAggregate aggregate(const std::vector<AttackRow>& rows) {
  AttackAggregate a;
  a.trials = static_cast<int>(rows.size());
  for (const auto& r : rows) {
    a.mean_loss_constructive += r.loss_constructive;
    a.mean_loss_greedy += r.loss_greedy;
    a.max_loss_constructive = std::max(a.max_loss_constructive, r.loss_constructive);
    a.max_loss_greedy = std::max(a.max_loss_greedy, r.loss_greedy);
    a.max_worst_stretch = std::max(a.max_worst_stretch, r.worst_stretch);
    a.max_worst_hops = std::max(a.max_worst_hops, r.worst_hops);
    a.violations += r.violations;
    a.greedy_larger += r.bhat_greedy > r.bhat_constructive ? 1 : 0;
  }
  if (!rows.empty()) {
    a.mean_loss_constructive /= static_cast<double>(rows.size());
    a.mean_loss_greedy /= static_cast<double>(rows.size());
  }
  return a;
}

struct ExperimentConfig {
  AttackSpec attack;
  int trials = 1;
  bool resample = false;  // oblivious: rebuild per trial, keep B fixed
  bool greedy = true;
  bool timing = false;    // off keeps rows byte-identical across runs
  std::uint64_t seed = 1;
  std::string constants = "practical";
};

struct AttackReport {
  ExperimentConfig config;
  std::vector<AttackRow> rows;
  AttackAggregate summary;
};

/// Residual check of one attack. Uniform-metric spanners are checked by
/// breadth-first search (hops equal distances); others by hop-bounded
/// relaxation against the improved bound.
inline VerificationReport check_attack(const ReliableSpanner& rs, std::span<const int> B, std::span<const int> B_hat,
                                       std::vector<std::pair<int, int>>* bad = nullptr) {
  if (rs.family != Family::Uniform) {
    return verify_residual(rs.graph, rs.metric, B, B_hat, rs.improved_bound, rs.hop_adv, 100, bad);
  }
  const int n = rs.n();
  std::vector<std::pair<int, int>> pairs;
  const HopReport h = residual_hop_check(rs.graph, B, rs.hop_adv, &pairs);
  const auto skip = membership(n, B_hat);
  VerificationReport r;
  r.stretch_bound = rs.improved_bound;
  r.hop_bound = rs.hop_adv;
  long long survivors = 0;
  for (int v = 0; v < n; ++v) survivors += skip[static_cast<std::size_t>(v)] ? 0 : 1;
  r.pairs = survivors * (survivors - 1) / 2;
  r.worst_hops = h.max_hops < 0 ? rs.hop_adv : std::min(h.max_hops, rs.hop_adv);
  r.worst_stretch = h.max_hops < 0 ? kInf : h.max_hops;
  for (auto [p, q] : pairs) {
    if (skip[static_cast<std::size_t>(p)] || skip[static_cast<std::size_t>(q)]) continue;
    ++r.violation_count;
    if (r.violations.size() < 100) r.violations.push_back({p, q, kInf, 1.0});
    if (bad) bad->emplace_back(p, q);
  }
  if (r.violation_count == 0 && h.max_hops >= 0) {
    r.worst_stretch = std::min(r.worst_stretch, static_cast<double>(rs.hop_adv));
  }
  return r;
}

/// Wraps a uniform-metric spanner as a one-cluster reliable spanner.
inline ReliableSpanner wrap_uniform(Spanner s) {
  ReliableSpanner rs;
  const int n = s.n();
  rs.metric = uniform_metric(n);
  rs.graph = s.graph;
  rs.family = Family::Uniform;
  rs.model = s.mode == SpannerMode::Constellation ? Model::Oblivious : Model::Deterministic;
  rs.parity = s.mode == SpannerMode::Expander2tMinus1 ? Parity::Odd : Parity::Even;
  rs.theta = rs.theta_prime = s.theta;
  rs.t = s.t;
  rs.seed = s.seed;
  rs.constants = s.constants;
  rs.hop_adv = s.mode == SpannerMode::Constellation ? 2 : (s.mode == SpannerMode::Expander2t ? 2 * s.t : 2 * s.t - 1);
  rs.delta_adv = rs.improved_bound = rs.hop_adv;
  rs.improved = true;
  ClusterSpanner cs;
  for (int v = 0; v < n; ++v) cs.members.push_back(v);
  cs.sub_mode = to_string(s.mode);
  cs.seed = s.seed;
  cs.local = std::move(s);
  rs.clusters.push_back(std::move(cs));
  return rs;
}

/// Runs `trials` attacks. With resample the construction is rebuilt from
/// derive_seed(seed, trial) and the attack seed stays fixed (oblivious
/// adversary); otherwise one construction faces per-trial attack seeds.
/// Trials run concurrently; each writes its own row.
inline AttackReport run_experiment(const std::function<ReliableSpanner(std::uint64_t)>& build,
                                   const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw Error(ErrorCode::BadParams, "trials must be >= 1");
  AttackReport rep;
  rep.config = cfg;
  std::optional<ReliableSpanner> fixed;
  if (!cfg.resample) fixed = build(cfg.seed);
  rep.rows.resize(static_cast<std::size_t>(cfg.trials));
  parallel_for(cfg.trials, [&](int trial) {
    const auto start = std::chrono::steady_clock::now();
    std::optional<ReliableSpanner> fresh;
    if (cfg.resample) fresh = build(derive_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
    const ReliableSpanner& rs = cfg.resample ? *fresh : *fixed;
    AttackSpec spec = cfg.attack;
    if (!cfg.resample) spec.seed = derive_seed(cfg.attack.seed, static_cast<std::uint64_t>(trial));
    const PointSet B = make_attack(spec, attack_target(rs));
    const DamageResult dmg = constructive_damage(rs, B);
    const VerificationReport ver = check_attack(rs, B, dmg.B_hat);
    AttackRow& row = rep.rows[static_cast<std::size_t>(trial)];
    row.trial = trial;
    row.kind = to_string(spec.kind);
    row.b = static_cast<int>(B.size());
    row.bhat_constructive = static_cast<int>(dmg.B_hat.size());
    row.loss_constructive = dmg.loss;
    row.worst_stretch = ver.worst_stretch;
    row.worst_hops = ver.worst_hops;
    row.violations = ver.violation_count;
    if (cfg.greedy) {
      std::vector<std::pair<int, int>> bad;
      check_attack(rs, B, B, &bad);
      const PointSet g = greedy_cover(rs.n(), B, bad, &dmg.B_hat);
      row.bhat_greedy = static_cast<int>(g.size());
      row.loss_greedy = loss_rate(B.size(), g.size());
    } else {
      row.bhat_greedy = row.bhat_constructive;
      row.loss_greedy = row.loss_constructive;
    }
    if (cfg.timing) row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });
  rep.summary = aggregate(rep.rows);
  return rep;
}

}  // namespace rspan
