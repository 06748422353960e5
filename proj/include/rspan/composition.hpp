#pragma once

// Reliable spanners from covers: one uniform-metric spanner per cluster,
// built with theta' = theta / depth, unioned with metric weights. Damage is
// the union of failed clusters and per-cluster damaged sets.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rspan/common.hpp"
#include "rspan/cover.hpp"
#include "rspan/generators.hpp"
#include "rspan/graph.hpp"
#include "rspan/metric.hpp"
#include "rspan/ramsey.hpp"
#include "rspan/uniform.hpp"

namespace rspan {

enum class Family { Uniform, Ultrametric, Tree, Planar, General };
enum class Model { Oblivious, Deterministic };
enum class Parity { Odd, Even };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::Uniform: return "uniform";
    case Family::Ultrametric: return "ultrametric";
    case Family::Tree: return "tree";
    case Family::Planar: return "planar";
    case Family::General: return "general";
  }
  return "unknown";
}

inline std::string to_string(Model m) { return m == Model::Oblivious ? "oblivious" : "deterministic"; }
inline std::string to_string(Parity p) { return p == Parity::Odd ? "odd" : "even"; }

inline Family parse_family(const std::string& s) {
  for (Family f : {Family::Uniform, Family::Ultrametric, Family::Tree, Family::Planar, Family::General}) {
    if (to_string(f) == s) return f;
  }
  throw Error(ErrorCode::BadParams, "unknown family '" + s + "'");
}

inline Model parse_model(const std::string& s) {
  if (s == "oblivious") return Model::Oblivious;
  if (s == "deterministic") return Model::Deterministic;
  throw Error(ErrorCode::BadParams, "model must be oblivious or deterministic");
}

inline Parity parse_parity(const std::string& s) {
  if (s == "odd") return Parity::Odd;
  if (s == "even") return Parity::Even;
  throw Error(ErrorCode::BadParams, "parity must be odd or even");
}

/// Sub-spanner of one cluster: `local` lives on indices 0..|members|-1.
struct ClusterSpanner {
  PointSet members;
  std::string sub_mode;  // constellation, expander_2t, expander_2t_minus_1, complete
  std::uint64_t seed = 0;
  Spanner local;
};

struct ReliableSpanner {
  FiniteMetric metric;
  WeightedGraph graph;
  std::vector<ClusterSpanner> clusters;
  Family family = Family::General;
  Model model = Model::Oblivious;
  Parity parity = Parity::Odd;
  double theta = 0.25;
  double theta_prime = 0.25;
  int t = 1;  // hop parameter of deterministic clusters
  double eps = 0.0;
  std::uint64_t seed = 0;
  ConstantMode constants = ConstantMode::Practical;
  double cover_t = 1.0;
  int cover_depth = 1;
  double delta_adv = 2.0;  // generic stretch from the composition
  int hop_adv = 2;
  double improved_bound = 2.0;  // per-family bound verification runs against
  bool improved = false;        // cover metadata supported the improved bound

  int n() const { return graph.n(); }
};

/// Hops of the per-cluster spanners.
inline int hop_bound(Model model, Parity parity, int t) {
  if (model == Model::Oblivious) return 2;
  return parity == Parity::Odd ? 2 * t - 1 : 2 * t;
}

namespace detail {

inline void check_cover(const FiniteMetric& m, const Cover& c) {
  if (c.n != m.n()) throw Error(ErrorCode::InvalidCover, "cover and metric sizes differ");
  if (c.clusters.size() != c.meta.size()) throw Error(ErrorCode::InvalidCover, "cluster metadata missing");
  for (const auto& s : c.clusters) {
    for (int p : s) {
      if (p < 0 || p >= m.n()) throw Error(ErrorCode::InvalidCover, "cluster point out of range");
    }
  }
  if (!validate_cover(m, c, c.t, 1).ok) throw Error(ErrorCode::InvalidCover, "cover fails at its advertised t");
}

}  // namespace detail

/// Union of the cluster spanners, lifted to global indices with metric weights.
inline WeightedGraph union_graph(const FiniteMetric& m, const std::vector<ClusterSpanner>& clusters) {
  WeightedGraph g(m.n());
  for (const auto& cs : clusters) {
    for (const auto& e : cs.local.graph.edges()) {
      const int u = cs.members[static_cast<std::size_t>(e.u)];
      const int v = cs.members[static_cast<std::size_t>(e.v)];
      g.add_edge(u, v, m(u, v));
    }
  }
  return g;
}

namespace detail {

inline ReliableSpanner compose(const FiniteMetric& m, const Cover& c, std::vector<ClusterSpanner> clusters) {
  ReliableSpanner rs;
  rs.metric = m;
  rs.graph = union_graph(m, clusters);
  rs.clusters = std::move(clusters);
  rs.cover_t = c.t;
  rs.cover_depth = std::max(1, c.depth());
  return rs;
}

inline Spanner complete_spanner(int size, double theta) {
  Spanner s;
  s.mode = SpannerMode::Expander2t;
  s.theta = theta;
  s.t = 1;
  s.graph = complete_graph(size);
  s.raw = MultiGraph::from_graph(s.graph);
  s.d = size - 1;
  s.lambda = size > 1 ? 1.0 / (size - 1) : 0.0;
  s.clamped = true;
  return s;
}

}  // namespace detail

/// Rebuilds one cluster's spanner from its recorded mode and seed.
inline Spanner build_cluster_spanner(const std::string& sub_mode, int size, double theta_prime, int t,
                                     std::uint64_t seed, ConstantMode constants) {
  if (sub_mode == "constellation") return constellation(size, theta_prime, seed);
  if (sub_mode == "complete") return detail::complete_spanner(size, theta_prime);
  if (sub_mode == "expander_2t") return build_g2t(size, theta_prime, t, seed, constants);
  if (sub_mode == "expander_2t_minus_1") return build_g2t_minus_1_balanced(size, theta_prime, t, seed, constants);
  throw Error(ErrorCode::BadParams, "unknown cluster mode '" + sub_mode + "'");
}

/// Constellation per cluster with theta' = theta / depth; 2 hops, stretch
/// 2 t_cover.
inline ReliableSpanner oblivious_from_cover(const FiniteMetric& m, const Cover& c, double theta, std::uint64_t seed) {
  detail::check_cover(m, c);
  if (!(theta > 0.0 && theta < 1.0)) throw Error(ErrorCode::BadParams, "theta must lie in (0, 1)");
  const double tp = theta / std::max(1, c.depth());
  std::vector<ClusterSpanner> cl(c.clusters.size());
  parallel_for(static_cast<int>(c.clusters.size()), [&](int i) {
    auto& cs = cl[static_cast<std::size_t>(i)];
    cs.members = c.clusters[static_cast<std::size_t>(i)];
    cs.sub_mode = "constellation";
    cs.seed = derive_seed(seed, static_cast<std::uint64_t>(i));
    cs.local = constellation(static_cast<int>(cs.members.size()), tp, cs.seed);
  });
  ReliableSpanner rs = detail::compose(m, c, std::move(cl));
  rs.model = Model::Oblivious;
  rs.theta = theta;
  rs.theta_prime = tp;
  rs.t = 1;
  rs.seed = seed;
  rs.hop_adv = 2;
  rs.delta_adv = 2.0 * c.t;
  rs.improved_bound = rs.delta_adv;
  return rs;
}

/// Expander per cluster with theta' = theta / depth: the (2t-1)-hop block
/// graph (odd) or the 2t-hop expander (even). Clusters below 4 points, and
/// odd clusters with t = 1, get complete graphs.
inline ReliableSpanner det_from_cover(const FiniteMetric& m, const Cover& c, double theta, int t, Parity parity,
                                      std::uint64_t seed, ConstantMode constants = ConstantMode::Practical) {
  detail::check_cover(m, c);
  if (t < 1) throw Error(ErrorCode::BadParams, "t must be >= 1");
  if (!(theta > 0.0 && theta < 1.0)) throw Error(ErrorCode::BadParams, "theta must lie in (0, 1)");
  const double tp = theta / std::max(1, c.depth());
  std::vector<ClusterSpanner> cl(c.clusters.size());
  parallel_for(static_cast<int>(c.clusters.size()), [&](int i) {
    auto& cs = cl[static_cast<std::size_t>(i)];
    cs.members = c.clusters[static_cast<std::size_t>(i)];
    cs.seed = derive_seed(seed, static_cast<std::uint64_t>(i));
    const int size = static_cast<int>(cs.members.size());
    if (size < 4 || (parity == Parity::Odd && t == 1)) {
      cs.sub_mode = "complete";
    } else {
      cs.sub_mode = parity == Parity::Even ? "expander_2t" : "expander_2t_minus_1";
    }
    cs.local = build_cluster_spanner(cs.sub_mode, size, tp, t, cs.seed, constants);
  });
  ReliableSpanner rs = detail::compose(m, c, std::move(cl));
  rs.model = Model::Deterministic;
  rs.parity = parity;
  rs.theta = theta;
  rs.theta_prime = tp;
  rs.t = t;
  rs.seed = seed;
  rs.constants = constants;
  rs.hop_adv = hop_bound(Model::Deterministic, parity, t);
  rs.delta_adv = rs.hop_adv * c.t;
  rs.improved_bound = rs.delta_adv;
  return rs;
}

/// Same clusters and parameters, fresh cluster seeds derive_seed(seed, i).
/// Oblivious experiments resample the construction this way.
inline ReliableSpanner reseed(const ReliableSpanner& rs, std::uint64_t seed) {
  ReliableSpanner out = rs;
  out.seed = seed;
  parallel_for(static_cast<int>(out.clusters.size()), [&](int i) {
    auto& cs = out.clusters[static_cast<std::size_t>(i)];
    cs.seed = derive_seed(seed, static_cast<std::uint64_t>(i));
    cs.local = build_cluster_spanner(cs.sub_mode, static_cast<int>(cs.members.size()), out.theta_prime, out.t, cs.seed,
                                     out.constants);
  });
  out.graph = union_graph(out.metric, out.clusters);
  return out;
}

/// Union of failed clusters (|C| <= (1+theta')|C cap B|) and the damaged sets
/// of the remaining clusters under their own rule.
inline DamageResult constructive_damage(const ReliableSpanner& rs, std::span<const int> B_in) {
  const int n = rs.n();
  DamageResult r;
  r.B = normalized(PointSet(B_in.begin(), B_in.end()));
  for (int b : r.B) {
    if (b < 0 || b >= n) throw Error(ErrorCode::IndexOutOfRange, "attack vertex out of range");
  }
  const auto in_b = membership(n, r.B);
  std::vector<char> hat = in_b;
  for (const auto& cs : rs.clusters) {
    PointSet local;
    for (std::size_t i = 0; i < cs.members.size(); ++i) {
      if (in_b[static_cast<std::size_t>(cs.members[i])]) local.push_back(static_cast<int>(i));
    }
    if (local.empty()) continue;
    const double size = static_cast<double>(cs.members.size());
    if (size <= (1.0 + rs.theta_prime) * static_cast<double>(local.size()) * (1.0 + kRelTol)) {
      ++r.failed_clusters;
      for (int p : cs.members) hat[static_cast<std::size_t>(p)] = 1;
      continue;
    }
    if (cs.sub_mode == "complete") continue;
    const DamageResult part = spanner_damage(cs.local, local);
    if (part.guard) ++r.guarded_clusters;
    for (int v : part.B_hat) hat[static_cast<std::size_t>(cs.members[static_cast<std::size_t>(v)])] = 1;
  }
  for (int v = 0; v < n; ++v) {
    if (hat[static_cast<std::size_t>(v)]) r.B_hat.push_back(v);
  }
  r.loss = loss_rate(r.B.size(), r.B_hat.size());
  return r;
}

struct PairViolation {
  int p = -1;
  int q = -1;
  double spanner_distance = kInf;  // best within the hop bound
  double metric_distance = 0.0;
};

struct VerificationReport {
  long long pairs = 0;
  long long violation_count = 0;
  std::vector<PairViolation> violations;  // capped listing
  double worst_stretch = 0.0;             // within the hop bound
  int worst_hops = 0;                     // hops needed by the worst certified pair
  double stretch_bound = 0.0;
  int hop_bound = 0;

  bool ok() const { return violation_count == 0; }
};

/// For every pair outside B_hat, hop-bounded relaxation in graph - B must
/// reach q within stretch_bound d(p,q) using at most hop_bound edges.
/// `all_violations` receives every failing pair when non-null.
inline VerificationReport verify_residual(const WeightedGraph& g, const FiniteMetric& m, std::span<const int> B,
                                          std::span<const int> B_hat, double stretch_bound, int hop_bound_,
                                          std::size_t limit = 100,
                                          std::vector<std::pair<int, int>>* all_violations = nullptr) {
  const int n = g.n();
  if (m.n() != n) throw Error(ErrorCode::BadParams, "graph and metric sizes differ");
  std::vector<char> removed(static_cast<std::size_t>(n), 0), skip(static_cast<std::size_t>(n), 0);
  for (int v : B) removed[static_cast<std::size_t>(v)] = 1;
  for (int v : B_hat) skip[static_cast<std::size_t>(v)] = 1;
  for (int v : B) skip[static_cast<std::size_t>(v)] = 1;
  struct Arc {
    int to;
    double w;
  };
  std::vector<std::vector<Arc>> adj(static_cast<std::size_t>(n));
  for (const auto& e : g.edges()) {
    if (removed[static_cast<std::size_t>(e.u)] || removed[static_cast<std::size_t>(e.v)]) continue;
    adj[static_cast<std::size_t>(e.u)].push_back({e.v, e.w});
    adj[static_cast<std::size_t>(e.v)].push_back({e.u, e.w});
  }
  struct SourceResult {
    long long pairs = 0;
    double worst = 0.0;
    int hops = 0;
    std::vector<PairViolation> bad;
  };
  std::vector<SourceResult> per(static_cast<std::size_t>(n));
  parallel_for(n, [&](int p) {
    if (skip[static_cast<std::size_t>(p)]) return;
    SourceResult& sr = per[static_cast<std::size_t>(p)];
    std::vector<double> dist(static_cast<std::size_t>(n), kInf), next;
    std::vector<int> first_ok(static_cast<std::size_t>(n), -1);
    dist[static_cast<std::size_t>(p)] = 0.0;
    for (int h = 1; h <= hop_bound_; ++h) {
      next = dist;
      for (int u = 0; u < n; ++u) {
        const double du = dist[static_cast<std::size_t>(u)];
        if (du == kInf) continue;
        for (const Arc& a : adj[static_cast<std::size_t>(u)]) {
          double& dv = next[static_cast<std::size_t>(a.to)];
          if (du + a.w < dv) dv = du + a.w;
        }
      }
      dist.swap(next);
      for (int q = p + 1; q < n; ++q) {
        if (first_ok[static_cast<std::size_t>(q)] < 0 &&
            approx_le(dist[static_cast<std::size_t>(q)], stretch_bound * m(p, q))) {
          first_ok[static_cast<std::size_t>(q)] = h;
        }
      }
    }
    for (int q = p + 1; q < n; ++q) {
      if (skip[static_cast<std::size_t>(q)]) continue;
      ++sr.pairs;
      const double dq = dist[static_cast<std::size_t>(q)];
      const double stretch = dq / m(p, q);
      sr.worst = std::max(sr.worst, stretch);
      const int h = first_ok[static_cast<std::size_t>(q)];
      if (h < 0) {
        sr.bad.push_back({p, q, dq, m(p, q)});
      } else {
        sr.hops = std::max(sr.hops, h);
      }
    }
  });
  VerificationReport r;
  r.stretch_bound = stretch_bound;
  r.hop_bound = hop_bound_;
  for (const auto& sr : per) {
    r.pairs += sr.pairs;
    r.worst_stretch = std::max(r.worst_stretch, sr.worst);
    r.worst_hops = std::max(r.worst_hops, sr.hops);
    r.violation_count += static_cast<long long>(sr.bad.size());
    for (const auto& v : sr.bad) {
      if (r.violations.size() < limit) r.violations.push_back(v);
      if (all_violations) all_violations->emplace_back(v.p, v.q);
    }
  }
  return r;
}

inline VerificationReport verify_residual(const ReliableSpanner& rs, std::span<const int> B,
                                          std::span<const int> B_hat) {
  return verify_residual(rs.graph, rs.metric, B, B_hat, rs.improved_bound, rs.hop_adv);
}

/// Every cluster records a center and all members lie within its radius.
inline bool centers_verified(const FiniteMetric& m, const Cover& c, std::initializer_list<const char*> kinds,
                             bool allow_pairs) {
  for (std::size_t i = 0; i < c.clusters.size(); ++i) {
    const auto& meta = c.meta[i];
    if (allow_pairs && meta.kind == "pair" && c.clusters[i].size() == 2) continue;
    bool kind_ok = false;
    for (const char* k : kinds) kind_ok = kind_ok || meta.kind == k;
    if (!kind_ok || meta.center < 0 || meta.center >= m.n()) return false;
    for (int p : c.clusters[i]) {
      if (!approx_le(m(meta.center, p), meta.radius)) return false;
    }
  }
  return true;
}

struct ReliableParams {
  double eps = 0.5;
  double theta = 0.25;
  int t = 2;
  Parity parity = Parity::Odd;
  int k = 2;
  std::uint64_t seed = 1;
  ConstantMode constants = ConstantMode::Practical;
  bool theta_pre_divide = false;  // deterministic: build with theta/5 so the loss bound reads theta
};

struct FamilyCover {
  FiniteMetric metric;
  Cover cover;
};

inline bool is_uniform(const FiniteMetric& m) {
  for (int i = 0; i < m.n(); ++i) {
    for (int j = i + 1; j < m.n(); ++j) {
      if (!approx_eq(m(i, j), m(0, 1))) return false;
    }
  }
  return true;
}

/// Cover used by build_reliable. Tree, planar and ultrametric covers are
/// built with eps/2 so the improved per-family bounds come out in eps.
inline FamilyCover family_cover(const Instance& inst, Family family, const ReliableParams& p) {
  auto need_metric = [&]() -> const FiniteMetric& {
    if (!std::holds_alternative<FiniteMetric>(inst)) {
      throw Error(ErrorCode::FamilyMismatch, to_string(family) + " needs a metric instance");
    }
    return std::get<FiniteMetric>(inst);
  };
  switch (family) {
    case Family::Uniform: {
      const FiniteMetric& m = need_metric();
      if (!is_uniform(m)) throw Error(ErrorCode::FamilyMismatch, "metric is not uniform");
      CoverBuilder cb(m, 1.0);
      PointSet all(static_cast<std::size_t>(m.n()));
      for (int i = 0; i < m.n(); ++i) all[static_cast<std::size_t>(i)] = i;
      cb.add(all, {"whole", -1, m.diameter(), 0});
      return {m, cb.take()};
    }
    case Family::Ultrametric: {
      const FiniteMetric& m = need_metric();
      if (ultrametric_witness(m)) throw Error(ErrorCode::FamilyMismatch, "metric is not an ultrametric");
      return {m, hst_cover(hst_from_ultrametric(m, 1.0), p.eps / 2.0)};
    }
    case Family::Tree: {
      if (!std::holds_alternative<WeightedGraph>(inst)) throw Error(ErrorCode::FamilyMismatch, "tree needs a graph");
      const auto& g = std::get<WeightedGraph>(inst);
      if (g.m() != g.n() - 1 || !is_connected(g)) throw Error(ErrorCode::FamilyMismatch, "graph is not a tree");
      return {shortest_path_metric(g), tree_cover(g, p.eps / 2.0)};
    }
    case Family::Planar: {
      if (!std::holds_alternative<PlaneGraph>(inst)) throw Error(ErrorCode::FamilyMismatch, "planar needs a plane graph");
      const auto& pg = std::get<PlaneGraph>(inst);
      return {shortest_path_metric(pg.graph), planar_cover(pg, p.eps / 2.0)};
    }
    case Family::General: {
      FiniteMetric m;
      if (const auto* fm = std::get_if<FiniteMetric>(&inst)) {
        m = *fm;
      } else if (const auto* g = std::get_if<WeightedGraph>(&inst)) {
        m = shortest_path_metric(*g);
      } else {
        m = shortest_path_metric(std::get<PlaneGraph>(inst).graph);
      }
      Cover c = ramsey_cover(m, p.k, derive_seed(p.seed, 0xc0de));
      return {std::move(m), std::move(c)};
    }
  }
  throw Error(ErrorCode::BadParams, "unknown family");
}

/// Per-family stretch the residual is verified against; generic 2 t_cover or
/// H t_cover when no sharper argument applies.
inline double improved_stretch(Family family, Model model, Parity parity, int t, double eps) {
  const int H = hop_bound(model, parity, t);
  switch (family) {
    case Family::Uniform: return H;
    case Family::Ultrametric:
      if (model == Model::Oblivious) return 2.0 + eps;
      return parity == Parity::Odd ? (2.0 + eps) * t - 1.0 : (2.0 + eps) * t;
    case Family::Tree:
      if (model == Model::Oblivious) return 3.0 + eps;
      return parity == Parity::Odd ? (4.0 + eps) * t - 3.0 : (4.0 + eps) * t - 1.0;
    case Family::Planar:
      if (model == Model::Oblivious) return 3.0 + 2.0 * eps;
      return parity == Parity::Odd ? (4.0 + eps) * t - 3.0 : (4.0 + eps) * t - 1.0;
    case Family::General: return kInf;
  }
  return kInf;
}

inline ReliableSpanner build_reliable(const Instance& inst, Family family, Model model, const ReliableParams& p) {
  if (!(p.eps > 0.0)) throw Error(ErrorCode::BadParams, "eps must be positive");
  FamilyCover fc = family_cover(inst, family, p);
  const double theta = p.theta_pre_divide && model == Model::Deterministic ? p.theta / 5.0 : p.theta;
  ReliableSpanner rs = model == Model::Oblivious
                           ? oblivious_from_cover(fc.metric, fc.cover, theta, p.seed)
                           : det_from_cover(fc.metric, fc.cover, theta, p.t, p.parity, p.seed, p.constants);
  rs.family = family;
  rs.eps = p.eps;
  rs.constants = p.constants;
  bool meta_ok = true;
  if (family == Family::Tree) meta_ok = centers_verified(fc.metric, fc.cover, {"ring"}, false);
  if (family == Family::Planar) meta_ok = centers_verified(fc.metric, fc.cover, {"ball"}, true);
  if (family == Family::Ultrametric) {
    for (const auto& meta : fc.cover.meta) meta_ok = meta_ok && meta.kind == "hst";
  }
  const double improved = improved_stretch(family, model, p.parity, p.t, p.eps);
  rs.improved = meta_ok && improved <= rs.delta_adv;
  rs.improved_bound = rs.improved ? improved : rs.delta_adv;
  return rs;
}

/// Vertex cover of violating pairs on top of B: repeatedly add the vertex
/// on the most uncovered pairs (ties to the lowest index). With `prefer`,
/// only its vertices are candidates while they still cover something.
inline PointSet greedy_cover(int n, std::span<const int> B, const std::vector<std::pair<int, int>>& bad,
                             const PointSet* prefer = nullptr) {
  std::vector<char> hat(static_cast<std::size_t>(n), 0);
  for (int b : B) hat[static_cast<std::size_t>(b)] = 1;
  std::vector<char> allowed(static_cast<std::size_t>(n), 1);
  if (prefer) {
    std::fill(allowed.begin(), allowed.end(), 0);
    for (int v : *prefer) allowed[static_cast<std::size_t>(v)] = 1;
  }
  std::vector<char> covered(bad.size(), 0);
  std::size_t left = bad.size();
  while (left > 0) {
    std::vector<int> score(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < bad.size(); ++i) {
      if (covered[i]) continue;
      ++score[static_cast<std::size_t>(bad[i].first)];
      ++score[static_cast<std::size_t>(bad[i].second)];
    }
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (hat[static_cast<std::size_t>(v)] || score[static_cast<std::size_t>(v)] == 0) continue;
      if (!allowed[static_cast<std::size_t>(v)]) continue;
      if (best < 0 || score[static_cast<std::size_t>(v)] > score[static_cast<std::size_t>(best)]) best = v;
    }
    if (best < 0) {
      std::fill(allowed.begin(), allowed.end(), 1);
      continue;
    }
    hat[static_cast<std::size_t>(best)] = 1;
    for (std::size_t i = 0; i < bad.size(); ++i) {
      if (!covered[i] && (bad[i].first == best || bad[i].second == best)) {
        covered[i] = 1;
        --left;
      }
    }
  }
  PointSet out;
  for (int v = 0; v < n; ++v) {
    if (hat[static_cast<std::size_t>(v)]) out.push_back(v);
  }
  return out;
}

/// Smallish damaged set found greedily: B plus a vertex cover of the pairs
/// that fail the residual check with B_hat = B.
inline PointSet greedy_damage_upper_bound(const WeightedGraph& g, const FiniteMetric& m, std::span<const int> B,
                                          double stretch, int hops, const PointSet* prefer = nullptr) {
  std::vector<std::pair<int, int>> bad;
  verify_residual(g, m, B, B, stretch, hops, 0, &bad);
  return greedy_cover(g.n(), B, bad, prefer);
}

}  // namespace rspan
