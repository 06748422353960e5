#pragma once

// t-covers: families of clusters such that every pair p,q shares a cluster S
// with diam(S)/t <= d(p,q) <= diam(S). Builders for HSTs, trees and planar
// graphs, plus the validator every builder is tested against.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rspan/common.hpp"
#include "rspan/graph.hpp"
#include "rspan/metric.hpp"
#include "rspan/planar.hpp"

namespace rspan {

/// Construction record of a cluster. Ring clusters (trees) carry the
/// separator as center; ball clusters (planar) carry the net point. Every
/// member is within `radius` of `center` when center >= 0.
struct ClusterMeta {
  std::string kind;
  int center = -1;
  double radius = 0.0;
  int level = -1;

  friend bool operator==(const ClusterMeta&, const ClusterMeta&) = default;
};

struct Cover {
  double t = 1.0;
  int n = 0;
  std::vector<PointSet> clusters;
  std::vector<double> diam;
  std::vector<ClusterMeta> meta;
  std::map<std::string, double> info;  // builder-specific measurements

  std::size_t count() const { return clusters.size(); }

  long long size() const {
    long long s = 0;
    for (const auto& c : clusters) s += static_cast<long long>(c.size());
    return s;
  }

  std::vector<int> degrees() const {
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    for (const auto& c : clusters) {
      for (int p : c) ++deg[static_cast<std::size_t>(p)];
    }
    return deg;
  }

  int depth() const {
    const auto deg = degrees();
    return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
  }

  friend bool operator==(const Cover& a, const Cover& b) {
    return a.t == b.t && a.n == b.n && a.clusters == b.clusters && a.meta == b.meta && a.info == b.info;
  }
};

/// Collects clusters, dropping singletons and exact duplicates (the first
/// copy and its metadata are kept), and caches diameters.
class CoverBuilder {
 public:
  CoverBuilder(const FiniteMetric& m, double t) : m_(&m) {
    cover_.t = t;
    cover_.n = m.n();
  }

  void add(PointSet s, ClusterMeta meta = {}) {
    s = normalized(std::move(s));
    if (s.size() < 2) return;
    if (!seen_.insert(s).second) return;
    cover_.diam.push_back(m_->diameter(s));
    cover_.clusters.push_back(std::move(s));
    cover_.meta.push_back(std::move(meta));
  }

  Cover take() { return std::move(cover_); }

 private:
  const FiniteMetric* m_;
  Cover cover_;
  std::set<PointSet> seen_;
};

struct CoverReport {
  bool ok = true;
  long long uncovered_count = 0;
  std::vector<std::pair<int, int>> uncovered;  // capped listing
  int bad_cached_diameters = 0;
  long long size = 0;
  int depth = 0;
};

/// Exhaustive check of the cover condition over all pairs.
inline CoverReport validate_cover(const FiniteMetric& m, const Cover& c, double t, std::size_t limit = 100) {
  const int n = m.n();
  for (const auto& s : c.clusters) {
    for (int p : s) {
      if (p < 0 || p >= n) throw Error(ErrorCode::IndexOutOfRange, "cluster index " + std::to_string(p) + " out of range");
    }
  }
  CoverReport r;
  r.size = c.size();
  std::vector<char> covered(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < c.clusters.size(); ++i) {
    const auto& s = c.clusters[i];
    const double diam = m.diameter(s);
    if (i < c.diam.size() && !approx_eq(diam, c.diam[i])) ++r.bad_cached_diameters;
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (std::size_t b = a + 1; b < s.size(); ++b) {
        const double d = m(s[a], s[b]);
        if (approx_le(diam, t * d) && approx_le(d, diam)) {
          covered[static_cast<std::size_t>(s[a]) * static_cast<std::size_t>(n) + static_cast<std::size_t>(s[b])] = 1;
          covered[static_cast<std::size_t>(s[b]) * static_cast<std::size_t>(n) + static_cast<std::size_t>(s[a])] = 1;
        }
      }
    }
  }
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      if (!covered[static_cast<std::size_t>(p) * static_cast<std::size_t>(n) + static_cast<std::size_t>(q)]) {
        ++r.uncovered_count;
        if (r.uncovered.size() < limit) r.uncovered.emplace_back(p, q);
      }
    }
  }
  r.depth = c.n == n ? c.depth() : 0;
  r.ok = r.uncovered_count == 0 && r.bad_cached_diameters == 0;
  return r;
}

/// Rounds labels up to powers of (1+eps), contracts equal labels, and emits
/// the leaves of every remaining internal node. Valid at t = 1+eps for the
/// HST's own metric.
inline Cover hst_cover(const HST& h, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::BadParams, "eps must be positive");
  const FiniteMetric m = h.to_metric();
  CoverBuilder cb(m, 1.0 + eps);
  const double base = 1.0 + eps;
  auto exponent = [&](double label) {
    const double p = round_up_power(label, base);
    return static_cast<int>(std::lround(std::log(p) / std::log(base)));
  };
  for (int v = 0; v < static_cast<int>(h.nodes.size()); ++v) {
    const auto& node = h.nodes[static_cast<std::size_t>(v)];
    if (node.point >= 0) continue;
    const int e = exponent(node.label);
    if (node.parent >= 0 && exponent(h.nodes[static_cast<std::size_t>(node.parent)].label) == e) continue;
    cb.add(h.leaves_under(v), {"hst", -1, node.label, e});
  }
  return cb.take();
}

namespace detail {

inline void check_tree(const WeightedGraph& tree) {
  if (tree.n() < 1 || tree.m() != tree.n() - 1 || !is_connected(tree)) {
    throw Error(ErrorCode::NotATree, "input is not a tree");
  }
}

/// Vertex of `s` (a connected vertex set) whose removal leaves the smallest
/// largest component; lowest index among ties.
inline int centroid(const WeightedGraph& g, const PointSet& s, const std::vector<char>& in) {
  const int root = s.front();
  std::vector<int> parent(static_cast<std::size_t>(g.n()), -1);
  std::vector<int> order{root};
  std::vector<char> seen(static_cast<std::size_t>(g.n()), 0);
  seen[static_cast<std::size_t>(root)] = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const auto& a : g.adj(order[i])) {
      if (in[static_cast<std::size_t>(a.to)] && !seen[static_cast<std::size_t>(a.to)]) {
        seen[static_cast<std::size_t>(a.to)] = 1;
        parent[static_cast<std::size_t>(a.to)] = order[i];
        order.push_back(a.to);
      }
    }
  }
  std::vector<int> sub(static_cast<std::size_t>(g.n()), 1);
  std::vector<int> heaviest(static_cast<std::size_t>(g.n()), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int p = parent[static_cast<std::size_t>(*it)];
    if (p >= 0) {
      sub[static_cast<std::size_t>(p)] += sub[static_cast<std::size_t>(*it)];
      heaviest[static_cast<std::size_t>(p)] = std::max(heaviest[static_cast<std::size_t>(p)], sub[static_cast<std::size_t>(*it)]);
    }
  }
  const int total = static_cast<int>(s.size());
  int best = -1;
  int best_val = total + 1;
  for (int v : s) {
    const int val = std::max(heaviest[static_cast<std::size_t>(v)], total - sub[static_cast<std::size_t>(v)]);
    if (val < best_val) {
      best_val = val;
      best = v;
    }
  }
  return best;
}

}  // namespace detail

/// Recursive separator cover of a weighted tree. At each step the centroid
/// sigma contributes the rings {p : d(sigma,p) <= minDist (1+eps/2)^i}, then
/// the components of T - sigma are handled the same way. Valid at t = 2+eps.
inline Cover tree_cover(const WeightedGraph& tree, double eps) {
  detail::check_tree(tree);
  if (!(eps > 0.0)) throw Error(ErrorCode::BadParams, "eps must be positive");
  const FiniteMetric m = shortest_path_metric(tree);
  CoverBuilder cb(m, 2.0 + eps);
  if (tree.n() < 2) return cb.take();
  const double base = 1.0 + eps / 2.0;
  const double dmin = m.min_positive();
  const int levels = static_cast<int>(std::ceil(std::log(metric_stats(m).spread) / std::log(base) - 1e-12));

  std::vector<PointSet> stack{PointSet{}};
  for (int v = 0; v < tree.n(); ++v) stack.back().push_back(v);
  while (!stack.empty()) {
    PointSet s = std::move(stack.back());
    stack.pop_back();
    if (s.size() < 2) continue;
    auto in = membership(tree.n(), s);
    const int sigma = detail::centroid(tree, s, in);
    std::size_t prev = 0;
    for (int i = 0; i <= levels; ++i) {
      const double r = dmin * std::pow(base, i);
      PointSet ring;
      for (int p : s) {
        if (approx_le(m(sigma, p), r)) ring.push_back(p);
      }
      if (ring.size() != prev) cb.add(ring, {"ring", sigma, r, i});
      prev = ring.size();
      if (ring.size() == s.size()) break;
    }
    in[static_cast<std::size_t>(sigma)] = 0;
    for (auto& comp : components(tree, in).members) stack.push_back(std::move(comp));
  }
  return cb.take();
}

struct BallDepthReport {
  int max_degree = 0;
  double bound = 0.0;
  bool within = true;
  PointSet net;
};

/// True if consecutive path vertices are adjacent and the path length equals
/// the distance between its ends.
inline bool is_shortest_path(const WeightedGraph& g, const FiniteMetric& m, std::span<const int> path) {
  if (path.empty()) return false;
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const double w = g.weight(path[i], path[i + 1]);
    if (w == kInf) return false;
    len += w;
  }
  return approx_eq(len, m(path.front(), path.back()));
}

/// Max membership of any vertex in the balls of radius R around an r-net of
/// a shortest path; bounded by 2R/r + 1.
inline BallDepthReport ball_depth_check(const PlaneGraph& pg, std::span<const int> path, double r, double R) {
  const FiniteMetric m = shortest_path_metric(pg.graph);
  if (!is_shortest_path(pg.graph, m, path)) throw Error(ErrorCode::NotAShortestPath, "path is not a shortest path");
  BallDepthReport rep;
  rep.net = greedy_net(m, path, r, path.front()).points;
  std::vector<int> deg(static_cast<std::size_t>(pg.n()), 0);
  for (int c : rep.net) {
    for (int v = 0; v < pg.n(); ++v) {
      if (approx_le(m(c, v), R)) ++deg[static_cast<std::size_t>(v)];
    }
  }
  rep.max_degree = *std::max_element(deg.begin(), deg.end());
  rep.bound = 2.0 * R / r + 1.0;
  rep.within = rep.max_degree <= rep.bound + kRelTol * rep.bound;
  return rep;
}

/// Recursive separator cover of a planar graph. Each step triangulates the
/// current component, takes a cycle separator made of two shortest paths,
/// and adds balls of radius (1+eps/8) r_i around nets of radius eps r_i / 8
/// on both paths (plus the three path endpoints), r_i = minDist (1+eps/8)^i.
/// Distances are those of the input graph throughout. Valid at t = 2+eps.
inline Cover planar_cover(const PlaneGraph& pg, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::BadParams, "eps must be positive");
  if (!euler_ok(pg)) throw Error(ErrorCode::NotPlanar, "rotation system fails the Euler check");
  const FiniteMetric m = shortest_path_metric(pg.graph);
  CoverBuilder cb(m, 2.0 + eps);
  const int n = pg.n();
  if (n < 2) return cb.take();
  const double base = 1.0 + eps / 8.0;
  const double dmin = m.min_positive();
  const int levels = static_cast<int>(std::ceil(std::log(metric_stats(m).spread) / std::log(base) - 1e-12));

  std::vector<PointSet> stack{PointSet{}};
  for (int v = 0; v < n; ++v) stack.back().push_back(v);
  while (!stack.empty()) {
    PointSet s = std::move(stack.back());
    stack.pop_back();
    if (s.size() < 2) continue;
    const double diam = m.diameter(s);
    if (s.size() <= 3) {
      // Too small to separate: one cluster per pair, each a direct edge later.
      for (std::size_t a = 0; a < s.size(); ++a) {
        for (std::size_t b = a + 1; b < s.size(); ++b) cb.add({s[a], s[b]}, {"pair", -1, m(s[a], s[b]), -1});
      }
      continue;
    }
    const PlaneGraph tri = triangulate(induced_plane_graph(pg, s));
    const SeparatorResult sep = cycle_separator(tri);
    auto global = [&](const std::vector<int>& local) {
      std::vector<int> out;
      for (int x : local) out.push_back(s[static_cast<std::size_t>(x)]);
      return out;
    };
    const std::vector<int> pi1 = global(sep.path1);
    const std::vector<int> pi2 = global(sep.path2);
    for (int i = 0; i <= levels; ++i) {
      const double r = dmin * std::pow(base, i);
      if (i > 0 && r / base > diam * (1.0 + kRelTol)) break;
      std::vector<int> centers = greedy_net(m, pi1, eps * r / 8.0, pi1.front()).points;
      for (int c : greedy_net(m, pi2, eps * r / 8.0, pi2.front()).points) centers.push_back(c);
      for (int e : sep.endpoints) centers.push_back(s[static_cast<std::size_t>(e)]);
      centers = normalized(std::move(centers));
      const double radius = base * r;
      for (int c : centers) {
        PointSet ball;
        for (int p : s) {
          if (approx_le(m(c, p), radius)) ball.push_back(p);
        }
        cb.add(std::move(ball), {"ball", c, radius, i});
      }
    }
    std::vector<char> alive = membership(n, s);
    for (int x : sep.C) alive[static_cast<std::size_t>(s[static_cast<std::size_t>(x)])] = 0;
    // Components of the current piece minus the separator, in the input graph.
    for (auto& comp : components(pg.graph, alive).members) stack.push_back(std::move(comp));
  }
  return cb.take();
}

}  // namespace rspan
