#pragma once

#include <algorithm>
#include <cmath>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rspan/common.hpp"
#include "rspan/graph.hpp"

namespace rspan {

/// Dense symmetric distance matrix. Diameter and minimum positive distance
/// are computed once at construction.
class FiniteMetric {
 public:
  FiniteMetric() = default;

  FiniteMetric(int n, std::vector<double> dist, std::vector<std::string> labels = {})
      : n_(n), dist_(std::move(dist)), labels_(std::move(labels)) {
    if (n < 0 || dist_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
      throw Error(ErrorCode::BadParams, "distance matrix must be n*n");
    }
    for (double x : dist_) {
      diameter_ = std::max(diameter_, x);
      if (x > 0.0) min_positive_ = std::min(min_positive_, x);
    }
  }

  static FiniteMetric from_rows(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    std::vector<double> flat;
    flat.reserve(rows.size() * rows.size());
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != n) throw Error(ErrorCode::BadParams, "matrix is not square");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return FiniteMetric(n, std::move(flat));
  }

  int n() const { return n_; }
  double operator()(int i, int j) const {
    return dist_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)];
  }
  const std::vector<double>& data() const { return dist_; }
  const std::vector<std::string>& labels() const { return labels_; }

  double diameter() const { return diameter_; }
  /// Smallest positive distance (+inf if none).
  double min_positive() const { return min_positive_; }

  /// Diameter of a subset, in this metric.
  double diameter(std::span<const int> s) const {
    double d = 0.0;
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (std::size_t b = a + 1; b < s.size(); ++b) d = std::max(d, (*this)(s[a], s[b]));
    }
    return d;
  }

  FiniteMetric restrict_to(std::span<const int> s) const {
    const auto k = s.size();
    std::vector<double> d(k * k);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) d[a * k + b] = (*this)(s[a], s[b]);
    }
    return FiniteMetric(static_cast<int>(k), std::move(d));
  }

  friend bool operator==(const FiniteMetric& a, const FiniteMetric& b) {
    return a.n_ == b.n_ && a.dist_ == b.dist_ && a.labels_ == b.labels_;
  }

 private:
  int n_ = 0;
  std::vector<double> dist_;
  std::vector<std::string> labels_;
  double diameter_ = 0.0;
  double min_positive_ = kInf;
};

struct MetricStats {
  double diameter = 0.0;
  double spread = 0.0;
};

inline MetricStats metric_stats(const FiniteMetric& m) {
  if (m.n() < 2) throw Error(ErrorCode::TooFewPoints, "metric_stats needs at least two points");
  if (m.min_positive() == kInf) return {0.0, 1.0};
  return {m.diameter(), m.diameter() / m.min_positive()};
}

inline double spread(const FiniteMetric& m) { return metric_stats(m).spread; }

inline FiniteMetric uniform_metric(int n) {
  std::vector<double> d(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 1.0);
  for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i) * static_cast<std::size_t>(n + 1)] = 0.0;
  return FiniteMetric(n, std::move(d));
}

/// All-pairs shortest paths, one Dijkstra per source.
inline FiniteMetric shortest_path_metric(const WeightedGraph& g) {
  const int n = g.n();
  std::vector<double> d(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    const auto t = dijkstra(g, s);
    for (int v = 0; v < n; ++v) {
      const double x = t.dist[static_cast<std::size_t>(v)];
      if (x == kInf) throw Error(ErrorCode::DisconnectedGraph, "vertices " + std::to_string(s) + " and " + std::to_string(v) + " are not connected");
      d[static_cast<std::size_t>(s) * static_cast<std::size_t>(n) + static_cast<std::size_t>(v)] = x;
    }
  }
  return FiniteMetric(n, std::move(d));
}

struct MetricViolation {
  enum class Kind { Diagonal, ZeroOffDiagonal, Negative, Asymmetric, Triangle };
  Kind kind;
  int i = -1;
  int j = -1;
  int k = -1;
};

inline std::string_view to_string(MetricViolation::Kind k) {
  switch (k) {
    case MetricViolation::Kind::Diagonal: return "diagonal";
    case MetricViolation::Kind::ZeroOffDiagonal: return "zero_off_diagonal";
    case MetricViolation::Kind::Negative: return "negative";
    case MetricViolation::Kind::Asymmetric: return "asymmetric";
    case MetricViolation::Kind::Triangle: return "triangle";
  }
  return "unknown";
}

struct MetricReport {
  std::vector<MetricViolation> violations;  // capped at `limit`
  long long total = 0;
  bool ok() const { return total == 0; }
};

/// Lists diagonal, symmetry and triangle violations. A triangle violation
/// (i,j,k) means d(i,k) > d(i,j) + d(j,k).
inline MetricReport validate_metric(const FiniteMetric& m, std::size_t limit = 1000) {
  MetricReport r;
  auto add = [&](MetricViolation::Kind kind, int i, int j, int k) {
    ++r.total;
    if (r.violations.size() < limit) r.violations.push_back({kind, i, j, k});
  };
  const int n = m.n();
  for (int i = 0; i < n; ++i) {
    if (m(i, i) != 0.0) add(MetricViolation::Kind::Diagonal, i, i, -1);
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (m(i, j) < 0.0 || !std::isfinite(m(i, j))) add(MetricViolation::Kind::Negative, i, j, -1);
      if (i < j && m(i, j) == 0.0) add(MetricViolation::Kind::ZeroOffDiagonal, i, j, -1);
      if (i < j && !approx_eq(m(i, j), m(j, i))) add(MetricViolation::Kind::Asymmetric, i, j, -1);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double dij = m(i, j);
      for (int k = i + 1; k < n; ++k) {
        if (k == j) continue;
        if (!approx_le(m(i, k), dij + m(j, k))) add(MetricViolation::Kind::Triangle, i, j, k);
      }
    }
  }
  return r;
}

struct Net {
  PointSet points;  // in insertion order
  double radius = 0.0;
};

/// Farthest-point net over `ground`, starting at seed_point. A point joins
/// while its distance to the current net exceeds r; ties go to the lowest index.
inline Net greedy_net(const FiniteMetric& m, std::span<const int> ground, double r, int seed_point) {
  if (std::find(ground.begin(), ground.end(), seed_point) == ground.end()) {
    throw Error(ErrorCode::SeedOutsideGround, "seed point " + std::to_string(seed_point) + " is not in the ground set");
  }
  Net net{{seed_point}, r};
  std::vector<double> to_net(ground.size());
  for (std::size_t i = 0; i < ground.size(); ++i) to_net[i] = m(ground[i], seed_point);
  while (true) {
    std::size_t best = ground.size();
    for (std::size_t i = 0; i < ground.size(); ++i) {
      if (best == ground.size() || to_net[i] > to_net[best] ||
          (to_net[i] == to_net[best] && ground[i] < ground[best])) {
        best = i;
      }
    }
    if (best == ground.size() || !(to_net[best] > r)) break;
    const int p = ground[best];
    net.points.push_back(p);
    for (std::size_t i = 0; i < ground.size(); ++i) to_net[i] = std::min(to_net[i], m(ground[i], p));
  }
  return net;
}

/// Rooted tree with labels; leaves carry metric points.
struct HST {
  struct Node {
    int parent = -1;
    std::vector<int> children;
    double label = 0.0;
    int point = -1;  // leaf only
  };
  std::vector<Node> nodes;
  int root = -1;
  std::vector<int> leaf_of;  // point -> node

  int num_points() const { return static_cast<int>(leaf_of.size()); }

  int depth_of(int v) const {
    int d = 0;
    while (nodes[static_cast<std::size_t>(v)].parent >= 0) {
      v = nodes[static_cast<std::size_t>(v)].parent;
      ++d;
    }
    return d;
  }

  int lca(int a, int b) const {
    int da = depth_of(a);
    int db = depth_of(b);
    while (da > db) { a = nodes[static_cast<std::size_t>(a)].parent; --da; }
    while (db > da) { b = nodes[static_cast<std::size_t>(b)].parent; --db; }
    while (a != b) {
      a = nodes[static_cast<std::size_t>(a)].parent;
      b = nodes[static_cast<std::size_t>(b)].parent;
    }
    return a;
  }

  double distance(int p, int q) const {
    if (p == q) return 0.0;
    return nodes[static_cast<std::size_t>(lca(leaf_of[static_cast<std::size_t>(p)], leaf_of[static_cast<std::size_t>(q)]))].label;
  }

  /// Points in the subtree of v, sorted.
  PointSet leaves_under(int v) const {
    PointSet out;
    std::vector<int> stack{v};
    while (!stack.empty()) {
      const auto& node = nodes[static_cast<std::size_t>(stack.back())];
      stack.pop_back();
      if (node.point >= 0) out.push_back(node.point);
      for (int c : node.children) stack.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  FiniteMetric to_metric() const {
    const int n = num_points();
    std::vector<double> d(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) d[static_cast<std::size_t>(p) * static_cast<std::size_t>(n) + static_cast<std::size_t>(q)] = distance(p, q);
    }
    return FiniteMetric(n, std::move(d));
  }

  /// Checks label structure; k > 1 additionally demands the k-HST gap.
  bool valid(double k = 1.0) const {
    for (const auto& node : nodes) {
      const bool leaf = node.children.empty();
      if (leaf != (node.point >= 0)) return false;
      if (leaf && node.label != 0.0) return false;
      if (!leaf && !(node.label > 0.0)) return false;
      if (node.parent >= 0) {
        const double pl = nodes[static_cast<std::size_t>(node.parent)].label;
        if (!approx_le(node.label * k, pl)) return false;
      }
    }
    return true;
  }
};

/// Smallest power of k that is >= x (x > 0, k > 1).
inline double round_up_power(double x, double k) {
  double e = std::ceil(std::log(x) / std::log(k));
  double p = std::pow(k, e);
  while (!approx_le(x, p)) p = std::pow(k, ++e);
  while (approx_le(x, std::pow(k, e - 1))) p = std::pow(k, --e);
  return p;
}

namespace detail {

inline int build_hst_node(const FiniteMetric& m, const PointSet& s, double k, HST& h) {
  const int id = static_cast<int>(h.nodes.size());
  h.nodes.emplace_back();
  if (s.size() == 1) {
    h.nodes[static_cast<std::size_t>(id)].point = s.front();
    h.leaf_of[static_cast<std::size_t>(s.front())] = id;
    return id;
  }
  const double diam = m.diameter(s);
  const double label = k > 1.0 ? round_up_power(diam, k) : diam;
  h.nodes[static_cast<std::size_t>(id)].label = label;
  // In an ultrametric, "closer than diam" is an equivalence on s.
  std::vector<char> used(s.size(), 0);
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (used[a]) continue;
    PointSet cls;
    for (std::size_t b = a; b < s.size(); ++b) {
      if (!used[b] && (b == a || m(s[a], s[b]) < diam)) {
        used[b] = 1;
        cls.push_back(s[b]);
      }
    }
    const int child = build_hst_node(m, cls, k, h);
    auto& cnode = h.nodes[static_cast<std::size_t>(child)];
    if (cnode.point < 0 && cnode.label == label) {
      // Equal rounded labels: splice the child's children into this node.
      for (int g : cnode.children) {
        h.nodes[static_cast<std::size_t>(g)].parent = id;
        h.nodes[static_cast<std::size_t>(id)].children.push_back(g);
      }
      cnode.children.clear();
      cnode.parent = -2;  // detached; compacted afterwards
    } else {
      cnode.parent = id;
      h.nodes[static_cast<std::size_t>(id)].children.push_back(child);
    }
  }
  return id;
}

inline void compact_hst(HST& h) {
  std::vector<int> remap(h.nodes.size(), -1);
  std::vector<HST::Node> kept;
  for (std::size_t i = 0; i < h.nodes.size(); ++i) {
    if (h.nodes[i].parent == -2) continue;
    remap[i] = static_cast<int>(kept.size());
    kept.push_back(h.nodes[i]);
  }
  for (auto& node : kept) {
    if (node.parent >= 0) node.parent = remap[static_cast<std::size_t>(node.parent)];
    for (int& c : node.children) c = remap[static_cast<std::size_t>(c)];
  }
  for (int& l : h.leaf_of) l = remap[static_cast<std::size_t>(l)];
  h.root = remap[static_cast<std::size_t>(h.root)];
  h.nodes = std::move(kept);
}

}  // namespace detail

/// Witness (x,y,z) with d(x,z) > max(d(x,y), d(y,z)), if any.
inline std::optional<std::array<int, 3>> ultrametric_witness(const FiniteMetric& m) {
  const int n = m.n();
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int z = x + 1; z < n; ++z) {
        if (y == x || y == z) continue;
        if (!approx_le(m(x, z), std::max(m(x, y), m(y, z)))) return std::array<int, 3>{x, y, z};
      }
    }
  }
  return std::nullopt;
}

/// k-HST whose lca labels satisfy d(x,y) <= label <= k d(x,y). For k > 1 labels
/// are rounded up to powers of k and equal-label chains are contracted.
inline HST hst_from_ultrametric(const FiniteMetric& m, double k) {
  if (!(k >= 1.0)) throw Error(ErrorCode::BadParams, "k must be >= 1");
  if (m.n() < 1) throw Error(ErrorCode::TooFewPoints, "empty metric");
  if (auto w = ultrametric_witness(m)) {
    throw Error(ErrorCode::NotUltrametric, "triple (" + std::to_string((*w)[0]) + "," +
                                               std::to_string((*w)[1]) + "," + std::to_string((*w)[2]) + ")");
  }
  HST h;
  h.leaf_of.assign(static_cast<std::size_t>(m.n()), -1);
  PointSet all(static_cast<std::size_t>(m.n()));
  for (int i = 0; i < m.n(); ++i) all[static_cast<std::size_t>(i)] = i;
  h.root = detail::build_hst_node(m, all, k, h);
  detail::compact_hst(h);
  return h;
}

}  // namespace rspan
