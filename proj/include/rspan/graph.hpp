#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rspan/common.hpp"

namespace rspan {

struct Edge {
  int u = 0;
  int v = 0;
  double w = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Simple undirected graph with strictly positive weights. Each undirected
/// edge is stored once; self-loops and parallel edges are rejected on insert.
class WeightedGraph {
 public:
  struct Arc {
    int to;
    int edge;
  };

  WeightedGraph() = default;
  explicit WeightedGraph(int n) : adj_(static_cast<std::size_t>(n)) {}

  int n() const { return static_cast<int>(adj_.size()); }
  int m() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Arc>& adj(int u) const { return adj_[static_cast<std::size_t>(u)]; }
  int degree(int u) const { return static_cast<int>(adj(u).size()); }

  /// Inserts {u,v}. Returns false (and keeps the existing edge) for loops and
  /// duplicates.
  bool add_edge(int u, int v, double w) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) return false;
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::BadParams, "edge weight must be positive and finite");
    }
    const auto key = pair_key(u, v);
    if (index_.count(key) != 0) return false;
    index_.emplace(key, m());
    adj_[static_cast<std::size_t>(u)].push_back({v, m()});
    adj_[static_cast<std::size_t>(v)].push_back({u, m()});
    edges_.push_back({std::min(u, v), std::max(u, v), w});
    return true;
  }

  bool has_edge(int u, int v) const { return index_.count(pair_key(u, v)) != 0; }

  /// Edge weight, or +inf when absent.
  double weight(int u, int v) const {
    auto it = index_.find(pair_key(u, v));
    return it == index_.end() ? std::numeric_limits<double>::infinity()
                              : edges_[static_cast<std::size_t>(it->second)].w;
  }

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.n() == b.n() && a.edges_ == b.edges_;
  }

 private:
  static std::uint64_t pair_key(int u, int v) {
    const auto lo = static_cast<std::uint64_t>(std::min(u, v));
    const auto hi = static_cast<std::uint64_t>(std::max(u, v));
    return (lo << 32) | hi;
  }

  void check_vertex(int u) const {
    if (u < 0 || u >= n()) throw Error(ErrorCode::IndexOutOfRange, "vertex index out of range");
  }

  std::vector<std::vector<Arc>> adj_;
  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, int> index_;
};

/// Multigraph adjacency where every incidence is listed: a loop at u appears
/// twice in adj[u], a doubled edge twice. Row sums of the adjacency matrix are
/// the list lengths, so 1_S^T A 1_T is a plain count over the lists.
struct MultiGraph {
  std::vector<std::vector<int>> adj;

  friend bool operator==(const MultiGraph&, const MultiGraph&) = default;

  int n() const { return static_cast<int>(adj.size()); }

  /// Common degree if regular, -1 otherwise.
  int regular_degree() const {
    if (adj.empty()) return -1;
    const auto d = adj.front().size();
    for (const auto& row : adj) {
      if (row.size() != d) return -1;
    }
    return static_cast<int>(d);
  }

  static MultiGraph from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
    MultiGraph g;
    g.adj.resize(static_cast<std::size_t>(n));
    for (auto [u, v] : pairs) {
      g.adj[static_cast<std::size_t>(u)].push_back(v);
      g.adj[static_cast<std::size_t>(v)].push_back(u);
    }
    return g;
  }

  static MultiGraph from_graph(const WeightedGraph& g) {
    MultiGraph mg;
    mg.adj.resize(static_cast<std::size_t>(g.n()));
    for (const auto& e : g.edges()) {
      mg.adj[static_cast<std::size_t>(e.u)].push_back(e.v);
      mg.adj[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    return mg;
  }
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Single-source shortest paths. `alive` (optional) masks usable vertices.
/// Ties between equal-length paths go to the lower-index predecessor.
struct ShortestPathTree {
  std::vector<double> dist;
  std::vector<int> parent;
};

inline ShortestPathTree dijkstra(const WeightedGraph& g, int source,
                                 const std::vector<char>* alive = nullptr) {
  const auto n = static_cast<std::size_t>(g.n());
  ShortestPathTree t{std::vector<double>(n, kInf), std::vector<int>(n, -1)};
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  t.dist[static_cast<std::size_t>(source)] = 0.0;
  pq.push({0.0, source});
  std::vector<char> done(n, 0);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (done[static_cast<std::size_t>(u)]) continue;
    done[static_cast<std::size_t>(u)] = 1;
    for (const auto& a : g.adj(u)) {
      if (alive && !(*alive)[static_cast<std::size_t>(a.to)]) continue;
      const double nd = d + g.edges()[static_cast<std::size_t>(a.edge)].w;
      auto& cur = t.dist[static_cast<std::size_t>(a.to)];
      auto& par = t.parent[static_cast<std::size_t>(a.to)];
      if (nd < cur || (nd == cur && !done[static_cast<std::size_t>(a.to)] && u < par)) {
        cur = nd;
        par = u;
        pq.push({nd, a.to});
      }
    }
  }
  return t;
}

/// Connected components restricted to vertices with alive[v] != 0. Returns a
/// component id per vertex (-1 for dead vertices) and the member lists, each
/// sorted, ordered by smallest member.
struct Components {
  std::vector<int> id;
  std::vector<PointSet> members;
};

inline Components components(const WeightedGraph& g, const std::vector<char>& alive) {
  const auto n = static_cast<std::size_t>(g.n());
  Components c{std::vector<int>(n, -1), {}};
  std::vector<int> stack;
  for (int s = 0; s < g.n(); ++s) {
    if (!alive[static_cast<std::size_t>(s)] || c.id[static_cast<std::size_t>(s)] >= 0) continue;
    const int cid = static_cast<int>(c.members.size());
    c.members.emplace_back();
    stack.push_back(s);
    c.id[static_cast<std::size_t>(s)] = cid;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      c.members.back().push_back(u);
      for (const auto& a : g.adj(u)) {
        if (alive[static_cast<std::size_t>(a.to)] && c.id[static_cast<std::size_t>(a.to)] < 0) {
          c.id[static_cast<std::size_t>(a.to)] = cid;
          stack.push_back(a.to);
        }
      }
    }
    std::sort(c.members.back().begin(), c.members.back().end());
  }
  return c;
}

inline bool is_connected(const WeightedGraph& g) {
  if (g.n() == 0) return true;
  return components(g, std::vector<char>(static_cast<std::size_t>(g.n()), 1)).members.size() == 1;
}

/// Induced subgraph on `keep` (sorted). Vertex i of the result is keep[i].
inline WeightedGraph induced_subgraph(const WeightedGraph& g, std::span<const int> keep) {
  std::vector<int> local(static_cast<std::size_t>(g.n()), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) local[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
  WeightedGraph h(static_cast<int>(keep.size()));
  for (const auto& e : g.edges()) {
    const int a = local[static_cast<std::size_t>(e.u)];
    const int b = local[static_cast<std::size_t>(e.v)];
    if (a >= 0 && b >= 0) h.add_edge(a, b, e.w);
  }
  return h;
}

}  // namespace rspan
