#pragma once

// Plane graphs given by rotation systems: face tracing, Euler check,
// triangulation and the shortest-path cycle separator.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "rspan/common.hpp"
#include "rspan/graph.hpp"

namespace rspan {

/// rotation[u] lists the neighbours of u in counter-clockwise order.
struct PlaneGraph {
  WeightedGraph graph;
  std::vector<std::vector<int>> rotation;

  int n() const { return graph.n(); }

  friend bool operator==(const PlaneGraph& a, const PlaneGraph& b) {
    return a.graph == b.graph && a.rotation == b.rotation;
  }
};

/// Darts of a rotation system. Dart ids are offset[u] + position in rotation[u].
class DartIndex {
 public:
  explicit DartIndex(const PlaneGraph& pg) : pg_(&pg) {
    const int n = pg.n();
    offset_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int u = 0; u < n; ++u) {
      offset_[static_cast<std::size_t>(u) + 1] =
          offset_[static_cast<std::size_t>(u)] + static_cast<int>(pg.rotation[static_cast<std::size_t>(u)].size());
    }
    for (int u = 0; u < n; ++u) {
      const auto& rot = pg.rotation[static_cast<std::size_t>(u)];
      for (std::size_t i = 0; i < rot.size(); ++i) pos_.emplace(key(u, rot[i]), static_cast<int>(i));
    }
  }

  int size() const { return offset_.back(); }
  int tail(int dart) const {
    return static_cast<int>(std::upper_bound(offset_.begin(), offset_.end(), dart) - offset_.begin()) - 1;
  }
  int head(int dart) const {
    const int u = tail(dart);
    return pg_->rotation[static_cast<std::size_t>(u)][static_cast<std::size_t>(dart - offset_[static_cast<std::size_t>(u)])];
  }
  int dart(int u, int v) const { return offset_[static_cast<std::size_t>(u)] + pos_.at(key(u, v)); }

  /// Face successor: after u->v comes v->w, w following u in rotation[v].
  int next(int d) const {
    const int u = tail(d);
    const int v = head(d);
    const auto& rot = pg_->rotation[static_cast<std::size_t>(v)];
    const int p = pos_.at(key(v, u));
    const int w = rot[static_cast<std::size_t>((p + 1) % static_cast<int>(rot.size()))];
    return dart(v, w);
  }

 private:
  static std::uint64_t key(int u, int v) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) | static_cast<std::uint32_t>(v);
  }

  const PlaneGraph* pg_;
  std::vector<int> offset_;
  std::unordered_map<std::uint64_t, int> pos_;
};

/// Throws NotPlanar unless every rotation lists exactly the graph neighbours.
inline void check_rotation(const PlaneGraph& pg) {
  if (static_cast<int>(pg.rotation.size()) != pg.n()) throw Error(ErrorCode::NotPlanar, "rotation size differs from vertex count");
  for (int u = 0; u < pg.n(); ++u) {
    std::vector<int> a = pg.rotation[static_cast<std::size_t>(u)];
    std::vector<int> b;
    for (const auto& arc : pg.graph.adj(u)) b.push_back(arc.to);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw Error(ErrorCode::NotPlanar, "rotation of vertex " + std::to_string(u) + " does not match its neighbours");
  }
}

struct Faces {
  std::vector<std::vector<int>> walks;  // vertex sequence per face
  std::vector<int> face_of_dart;
};

inline Faces trace_faces(const PlaneGraph& pg) {
  const DartIndex di(pg);
  Faces f;
  f.face_of_dart.assign(static_cast<std::size_t>(di.size()), -1);
  for (int d0 = 0; d0 < di.size(); ++d0) {
    if (f.face_of_dart[static_cast<std::size_t>(d0)] >= 0) continue;
    const int id = static_cast<int>(f.walks.size());
    f.walks.emplace_back();
    int d = d0;
    do {
      f.face_of_dart[static_cast<std::size_t>(d)] = id;
      f.walks.back().push_back(di.tail(d));
      d = di.next(d);
    } while (d != d0);
  }
  return f;
}

/// V - E + F = 2 on every connected component (an isolated vertex has one face).
inline bool euler_ok(const PlaneGraph& pg) {
  check_rotation(pg);
  const auto comp = components(pg.graph, std::vector<char>(static_cast<std::size_t>(pg.n()), 1));
  const auto faces = trace_faces(pg);
  const auto k = comp.members.size();
  std::vector<long long> v(k, 0), e(k, 0), f(k, 0);
  for (int u = 0; u < pg.n(); ++u) ++v[static_cast<std::size_t>(comp.id[static_cast<std::size_t>(u)])];
  for (const auto& ed : pg.graph.edges()) ++e[static_cast<std::size_t>(comp.id[static_cast<std::size_t>(ed.u)])];
  for (const auto& w : faces.walks) ++f[static_cast<std::size_t>(comp.id[static_cast<std::size_t>(w.front())])];
  for (std::size_t c = 0; c < k; ++c) {
    if (e[c] == 0) f[c] = 1;
    if (v[c] - e[c] + f[c] != 2) return false;
  }
  return true;
}

inline bool is_triangulated(const PlaneGraph& pg) {
  if (pg.n() < 3) return true;
  for (const auto& w : trace_faces(pg).walks) {
    if (w.size() != 3) return false;
  }
  return true;
}

/// Plane graph induced on `keep` (sorted); rotations keep their cyclic order.
inline PlaneGraph induced_plane_graph(const PlaneGraph& pg, std::span<const int> keep) {
  std::vector<int> local(static_cast<std::size_t>(pg.n()), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) local[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
  PlaneGraph out{induced_subgraph(pg.graph, keep), std::vector<std::vector<int>>(keep.size())};
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (int w : pg.rotation[static_cast<std::size_t>(keep[i])]) {
      if (local[static_cast<std::size_t>(w)] >= 0) out.rotation[i].push_back(local[static_cast<std::size_t>(w)]);
    }
  }
  return out;
}

/// Adds chords inside every face of length > 3 until all faces are triangles.
/// A new edge uv is weighted by the shortest-path distance between u and v in
/// the input graph, so distances are preserved. Ears (chords skipping one
/// vertex) are preferred.
inline PlaneGraph triangulate(const PlaneGraph& pg) {
  if (!euler_ok(pg)) throw Error(ErrorCode::NotPlanar, "rotation system fails the Euler check");
  if (!is_connected(pg.graph)) throw Error(ErrorCode::DisconnectedGraph, "triangulate needs a connected graph");
  PlaneGraph out = pg;
  if (pg.n() < 3) return out;

  std::unordered_map<int, std::vector<double>> dist_rows;
  auto dist = [&](int a, int b) {
    auto it = dist_rows.find(a);
    if (it == dist_rows.end()) it = dist_rows.emplace(a, dijkstra(pg.graph, a).dist).first;
    return it->second[static_cast<std::size_t>(b)];
  };
  auto insert_after = [&](int at, int after, int x) {
    auto& rot = out.rotation[static_cast<std::size_t>(at)];
    auto it = std::find(rot.begin(), rot.end(), after);
    rot.insert(it + 1, x);
  };

  std::vector<std::vector<int>> stack = trace_faces(pg).walks;
  while (!stack.empty()) {
    std::vector<int> w = std::move(stack.back());
    stack.pop_back();
    const int len = static_cast<int>(w.size());
    if (len <= 3) continue;
    auto at = [&](int i) { return w[static_cast<std::size_t>(((i % len) + len) % len)]; };
    int ci = -1;
    int cj = -1;
    for (int i = 0; i < len && ci < 0; ++i) {
      if (at(i) != at(i + 2) && !out.graph.has_edge(at(i), at(i + 2))) {
        ci = i;
        cj = (i + 2) % len;
      }
    }
    for (int i = 0; i < len && ci < 0; ++i) {
      for (int j = i + 2; j < len && ci < 0; ++j) {
        if ((j + 1) % len == i) continue;
        if (at(i) != at(j) && !out.graph.has_edge(at(i), at(j))) {
          ci = i;
          cj = j;
        }
      }
    }
    if (ci < 0) throw Error(ErrorCode::NotPlanar, "face admits no chord");
    const int a = at(ci);
    const int b = at(cj);
    out.graph.add_edge(a, b, dist(a, b));
    insert_after(a, at(ci - 1), b);
    insert_after(b, at(cj - 1), a);
    std::vector<int> f1;
    std::vector<int> f2;
    for (int i = cj;; ++i) {
      f1.push_back(at(i));
      if ((i % len) == ci) break;
    }
    for (int i = ci;; ++i) {
      f2.push_back(at(i));
      if ((i % len) == cj) break;
    }
    stack.push_back(std::move(f1));
    stack.push_back(std::move(f2));
  }
  return out;
}

struct SeparatorResult {
  PointSet A;
  PointSet B;
  PointSet C;
  std::vector<int> path1;  // from the common endpoint
  std::vector<int> path2;
  std::array<int, 3> endpoints{-1, -1, -1};  // common endpoint, end of path1, end of path2
};

/// Cycle separator of a triangulated plane graph: a non-tree edge uv of a
/// shortest-path tree closes a cycle through the tree paths from lca(u,v).
/// Candidates are scanned in order of how evenly they split the dual tree;
/// the first whose removal leaves no component above 2n/3 is taken, and the
/// components are packed into A and B largest first.
inline SeparatorResult cycle_separator(const PlaneGraph& pg) {
  const int n = pg.n();
  SeparatorResult res;
  if (n < 4) {
    for (int v = 0; v < n; ++v) res.C.push_back(v);
    return res;
  }
  if (!is_triangulated(pg)) throw Error(ErrorCode::BadParams, "cycle_separator needs a triangulated graph");
  if (!is_connected(pg.graph)) throw Error(ErrorCode::DisconnectedGraph, "cycle_separator needs a connected graph");

  const auto spt = dijkstra(pg.graph, 0);
  std::vector<int> depth(static_cast<std::size_t>(n), 0);
  {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return spt.dist[static_cast<std::size_t>(a)] < spt.dist[static_cast<std::size_t>(b)];
    });
    for (int v : order) {
      const int p = spt.parent[static_cast<std::size_t>(v)];
      if (p >= 0) depth[static_cast<std::size_t>(v)] = depth[static_cast<std::size_t>(p)] + 1;
    }
  }
  auto is_tree_edge = [&](int u, int v) {
    return spt.parent[static_cast<std::size_t>(u)] == v || spt.parent[static_cast<std::size_t>(v)] == u;
  };

  // Dual tree over faces, joined through non-tree edges.
  const DartIndex di(pg);
  const auto faces = trace_faces(pg);
  const int F = static_cast<int>(faces.walks.size());
  struct DualArc {
    int to;
    int edge;
  };
  std::vector<std::vector<DualArc>> dual(static_cast<std::size_t>(F));
  std::vector<int> candidates;
  const auto& edges = pg.graph.edges();
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    const auto& ed = edges[static_cast<std::size_t>(e)];
    if (is_tree_edge(ed.u, ed.v)) continue;
    const int f1 = faces.face_of_dart[static_cast<std::size_t>(di.dart(ed.u, ed.v))];
    const int f2 = faces.face_of_dart[static_cast<std::size_t>(di.dart(ed.v, ed.u))];
    dual[static_cast<std::size_t>(f1)].push_back({f2, e});
    dual[static_cast<std::size_t>(f2)].push_back({f1, e});
    candidates.push_back(e);
  }
  std::vector<int> sub(static_cast<std::size_t>(F), 1);
  std::vector<int> dual_parent(static_cast<std::size_t>(F), -1);
  std::vector<int> parent_edge(static_cast<std::size_t>(F), -1);
  {
    std::vector<int> order;
    std::vector<char> seen(static_cast<std::size_t>(F), 0);
    order.push_back(0);
    seen[0] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const int f = order[i];
      for (const auto& a : dual[static_cast<std::size_t>(f)]) {
        if (seen[static_cast<std::size_t>(a.to)]) continue;
        seen[static_cast<std::size_t>(a.to)] = 1;
        dual_parent[static_cast<std::size_t>(a.to)] = f;
        parent_edge[static_cast<std::size_t>(a.to)] = a.edge;
        order.push_back(a.to);
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int p = dual_parent[static_cast<std::size_t>(*it)];
      if (p >= 0) sub[static_cast<std::size_t>(p)] += sub[static_cast<std::size_t>(*it)];
    }
  }
  std::vector<int> balance(edges.size(), F);
  for (int f = 0; f < F; ++f) {
    const int e = parent_edge[static_cast<std::size_t>(f)];
    if (e >= 0) balance[static_cast<std::size_t>(e)] = std::abs(2 * sub[static_cast<std::size_t>(f)] - F);
  }
  std::stable_sort(candidates.begin(), candidates.end(), [&](int a, int b) {
    return balance[static_cast<std::size_t>(a)] < balance[static_cast<std::size_t>(b)];
  });

  const int limit = (2 * n) / 3;
  for (int e : candidates) {
    int u = edges[static_cast<std::size_t>(e)].u;
    int v = edges[static_cast<std::size_t>(e)].v;
    std::vector<int> pu{u};
    std::vector<int> pv{v};
    while (pu.back() != pv.back()) {
      const int a = pu.back();
      const int b = pv.back();
      if (depth[static_cast<std::size_t>(a)] >= depth[static_cast<std::size_t>(b)]) {
        pu.push_back(spt.parent[static_cast<std::size_t>(a)]);
      } else {
        pv.push_back(spt.parent[static_cast<std::size_t>(b)]);
      }
    }
    // pu and pv now both end at the lca.
    pv.pop_back();
    std::vector<char> alive(static_cast<std::size_t>(n), 1);
    for (int x : pu) alive[static_cast<std::size_t>(x)] = 0;
    for (int x : pv) alive[static_cast<std::size_t>(x)] = 0;
    const auto comp = components(pg.graph, alive);
    int mx = 0;
    for (const auto& c : comp.members) mx = std::max(mx, static_cast<int>(c.size()));
    if (mx > limit) continue;
    std::vector<const PointSet*> parts;
    for (const auto& c : comp.members) parts.push_back(&c);
    std::stable_sort(parts.begin(), parts.end(), [](const PointSet* a, const PointSet* b) { return a->size() > b->size(); });
    for (const auto* c : parts) {
      auto& dst = res.A.size() <= res.B.size() ? res.A : res.B;
      dst.insert(dst.end(), c->begin(), c->end());
    }
    std::sort(res.A.begin(), res.A.end());
    std::sort(res.B.begin(), res.B.end());
    const int lca = pu.back();
    res.path1.assign(pu.rbegin(), pu.rend());
    res.path2 = {lca};
    res.path2.insert(res.path2.end(), pv.rbegin(), pv.rend());
    res.endpoints = {lca, u, v};
    for (int x = 0; x < n; ++x) {
      if (!alive[static_cast<std::size_t>(x)]) res.C.push_back(x);
    }
    return res;
  }
  throw Error(ErrorCode::NotPlanar, "no fundamental cycle separates the graph");
}

}  // namespace rspan
