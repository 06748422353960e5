#pragma once

// Seeded instance generators. Every generator is a pure function of its
// parameters and seed.

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "rspan/common.hpp"
#include "rspan/graph.hpp"
#include "rspan/metric.hpp"
#include "rspan/planar.hpp"

namespace rspan {

/// Random recursive tree: vertex v > 0 hangs off a uniform earlier vertex,
/// with an integer weight in [1, max_weight].
inline WeightedGraph random_tree(int n, std::uint64_t seed, int max_weight = 10) {
  if (n < 1) throw Error(ErrorCode::BadParams, "random_tree needs n >= 1");
  Rng rng(seed);
  WeightedGraph g(n);
  for (int v = 1; v < n; ++v) {
    const int p = rng.index(v);
    g.add_edge(p, v, 1.0 + static_cast<double>(rng.index(max_weight)));
  }
  return g;
}

/// Rotation system of a straight-line drawing: neighbours sorted by angle.
inline std::vector<std::vector<int>> rotation_from_coordinates(const WeightedGraph& g, const std::vector<double>& x,
                                                               const std::vector<double>& y) {
  std::vector<std::vector<int>> rot(static_cast<std::size_t>(g.n()));
  for (int u = 0; u < g.n(); ++u) {
    auto& r = rot[static_cast<std::size_t>(u)];
    for (const auto& a : g.adj(u)) r.push_back(a.to);
    const auto uu = static_cast<std::size_t>(u);
    std::sort(r.begin(), r.end(), [&](int a, int b) {
      const auto aa = static_cast<std::size_t>(a);
      const auto bb = static_cast<std::size_t>(b);
      return std::atan2(y[aa] - y[uu], x[aa] - x[uu]) < std::atan2(y[bb] - y[uu], x[bb] - x[uu]);
    });
  }
  return rot;
}

/// rows x cols unit grid; vertex i*cols + j sits at (j, i).
inline PlaneGraph grid_graph(int rows, int cols) {
  if (rows < 1 || cols < 1) throw Error(ErrorCode::BadParams, "grid needs positive dimensions");
  const int n = rows * cols;
  WeightedGraph g(n);
  std::vector<double> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const int v = i * cols + j;
      x[static_cast<std::size_t>(v)] = j;
      y[static_cast<std::size_t>(v)] = i;
      if (j + 1 < cols) g.add_edge(v, v + 1, 1.0);
      if (i + 1 < rows) g.add_edge(v, v + cols, 1.0);
    }
  }
  auto rot = rotation_from_coordinates(g, x, y);
  return {std::move(g), std::move(rot)};
}

/// Splits n into rows x cols with rows the largest divisor not above sqrt(n).
inline std::pair<int, int> grid_shape(int n) {
  if (n < 1) throw Error(ErrorCode::BadParams, "grid needs n >= 1");
  int rows = static_cast<int>(std::sqrt(static_cast<double>(n)));
  while (rows > 1 && n % rows != 0) --rows;
  return {rows, n / rows};
}

/// Grid with one random diagonal per cell and integer weights in [1, max_weight].
inline PlaneGraph random_planar(int n, std::uint64_t seed, int max_weight = 10) {
  const auto [rows, cols] = grid_shape(n);
  Rng rng(seed);
  WeightedGraph g(n);
  std::vector<double> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
  auto w = [&] { return 1.0 + static_cast<double>(rng.index(max_weight)); };
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const int v = i * cols + j;
      x[static_cast<std::size_t>(v)] = j;
      y[static_cast<std::size_t>(v)] = i;
      if (j + 1 < cols) g.add_edge(v, v + 1, w());
      if (i + 1 < rows) g.add_edge(v, v + cols, w());
      if (i + 1 < rows && j + 1 < cols) {
        if (rng.index(2) == 0) {
          g.add_edge(v, v + cols + 1, w());
        } else {
          g.add_edge(v + 1, v + cols, w());
        }
      }
    }
  }
  auto rot = rotation_from_coordinates(g, x, y);
  return {std::move(g), std::move(rot)};
}

/// h groups of n/h points. Inside group i (1-based) all distances are
/// (t+eps)^i; between groups i < j the distance is (t+eps)^j.
inline FiniteMetric layered_metric(int n, int h, double t, double eps = 0.01) {
  if (n < 1 || h < 1 || n % h != 0) throw Error(ErrorCode::BadParams, "layered metric needs h dividing n");
  if (!(t > 1.0) || !(eps > 0.0)) throw Error(ErrorCode::BadParams, "layered metric needs t > 1 and eps > 0");
  const int g = n / h;
  std::vector<double> d(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (p == q) continue;
      const int level = std::max(p / g, q / g) + 1;
      d[static_cast<std::size_t>(p) * static_cast<std::size_t>(n) + static_cast<std::size_t>(q)] = std::pow(t + eps, level);
    }
  }
  return FiniteMetric(n, std::move(d));
}

/// Random hierarchical ultrametric: each node splits its contiguous range
/// into 2..4 parts whose internal scale shrinks by a factor in [2, 4).
inline FiniteMetric random_ultrametric(int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::BadParams, "ultrametric needs n >= 1");
  Rng rng(seed);
  std::vector<double> d(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  struct Range {
    int lo;
    int hi;
    double label;
  };
  std::vector<Range> stack{{0, n, 1024.0}};
  while (!stack.empty()) {
    const Range r = stack.back();
    stack.pop_back();
    const int size = r.hi - r.lo;
    if (size < 2) continue;
    const int parts = 2 + rng.index(std::min(3, size - 1));
    std::vector<int> cuts = rng.subset(size - 1, parts - 1);
    std::vector<int> bounds{r.lo};
    for (int c : cuts) bounds.push_back(r.lo + c + 1);
    bounds.push_back(r.hi);
    for (std::size_t a = 0; a + 1 < bounds.size(); ++a) {
      for (int p = bounds[a]; p < bounds[a + 1]; ++p) {
        for (int q = bounds[a + 1]; q < r.hi; ++q) {
          d[static_cast<std::size_t>(p) * static_cast<std::size_t>(n) + static_cast<std::size_t>(q)] = r.label;
          d[static_cast<std::size_t>(q) * static_cast<std::size_t>(n) + static_cast<std::size_t>(p)] = r.label;
        }
      }
      stack.push_back({bounds[a], bounds[a + 1], r.label / rng.uniform(2.0, 4.0)});
    }
  }
  return FiniteMetric(n, std::move(d));
}

struct GenParams {
  int n = 16;
  int h = 4;
  double t = 2.0;
  double eps = 0.01;
};

using Instance = std::variant<WeightedGraph, PlaneGraph, FiniteMetric>;

/// kind: uniform, random_tree, grid, random_planar, layered, ultrametric.
inline Instance gen_instance(const std::string& kind, const GenParams& p, std::uint64_t seed) {
  if (p.n < 1) throw Error(ErrorCode::BadParams, "n must be positive");
  if (kind == "uniform") return uniform_metric(p.n);
  if (kind == "random_tree") return random_tree(p.n, seed);
  if (kind == "grid") {
    const auto [rows, cols] = grid_shape(p.n);
    return grid_graph(rows, cols);
  }
  if (kind == "random_planar") return random_planar(p.n, seed);
  if (kind == "layered") return layered_metric(p.n, p.h, p.t, p.eps);
  if (kind == "ultrametric") return random_ultrametric(p.n, seed);
  throw Error(ErrorCode::BadParams, "unknown instance kind '" + kind + "'");
}

}  // namespace rspan
