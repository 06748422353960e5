#pragma once

// O(k)-covers of general metrics from a decreasing sequence of point sets.
// Stage j carves the surviving set A = P_{j-1} hierarchically (scale 2^i,
// radius uniform in [2^i, 2^{i+1}), centers in random order). Points whose
// gamma 2^i neighbourhood stays inside their cluster at every scale are
// padded and leave A. The carving hierarchy is read as a 2-HST on A and
// covered with hst_cover(eps = 1). For a padded x and any y in A the lca
// label is at most 8/gamma times d(x,y), so the cover is valid at t = 16k
// with gamma = 1/(2k).

#include <cmath>
#include <string>
#include <vector>

#include "rspan/common.hpp"
#include "rspan/cover.hpp"
#include "rspan/metric.hpp"

namespace rspan {

inline constexpr double kRamseyConstant = 16.0;

namespace detail {

struct Carving {
  int top = 0;
  int bottom = 0;
  std::vector<std::vector<int>> cid;  // cid[top - i][a] = cluster of A[a] at scale i
  std::vector<char> padded;
};

inline Carving carve(const FiniteMetric& m, const PointSet& A, double gamma, Rng& rng, int forced) {
  const int na = static_cast<int>(A.size());
  Carving c;
  const double diam = m.diameter(A);
  double dmin = kInf;
  for (int a = 0; a < na; ++a) {
    for (int b = a + 1; b < na; ++b) dmin = std::min(dmin, m(A[static_cast<std::size_t>(a)], A[static_cast<std::size_t>(b)]));
  }
  c.top = static_cast<int>(std::ceil(std::log2(std::max(diam, 1e-300))));
  c.bottom = static_cast<int>(std::floor(std::log2(dmin))) - 1;
  std::vector<int> parent(static_cast<std::size_t>(na), 0);
  for (int i = c.top; i >= c.bottom; --i) {
    const double scale = std::ldexp(1.0, i);
    const double radius = rng.uniform(scale, 2.0 * scale);
    std::vector<int> order = rng.permutation(na);
    if (forced >= 0) {
      auto it = std::find(order.begin(), order.end(), forced);
      std::rotate(order.begin(), it, it + 1);
    }
    std::vector<int> cid(static_cast<std::size_t>(na), -1);
    int next = 0;
    for (int center : order) {
      // One new cluster per (center, parent cluster) pair that it captures.
      std::vector<std::pair<int, int>> made;
      for (int a = 0; a < na; ++a) {
        if (cid[static_cast<std::size_t>(a)] >= 0) continue;
        if (!(m(A[static_cast<std::size_t>(center)], A[static_cast<std::size_t>(a)]) <= radius)) continue;
        const int par = parent[static_cast<std::size_t>(a)];
        int id = -1;
        for (auto [pp, idx] : made) {
          if (pp == par) id = idx;
        }
        if (id < 0) {
          id = next++;
          made.emplace_back(par, id);
        }
        cid[static_cast<std::size_t>(a)] = id;
      }
    }
    c.cid.push_back(cid);
    parent = std::move(cid);
  }
  c.padded.assign(static_cast<std::size_t>(na), 1);
  for (int a = 0; a < na; ++a) {
    for (int b = 0; b < na && c.padded[static_cast<std::size_t>(a)]; ++b) {
      if (a == b) continue;
      const double d = m(A[static_cast<std::size_t>(a)], A[static_cast<std::size_t>(b)]);
      for (std::size_t lv = 0; lv < c.cid.size(); ++lv) {
        const int i = c.top - static_cast<int>(lv);
        if (c.cid[lv][static_cast<std::size_t>(a)] != c.cid[lv][static_cast<std::size_t>(b)]) {
          if (d <= gamma * std::ldexp(1.0, i)) c.padded[static_cast<std::size_t>(a)] = 0;
          break;
        }
      }
    }
  }
  return c;
}

/// The carving as a 2-HST over local indices of A. A cluster that first
/// splits at scale i is labelled 2^{i+3}, which bounds its diameter.
inline HST carving_hst(const Carving& c, int na) {
  HST h;
  h.leaf_of.assign(static_cast<std::size_t>(na), -1);
  struct Item {
    std::vector<int> members;
    int lv;
    int parent;
  };
  std::vector<int> all(static_cast<std::size_t>(na));
  for (int a = 0; a < na; ++a) all[static_cast<std::size_t>(a)] = a;
  std::vector<Item> stack{{all, 0, -1}};
  while (!stack.empty()) {
    Item it = std::move(stack.back());
    stack.pop_back();
    const int id = static_cast<int>(h.nodes.size());
    h.nodes.emplace_back();
    h.nodes[static_cast<std::size_t>(id)].parent = it.parent;
    if (it.parent >= 0) h.nodes[static_cast<std::size_t>(it.parent)].children.push_back(id);
    else h.root = id;
    if (it.members.size() == 1) {
      h.nodes[static_cast<std::size_t>(id)].point = it.members.front();
      h.leaf_of[static_cast<std::size_t>(it.members.front())] = id;
      continue;
    }
    std::size_t lv = static_cast<std::size_t>(it.lv);
    while (true) {
      const auto& cid = c.cid[lv];
      bool split = false;
      for (int a : it.members) split = split || cid[static_cast<std::size_t>(a)] != cid[static_cast<std::size_t>(it.members.front())];
      if (split) break;
      ++lv;
    }
    const int scale = c.top - static_cast<int>(lv);
    h.nodes[static_cast<std::size_t>(id)].label = std::ldexp(1.0, scale + 3);
    std::vector<std::pair<int, std::vector<int>>> groups;
    for (int a : it.members) {
      const int key = c.cid[lv][static_cast<std::size_t>(a)];
      auto g = std::find_if(groups.begin(), groups.end(), [&](const auto& x) { return x.first == key; });
      if (g == groups.end()) {
        groups.push_back({key, {a}});
      } else {
        g->second.push_back(a);
      }
    }
    for (auto& [key, members] : groups) stack.push_back({std::move(members), static_cast<int>(lv) + 1, id});
  }
  return h;
}

}  // namespace detail

struct RamseyParams {
  int k = 2;
  int max_retries = 8;
  double envelope_factor = 8.0;
};

/// Randomized O(k)-cover; see the header comment. info records the constant
/// c (t = c k), the size and depth envelopes, attempts and stage count.
inline Cover ramsey_cover(const FiniteMetric& m, int k, std::uint64_t seed, const RamseyParams& params = {}) {
  if (k < 1) throw Error(ErrorCode::BadParams, "k must be >= 1");
  const int n = m.n();
  if (n < 2) throw Error(ErrorCode::TooFewPoints, "ramsey_cover needs n >= 2");
  const double gamma = 1.0 / (2.0 * k);
  const double log_spread = std::log2(metric_stats(m).spread) + 1.0;
  const double target_size = std::pow(n, 1.0 + 1.0 / k) * log_spread;
  const double target_depth = k * std::pow(n, 1.0 / k) * log_spread;

  for (int attempt = 0; attempt <= params.max_retries; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    CoverBuilder cb(m, kRamseyConstant * k);
    PointSet alive(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) alive[static_cast<std::size_t>(i)] = i;
    int stages = 0;
    while (alive.size() >= 2) {
      ++stages;
      detail::Carving carving = detail::carve(m, alive, gamma, rng, -1);
      if (std::find(carving.padded.begin(), carving.padded.end(), 1) == carving.padded.end()) {
        carving = detail::carve(m, alive, gamma, rng, rng.index(static_cast<int>(alive.size())));
      }
      const HST h = detail::carving_hst(carving, static_cast<int>(alive.size()));
      const Cover local = hst_cover(h, 1.0);
      for (std::size_t ci = 0; ci < local.clusters.size(); ++ci) {
        PointSet g;
        for (int a : local.clusters[ci]) g.push_back(alive[static_cast<std::size_t>(a)]);
        cb.add(std::move(g), {"carving", -1, local.meta[ci].radius, stages});
      }
      PointSet rest;
      for (std::size_t a = 0; a < alive.size(); ++a) {
        if (!carving.padded[a]) rest.push_back(alive[a]);
      }
      alive = std::move(rest);
    }
    Cover c = cb.take();
    c.info = {{"c", kRamseyConstant},
              {"k", static_cast<double>(k)},
              {"target_size", target_size},
              {"target_depth", target_depth},
              {"attempts", static_cast<double>(attempt + 1)},
              {"stages", static_cast<double>(stages)}};
    if (static_cast<double>(c.size()) <= params.envelope_factor * target_size) return c;
  }
  throw Error(ErrorCode::EnvelopeExceeded, "cover size stayed above the envelope after retries");
}

}  // namespace rspan
