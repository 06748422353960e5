#pragma once

// Reliable spanners for the uniform metric: constellations (oblivious) and
// permutation-model expanders with shadow-closure damage (adaptive).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rspan/common.hpp"
#include "rspan/expander.hpp"
#include "rspan/graph.hpp"

namespace rspan {

enum class SpannerMode { Constellation, Expander2t, Expander2tMinus1 };

inline std::string to_string(SpannerMode m) {
  switch (m) {
    case SpannerMode::Constellation: return "constellation";
    case SpannerMode::Expander2t: return "expander_2t";
    case SpannerMode::Expander2tMinus1: return "expander_2t_minus_1";
  }
  return "unknown";
}

inline SpannerMode parse_spanner_mode(const std::string& s) {
  if (s == "constellation") return SpannerMode::Constellation;
  if (s == "expander_2t") return SpannerMode::Expander2t;
  if (s == "expander_2t_minus_1") return SpannerMode::Expander2tMinus1;
  throw Error(ErrorCode::BadParams, "unknown spanner mode '" + s + "'");
}

struct Spanner {
  WeightedGraph graph;
  SpannerMode mode = SpannerMode::Constellation;
  double theta = 0.25;
  int t = 1;
  int d = 0;  // regular degree; for the block graph the degree bound
  std::uint64_t seed = 0;
  ConstantMode constants = ConstantMode::Practical;
  bool clamped = false;  // degree clamp hit, graph is complete
  // constellation
  PointSet centers;  // in draw order, repeats kept
  // expander_2t
  MultiGraph raw;
  double lambda = 0.0;  // measured on raw
  // expander_2t_minus_1
  std::vector<PointSet> blocks;
  std::vector<int> block_of;
  std::vector<Spanner> inner;
  int d_bip = 0;
  long long inner_edges = 0;
  long long bipartite_edges = 0;

  int n() const { return graph.n(); }

  friend bool operator==(const Spanner&, const Spanner&) = default;
};

/// Number of constellation centers, 2 ceil(ln(1/theta)/theta) + 1.
inline int constellation_size(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw Error(ErrorCode::BadParams, "theta must lie in (0, 1)");
  return 2 * static_cast<int>(std::ceil(std::log(1.0 / theta) / theta - 1e-12)) + 1;
}

/// Union of stars around k centers drawn uniformly with replacement.
inline Spanner constellation(int n, double theta, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::TooFewPoints, "constellation needs n >= 2");
  const int k = constellation_size(theta);
  Spanner s;
  s.mode = SpannerMode::Constellation;
  s.theta = theta;
  s.t = 2;
  s.seed = seed;
  s.graph = WeightedGraph(n);
  Rng rng(seed);
  for (int i = 0; i < k; ++i) s.centers.push_back(rng.index(n));
  for (int c : s.centers) {
    for (int v = 0; v < n; ++v) s.graph.add_edge(c, v, 1.0);
  }
  return s;
}

struct DamageResult {
  PointSet B;
  PointSet B_hat;
  double loss = 0.0;
  std::vector<int> trace;  // cumulative |S_i| after each round
  double eps = 0.0;        // absorption threshold is eps * d
  bool guard = false;      // (1 + 5 theta)|B| >= n, everything lost
  int failed_clusters = 0;
  int guarded_clusters = 0;
};

inline double loss_rate(std::size_t b, std::size_t b_hat) {
  return b == 0 ? 0.0 : static_cast<double>(b_hat - b) / static_cast<double>(b);
}

inline DamageResult constellation_damage(const Spanner& s, std::span<const int> B_in) {
  if (s.mode != SpannerMode::Constellation) throw Error(ErrorCode::WrongMode, "spanner is not a constellation");
  DamageResult r;
  r.B = normalized(PointSet(B_in.begin(), B_in.end()));
  for (int b : r.B) {
    if (b < 0 || b >= s.n()) throw Error(ErrorCode::IndexOutOfRange, "attack vertex out of range");
  }
  const auto in_b = membership(s.n(), r.B);
  bool all = !s.centers.empty();
  for (int c : s.centers) all = all && in_b[static_cast<std::size_t>(c)];
  if (all) {
    for (int v = 0; v < s.n(); ++v) r.B_hat.push_back(v);
  } else {
    r.B_hat = r.B;
  }
  r.loss = loss_rate(r.B.size(), r.B_hat.size());
  return r;
}

/// Expander with degree select_degree(n, t, theta). A clamped degree
/// falls back to the complete graph, whose lambda is 1/(n-1).
inline Spanner build_g2t(int n, double theta, int t, std::uint64_t seed,
                         ConstantMode constants = ConstantMode::Practical) {
  if (n < 2) throw Error(ErrorCode::TooFewPoints, "expander needs n >= 2");
  const DegreeChoice dc = select_degree(n, t, theta, constants);
  Spanner s;
  s.mode = SpannerMode::Expander2t;
  s.theta = theta;
  s.t = t;
  s.seed = seed;
  s.constants = constants;
  s.clamped = dc.clamped;
  if (dc.clamped) {
    s.graph = complete_graph(n);
    s.raw = MultiGraph::from_graph(s.graph);
    s.d = n - 1;
    s.lambda = 1.0 / (n - 1);
    return s;
  }
  PermutationGraph pg = permutation_regular_graph(n, dc.d, seed);
  s.graph = std::move(pg.simple);
  s.raw = std::move(pg.raw);
  s.d = dc.d;
  EigenOptions eo;
  eo.seed = derive_seed(seed, 0x1a4b);
  s.lambda = second_eigenvalue(s.raw, eo);
  return s;
}

namespace detail {

inline Spanner build_blocks(const std::vector<int>& sizes, double theta, int t, std::uint64_t seed,
                            ConstantMode constants) {
  const int q = static_cast<int>(sizes.size());
  int n = 0;
  for (int z : sizes) n += z;
  Spanner s;
  s.mode = SpannerMode::Expander2tMinus1;
  s.theta = theta;
  s.t = t;
  s.seed = seed;
  s.constants = constants;
  s.graph = WeightedGraph(n);
  s.block_of.assign(static_cast<std::size_t>(n), -1);
  int start = 0;
  for (int i = 0; i < q; ++i) {
    const int size = sizes[static_cast<std::size_t>(i)];
    PointSet a;
    for (int v = start; v < start + size; ++v) {
      a.push_back(v);
      s.block_of[static_cast<std::size_t>(v)] = i;
    }
    s.blocks.push_back(std::move(a));
    s.inner.push_back(build_g2t(size, theta, t - 1, derive_seed(seed, static_cast<std::uint64_t>(i)), constants));
    for (const auto& e : s.inner.back().graph.edges()) {
      if (s.graph.add_edge(start + e.u, start + e.v, 1.0)) ++s.inner_edges;
    }
    start += size;
  }
  int inner_d = 0;
  for (const auto& in : s.inner) inner_d = std::max(inner_d, in.d);
  for (int i = 0; i < q; ++i) {
    for (int j = i + 1; j < q; ++j) {
      const int li = sizes[static_cast<std::size_t>(i)];
      const int lj = sizes[static_cast<std::size_t>(j)];
      const auto salt = static_cast<std::uint64_t>(q + i * q + j);
      const BipartiteGraph bg = li == lj ? bipartite_expander(li, lj, theta, derive_seed(seed, salt))
                                         : bipartite_expander_unbalanced(li, lj, theta, derive_seed(seed, salt));
      s.d_bip = std::max(s.d_bip, bg.d);
      const int oi = s.blocks[static_cast<std::size_t>(i)].front();
      const int oj = s.blocks[static_cast<std::size_t>(j)].front();
      for (const auto& e : bg.graph.edges()) {
        if (s.graph.add_edge(oi + e.u, oj + (e.v - li), 1.0)) ++s.bipartite_edges;
      }
    }
  }
  s.d = inner_d + (q - 1) * s.d_bip;
  s.clamped = s.inner.front().clamped;
  return s;
}

}  // namespace detail

/// q = round(n^{1/t}) blocks of n/q points, each carrying a copy of the
/// (2t-2)-hop expander, and every block pair glued by a bipartite expander
/// with xi = theta. Requires q to divide n.
inline Spanner build_g2t_minus_1(int n, double theta, int t, std::uint64_t seed,
                                 ConstantMode constants = ConstantMode::Practical) {
  if (t < 2) throw Error(ErrorCode::BadParams, "the block construction needs t >= 2; use build_g2t");
  if (n < 4) throw Error(ErrorCode::InfeasibleBlocking, "too few points for blocks");
  const int q = static_cast<int>(std::lround(std::pow(static_cast<double>(n), 1.0 / t)));
  if (q < 2 || n % q != 0 || n / q < 2) {
    throw Error(ErrorCode::InfeasibleBlocking,
                "round(n^{1/t}) = " + std::to_string(q) + " does not split n = " + std::to_string(n) + " evenly");
  }
  return detail::build_blocks(std::vector<int>(static_cast<std::size_t>(q), n / q), theta, t, seed, constants);
}

/// Block construction for any n >= 4: q = max(2, round(n^{1/t})) blocks
/// whose sizes differ by at most one; uneven pairs use the unbalanced glue.
inline Spanner build_g2t_minus_1_balanced(int n, double theta, int t, std::uint64_t seed,
                                          ConstantMode constants = ConstantMode::Practical) {
  if (t < 2) throw Error(ErrorCode::BadParams, "the block construction needs t >= 2; use build_g2t");
  if (n < 4) throw Error(ErrorCode::InfeasibleBlocking, "too few points for blocks");
  int q = static_cast<int>(std::lround(std::pow(static_cast<double>(n), 1.0 / t)));
  q = std::clamp(q, 2, n / 2);
  std::vector<int> sizes(static_cast<std::size_t>(q), n / q);
  for (int i = 0; i < n % q; ++i) ++sizes[static_cast<std::size_t>(i)];
  return detail::build_blocks(sizes, theta, t, seed, constants);
}

/// eps = (1 + theta)(|B|/n + lambda/sqrt(theta)).
inline double shadow_threshold(int n, std::size_t b, double theta, double lambda) {
  return (1.0 + theta) * (static_cast<double>(b) / n + lambda / std::sqrt(theta));
}

/// Shadow fixpoint on a multigraph: repeatedly absorb every vertex with at
/// least eps*d incidences into the current bad set, one round at a time.
inline DamageResult shadow_closure(const MultiGraph& g, int d, std::span<const int> B_in, double eps) {
  const int n = g.n();
  DamageResult r;
  r.B = normalized(PointSet(B_in.begin(), B_in.end()));
  r.eps = eps;
  std::vector<char> bad(static_cast<std::size_t>(n), 0);
  std::vector<int> count(static_cast<std::size_t>(n), 0);
  auto absorb = [&](int v) {
    bad[static_cast<std::size_t>(v)] = 1;
    for (int u : g.adj[static_cast<std::size_t>(v)]) ++count[static_cast<std::size_t>(u)];
  };
  for (int b : r.B) {
    if (b < 0 || b >= n) throw Error(ErrorCode::IndexOutOfRange, "attack vertex out of range");
    absorb(b);
  }
  const double limit = eps * d;
  int total = 0;
  while (true) {
    std::vector<int> fresh;
    for (int u = 0; u < n; ++u) {
      if (!bad[static_cast<std::size_t>(u)] && count[static_cast<std::size_t>(u)] >= limit) fresh.push_back(u);
    }
    if (fresh.empty()) break;
    for (int u : fresh) absorb(u);
    total += static_cast<int>(fresh.size());
    r.trace.push_back(total);
  }
  for (int v = 0; v < n; ++v) {
    if (bad[static_cast<std::size_t>(v)]) r.B_hat.push_back(v);
  }
  r.loss = loss_rate(r.B.size(), r.B_hat.size());
  return r;
}

namespace detail {

inline DamageResult shadow_expander(const Spanner& s, std::span<const int> B, std::optional<double> eps) {
  const int n = s.n();
  const double e = eps ? *eps : shadow_threshold(n, B.size(), s.theta, s.lambda);
  if ((1.0 + 5.0 * s.theta) * static_cast<double>(B.size()) >= n && !B.empty()) {
    DamageResult r;
    r.B = normalized(PointSet(B.begin(), B.end()));
    r.eps = e;
    r.guard = true;
    for (int v = 0; v < n; ++v) r.B_hat.push_back(v);
    r.trace.push_back(n - static_cast<int>(r.B.size()));
    r.loss = loss_rate(r.B.size(), r.B_hat.size());
    return r;
  }
  return shadow_closure(s.raw, s.d, B, e);
}

}  // namespace detail

/// Constructive damaged set of an expander spanner. For the block graph the
/// closure runs inside every block on its own share of B and the results
/// are unioned. A fixed eps overrides the per-attack threshold.
inline DamageResult shadow_damage(const Spanner& s, std::span<const int> B_in, std::optional<double> eps = {}) {
  if (s.mode == SpannerMode::Constellation) throw Error(ErrorCode::WrongMode, "constellations use constellation_damage");
  const PointSet B = normalized(PointSet(B_in.begin(), B_in.end()));
  for (int b : B) {
    if (b < 0 || b >= s.n()) throw Error(ErrorCode::IndexOutOfRange, "attack vertex out of range");
  }
  if (s.mode == SpannerMode::Expander2t) return detail::shadow_expander(s, B, eps);

  DamageResult r;
  r.B = B;
  std::vector<PointSet> local(s.blocks.size());
  for (int b : B) {
    const int i = s.block_of[static_cast<std::size_t>(b)];
    local[static_cast<std::size_t>(i)].push_back(b - s.blocks[static_cast<std::size_t>(i)].front());
  }
  std::vector<std::vector<int>> traces;
  for (std::size_t i = 0; i < s.blocks.size(); ++i) {
    const DamageResult part = detail::shadow_expander(s.inner[i], local[i], eps);
    for (int v : part.B_hat) r.B_hat.push_back(s.blocks[i].front() + v);
    r.guard = r.guard || part.guard;
    r.eps = std::max(r.eps, part.eps);
    traces.push_back(part.trace);
  }
  std::size_t rounds = 0;
  for (const auto& t : traces) rounds = std::max(rounds, t.size());
  for (std::size_t k = 0; k < rounds; ++k) {
    int sum = 0;
    for (const auto& t : traces) {
      if (!t.empty()) sum += t[std::min(k, t.size() - 1)];
    }
    r.trace.push_back(sum);
  }
  std::sort(r.B_hat.begin(), r.B_hat.end());
  r.loss = loss_rate(r.B.size(), r.B_hat.size());
  return r;
}

/// Damage through whichever rule the spanner's mode uses.
inline DamageResult spanner_damage(const Spanner& s, std::span<const int> B) {
  return s.mode == SpannerMode::Constellation ? constellation_damage(s, B) : shadow_damage(s, B);
}

struct HopReport {
  long long pairs = 0;
  long long violations = 0;  // survivor pairs farther than the hop bound
  int max_hops = 0;          // -1 if some survivor pair is disconnected
  int witness_u = -1;
  int witness_v = -1;
};

/// All-sources breadth-first search in g minus `removed`: every pair of
/// survivors must be joined within `hop_bound` edges.
inline HopReport residual_hop_check(const WeightedGraph& g, std::span<const int> removed, int hop_bound,
                                    std::vector<std::pair<int, int>>* bad = nullptr) {
  const int n = g.n();
  std::vector<char> alive(static_cast<std::size_t>(n), 1);
  for (int v : removed) alive[static_cast<std::size_t>(v)] = 0;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) {
    if (!alive[static_cast<std::size_t>(u)]) continue;
    for (const auto& a : g.adj(u)) {
      if (alive[static_cast<std::size_t>(a.to)]) adj[static_cast<std::size_t>(u)].push_back(a.to);
    }
  }
  const auto survivors = static_cast<std::size_t>(std::count(alive.begin(), alive.end(), 1));
  HopReport r;
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::vector<int> queue;
  queue.reserve(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    if (!alive[static_cast<std::size_t>(s)]) continue;
    std::fill(dist.begin(), dist.end(), -1);
    dist[static_cast<std::size_t>(s)] = 0;
    queue.assign(1, s);
    // Stops as soon as every survivor has a distance.
    for (std::size_t h = 0; h < queue.size() && queue.size() < survivors; ++h) {
      const int u = queue[h];
      for (int v : adj[static_cast<std::size_t>(u)]) {
        if (dist[static_cast<std::size_t>(v)] < 0) {
          dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
          queue.push_back(v);
        }
      }
    }
    for (int v = s + 1; v < n; ++v) {
      if (!alive[static_cast<std::size_t>(v)]) continue;
      ++r.pairs;
      const int h = dist[static_cast<std::size_t>(v)];
      if (h < 0 || h > hop_bound) {
        if (bad) bad->emplace_back(s, v);
        if (r.violations++ == 0) {
          r.witness_u = s;
          r.witness_v = v;
        }
      }
      if (r.max_hops >= 0) r.max_hops = h < 0 ? -1 : std::max(r.max_hops, h);
    }
  }
  return r;
}

}  // namespace rspan
