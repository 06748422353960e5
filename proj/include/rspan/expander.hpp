#pragma once

// Random regular graphs in the permutation model and empirical checks of
// the proper-expander properties: second eigenvalue, mixing inequality,
// vertex expansion and sparse self-edge density.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rspan/common.hpp"
#include "rspan/graph.hpp"

namespace rspan {

struct PermutationGraph {
  MultiGraph raw;        // d-regular, loops listed twice
  WeightedGraph simple;  // loops dropped, parallel edges merged, unit weights
  int d = 0;
};

/// Union of d/2 uniform permutations: edges {i, pi_j(i)}.
inline PermutationGraph permutation_regular_graph(int n, int d, std::uint64_t seed) {
  if (d < 2 || d % 2 != 0) throw Error(ErrorCode::BadParity, "permutation model needs an even degree >= 2");
  if (n < d) throw Error(ErrorCode::BadParams, "permutation model needs n >= d");
  Rng rng(seed);
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d / 2));
  for (int j = 0; j < d / 2; ++j) {
    const std::vector<int> pi = rng.permutation(n);
    for (int i = 0; i < n; ++i) pairs.emplace_back(i, pi[static_cast<std::size_t>(i)]);
  }
  PermutationGraph g;
  g.d = d;
  g.raw = MultiGraph::from_pairs(n, pairs);
  g.simple = WeightedGraph(n);
  for (auto [u, v] : pairs) g.simple.add_edge(u, v, 1.0);
  return g;
}

inline WeightedGraph complete_graph(int n) {
  WeightedGraph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v, 1.0);
  }
  return g;
}

enum class ConstantMode { Paper, Practical };

inline std::string to_string(ConstantMode m) { return m == ConstantMode::Paper ? "paper" : "practical"; }

inline ConstantMode parse_constant_mode(const std::string& s) {
  if (s == "paper") return ConstantMode::Paper;
  if (s == "practical") return ConstantMode::Practical;
  throw Error(ErrorCode::BadParams, "constant mode must be paper or practical");
}

struct ExpanderConstants {
  double C = 3.0;
  double c_theta = 0.0;
};

/// Spectral constant C and small-set expansion constant c(theta).
inline ExpanderConstants expander_constants(double theta, ConstantMode mode) {
  if (mode == ConstantMode::Paper) return {41000.0, std::exp(-2.2 / theta)};
  return {3.0, theta / 4.0};
}

struct DegreeChoice {
  int d = 0;
  double first_term = 0.0;   // 2 n^{1/t} / theta
  double second_term = 0.0;  // 36 C^2 theta^-3 c_theta^-2
  bool clamped = false;
  ConstantMode mode = ConstantMode::Practical;
  ExpanderConstants constants;
};

/// Degree of the 2t-hop expander. Paper mode takes the max of both terms;
/// practical mode uses the first term and reports the second. The result is
/// rounded up to even and clamped to the largest even value below n.
inline DegreeChoice select_degree(int n, int t, double theta, ConstantMode mode) {
  if (n < 2 || t < 1) throw Error(ErrorCode::BadParams, "select_degree needs n >= 2 and t >= 1");
  if (!(theta > 0.0 && theta < 1.0)) throw Error(ErrorCode::BadParams, "theta must lie in (0, 1)");
  if (mode == ConstantMode::Paper && theta > 0.25) throw Error(ErrorCode::BadParams, "paper mode needs theta <= 1/4");
  DegreeChoice c;
  c.mode = mode;
  c.constants = expander_constants(theta, mode);
  c.first_term = 2.0 / theta * std::pow(static_cast<double>(n), 1.0 / t);
  c.second_term = 36.0 * c.constants.C * c.constants.C / std::pow(theta, 3) / (c.constants.c_theta * c.constants.c_theta);
  const double want = mode == ConstantMode::Paper ? std::max(c.first_term, c.second_term) : c.first_term;
  const int cap = (n - 1) % 2 == 0 ? n - 1 : n - 2;
  // The tolerance absorbs pow() rounding such as 256^{1/2} = 16.000000000000004.
  const double ceil_want = std::ceil(want * (1.0 - 1e-12));
  if (!(ceil_want <= static_cast<double>(cap))) {
    c.d = cap;
    c.clamped = true;
    return c;
  }
  c.d = static_cast<int>(ceil_want);
  if (c.d % 2 != 0) ++c.d;
  if (c.d > cap) {
    c.d = cap;
    c.clamped = true;
  }
  return c;
}

struct BipartiteGraph {
  WeightedGraph graph;  // left side 0..nL-1, right side nL..nL+nR-1
  int n_left = 0;
  int n_right = 0;
  int d = 0;  // matchings used after the clamp
};

/// Matchings needed for the bipartite expander with parameter xi.
inline int bipartite_degree(double xi) { return 2 * static_cast<int>(std::ceil(3.0 / (xi * xi) - 1e-12)); }

/// Union of bipartite_degree(xi) random perfect matchings between equal
/// sides, clamped to n_right (then the graph is complete bipartite).
inline BipartiteGraph bipartite_expander(int n_left, int n_right, double xi, std::uint64_t seed) {
  if (n_left != n_right) throw Error(ErrorCode::UnequalSides, "bipartite expander needs equal sides");
  if (n_left < 1) throw Error(ErrorCode::BadParams, "bipartite expander needs nonempty sides");
  if (!(xi > 0.0 && xi < 1.0)) throw Error(ErrorCode::BadParams, "xi must lie in (0, 1)");
  BipartiteGraph b;
  b.n_left = n_left;
  b.n_right = n_right;
  b.graph = WeightedGraph(n_left + n_right);
  const int want = bipartite_degree(xi);
  if (want >= n_right) {
    b.d = n_right;
    for (int u = 0; u < n_left; ++u) {
      for (int v = 0; v < n_right; ++v) b.graph.add_edge(u, n_left + v, 1.0);
    }
    return b;
  }
  b.d = want;
  Rng rng(seed);
  for (int j = 0; j < want; ++j) {
    const std::vector<int> pi = rng.permutation(n_right);
    for (int u = 0; u < n_left; ++u) b.graph.add_edge(u, n_left + pi[static_cast<std::size_t>(u)], 1.0);
  }
  return b;
}

/// Bipartite glue between sides of different sizes: every left vertex gets
/// the larger side's share of d_bip random right neighbours via repeated
/// balanced assignments. Used only where blocks are uneven.
inline BipartiteGraph bipartite_expander_unbalanced(int n_left, int n_right, double xi, std::uint64_t seed) {
  if (n_left < 1 || n_right < 1) throw Error(ErrorCode::BadParams, "bipartite expander needs nonempty sides");
  if (!(xi > 0.0 && xi < 1.0)) throw Error(ErrorCode::BadParams, "xi must lie in (0, 1)");
  BipartiteGraph b;
  b.n_left = n_left;
  b.n_right = n_right;
  b.graph = WeightedGraph(n_left + n_right);
  const int want = bipartite_degree(xi);
  if (want >= std::min(n_left, n_right)) {
    b.d = std::min(n_left, n_right);
    for (int u = 0; u < n_left; ++u) {
      for (int v = 0; v < n_right; ++v) b.graph.add_edge(u, n_left + v, 1.0);
    }
    return b;
  }
  b.d = want;
  Rng rng(seed);
  const int big = std::max(n_left, n_right);
  for (int j = 0; j < want; ++j) {
    // Each round maps a random ordering of the larger side onto the smaller
    // one cyclically, so every vertex on both sides gets at least one edge.
    const std::vector<int> pl = rng.permutation(n_left);
    const std::vector<int> pr = rng.permutation(n_right);
    for (int i = 0; i < big; ++i) {
      const int u = pl[static_cast<std::size_t>(i % n_left)];
      const int v = pr[static_cast<std::size_t>(i % n_right)];
      b.graph.add_edge(u, n_left + v, 1.0);
    }
  }
  return b;
}

/// Largest absolute non-principal eigenvalue of Adj/d, computed densely.
/// Reference oracle for small graphs.
inline double second_eigenvalue_dense(const MultiGraph& g) {
  const int d = g.regular_degree();
  if (d <= 0) throw Error(ErrorCode::NotRegular, "graph is not regular");
  const int n = g.n();
  if (n < 2) return 0.0;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int u = 0; u < n; ++u) {
    for (int v : g.adj[static_cast<std::size_t>(u)]) a(u, v) += 1.0;
  }
  // Loops sit twice in adj[u], giving diagonal entry 2 per loop.
  a /= static_cast<double>(d);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = es.eigenvalues();
  // The top eigenvalue is 1; drop one copy of it.
  double best = 0.0;
  for (int i = 0; i + 1 < n; ++i) best = std::max(best, std::abs(ev(i)));
  return best;
}

struct EigenOptions {
  double tol = 1e-9;
  int max_steps = 600;
  std::uint64_t seed = 1;
};

/// Largest absolute eigenvalue of Adj/d on the complement of the all-ones
/// vector. Lanczos with full reorthogonalisation (a Krylov acceleration of
/// deflated power iteration); stops when the residual bound of both extreme
/// Ritz values drops below tol, or the Krylov space is exhausted.
inline double second_eigenvalue(const MultiGraph& g, const EigenOptions& opt = {}) {
  const int d = g.regular_degree();
  if (d <= 0) throw Error(ErrorCode::NotRegular, "graph is not regular");
  const int n = g.n();
  if (n < 2) return 0.0;
  const double inv_d = 1.0 / d;
  auto apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    for (int u = 0; u < n; ++u) {
      double s = 0.0;
      for (int v : g.adj[static_cast<std::size_t>(u)]) s += x(v);
      y(u) = s * inv_d;
    }
  };
  auto deflate = [&](Eigen::VectorXd& x) { x.array() -= x.mean(); };

  const int steps = std::min(n - 1, opt.max_steps);
  Eigen::MatrixXd Q(n, steps + 1);
  std::vector<double> alpha, beta;
  Rng rng(opt.seed);
  Eigen::VectorXd q(n);
  for (int i = 0; i < n; ++i) q(i) = rng.uniform(-1.0, 1.0);
  deflate(q);
  q.normalize();
  Q.col(0) = q;
  Eigen::VectorXd w(n);
  double result = 0.0;
  for (int k = 0; k < steps; ++k) {
    apply(Q.col(k), w);
    deflate(w);
    const double a = Q.col(k).dot(w);
    alpha.push_back(a);
    // Two passes of classical Gram-Schmidt against the whole basis.
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXd c = Q.leftCols(k + 1).transpose() * w;
      w -= Q.leftCols(k + 1) * c;
    }
    deflate(w);
    const double b = w.norm();
    const int m = k + 1;
    const bool exhausted = b <= 1e-12 || m == steps;
    if (!exhausted && m % 8 != 0) {
      beta.push_back(b);
      Q.col(k + 1) = w / b;
      continue;
    }
    Eigen::VectorXd diag(m), sub(std::max(m - 1, 1));
    for (int i = 0; i < m; ++i) diag(i) = alpha[static_cast<std::size_t>(i)];
    for (int i = 0; i + 1 < m; ++i) sub(i) = beta[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub.head(m - 1), Eigen::ComputeEigenvectors);
    const Eigen::VectorXd& ev = es.eigenvalues();
    result = std::max(std::abs(ev(0)), std::abs(ev(m - 1)));
    const double res_lo = std::abs(b * es.eigenvectors()(m - 1, 0));
    const double res_hi = std::abs(b * es.eigenvectors()(m - 1, m - 1));
    if (exhausted || (res_lo <= opt.tol && res_hi <= opt.tol)) break;
    beta.push_back(b);
    Q.col(k + 1) = w / b;
  }
  return std::min(result, 1.0);
}

inline double second_eigenvalue(const MultiGraph& g, double tol) {
  EigenOptions o;
  o.tol = tol;
  return second_eigenvalue(g, o);
}

/// Ordered-pair edge count 1_S^T A 1_T; a loop at u in S and T counts twice.
inline long long edge_count(const MultiGraph& g, std::span<const int> S, const std::vector<char>& in_t) {
  long long c = 0;
  for (int u : S) {
    for (int v : g.adj[static_cast<std::size_t>(u)]) c += in_t[static_cast<std::size_t>(v)] ? 1 : 0;
  }
  return c;
}

struct MixingReport {
  int samples = 0;
  int violations = 0;
  double worst_ratio = 0.0;  // deviation / (lambda d sqrt(|S||T|))
  PointSet worst_s;
  PointSet worst_t;
};

/// Checks | |E(S,T)| - d|S||T|/n | <= lambda d sqrt(|S||T|) on S=T=V, a few
/// singleton pairs and num_samples random pairs of random sizes.
inline MixingReport mixing_check(const MultiGraph& g, double lambda, int num_samples, std::uint64_t seed) {
  const int d = g.regular_degree();
  if (d <= 0) throw Error(ErrorCode::NotRegular, "graph is not regular");
  const int n = g.n();
  MixingReport r;
  Rng rng(seed);
  auto check = [&](const PointSet& S, const PointSet& T) {
    ++r.samples;
    const long long e = edge_count(g, S, membership(n, T));
    const double s = static_cast<double>(S.size());
    const double t = static_cast<double>(T.size());
    const double dev = std::abs(static_cast<double>(e) - d * s * t / n);
    const double bound = lambda * d * std::sqrt(s * t);
    const double ratio = bound > 0.0 ? dev / bound : (dev > 1e-9 ? kInf : 0.0);
    if (!approx_le(dev, bound) && dev > 1e-9) ++r.violations;
    if (ratio > r.worst_ratio || r.worst_s.empty()) {
      r.worst_ratio = ratio;
      r.worst_s = S;
      r.worst_t = T;
    }
  };
  PointSet all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  check(all, all);
  for (int i = 0; i < std::min(n, 4); ++i) {
    const int v = rng.index(n);
    check({v}, {v});
  }
  for (int i = 0; i < num_samples; ++i) {
    const PointSet S = rng.subset(n, 1 + rng.index(n));
    const PointSet T = rng.subset(n, 1 + rng.index(n));
    check(S, T);
  }
  return r;
}

enum class ExpansionMode { Exhaustive, Sampled };

struct ExpansionReport {
  ExpansionMode mode = ExpansionMode::Sampled;
  int p1_threshold = 0;  // smallest |S| the first property constrains
  int p2_threshold = 0;  // largest |S| the second property constrains
  long long p1_checked = 0;
  long long p1_failures = 0;
  long long p2_checked = 0;
  long long p2_failures = 0;
  double p2_worst_ratio = kInf;  // min |Gamma(S)| / ((1-delta) d |S|)
  PointSet p1_witness;
  PointSet p2_witness;
  double p1_pass_rate() const { return p1_checked ? 1.0 - static_cast<double>(p1_failures) / p1_checked : 1.0; }
  double p2_pass_rate() const { return p2_checked ? 1.0 - static_cast<double>(p2_failures) / p2_checked : 1.0; }
};

/// Vertex expansion. (p1): |S| >= 12n/(delta d) implies |Gamma(S)| > (1-delta)n;
/// since Gamma is monotone only the smallest such size is enumerated.
/// (p2): |S| <= c_delta n/d implies |Gamma(S)| >= (1-delta) d |S|.
/// Exhaustive mode enumerates subsets (n <= 24); sampled mode draws `budget`
/// subsets per relevant size.
inline ExpansionReport expansion_check(const MultiGraph& g, double delta, ExpansionMode mode, int budget,
                                       std::uint64_t seed, ConstantMode constants = ConstantMode::Practical) {
  const int d = g.regular_degree();
  if (d <= 0) throw Error(ErrorCode::NotRegular, "graph is not regular");
  const int n = g.n();
  if (mode == ExpansionMode::Exhaustive && n > 24) mode = ExpansionMode::Sampled;
  ExpansionReport r;
  r.mode = mode;
  const double c_delta = expander_constants(delta, constants).c_theta;
  r.p1_threshold = static_cast<int>(std::ceil(12.0 * n / (delta * d) - 1e-9));
  r.p2_threshold = static_cast<int>(std::floor(c_delta * n / d + 1e-9));
  r.p2_threshold = std::min(r.p2_threshold, n);

  std::vector<char> mark(static_cast<std::size_t>(n), 0);
  auto gamma = [&](const PointSet& S) {
    int count = 0;
    std::vector<int> touched;
    for (int u : S) {
      for (int v : g.adj[static_cast<std::size_t>(u)]) {
        if (!mark[static_cast<std::size_t>(v)]) {
          mark[static_cast<std::size_t>(v)] = 1;
          touched.push_back(v);
          ++count;
        }
      }
    }
    for (int v : touched) mark[static_cast<std::size_t>(v)] = 0;
    return count;
  };
  auto test_p1 = [&](const PointSet& S) {
    ++r.p1_checked;
    if (!(gamma(S) > (1.0 - delta) * n)) {
      if (r.p1_failures++ == 0) r.p1_witness = S;
    }
  };
  auto test_p2 = [&](const PointSet& S) {
    ++r.p2_checked;
    const double need = (1.0 - delta) * d * static_cast<double>(S.size());
    const double got = gamma(S);
    r.p2_worst_ratio = std::min(r.p2_worst_ratio, got / need);
    if (!approx_le(need, got)) {
      if (r.p2_failures++ == 0) r.p2_witness = S;
    }
  };
  auto for_each_subset = [&](int size, auto&& fn) {
    std::vector<int> idx(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
      fn(PointSet(idx));
      int i = size - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - size + i) --i;
      if (i < 0) return;
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < size; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  };

  Rng rng(seed);
  if (r.p1_threshold <= n) {
    const int size = std::max(1, r.p1_threshold);
    if (mode == ExpansionMode::Exhaustive) {
      for_each_subset(size, test_p1);
    } else {
      for (int i = 0; i < budget; ++i) test_p1(rng.subset(n, size));
    }
  }
  for (int size = 1; size <= r.p2_threshold; ++size) {
    if (mode == ExpansionMode::Exhaustive) {
      for_each_subset(size, test_p2);
    } else {
      for (int i = 0; i < budget; ++i) test_p2(rng.subset(n, size));
    }
  }
  if (r.p2_checked == 0) r.p2_worst_ratio = 0.0;
  return r;
}

struct SelfEdgeReport {
  int samples = 0;
  int rejected = 0;  // draws outside |S| <= eps n
  int violations = 0;
  double worst_ratio = 0.0;  // |E(S,S)| / (eta d |S|)
  PointSet witness;
};

/// Samples S with 1 <= |S| <= eps n and checks |E(S,S)| <= eta d |S|.
inline SelfEdgeReport self_edge_density_check(const MultiGraph& g, double eps, double eta, int num_samples,
                                              std::uint64_t seed) {
  const int d = g.regular_degree();
  if (d <= 0) throw Error(ErrorCode::NotRegular, "graph is not regular");
  if (!(0.0 < eps && eps < 1.0 / (3.0 * d) && 3.0 / d < eta && eta < 1.0)) {
    throw Error(ErrorCode::BadParamOrder, "need 0 < eps < 1/(3d) < 3/d < eta < 1");
  }
  const int n = g.n();
  const int cap = static_cast<int>(std::floor(eps * n + 1e-9));
  SelfEdgeReport r;
  Rng rng(seed);
  for (int i = 0; i < num_samples; ++i) {
    const int size = 1 + rng.index(std::max(1, cap));
    if (size > cap) {
      ++r.rejected;
      continue;
    }
    ++r.samples;
    const PointSet S = rng.subset(n, size);
    const long long e = edge_count(g, S, membership(n, S));
    const double ratio = static_cast<double>(e) / (eta * d * size);
    if (ratio > r.worst_ratio) r.worst_ratio = ratio;
    if (ratio > 1.0 + kRelTol) {
      if (r.violations++ == 0) r.witness = S;
    }
  }
  return r;
}

struct ExpanderReport {
  int n = 0;
  int d = 0;
  ConstantMode mode = ConstantMode::Practical;
  double lambda = 0.0;          // raw multigraph
  double lambda_simple = -1.0;  // simplified graph when regular, else -1
  double spectral_bound = 0.0;  // C / sqrt(d)
  MixingReport mixing;
  ExpansionReport expansion;
  SelfEdgeReport self_edges;

  bool ok() const {
    return approx_le(lambda, spectral_bound) && mixing.violations == 0 && expansion.p1_failures == 0 &&
           expansion.p2_failures == 0 && self_edges.violations == 0;
  }
};

struct ExpanderCheckOptions {
  double delta = 0.5;
  ConstantMode mode = ConstantMode::Practical;
  int mixing_samples = 1000;
  int expansion_budget = 200;
  int self_edge_samples = 200;
  std::uint64_t seed = 1;
};

/// Runs every check on a regular multigraph; `simple` is its simplified graph
/// when known. The self-edge check uses eps = 1/(4d) and eta = 4/d and is
/// skipped when d <= 4.
inline ExpanderReport inspect_expander(const MultiGraph& g, const WeightedGraph* simple = nullptr,
                                       const ExpanderCheckOptions& opt = {}) {
  ExpanderReport r;
  r.n = g.n();
  r.d = g.regular_degree();
  if (r.d <= 0) throw Error(ErrorCode::NotRegular, "graph is not regular");
  r.mode = opt.mode;
  EigenOptions eo;
  eo.seed = opt.seed;
  r.lambda = second_eigenvalue(g, eo);
  if (simple) {
    const MultiGraph sg = MultiGraph::from_graph(*simple);
    if (sg.regular_degree() > 0) r.lambda_simple = sg == g ? r.lambda : second_eigenvalue(sg, eo);
  }
  r.spectral_bound = expander_constants(0.25, opt.mode).C / std::sqrt(static_cast<double>(r.d));
  r.mixing = mixing_check(g, r.lambda, opt.mixing_samples, derive_seed(opt.seed, 1));
  r.expansion = expansion_check(g, opt.delta, ExpansionMode::Exhaustive, opt.expansion_budget,
                                derive_seed(opt.seed, 2), opt.mode);
  if (r.d > 4) {
    r.self_edges = self_edge_density_check(g, 1.0 / (4.0 * r.d), 4.0 / r.d, opt.self_edge_samples,
                                           derive_seed(opt.seed, 3));
  }
  return r;
}

}  // namespace rspan
