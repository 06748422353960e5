#pragma once

// Shared vocabulary for the rspan library: error type, floating-point
// tolerance, deterministic random numbers and small set helpers.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace rspan {

enum class ErrorCode {
  DisconnectedGraph,
  TooFewPoints,
  SeedOutsideGround,
  NotUltrametric,
  BadParams,
  IndexOutOfRange,
  NotATree,
  NotPlanar,
  NotAShortestPath,
  EnvelopeExceeded,
  WrongMode,
  BadParity,
  InfeasibleBlocking,
  UnequalSides,
  NotRegular,
  BadParamOrder,
  InvalidCover,
  FamilyMismatch,
  SpecMismatch,
  ParseError,
};

inline std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::SeedOutsideGround: return "SeedOutsideGround";
    case ErrorCode::NotUltrametric: return "NotUltrametric";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::NotPlanar: return "NotPlanar";
    case ErrorCode::NotAShortestPath: return "NotAShortestPath";
    case ErrorCode::EnvelopeExceeded: return "EnvelopeExceeded";
    case ErrorCode::WrongMode: return "WrongMode";
    case ErrorCode::BadParity: return "BadParity";
    case ErrorCode::InfeasibleBlocking: return "InfeasibleBlocking";
    case ErrorCode::UnequalSides: return "UnequalSides";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::BadParamOrder: return "BadParamOrder";
    case ErrorCode::InvalidCover: return "InvalidCover";
    case ErrorCode::FamilyMismatch: return "FamilyMismatch";
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Relative tolerance applied to every comparison against a bound.
inline constexpr double kRelTol = 1e-9;

/// a <= b up to relative tolerance.
inline bool approx_le(double a, double b) {
  if (a <= b) return true;
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  return a <= b + kRelTol * std::max({std::abs(a), std::abs(b), 1e-300});
}

inline bool approx_eq(double a, double b) { return approx_le(a, b) && approx_le(b, a); }

/// Vertex/point subsets are sorted, duplicate-free index vectors.
using PointSet = std::vector<int>;

inline PointSet normalized(PointSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline std::vector<char> membership(int n, std::span<const int> s) {
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (int v : s) in[static_cast<std::size_t>(v)] = 1;
  return in;
}

inline bool is_subset(std::span<const int> a, std::span<const int> b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// SplitMix64 finalizer, used to derive independent seeds from (seed, salt).
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  return mix64(mix64(seed) ^ (salt * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL));
}

/// Deterministic generator: mt19937_64 output is fixed by the standard, and the
/// derived draws below avoid implementation-defined distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  int index(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

  /// Uniform real in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

  std::vector<int> permutation(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    shuffle(p);
    return p;
  }

  /// Uniform random subset of {0..n-1} of the given size, sorted.
  PointSet subset(int n, int size) {
    size = std::clamp(size, 0, n);
    std::vector<int> p = permutation(n);
    p.resize(static_cast<std::size_t>(size));
    std::sort(p.begin(), p.end());
    return p;
  }

 private:
  std::mt19937_64 engine_;
};

/// Worker count: SPANNER_THREADS if set to a positive integer, else the
/// hardware concurrency.
inline int thread_count() {
  if (const char* env = std::getenv("SPANNER_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace detail {
inline thread_local bool in_parallel = false;
}

/// Runs f(i) for i in [0, n) on up to thread_count() threads. Callers write
/// to per-index slots, so results do not depend on scheduling. Nested calls
/// run serially. The first exception is rethrown after all workers stop.
template <class F>
void parallel_for(int n, F&& f) {
  const int workers = detail::in_parallel ? 1 : std::min(thread_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    const bool outer = detail::in_parallel;
    detail::in_parallel = true;
    for (int i = next++; i < n; i = next++) {
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
    detail::in_parallel = outer;
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace rspan
