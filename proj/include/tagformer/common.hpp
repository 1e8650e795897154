#pragma once

#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace tagformer {

// ---------------------------------------------------------------------------
// Error taxonomy. The CLI maps these onto exit codes:
//   ConfigError/ParamError -> 1, IoError/FormatError/DataError -> 2,
//   DivergenceError -> 3.
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public Error {
public:
  using Error::Error;
};

class FormatError : public Error {
public:
  using Error::Error;
};

/// Bad argument or violated precondition (also used for CLI usage errors).
class ParamError : public Error {
public:
  using Error::Error;
};

class ShapeError : public ParamError {
public:
  using ParamError::ParamError;
};

/// Dataset-level problems: empty splits, malformed manifests.
class DataError : public Error {
public:
  using Error::Error;
};

/// Corrupt or inconsistent on-disk artifacts (checkpoints, duplicate ids).
class IntegrityError : public DataError {
public:
  using DataError::DataError;
};

class DivergenceError : public Error {
public:
  using Error::Error;
};

class ConfigError : public ParamError {
public:
  using ParamError::ParamError;
};

/// Metric is undefined for the given labels (e.g. single-class ROC-AUC).
class UndefinedMetricError : public Error {
public:
  using Error::Error;
};

inline std::string shape_str(const std::vector<int>& s) {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) os << ", ";
    os << s[i];
  }
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------
// Worker pool. parallel_for partitions an index range into one contiguous
// block per worker; every element is written by exactly one thread and
// per-element accumulation order is fixed, so results are bit-identical for
// any worker count.
// ---------------------------------------------------------------------------

namespace detail {
inline int& worker_count() {
  static int n = 1;
  return n;
}
inline bool& inside_parallel() {
  thread_local bool inside = false;
  return inside;
}
}  // namespace detail

inline void set_workers(int n) {
  if (n < 1) throw ParamError("set_workers: worker count must be >= 1, got " + std::to_string(n));
  detail::worker_count() = n;
}

inline int workers() { return detail::worker_count(); }

/// Runs body(begin, end) over disjoint blocks of [0, n). Falls back to a
/// single serial call when nested, when only one worker is configured, or
/// when the range is below min_per_worker elements per thread.
template <class F>
void parallel_for(std::int64_t n, std::int64_t min_per_worker, F&& body) {
  if (n <= 0) return;
  const int nw = workers();
  if (detail::inside_parallel() || nw <= 1 || n < 2 * min_per_worker) {
    body(std::int64_t{0}, n);
    return;
  }
  const std::int64_t max_blocks = std::max<std::int64_t>(1, n / std::max<std::int64_t>(1, min_per_worker));
  const int blocks = static_cast<int>(std::min<std::int64_t>(nw, max_blocks));
  const std::int64_t chunk = (n + blocks - 1) / blocks;
  std::vector<std::thread> threads;
  threads.reserve(blocks - 1);
  for (int b = 1; b < blocks; ++b) {
    const std::int64_t lo = b * chunk;
    const std::int64_t hi = std::min<std::int64_t>(n, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([&body, lo, hi] {
      detail::inside_parallel() = true;
      body(lo, hi);
      detail::inside_parallel() = false;
    });
  }
  {
    const bool was_inside = detail::inside_parallel();
    detail::inside_parallel() = true;
    body(std::int64_t{0}, std::min<std::int64_t>(n, chunk));
    detail::inside_parallel() = was_inside;
  }
  for (auto& t : threads) t.join();
}

// ---------------------------------------------------------------------------
// Seed derivation. Named RNG streams are derived from the run seed with a
// splitmix64 chain so that streams are independent of worker scheduling.
// ---------------------------------------------------------------------------

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = splitmix64(base);
  for (std::uint64_t p : path) s = splitmix64(s ^ splitmix64(p));
  return s;
}

}  // namespace tagformer
