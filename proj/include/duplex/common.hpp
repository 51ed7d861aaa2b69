#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace duplex {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct LengthError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateScmError : NumericalError {
  using NumericalError::NumericalError;
};

/// Number of worker threads used by the per-frequency loops.
/// Overridable through the DUPLEX_THREADS environment variable.
inline int worker_threads() {
  static const int n = [] {
    if (const char* env = std::getenv("DUPLEX_THREADS")) {
      int v = std::atoi(env);
      if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(hw == 0 ? 1 : (hw > 4 ? 4 : hw));
  }();
  return n;
}

/// Runs fn(i) for i in [begin, end). Iterations must be independent and
/// write to disjoint locations; the partition does not affect results.
inline void parallel_for(Eigen::Index begin, Eigen::Index end,
                         const std::function<void(Eigen::Index)>& fn) {
  const Eigen::Index count = end - begin;
  const int threads = worker_threads();
  if (count <= 0) return;
  if (threads <= 1 || count == 1) {
    for (Eigen::Index i = begin; i < end; ++i) fn(i);
    return;
  }
  const int used = static_cast<int>(std::min<Eigen::Index>(threads, count));
  std::vector<std::thread> pool;
  pool.reserve(used);
  for (int w = 0; w < used; ++w) {
    pool.emplace_back([&, w] {
      for (Eigen::Index i = begin + w; i < end; i += used) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace duplex
