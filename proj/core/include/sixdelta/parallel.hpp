#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace sixdelta::par {

/// Name of the environment variable holding the worker count.
inline constexpr const char* kThreadsEnv = "SIXDELTA_THREADS";

/// Worker count: an explicit override if set, else SIXDELTA_THREADS, else
/// std::thread::hardware_concurrency().
int worker_count();

/// Overrides the worker count for this process; 0 restores the default.
void set_worker_count(int n);

/// Runs body(i) for i in [0, n) on worker_count() threads. Each index runs
/// exactly once; callers store results per index so completion order is irrelevant.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Pairwise sum with a shape fixed by the length of v alone.
template <class T>
T tree_sum(std::vector<T> v) {
  if (v.empty()) return T{};
  std::size_t n = v.size();
  while (n > 1) {
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) v[i] = v[2 * i] + v[2 * i + 1];
    if (n % 2 == 1) v[half] = v[n - 1];
    n = half + n % 2;
  }
  return v[0];
}

}  // namespace sixdelta::par
