#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace archdpg::detail {

/// Runs body(i) for i in [0, n) on up to `threads` workers in contiguous
/// chunks. Results must be written to per-index slots; the first exception
/// thrown by any worker is rethrown on the calling thread.
template <typename Body>
void parallel_for(int n, int threads, Body&& body) {
  const int workers = std::clamp(threads, 1, std::max(1, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const int chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        const int end = std::min(n, (w + 1) * chunk);
        for (int i = w * chunk; i < end; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace archdpg::detail
