#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace recip {

inline unsigned default_thread_count() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

// Static chunking: for a fixed thread count the work split is fixed, so
// floating-point reductions done per chunk and then combined in chunk order
// are reproducible run to run.
inline void parallel_for(std::size_t n, unsigned threads,
                         const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  if (threads <= 1 || n < 2 * threads) {
    body(0, n);
    return;
  }
  const std::size_t chunk = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t lo = t * chunk;
    if (lo >= n) break;
    const std::size_t hi = lo + chunk < n ? lo + chunk : n;
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace recip
