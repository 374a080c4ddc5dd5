#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace fplan {

/// Runs fn(i) for i in [0, count) across up to `threads` workers using a
/// static block partition. fn must be safe to call concurrently for distinct
/// indices. threads == 1 (or count < 2) degenerates to a plain loop.
inline void parallel_for(std::size_t count, unsigned threads,
                         const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = 1;
  if (threads == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      // Contiguous blocks: worker w handles [w*count/workers, (w+1)*count/workers).
      const std::size_t lo = w * count / workers;
      const std::size_t hi = (w + 1) * count / workers;
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

inline unsigned default_thread_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace fplan
