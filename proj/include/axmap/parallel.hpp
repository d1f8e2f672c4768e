#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace axmap {

// Runs fn(i) for i in [0, count). threads == 0 means hardware concurrency.
// Work is pulled from a shared counter; callers that need deterministic
// results must write into per-index slots.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  unsigned want = threads > 0 ? static_cast<unsigned>(threads)
                              : std::thread::hardware_concurrency();
  if (want == 0) want = 1;
  if (want == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  if (want > count) want = static_cast<unsigned>(count);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(want);
  for (unsigned t = 0; t < want; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace axmap
