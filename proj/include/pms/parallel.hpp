#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace pms {

inline unsigned chunk_count(std::size_t total, unsigned jobs) {
  if (total == 0) return 0;
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return std::max(1u, std::min({jobs == 0 ? hw : jobs, hw,
                                static_cast<unsigned>(std::min<std::size_t>(total, 1u << 16))}));
}

// Chunked parallel map over [0, total); fn(chunk_index, begin, end).
// Chunk boundaries depend only on (total, jobs), so per-chunk results can be
// merged deterministically regardless of scheduling.
inline void parallel_chunks(std::size_t total, unsigned jobs,
                            const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  if (total == 0) return;
  unsigned workers = chunk_count(total, jobs);
  if (workers == 1) {
    fn(0, 0, total);
    return;
  }
  std::size_t chunk = (total + workers - 1) / workers;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t begin = static_cast<std::size_t>(w) * chunk;
    std::size_t end = std::min(total, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&, w, begin, end] { fn(w, begin, end); });
  }
  for (auto& t : threads) t.join();
}

}  // namespace pms
