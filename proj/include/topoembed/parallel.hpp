#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace topoembed {

inline unsigned default_threads() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

// Run body(chunk_id, begin, end) over n items split into n_chunks contiguous
// chunks. Chunk boundaries depend only on n and n_chunks, never on the thread
// count, so callers that reduce per-chunk results in chunk order get the same
// answer for any number of workers.
template <class Body>
void parallel_chunks(std::size_t n, std::size_t n_chunks, unsigned n_threads,
                     Body&& body) {
  if (n == 0) return;
  if (n_chunks == 0) n_chunks = 1;
  if (n_chunks > n) n_chunks = n;
  const std::size_t base = n / n_chunks, rem = n % n_chunks;
  auto chunk_range = [&](std::size_t c) {
    const std::size_t begin = c * base + (c < rem ? c : rem);
    return std::pair<std::size_t, std::size_t>(begin,
                                               begin + base + (c < rem ? 1 : 0));
  };
  if (n_threads <= 1 || n_chunks == 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) {
      auto [b, e] = chunk_range(c);
      body(c, b, e);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      auto [b, e] = chunk_range(c);
      body(c, b, e);
    }
  };
  std::vector<std::thread> pool;
  const unsigned spawn = static_cast<unsigned>(
      std::min<std::size_t>(n_threads, n_chunks));
  pool.reserve(spawn - 1);
  for (unsigned t = 1; t < spawn; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

// Index-wise parallel loop; body(i) must be independent across i.
template <class Body>
void parallel_for(std::size_t n, unsigned n_threads, Body&& body) {
  parallel_chunks(n, n_threads == 0 ? 1 : n_threads * 4, n_threads,
                  [&](std::size_t, std::size_t b, std::size_t e) {
                    for (std::size_t i = b; i < e; ++i) body(i);
                  });
}

}  // namespace topoembed
