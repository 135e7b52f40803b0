#pragma once

// Deterministic helpers for data-parallel loops.  Work is split into chunks
// whose results are combined in chunk order, so the outcome does not depend
// on the number of worker threads (set SLOPECI_THREADS to override).

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace slopeci::threads {

inline unsigned worker_count() {
  if (const char* env = std::getenv("SLOPECI_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1 && v <= 1024) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Applies fn(begin, end, slot) over disjoint ranges covering [0, n) and
// returns one result slot per chunk, indexed by position so callers can fold
// them in a fixed order.  fn must not touch shared mutable state.
template <class T, class Fn>
std::vector<T> run_partitioned(std::uint64_t n, Fn fn) {
  unsigned workers = worker_count();
  std::uint64_t chunks64 = static_cast<std::uint64_t>(workers) * 8;
  if (chunks64 > n) chunks64 = n == 0 ? 1 : n;
  std::size_t chunks = static_cast<std::size_t>(chunks64);

  std::vector<T> results(chunks);
  if (n == 0) return results;

  std::uint64_t per = n / chunks;
  std::uint64_t extra = n % chunks;

  auto chunk_range = [&](std::size_t c) {
    std::uint64_t begin = c * per + std::min<std::uint64_t>(c, extra);
    std::uint64_t end = begin + per + (c < extra ? 1 : 0);
    return std::pair<std::uint64_t, std::uint64_t>{begin, end};
  };

  if (workers == 1 || chunks == 1) {
    for (std::size_t c = 0; c < chunks; ++c) {
      auto [b, e] = chunk_range(c);
      results[c] = fn(b, e);
    }
    return results;
  }

  std::atomic<std::size_t> next{0};
  auto body = [&]() {
    for (;;) {
      std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      auto [b, e] = chunk_range(c);
      results[c] = fn(b, e);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace slopeci::threads
