#pragma once

// Deterministic parallel sampling. Work is cut into fixed-size shards and
// shard i always draws from root.substream(i), so results depend only on
// (seed, stream id, n, shard size), never on the thread count.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

#include "dirsim/rng.hpp"

namespace dirsim {

inline constexpr std::size_t kDefaultShardSize = 4096;

/// Calls fn(stream, count, shard_index) for every shard and returns the
/// results in shard order. The first exception thrown by any shard is rethrown.
template <class Fn>
auto run_sharded(const RngStream& root, std::size_t n, std::size_t shard_size, unsigned threads,
                 Fn fn) {
  using Result = decltype(fn(std::declval<RngStream&>(), std::size_t{}, std::size_t{}));
  shard_size = std::max<std::size_t>(shard_size, 1);
  const std::size_t shards = (n + shard_size - 1) / shard_size;
  std::vector<Result> results(shards);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= shards) return;
      try {
        RngStream s = root.substream(i);
        const std::size_t count = std::min(shard_size, n - i * shard_size);
        results[i] = fn(s, count, i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(shards);
      }
    }
  };

  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(shards, 1)));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace dirsim
