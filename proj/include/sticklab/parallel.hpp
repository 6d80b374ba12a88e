#pragma once
#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace sticklab {

// Split [0, n) into contiguous ranges, one per worker. fn(begin, end, worker)
// must only touch worker-local state; callers merge the per-worker results in
// worker order, so the outcome does not depend on scheduling.
inline void parallel_ranges(std::uint64_t n, int workers,
                            const std::function<void(std::uint64_t, std::uint64_t, int)>& fn) {
  workers = std::max(1, workers);
  if (workers == 1 || n < 2) {
    fn(0, n, 0);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  const std::uint64_t chunk = (n + static_cast<std::uint64_t>(workers) - 1) / static_cast<std::uint64_t>(workers);
  for (int w = 0; w < workers; ++w) {
    std::uint64_t b = std::min<std::uint64_t>(n, chunk * static_cast<std::uint64_t>(w));
    std::uint64_t e = std::min<std::uint64_t>(n, b + chunk);
    pool.emplace_back([&, b, e, w]() {
      try {
        fn(b, e, w);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace sticklab
