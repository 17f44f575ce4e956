#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace qgrav {

/// Applies fn to every index in [0, n) on a small thread pool. Results come
/// back in index order, so output never depends on scheduling. The first
/// exception (by index) is rethrown after all workers have joined.
template <typename Result, typename Fn>
std::vector<Result> parallel_map(std::size_t n, Fn fn, unsigned max_workers = 0) {
  std::vector<Result> out(n);
  std::vector<std::exception_ptr> errors(n);
  unsigned workers = max_workers ? max_workers : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));

  std::atomic<std::size_t> next{0};
  auto drain = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    drain();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(drain);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace qgrav
