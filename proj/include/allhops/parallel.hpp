#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace allhops {

namespace detail {
inline std::atomic<unsigned>& thread_setting() noexcept {
  static std::atomic<unsigned> threads{1};
  return threads;
}
}  // namespace detail

/// Upper bound on worker threads used by kernels. 1 (the default) runs inline.
inline void set_kernel_threads(unsigned threads) noexcept {
  detail::thread_setting().store(std::max(1u, threads), std::memory_order_relaxed);
}

inline unsigned kernel_threads() noexcept {
  return detail::thread_setting().load(std::memory_order_relaxed);
}

/// Runs body(i) for i in [begin, end), splitting the range into contiguous
/// blocks across kernel_threads() threads. Every index is handled by exactly one
/// thread, so writes to per-index outputs need no synchronization.
template <typename Body>
void parallel_for(std::size_t begin, std::size_t end, Body&& body) {
  const std::size_t count = end > begin ? end - begin : 0;
  const std::size_t workers = std::min<std::size_t>(kernel_threads(), count);
  if (workers <= 1) {
    for (std::size_t i = begin; i < end; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  const std::size_t block = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = begin + w * block;
    const std::size_t hi = std::min(end, lo + block);
    pool.emplace_back([&, lo, hi, w] {
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace allhops
