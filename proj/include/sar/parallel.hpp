#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

#include "sar/common.hpp"

namespace sar {

/* Runs fn(chunk, begin, end) over a contiguous partition of [0, n).
 * Chunks are fixed by n and the thread count alone and never overlap, so
 * results are identical for any thread count as long as chunks write only
 * their own outputs. The first exception thrown by any chunk is rethrown. */
template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
  if (threads == 0) throw ValidationError("parallel_for: thread count must be positive");
  const std::size_t used = std::min(threads, n == 0 ? std::size_t(1) : n);
  if (n == 0) return;
  if (used == 1) {
    fn(std::size_t(0), std::size_t(0), n);
    return;
  }
  const std::size_t chunk = (n + used - 1) / used;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(used);
  for (std::size_t t = 0; t < used; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, &errors, t, begin, end] {
      try {
        fn(t, begin, end);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (std::thread& th : pool) th.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace sar
