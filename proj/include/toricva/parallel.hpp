// Deterministic worker pool: results must never depend on the worker count,
// so loops are index-stable and callers merge in a fixed order.

#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace toricva::detail {

inline unsigned worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (n > 16) n = 16;
  if (const char* s = std::getenv("TORICVA_WORKERS")) {
    const long v = std::atol(s);
    if (v >= 1 && v <= 64) n = (unsigned)v;
  }
  return n;
}

// index-stable parallel loop; exceptions are rethrown for the lowest index
template <class Fn>
inline void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t w = std::min<std::size_t>(worker_count(), n);
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errs(n);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < w; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          fn(i);
        } catch (...) {
          errs[i] = std::current_exception();
        }
      }
    });
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace toricva::detail
