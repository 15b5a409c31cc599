#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace potts {

//! Calls fn(i) for every i in [0, n) on up to `jobs` threads. Indices are
//! handed out in increasing order; results written by index keep input
//! order. The first exception thrown by fn is rethrown after all workers
//! finish.
template <class Fn> void parallel_for_index(std::size_t n, int jobs, Fn &&fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        fn(i);
      } catch (...) {
        if (!failed.exchange(true))
          first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back(worker);
  for (auto &th : pool)
    th.join();
  if (first_error)
    std::rethrow_exception(first_error);
}

} // namespace potts
