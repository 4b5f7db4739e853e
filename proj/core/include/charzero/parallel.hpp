#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace charzero {

/// Process-wide worker count used by parallel_for (>= 1).
void set_thread_count(unsigned n);
unsigned thread_count();

/// Runs fn(i) for i in [0, count). Work is split into contiguous chunks, one
/// per worker; callers write results into pre-sized slots so the merge order
/// never depends on scheduling. The first exception is rethrown.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(thread_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = count * w / workers;
    const std::size_t hi = count * (w + 1) / workers;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace charzero

namespace charzero {

/// Deterministic blocked pairwise sum of term(i) for i in [0, count). Blocks
/// of fixed size may run on different workers; the reduction tree is fixed.
template <typename T, typename Term>
T blocked_pairwise_sum(std::size_t count, Term&& term, std::size_t block = 4096);

}  // namespace charzero

#include "charzero/numeric.hpp"

namespace charzero {

template <typename T, typename Term>
T blocked_pairwise_sum(std::size_t count, Term&& term, std::size_t block) {
  const std::size_t blocks = (count + block - 1) / block;
  std::vector<T> partial(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t lo = b * block;
    const std::size_t hi = std::min(count, lo + block);
    std::vector<T> buf;
    buf.reserve(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) buf.push_back(term(i));
    partial[b] = numeric::pairwise_sum(std::span<const T>(buf));
  });
  return numeric::pairwise_sum(std::span<const T>(partial));
}

}  // namespace charzero
