#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace centroflat {

/// Worker cap: CENTROFLAT_THREADS when set, else hardware concurrency.
inline int worker_count() {
  if (const char* env = std::getenv("CENTROFLAT_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

/// Runs fn(k) for k in [begin, end) over contiguous chunks. Chunking is
/// deterministic for a fixed worker count; callers must write disjoint data.
template <class Fn>
void parallel_for(int begin, int end, Fn&& fn) {
  const int n = end - begin;
  if (n <= 0) return;
  const int workers = std::min(worker_count(), n);
  if (workers <= 1 || n < 16) {
    for (int k = begin; k < end; ++k) fn(k);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const int chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int lo = begin + w * chunk;
    const int hi = std::min(lo + chunk, end);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (int k = lo; k < hi; ++k) fn(k);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace centroflat
