#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace haudim {

// Worker cap: HAUDIM_THREADS if set, else hardware concurrency.
inline std::size_t worker_count(std::size_t n_jobs) {
  std::size_t cap = 0;
  if (const char* env = std::getenv("HAUDIM_THREADS")) cap = std::strtoull(env, nullptr, 10);
  if (cap == 0) cap = std::thread::hardware_concurrency();
  if (cap == 0) cap = 1;
  return n_jobs < cap ? (n_jobs == 0 ? 1 : n_jobs) : cap;
}

// Index-parallel loop. Each body(i) must write only to slot i of shared
// output, which keeps results independent of the worker count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = worker_count(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        body(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace haudim
