#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace stabilyze {

// Index-based parallel map; results land in caller-owned slots, so
// reductions over them stay deterministic regardless of worker count.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  const int count = static_cast<int>(std::min<std::size_t>(workers, n));
  pool.reserve(count);
  for (int w = 0; w < count - 1; ++w) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
}

}  // namespace stabilyze
