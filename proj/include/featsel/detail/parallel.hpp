#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace featsel::detail {

// Chunked parallel map over [0, n); each worker owns a disjoint index range,
// so results land in pre-sized slots and the output order is fixed.
template <typename Fn>
void parallel_for(int n, Fn&& fn, int serial_below = 64) {
  unsigned hw = std::thread::hardware_concurrency();
  if (n < serial_below || hw < 2) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  const int workers = static_cast<int>(std::min<unsigned>(hw, 16));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const int chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int begin = w * chunk;
    const int end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([begin, end, &fn] {
      for (int i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace featsel::detail
