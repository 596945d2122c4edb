#include "peanut/threads.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace peanut {

int thread_budget() {
  int n = 0;
  if (const char* env = std::getenv("PEANUT_THREADS")) {
    n = std::atoi(env);
    if (n < 0) n = 0;
  }
  if (n == 0) n = int(std::thread::hardware_concurrency());
  return std::max(1, n);
}

void parallel_for(size_t n, const std::function<void(size_t, size_t)>& fn) {
  if (n == 0) return;
  size_t workers = std::min<size_t>(size_t(thread_budget()), n);
  if (workers <= 1) {
    fn(0, n);
    return;
  }
  size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    size_t begin = w * chunk;
    size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace peanut
