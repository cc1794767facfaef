#include "dha/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

#include "dha/errors.hpp"

namespace dha {

namespace {
std::atomic<int> g_threads{1};
}

void set_thread_count(int n) {
  require(n >= 1, "thread count must be >= 1");
  g_threads = n;
}

int thread_count() { return g_threads; }

void parallel_for(Eigen::Index n, const std::function<void(Eigen::Index, Eigen::Index)>& body) {
  const int T = static_cast<int>(std::min<Eigen::Index>(thread_count(), std::max<Eigen::Index>(n, 1)));
  if (T <= 1) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  const Eigen::Index chunk = (n + T - 1) / T;
  for (int i = 0; i < T; ++i) {
    const Eigen::Index b = i * chunk, e = std::min(n, b + chunk);
    if (b < e) pool.emplace_back(body, b, e);
  }
  for (auto& th : pool) th.join();
}

}  // namespace dha
