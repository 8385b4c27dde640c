#pragma once

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace nilcalc {

/// Default worker count: NILCALC_WORKERS env var, else hardware concurrency.
inline int default_workers() {
  if (const char* env = std::getenv("NILCALC_WORKERS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : int(hc);
}

/// Runs fn(i) for i in [0, n) across workers. Work items write only to their
/// own index, so results are identical for any worker count; reductions over
/// the output must be done sequentially by the caller.
template <class Fn>
void deterministic_parallel_for(int n, int workers, Fn&& fn) {
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  int k = std::min(workers, n);
  pool.reserve(size_t(k));
  for (int w = 0; w < k; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= n) break;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

/// Wall-clock budget; zero or negative duration means unlimited.
class Budget {
public:
  explicit Budget(double seconds = 0)
      : limited_(seconds > 0),
        deadline_(std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(seconds > 0 ? seconds : 0))) {}
  bool exceeded() const { return limited_ && std::chrono::steady_clock::now() > deadline_; }

private:
  bool limited_;
  std::chrono::steady_clock::time_point deadline_;
};

}  // namespace nilcalc
