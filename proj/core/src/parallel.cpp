#include "nhrm/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nhrm {

void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  std::size_t n_threads = workers > 0
                              ? static_cast<std::size_t>(workers)
                              : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min(n_threads, n);

  if (n_threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n, std::memory_order_relaxed);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(n_threads - 1);
  for (std::size_t k = 1; k < n_threads; ++k) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace nhrm
