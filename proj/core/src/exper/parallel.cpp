#include "epiq/exper/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace epiq::exper {

std::size_t default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

void parallel_for(std::size_t tasks, std::size_t workers, const std::function<void(std::size_t)>& fn) {
  if (tasks == 0) return;
  if (workers == 0) workers = default_workers();
  workers = std::min(workers, tasks);

  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::size_t failed_index = tasks;
  std::exception_ptr failure;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace epiq::exper
