#include "mqg/parallel.hpp"

namespace mqg {

namespace {
std::atomic<unsigned> g_jobs{0};
}

void set_default_jobs(unsigned jobs) { g_jobs = jobs; }

unsigned default_jobs() {
  const unsigned j = g_jobs.load();
  if (j != 0) return j;
  return std::max(1U, std::thread::hardware_concurrency());
}

std::optional<std::size_t> parallel_first_failure(std::size_t n, const std::function<bool(std::size_t)>& fails,
                                                  unsigned jobs) {
  if (jobs == 0) jobs = default_jobs();
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(n, 1)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      if (fails(i)) return i;
    }
    return std::nullopt;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{n};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    try {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n || i >= best.load()) return;
        if (fails(i)) {
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      best = 0;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  if (best.load() == n) return std::nullopt;
  return best.load();
}

}  // namespace mqg
