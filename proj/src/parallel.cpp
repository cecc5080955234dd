#include "holoball/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace holoball {

namespace {

unsigned env_thread_count() {
  if (const char* env = std::getenv("HOLOBALL_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

std::atomic<unsigned> g_override{0};

}  // namespace

unsigned thread_count() {
  const unsigned o = g_override.load(std::memory_order_relaxed);
  if (o > 0) return o;
  static const unsigned from_env = env_thread_count();
  return from_env;
}

void set_thread_count(unsigned n) { g_override.store(n, std::memory_order_relaxed); }

void for_blocks(std::size_t count,
                const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  if (count == 0) return;
  const std::size_t n_blocks = (count + kBlockSize - 1) / kBlockSize;
  const unsigned workers = std::min<std::size_t>(thread_count(), n_blocks);

  auto run_block = [&](std::size_t b) {
    const std::size_t begin = b * kBlockSize;
    const std::size_t end = std::min(begin + kBlockSize, count);
    fn(b, begin, end);
  };

  if (workers <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) run_block(b);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t b = next.fetch_add(1, std::memory_order_relaxed);
        if (b >= n_blocks) return;
        try {
          run_block(b);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

double block_sum(std::size_t count, const std::function<double(std::size_t)>& fn) {
  if (count == 0) return 0.0;
  const std::size_t n_blocks = (count + kBlockSize - 1) / kBlockSize;
  std::vector<double> partial(n_blocks, 0.0);
  for_blocks(count, [&](std::size_t b, std::size_t begin, std::size_t end) {
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += fn(i);
    partial[b] = s;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace holoball
