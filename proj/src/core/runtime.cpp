#include "prodlab/runtime.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>

#include "prodlab/error.hpp"

namespace prodlab {

void Budget::require(std::uint64_t cost, std::string_view what) const {
  if (cost > max_ops) {
    throw Error(ErrorKind::BudgetExceeded, std::string(what) + " needs ~" + std::to_string(cost) +
                                               " element operations, budget is " + std::to_string(max_ops));
  }
}

namespace {

std::size_t default_workers() {
  if (const char* env = std::getenv("PRODLAB_WORKERS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::atomic<std::size_t>& workers_slot() {
  static std::atomic<std::size_t> slot{default_workers()};
  return slot;
}

}  // namespace

std::size_t worker_count() { return workers_slot().load(); }

void set_worker_count(std::size_t workers) { workers_slot().store(std::max<std::size_t>(1, workers)); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    const std::uint64_t x = engine_();
    if (x < limit) return x % bound;
  }
}

std::vector<std::uint64_t> Rng::sample(std::uint64_t n, std::uint64_t k) {
  k = std::min(k, n);
  std::vector<std::uint64_t> pool(n);
  for (std::uint64_t i = 0; i < n; ++i) pool[i] = i;
  for (std::uint64_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + below(n - i)]);
  pool.resize(k);
  return pool;
}

}  // namespace prodlab
