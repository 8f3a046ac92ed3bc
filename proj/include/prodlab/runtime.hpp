#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <random>
#include <string_view>
#include <thread>
#include <vector>

namespace prodlab {

/// Upper bound on element operations (group or field multiplications) an
/// exhaustive routine may spend. Routines estimate their cost up front.
struct Budget {
  static constexpr std::uint64_t kDefault = 5'000'000'000ULL;

  std::uint64_t max_ops = kDefault;

  void require(std::uint64_t cost, std::string_view what) const;
};

/// Worker count used by parallel scans. Defaults to $PRODLAB_WORKERS, else
/// the hardware concurrency.
std::size_t worker_count();
void set_worker_count(std::size_t workers);

/// Runs fn(i) for i in [0, n) across the worker pool. Results must be
/// written to per-index slots; the caller reduces them in index order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// splitmix64 finalizer, used to derive independent per-stream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). Rejection sampling keeps the stream
  /// identical across standard library implementations.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform real in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// k distinct values from [0, n), in draw order.
  std::vector<std::uint64_t> sample(std::uint64_t n, std::uint64_t k);

 private:
  std::mt19937_64 engine_;
};

}  // namespace prodlab
