#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace relalg::detail {

/// Smallest index in [0, total) for which the worker reports a failure.
/// `make_worker()` is called once per thread and must return a callable
/// bool(std::uint64_t). The answer does not depend on `jobs`.
template <class MakeWorker>
std::optional<std::uint64_t> first_failure(std::uint64_t total, std::size_t jobs,
                                           MakeWorker make_worker) {
  if (total == 0) return std::nullopt;
  if (jobs <= 1) {
    auto worker = make_worker();
    for (std::uint64_t i = 0; i < total; ++i)
      if (worker(i)) return i;
    return std::nullopt;
  }
  constexpr std::uint64_t kChunk = 64;
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best{UINT64_MAX};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    try {
      auto worker = make_worker();
      while (true) {
        const std::uint64_t start = next.fetch_add(kChunk);
        if (start >= total || start >= best.load()) return;
        const std::uint64_t end = std::min(total, start + kChunk);
        for (std::uint64_t i = start; i < end && i < best.load(); ++i) {
          if (worker(i)) {
            std::uint64_t cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
            break;
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      best.store(0);
    }
  };
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < jobs; ++t) threads.emplace_back(run);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
  if (best.load() == UINT64_MAX) return std::nullopt;
  return best.load();
}

}  // namespace relalg::detail
