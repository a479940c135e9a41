#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace maxint {

template <class Partial, class Fn>
std::vector<Partial> run_batches(std::size_t total, Fn&& fn) {
  const std::size_t batches = (total + kBatchSize - 1) / kBatchSize;
  std::vector<Partial> out(batches);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t b = next++; b < batches; b = next++) {
      try {
        const std::size_t count = std::min(kBatchSize, total - b * kBatchSize);
        out[b] = fn(static_cast<std::uint64_t>(b), count);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const unsigned threads = std::min<std::size_t>(worker_threads(), std::max<std::size_t>(batches, 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace maxint
