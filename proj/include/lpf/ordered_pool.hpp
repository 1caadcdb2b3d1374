#pragma once

// Runs independent work items on a pool of threads and hands the results to a
// single consumer in item order, so output never depends on the worker count.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace lpf {

template <class Produce, class Consume>
void run_ordered(std::size_t item_count, unsigned workers, Produce&& produce, Consume&& consume) {
  using Result = decltype(produce(std::size_t{0}));
  workers = std::max(1u, workers);
  if (workers == 1) {
    for (std::size_t i = 0; i < item_count; ++i) consume(produce(i));
    return;
  }

  // Waves bound the number of buffered results.
  const std::size_t wave = std::size_t{workers} * 2;
  for (std::size_t first = 0; first < item_count; first += wave) {
    const std::size_t last = std::min(item_count, first + wave);
    std::vector<std::optional<Result>> results(last - first);
    std::atomic<std::size_t> next{first};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
      std::vector<std::jthread> pool;
      const auto threads = std::min<std::size_t>(workers, last - first);
      for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
          for (std::size_t i = next++; i < last; i = next++) {
            try {
              results[i - first].emplace(produce(i));
            } catch (...) {
              std::lock_guard lock(failure_mutex);
              if (!failure) failure = std::current_exception();
            }
          }
        });
      }
    }
    if (failure) std::rethrow_exception(failure);
    for (auto& r : results) consume(std::move(*r));
  }
}

}  // namespace lpf
