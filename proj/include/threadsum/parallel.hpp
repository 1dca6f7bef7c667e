#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <span>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

namespace threadsum {

/// Applies `fn` to every item on up to `jobs` threads and returns the results
/// in input order. The first exception thrown by a worker is rethrown after
/// all workers have joined.
template <class In, class Fn>
auto ordered_map(std::span<const In> items, int jobs, Fn fn)
    -> std::vector<std::invoke_result_t<Fn&, const In&>> {
  using Out = std::invoke_result_t<Fn&, const In&>;
  const std::size_t workers =
      std::min<std::size_t>(items.size(), static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    std::vector<Out> out;
    out.reserve(items.size());
    for (const In& item : items) out.push_back(fn(item));
    return out;
  }

  std::vector<std::optional<Out>> slots(items.size());
  std::atomic<std::size_t> cursor{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= items.size()) return;
      try {
        slots[i].emplace(fn(items[i]));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        cursor.store(items.size());
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  std::vector<Out> out;
  out.reserve(items.size());
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

}  // namespace threadsum
