#ifndef CRITSET_DETAIL_PARALLEL_HPP
#define CRITSET_DETAIL_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace critset::detail {

/// CRITSET_THREADS caps the worker count; default is hardware concurrency.
inline unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CRITSET_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return hw;
}

/// Evaluates fn(i) for i in [0, count) on up to worker_count() threads.
/// Results come back in index order regardless of scheduling.
template <class Fn>
auto parallel_map(std::size_t count, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using Result = decltype(fn(std::size_t{}));
  // One slot per index: no shared words even when Result is bool.
  struct Slot {
    std::optional<Result> value;
  };
  std::vector<Slot> slots(count);
  auto unwrap = [&] {
    std::vector<Result> out;
    out.reserve(count);
    for (auto& s : slots) out.push_back(std::move(*s.value));
    return out;
  };
  const auto workers = static_cast<std::size_t>(std::min<std::size_t>(worker_count(), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) slots[i].value = fn(i);
    return unwrap();
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            slots[i].value = fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return unwrap();
}

}  // namespace critset::detail

#endif  // CRITSET_DETAIL_PARALLEL_HPP
