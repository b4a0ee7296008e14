#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace treeint {

// Worker count from TREEINT_WORKERS, or `fallback` when unset/invalid.
inline int workers_from_env(int fallback = 1) {
  if (const char* v = std::getenv("TREEINT_WORKERS")) {
    try {
      const int w = std::stoi(v);
      if (w >= 1) return w;
    } catch (...) {
    }
  }
  return fallback;
}

// Evaluates fn(i) for i in [0, count) on up to `workers` threads. Results are
// stored by index, so the output never depends on the schedule.
template <class Fn>
auto parallel_map(int workers, std::size_t count, Fn&& fn) -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
  using R = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<R> out(count);
  const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), count);
  if (w <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(w);
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (std::size_t t = 0; t < w; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += w) out[i] = fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace treeint
