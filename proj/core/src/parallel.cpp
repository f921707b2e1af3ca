#include "oscillab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace oscillab {
namespace {

std::size_t hardware_threads() {
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

std::size_t env_limit() {
  if (const char* env = std::getenv("OSCILLAB_THREADS")) {
    try {
      long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (...) {
      // malformed value: no cap
    }
  }
  return std::numeric_limits<std::size_t>::max();
}

std::atomic<std::size_t>& thread_cap() {
  static std::atomic<std::size_t> cap{std::min(hardware_threads(), thread_limit())};
  return cap;
}

}  // namespace

std::size_t thread_limit() noexcept {
  static const std::size_t limit = env_limit();
  return limit;
}

std::size_t max_threads() noexcept { return thread_cap().load(); }

void set_max_threads(std::size_t count) noexcept {
  thread_cap().store(std::clamp<std::size_t>(count, 1, thread_limit()));
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min(max_threads(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace oscillab
