#pragma once

#include <cstddef>
#include <functional>

namespace oscillab {

/// Hard cap from OSCILLAB_THREADS; unbounded when the variable is unset.
std::size_t thread_limit() noexcept;

/// Current worker count: the hardware concurrency, clipped to thread_limit().
std::size_t max_threads() noexcept;
/// Requests `count` workers; the result is clamped to [1, thread_limit()].
void set_max_threads(std::size_t count) noexcept;

/// Runs body(i) for i in [0, count). Work is split into contiguous chunks;
/// each index is visited exactly once and results written to per-index slots
/// are therefore independent of the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace oscillab
