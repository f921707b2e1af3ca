#pragma once

#include <cstddef>
#include <span>

namespace oscillab {

/// Pairwise (cascade) summation with a fixed split. The association order
/// depends only on the length, so the result is bit-reproducible.
template <class T>
T pairwise_sum(std::span<const T> values) {
  constexpr std::size_t block = 8;
  if (values.size() <= block) {
    T acc{};
    for (const T& v : values) acc += v;
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace oscillab
