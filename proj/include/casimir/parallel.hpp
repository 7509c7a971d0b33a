#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace casimir::parallel {

/// Worker count: CASIMIR_NUM_THREADS if set and positive, otherwise the
/// hardware concurrency.
int thread_count();

/// Runs body(i) for i in [0, count) on a pool of workers.  Indices are handed
/// out dynamically, so body must only write to per-index storage.  The first
/// exception thrown by any body is rethrown after all workers stop.
void for_each_index(std::size_t count, const std::function<void(std::size_t)>& body);

/// out[i] = fn(i), evaluated in parallel; the caller reduces `out` in index
/// order so results do not depend on scheduling.
template <typename T, typename F>
std::vector<T> map(std::size_t count, F&& fn) {
  std::vector<T> out(count);
  for_each_index(count, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace casimir::parallel
