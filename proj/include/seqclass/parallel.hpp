#pragma once

#include <cstddef>
#include <future>
#include <vector>

namespace seqclass {

// Worker count: hardware concurrency capped by SEQCLASS_THREADS when set.
std::size_t thread_budget();

// Runs fn(i) for i in [begin, end). Chunks go to std::async workers when the
// budget allows; fn must only write state owned by index i, so results are
// identical to the sequential order.
template <class Fn>
void parallel_for(std::size_t begin, std::size_t end, Fn&& fn) {
  std::size_t n = end > begin ? end - begin : 0;
  std::size_t workers = thread_budget();
  if (workers <= 1 || n < 256) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  if (workers > n) workers = n;
  std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::future<void>> futs;
  futs.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t lo = begin + w * chunk;
    std::size_t hi = lo + chunk < end ? lo + chunk : end;
    if (lo >= hi) break;
    futs.push_back(std::async(std::launch::async, [lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    }));
  }
  for (auto& f : futs) f.get();
}

}  // namespace seqclass
