#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace dct::detail {

// Runs work(task, acc) for every task in [0, task_count) on `workers`
// threads, each folding into its own accumulator, then merges the
// accumulators into the result. `merge` must be associative and
// commutative for the result to be independent of the worker count.
template <class Acc, class Work>
Acc parallel_reduce(std::uint64_t task_count, unsigned workers, const Acc& identity, Work work) {
  workers = std::max(1u, workers);
  if (workers == 1 || task_count <= 1) {
    Acc acc = identity;
    for (std::uint64_t t = 0; t < task_count; ++t) work(t, acc);
    return acc;
  }

  std::vector<Acc> partials(workers, identity);
  std::vector<std::exception_ptr> errors(workers);
  std::atomic<std::uint64_t> next{0};
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::uint64_t t = next.fetch_add(1); t < task_count; t = next.fetch_add(1)) {
            work(t, partials[w]);
          }
        } catch (...) {
          errors[w] = std::current_exception();
          next.store(task_count);
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Acc acc = identity;
  for (const Acc& p : partials) acc.merge(p);
  return acc;
}

}  // namespace dct::detail
