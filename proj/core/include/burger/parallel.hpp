// Copyright 2026 The Burgerstack Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BURGER_PARALLEL_HPP_
#define BURGER_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace burger {

/// Runs fn(b) for b = 0..n_batches-1 on up to `threads` workers and returns
/// the results in batch order. Workers pull batch indices from a shared
/// counter, but each result depends only on its index, so callers that
/// reduce the returned vector in order get thread-count-independent output.
/// The first exception thrown by any batch is rethrown after all workers
/// stop.
template <class Fn>
auto RunBatches(std::uint64_t n_batches, int threads, Fn&& fn)
    -> std::vector<decltype(fn(std::uint64_t{}))> {
  using R = decltype(fn(std::uint64_t{}));
  std::vector<R> results(n_batches);
  const auto workers = static_cast<std::uint64_t>(std::max(1, threads));
  if (workers == 1 || n_batches <= 1) {
    for (std::uint64_t b = 0; b < n_batches; ++b) results[b] = fn(b);
    return results;
  }
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::uint64_t b = next.fetch_add(1);
      if (b >= n_batches) return;
      try {
        results[b] = fn(b);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  const std::uint64_t count = std::min(workers, n_batches);
  pool.reserve(count);
  for (std::uint64_t t = 0; t < count; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return results;
}

/// Splits `samples` into batches of at most `batch_size`; batch b holds
/// BatchSamples(samples, batch_size, b) samples.
inline std::uint64_t BatchCount(std::uint64_t samples, std::uint64_t batch_size) {
  return batch_size == 0 ? 0 : (samples + batch_size - 1) / batch_size;
}
inline std::uint64_t BatchSamples(std::uint64_t samples, std::uint64_t batch_size,
                                  std::uint64_t b) {
  const std::uint64_t begin = b * batch_size;
  return begin >= samples ? 0 : std::min(batch_size, samples - begin);
}

}  // namespace burger

#endif  // BURGER_PARALLEL_HPP_
