#pragma once

#include <atomic>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

namespace sgdyn {

/// Scans i = 0..n-1 with `jobs` workers and returns the hit with the least
/// index, or nullopt. fn(i) -> std::optional<R> must be safe to call
/// concurrently (sweeps call it over precomputed read-only tables). The
/// result is the least-index hit regardless of scheduling, so reports stay
/// deterministic under any parallelism.
template <class R, class Fn>
std::optional<std::pair<size_t, R>> first_hit(size_t n, int jobs, Fn fn) {
  if (jobs <= 1 || n < 2048) {
    for (size_t i = 0; i < n; ++i)
      if (auto r = fn(i)) return std::make_pair(i, std::move(*r));
    return std::nullopt;
  }
  std::atomic<size_t> cutoff{n};
  std::atomic<size_t> next{0};
  constexpr size_t kBlock = 512;
  std::vector<std::optional<std::pair<size_t, R>>> hits(jobs);
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int t = 0; t < jobs; ++t) {
    workers.emplace_back([&, t] {
      while (true) {
        size_t begin = next.fetch_add(kBlock);
        if (begin >= cutoff.load()) break;
        size_t end = begin + kBlock < n ? begin + kBlock : n;
        for (size_t i = begin; i < end && i < cutoff.load(); ++i) {
          auto r = fn(i);
          if (!r) continue;
          size_t cur = cutoff.load();
          while (i < cur && !cutoff.compare_exchange_weak(cur, i)) {
          }
          if (!hits[t] || i < hits[t]->first) hits[t] = std::make_pair(i, std::move(*r));
          break;  // indices handed to this worker only grow from here
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  std::optional<std::pair<size_t, R>> best;
  for (auto& h : hits)
    if (h && (!best || h->first < best->first)) best = std::move(h);
  return best;
}

}  // namespace sgdyn
