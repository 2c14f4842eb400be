// Data-parallel reduction over a rank interval [0, total). The interval is cut
// into contiguous ranges, one per worker, and partial results are merged in
// rank order, so any associative merge gives the same answer for every
// worker count.
#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "bilin/fpcore.hpp"

namespace bilin {

inline constexpr const char* kJobsEnv = "BILIN_JOBS";

/// Worker count from BILIN_JOBS if set to a positive integer, else the
/// hardware concurrency (at least 1).
inline std::size_t default_jobs() {
  if (const char* env = std::getenv(kJobsEnv)) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

struct RankRange {
  Index begin = 0;
  Index end = 0;
};

inline std::vector<RankRange> split_ranges(Index total, std::size_t parts) {
  parts = std::max<std::size_t>(1, parts);
  if (total < parts) parts = total == 0 ? 1 : static_cast<std::size_t>(total);
  std::vector<RankRange> out;
  const Index base = total / parts, extra = total % parts;
  Index at = 0;
  for (std::size_t i = 0; i < parts; ++i) {
    const Index len = base + (i < extra ? 1 : 0);
    out.push_back({at, at + len});
    at += len;
  }
  return out;
}

/// work(begin, end) -> Partial; merge(Partial& into, Partial&& next).
/// The first exception in rank order is rethrown after all workers finish.
template <class Partial, class Work, class Merge>
Partial parallel_reduce(Index total, std::size_t jobs, Work&& work, Merge&& merge) {
  const auto ranges = split_ranges(total, jobs);
  std::vector<std::optional<Partial>> partial(ranges.size());
  std::vector<std::exception_ptr> errors(ranges.size());
  auto run = [&](std::size_t i) {
    try {
      partial[i].emplace(work(ranges[i].begin, ranges[i].end));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (ranges.size() == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(ranges.size());
    for (std::size_t i = 0; i < ranges.size(); ++i) threads.emplace_back(run, i);
    for (auto& t : threads) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Partial out = std::move(*partial[0]);
  for (std::size_t i = 1; i < partial.size(); ++i) merge(out, std::move(*partial[i]));
  return out;
}

}  // namespace bilin
