#pragma once

// Parallel brute-force enumeration of P^(n-1)(F).
//
// The point set is cut into tasks: chart c (first nonzero coordinate c, set
// to 1) crossed with every value of coordinate c+1.  Within a task the
// remaining coordinates run as an odometer over element ordinals.  Each task
// owns its accumulator and results are returned in task order, so the outcome
// does not depend on the number of worker threads.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "gaussforge/error.hpp"
#include "gaussforge/gf.hpp"

namespace gaussforge {

inline constexpr std::size_t kMaxVars = 10;

/// Normalized projective coordinates as raw reps, zero-padded.
using PointKey = std::array<Scalar::Rep, kMaxVars>;

struct PointKeyHash {
  std::size_t operator()(const PointKey& k) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (auto v : k) h = (h ^ v) * 0x100000001b3ull;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

/// Scales `v` so that its first nonzero entry is 1.  Returns false for the zero vector.
inline bool normalize_reps(const FieldCtx& F, Scalar::Rep* v, std::size_t n) {
  std::size_t lead = 0;
  while (lead < n && v[lead] == 0) ++lead;
  if (lead == n) return false;
  const Scalar::Rep inv = F.inv(v[lead]);
  for (std::size_t i = lead; i < n; ++i) v[i] = F.mul(v[i], inv);
  return true;
}

/// Number of points of P^(n-1)(F_q).
inline double projective_point_count(std::uint64_t q, std::size_t n) {
  double total = 0, pw = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total += pw;
    pw *= static_cast<double>(q);
  }
  return total;
}

struct EnumerationOptions {
  unsigned threads = 1;
  double budget = 2e8;
};

inline void check_budget(double cost, double budget) {
  if (cost > budget) throw BudgetExceeded(cost, budget);
}

/// Runs `visit(acc, reps)` on every point of P^(n-1)(F) and returns the
/// per-task accumulators in canonical task order.
template <class Acc, class Make, class Visit>
std::vector<Acc> enumerate_tasks(const FieldCtx& F, std::size_t n, const EnumerationOptions& opts, Make make, Visit visit) {
  if (n == 0 || n > kMaxVars) throw DimensionError("enumeration supports 1.." + std::to_string(kMaxVars) + " coordinates");
  check_budget(projective_point_count(F.order(), n), opts.budget);

  const std::uint32_t q = F.order();
  struct Task {
    std::size_t chart;
    std::uint32_t second;  // ordinal of coordinate chart+1
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < n; ++c) {
    if (c + 1 == n) {
      tasks.push_back({c, 0});
    } else {
      for (std::uint32_t t = 0; t < q; ++t) tasks.push_back({c, t});
    }
  }

  std::vector<Acc> results;
  results.reserve(tasks.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) results.push_back(make());

  auto run_task = [&](std::size_t ti) {
    const Task& task = tasks[ti];
    Acc& acc = results[ti];
    PointKey reps{};
    std::array<std::uint32_t, kMaxVars> ords{};
    reps[task.chart] = 1;
    if (task.chart + 1 == n) {
      visit(acc, reps.data());
      return;
    }
    reps[task.chart + 1] = F.from_ordinal(task.second);
    const std::size_t first_free = task.chart + 2;
    while (true) {
      visit(acc, reps.data());
      std::size_t i = n;
      while (true) {
        if (i == first_free) return;
        --i;
        if (++ords[i] < q) {
          reps[i] = F.from_ordinal(ords[i]);
          break;
        }
        ords[i] = 0;
        reps[i] = 0;
      }
    }
  };

  unsigned threads = opts.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opts.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, tasks.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_task(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < tasks.size(); i = next++) run_task(i);
    });
  for (auto& th : pool) th.join();
  return results;
}

}  // namespace gaussforge
