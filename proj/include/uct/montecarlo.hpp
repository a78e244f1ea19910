#pragma once

// Monte Carlo plumbing: deterministic parallel trials and simple summaries.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

namespace uct {

/// Runs f(i) for i in [0, n) on a worker pool and returns the results in
/// index order. Each trial must derive its randomness from its index only
/// (seed = base_seed + i), so the output does not depend on scheduling.
template <class F>
auto parallel_trials(std::size_t n, F&& f, std::size_t workers = 0) {
  using R = decltype(f(std::size_t{0}));
  std::vector<R> out(n);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(n, 1));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
};

inline MeanEstimate summarize(const std::vector<double>& v) {
  MeanEstimate r;
  r.n = v.size();
  if (v.empty()) return r;
  double s = 0.0;
  for (double x : v) s += x;
  r.mean = s / static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - r.mean) * (x - r.mean);
    r.std_error = std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
  }
  return r;
}

/// Rejection-rate summary against the bound α + 3·sqrt(α(1-α)/N).
struct RejectionRate {
  std::size_t trials = 0;
  std::size_t rejections = 0;
  double rate = 0.0;
  double std_error = 0.0;
  double bound = 0.0;
  bool within_bound = false;
};

inline RejectionRate rejection_rate(std::size_t rejections, std::size_t trials, double alpha) {
  RejectionRate r;
  r.trials = trials;
  r.rejections = rejections;
  r.rate = trials ? static_cast<double>(rejections) / static_cast<double>(trials) : 0.0;
  r.std_error = trials ? std::sqrt(r.rate * (1.0 - r.rate) / static_cast<double>(trials)) : 0.0;
  r.bound = alpha + 3.0 * std::sqrt(alpha * (1.0 - alpha) / static_cast<double>(std::max<std::size_t>(trials, 1)));
  r.within_bound = r.rate <= r.bound;
  return r;
}

/// Number of trials for which reject(rng) is true, trial i seeded with
/// seed + i.
template <class F>
std::size_t count_rejections(std::size_t trials, std::uint64_t seed, F&& reject, std::size_t workers = 0) {
  const auto hits = parallel_trials(
      trials,
      [&](std::size_t i) {
        std::mt19937_64 rng(seed + i);
        return reject(rng) ? 1 : 0;
      },
      workers);
  std::size_t n = 0;
  for (int h : hits) n += static_cast<std::size_t>(h);
  return n;
}

}  // namespace uct
