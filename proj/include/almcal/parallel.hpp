// Copyright 2026 The almcal Authors.
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

#pragma once

#include <algorithm>
#include <condition_variable>
#include <cstddef>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace almcal {

// Minimal persistent worker pool.  Work is split into contiguous index ranges;
// workers only ever write to disjoint outputs, so results do not depend on the
// thread count.  Reductions go through fixed-size blocks combined serially,
// which keeps every reported number bit-identical for any --threads value.
class ThreadPool {
 public:
  static ThreadPool& instance() {
    static ThreadPool pool;
    return pool;
  }

  void set_threads(int n) {
    std::lock_guard<std::mutex> lk(api_mutex_);
    shutdown_workers();
    requested_ = n < 1 ? 1 : n;
  }

  int threads() const { return requested_; }

  // fn(begin, end) over [0, n) split into roughly equal contiguous ranges.
  void run_ranges(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    std::lock_guard<std::mutex> lk(api_mutex_);
    const int t = requested_;
    if (t <= 1 || n < 2048) {
      fn(0, n);
      return;
    }
    ensure_workers(t - 1);
    const std::size_t chunk = (n + t - 1) / t;
    pending_ = 0;
    for (int w = 0; w < t - 1; ++w) {
      const std::size_t b = chunk * static_cast<std::size_t>(w + 1);
      const std::size_t e = std::min(n, b + chunk);
      if (b >= e) continue;
      {
        std::lock_guard<std::mutex> g(mu_);
        jobs_.push_back([fn, b, e] { fn(b, e); });
        ++pending_;
      }
    }
    cv_.notify_all();
    fn(0, std::min(n, chunk));
    std::unique_lock<std::mutex> g(mu_);
    done_cv_.wait(g, [this] { return pending_ == 0 && jobs_.empty(); });
  }

  ~ThreadPool() { shutdown_workers(); }

 private:
  ThreadPool() = default;

  void ensure_workers(int n) {
    if (static_cast<int>(workers_.size()) == n) return;
    shutdown_workers();
    stop_ = false;
    for (int i = 0; i < n; ++i) {
      workers_.emplace_back([this] { worker_loop(); });
    }
  }

  void shutdown_workers() {
    {
      std::lock_guard<std::mutex> g(mu_);
      stop_ = true;
    }
    cv_.notify_all();
    for (auto& w : workers_) w.join();
    workers_.clear();
    stop_ = false;
  }

  void worker_loop() {
    for (;;) {
      std::function<void()> job;
      {
        std::unique_lock<std::mutex> g(mu_);
        cv_.wait(g, [this] { return stop_ || !jobs_.empty(); });
        if (stop_ && jobs_.empty()) return;
        if (jobs_.empty()) continue;
        job = std::move(jobs_.back());
        jobs_.pop_back();
      }
      job();
      {
        std::lock_guard<std::mutex> g(mu_);
        --pending_;
      }
      done_cv_.notify_all();
    }
  }

  std::mutex api_mutex_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::condition_variable done_cv_;
  std::vector<std::thread> workers_;
  std::vector<std::function<void()>> jobs_;
  int pending_ = 0;
  int requested_ = 1;
  bool stop_ = false;
};

inline void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
  ThreadPool::instance().run_ranges(n, fn);
}

// Dot product with a thread-count-independent reduction: fixed 8192-element
// blocks summed in index order.
inline double det_dot(const double* a, const double* b, std::size_t n) {
  constexpr std::size_t kBlock = 8192;
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(nblocks, 0.0);
  parallel_for(nblocks, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t blk = lo; blk < hi; ++blk) {
      const std::size_t beg = blk * kBlock;
      const std::size_t end = std::min(n, beg + kBlock);
      double s = 0.0;
      for (std::size_t i = beg; i < end; ++i) s += a[i] * b[i];
      partial[blk] = s;
    }
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace almcal
