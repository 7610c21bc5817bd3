// Copyright (C) 2026 posediff contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <condition_variable>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace posediff {

// Small persistent pool for batch-dimension parallelism. Work items are
// split into fixed contiguous ranges per worker, so results never depend
// on scheduling order.
class ThreadPool {
public:
    static ThreadPool& instance() {
        static ThreadPool pool(default_threads());
        return pool;
    }

    static int default_threads() {
        unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : static_cast<int>(hw);
    }

    int num_threads() const { return static_cast<int>(workers_.size()) + 1; }

    // fn(i) is called for every i in [begin, end), partitioned into
    // num_threads contiguous chunks. The calling thread runs chunk 0.
    void parallel_for(int64_t begin, int64_t end, const std::function<void(int64_t)>& fn) {
        int64_t n = end - begin;
        if (n <= 0) return;
        int nthreads = std::min<int64_t>(num_threads(), n);
        if (nthreads <= 1) {
            for (int64_t i = begin; i < end; ++i) fn(i);
            return;
        }
        int64_t chunk = (n + nthreads - 1) / nthreads;
        {
            std::unique_lock<std::mutex> lk(mu_);
            pending_ = 0;
            for (int t = 1; t < nthreads; ++t) {
                int64_t lo = begin + t * chunk;
                int64_t hi = std::min(end, lo + chunk);
                if (lo >= hi) continue;
                tasks_.push_back([&fn, lo, hi] {
                    for (int64_t i = lo; i < hi; ++i) fn(i);
                });
                ++pending_;
            }
            cv_work_.notify_all();
        }
        int64_t hi0 = std::min(end, begin + chunk);
        for (int64_t i = begin; i < hi0; ++i) fn(i);
        std::unique_lock<std::mutex> lk(mu_);
        cv_done_.wait(lk, [this] { return pending_ == 0 && tasks_.empty(); });
    }

    ~ThreadPool() {
        {
            std::unique_lock<std::mutex> lk(mu_);
            stop_ = true;
            cv_work_.notify_all();
        }
        for (auto& w : workers_) w.join();
    }

private:
    explicit ThreadPool(int nthreads) {
        for (int i = 1; i < nthreads; ++i)
            workers_.emplace_back([this] { worker_loop(); });
    }

    void worker_loop() {
        for (;;) {
            std::function<void()> task;
            {
                std::unique_lock<std::mutex> lk(mu_);
                cv_work_.wait(lk, [this] { return stop_ || !tasks_.empty(); });
                if (stop_ && tasks_.empty()) return;
                task = std::move(tasks_.back());
                tasks_.pop_back();
            }
            task();
            {
                std::unique_lock<std::mutex> lk(mu_);
                --pending_;
                if (pending_ == 0 && tasks_.empty()) cv_done_.notify_all();
            }
        }
    }

    std::vector<std::thread> workers_;
    std::vector<std::function<void()>> tasks_;
    std::mutex mu_;
    std::condition_variable cv_work_, cv_done_;
    int pending_ = 0;
    bool stop_ = false;
};

inline void parallel_for(int64_t begin, int64_t end, const std::function<void(int64_t)>& fn) {
    ThreadPool::instance().parallel_for(begin, end, fn);
}

}  // namespace posediff
