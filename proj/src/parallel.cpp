#include "kcenter/parallel.hpp"

#include <stdexcept>

namespace kcenter {

WorkerPool::WorkerPool(std::size_t workers) : workers_(workers == 0 ? 1 : workers) {
    if (workers_ == 1) return;  // inline mode, no threads
    threads_.reserve(workers_);
    for (std::size_t w = 0; w < workers_; ++w) {
        threads_.emplace_back([this, w] { worker_loop(w); });
    }
}

WorkerPool::~WorkerPool() {
    if (threads_.empty()) return;
    {
        std::lock_guard<std::mutex> lock(mu_);
        stop_ = true;
    }
    work_cv_.notify_all();
    for (auto& t : threads_) t.join();
}

void WorkerPool::run_chunks(std::size_t n,
                            const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    if (workers_ == 1 || threads_.empty()) {
        fn(0, 0, n);
        return;
    }
    {
        std::lock_guard<std::mutex> lock(mu_);
        job_ = &fn;
        job_n_ = n;
        remaining_ = workers_;
        error_ = nullptr;
        ++generation_;
    }
    work_cv_.notify_all();
    {
        std::unique_lock<std::mutex> lock(mu_);
        done_cv_.wait(lock, [this] { return remaining_ == 0; });
        job_ = nullptr;
        if (error_) std::rethrow_exception(error_);
    }
}

void WorkerPool::worker_loop(std::size_t index) {
    std::uint64_t seen = 0;
    while (true) {
        const std::function<void(std::size_t, std::size_t, std::size_t)>* job = nullptr;
        std::size_t n = 0;
        {
            std::unique_lock<std::mutex> lock(mu_);
            work_cv_.wait(lock, [&] { return stop_ || generation_ != seen; });
            if (stop_) return;
            seen = generation_;
            job = job_;
            n = job_n_;
        }
        const auto [begin, end] = chunk_bounds(n, workers_, index);
        std::exception_ptr err;
        if (begin < end) {
            try {
                (*job)(index, begin, end);
            } catch (...) {
                err = std::current_exception();
            }
        }
        {
            std::lock_guard<std::mutex> lock(mu_);
            if (err && !error_) error_ = err;
            if (--remaining_ == 0) done_cv_.notify_all();
        }
    }
}

}  // namespace kcenter
