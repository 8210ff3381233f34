#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace kcenter {

/// Fixed pool of workers over static sample partitions. Chunk w of [0, n) is
/// [w*n/W, (w+1)*n/W), so a given (n, W) always yields the same partition;
/// callers combine per-chunk partials in chunk order with order-independent
/// reductions (max/min/or/and), which makes every result identical across
/// worker counts. With one worker everything runs inline on the caller.
class WorkerPool {
public:
    explicit WorkerPool(std::size_t workers);
    ~WorkerPool();

    WorkerPool(const WorkerPool&) = delete;
    WorkerPool& operator=(const WorkerPool&) = delete;

    std::size_t worker_count() const { return workers_; }

    /// Runs fn(chunk, begin, end) for every chunk of [0, n); blocks until done.
    void run_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

    static std::pair<std::size_t, std::size_t> chunk_bounds(std::size_t n, std::size_t chunks,
                                                            std::size_t chunk) {
        return {n * chunk / chunks, n * (chunk + 1) / chunks};
    }

private:
    void worker_loop(std::size_t index);

    std::size_t workers_;
    std::vector<std::thread> threads_;
    std::mutex mu_;
    std::condition_variable work_cv_;
    std::condition_variable done_cv_;
    const std::function<void(std::size_t, std::size_t, std::size_t)>* job_ = nullptr;
    std::size_t job_n_ = 0;
    std::uint64_t generation_ = 0;
    std::size_t remaining_ = 0;
    bool stop_ = false;
    std::exception_ptr error_;
};

}  // namespace kcenter
