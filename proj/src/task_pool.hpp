#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace layoutlab {

// Fixed-size worker pool with a shared queue and an idle barrier; the
// executor creates one per run. Tasks are dispatched in submission order
// to whichever worker wakes first.
class TaskPool {
public:
    explicit TaskPool(std::uint32_t workers);
    ~TaskPool();

    TaskPool(const TaskPool&) = delete;
    TaskPool& operator=(const TaskPool&) = delete;

    void submit(std::function<void()> task);

    // Barrier: returns once every submitted task has finished. A task
    // that threw aborts the run; the first failure is rethrown here,
    // wrapped as a runtime_error.
    void wait_idle();

    // Tasks executed per worker so far.
    const std::vector<std::uint64_t>& task_counts() const { return task_counts_; }

private:
    void worker_loop(std::uint32_t index);

    std::mutex mutex_;
    std::condition_variable work_ready_;
    std::condition_variable batch_done_;
    std::deque<std::function<void()>> queue_;
    std::uint64_t pending_ = 0;
    bool stop_ = false;
    std::exception_ptr failure_;
    std::vector<std::uint64_t> task_counts_;
    std::vector<std::thread> threads_;
};

}  // namespace layoutlab
