#include "task_pool.hpp"

#include <stdexcept>
#include <string>

namespace layoutlab {

TaskPool::TaskPool(std::uint32_t workers) : task_counts_(workers, 0) {
    threads_.reserve(workers);
    for (std::uint32_t i = 0; i < workers; ++i) {
        threads_.emplace_back([this, i] { worker_loop(i); });
    }
}

TaskPool::~TaskPool() {
    {
        std::lock_guard lock(mutex_);
        stop_ = true;
    }
    work_ready_.notify_all();
    for (std::thread& t : threads_) t.join();
}

void TaskPool::submit(std::function<void()> task) {
    {
        std::lock_guard lock(mutex_);
        queue_.push_back(std::move(task));
        ++pending_;
    }
    work_ready_.notify_one();
}

void TaskPool::wait_idle() {
    std::unique_lock lock(mutex_);
    batch_done_.wait(lock, [this] { return pending_ == 0; });
    if (failure_) {
        const std::exception_ptr failure = failure_;
        failure_ = nullptr;
        try {
            std::rethrow_exception(failure);
        } catch (const std::exception& e) {
            throw std::runtime_error(std::string("worker task failed: ") + e.what());
        }
    }
}

void TaskPool::worker_loop(std::uint32_t index) {
    while (true) {
        std::function<void()> task;
        {
            std::unique_lock lock(mutex_);
            work_ready_.wait(lock, [this] { return stop_ || !queue_.empty(); });
            if (queue_.empty()) return;  // stop_ and drained
            task = std::move(queue_.front());
            queue_.pop_front();
        }
        std::exception_ptr error;
        try {
            task();
        } catch (...) {
            error = std::current_exception();
        }
        {
            std::lock_guard lock(mutex_);
            ++task_counts_[index];
            if (error && !failure_) failure_ = error;
            if (--pending_ == 0) batch_done_.notify_all();
        }
    }
}

}  // namespace layoutlab
