#include "semirel/executor.hpp"

#include <algorithm>

namespace semirel {

Executor::Executor(std::size_t workers) {
    const std::size_t helpers = workers > 1 ? workers - 1 : 0;
    helpers_.reserve(helpers);
    for (std::size_t i = 0; i < helpers; ++i) {
        helpers_.emplace_back([this] { helper_loop(); });
    }
}

Executor::~Executor() {
    {
        std::lock_guard lock(mutex_);
        stop_ = true;
    }
    wake_.notify_all();
    for (auto& t : helpers_) t.join();
}

void Executor::for_each_block(std::size_t n,
                              const std::function<void(const BlockRange&)>& task) {
    const std::size_t n_blocks = block_count(n);
    if (n_blocks == 0) return;
    if (helpers_.empty() || n_blocks == 1) {
        for (std::size_t b = 0; b < n_blocks; ++b) task(block_range(b, n));
        return;
    }
    {
        std::lock_guard lock(mutex_);
        task_ = &task;
        n_ = n;
        n_blocks_ = n_blocks;
        next_block_ = 0;
        active_ = 0;
        failure_ = nullptr;
        failed_block_ = n_blocks;
        ++generation_;
    }
    wake_.notify_all();
    drain();
    std::exception_ptr failure;
    {
        std::unique_lock lock(mutex_);
        done_.wait(lock, [this] { return active_ == 0 && next_block_ >= n_blocks_; });
        task_ = nullptr;
        failure = failure_;
    }
    if (failure) std::rethrow_exception(failure);
}

void Executor::drain() {
    std::unique_lock lock(mutex_);
    ++active_;
    while (task_ != nullptr && next_block_ < n_blocks_) {
        const std::size_t b = next_block_++;
        const auto* task = task_;
        const std::size_t n = n_;
        lock.unlock();
        std::exception_ptr err;
        try {
            (*task)(block_range(b, n));
        } catch (...) {
            err = std::current_exception();
        }
        lock.lock();
        if (err && b < failed_block_) {
            failed_block_ = b;
            failure_ = err;
        }
    }
    --active_;
    if (active_ == 0) done_.notify_all();
}

void Executor::helper_loop() {
    std::size_t seen = 0;
    while (true) {
        {
            std::unique_lock lock(mutex_);
            wake_.wait(lock, [&] { return stop_ || generation_ != seen; });
            if (stop_) return;
            seen = generation_;
        }
        drain();
    }
}

}  // namespace semirel
