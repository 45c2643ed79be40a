#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace semirel {

/// Trajectories are processed in contiguous blocks of this size no matter how
/// many workers run. Reductions merge per-block partials in block order, so
/// results do not depend on the worker count.
inline constexpr std::size_t kBlockSize = 1024;

struct BlockRange {
    std::size_t index;  // block number
    std::size_t begin;
    std::size_t end;
};

inline std::size_t block_count(std::size_t n) { return (n + kBlockSize - 1) / kBlockSize; }

inline BlockRange block_range(std::size_t block, std::size_t n) {
    const std::size_t begin = block * kBlockSize;
    const std::size_t end = begin + kBlockSize < n ? begin + kBlockSize : n;
    return {block, begin, end};
}

/// Persistent worker pool. The calling thread acts as one of the workers, so
/// `Executor(1)` runs everything inline.
class Executor {
public:
    explicit Executor(std::size_t workers = 1);
    ~Executor();

    Executor(const Executor&) = delete;
    Executor& operator=(const Executor&) = delete;

    std::size_t workers() const noexcept { return helpers_.size() + 1; }

    /// Calls `task(block)` for every block covering [0, n). If tasks throw, the
    /// exception from the lowest-numbered failing block is rethrown.
    void for_each_block(std::size_t n, const std::function<void(const BlockRange&)>& task);

private:
    void helper_loop();
    void drain();

    std::vector<std::thread> helpers_;
    std::mutex mutex_;
    std::condition_variable wake_;
    std::condition_variable done_;

    // Current job; guarded by mutex_.
    const std::function<void(const BlockRange&)>* task_ = nullptr;
    std::size_t n_ = 0;
    std::size_t n_blocks_ = 0;
    std::size_t next_block_ = 0;
    std::size_t active_ = 0;
    std::size_t generation_ = 0;
    bool stop_ = false;
    std::size_t failed_block_ = 0;
    std::exception_ptr failure_;
};

}  // namespace semirel
