#ifndef PCM_PARALLEL_HPP
#define PCM_PARALLEL_HPP

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace pcm {

inline int default_jobs() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

// Runs fn(0..count-1) across at most `jobs` workers. Each index writes only
// its own output slot, so results do not depend on the worker count. The
// lowest-index exception is rethrown after all workers finish.
inline void parallel_for(size_t count, int jobs, const std::function<void(size_t)>& fn) {
    if (jobs <= 0) jobs = default_jobs();
    const size_t workers = std::min<size_t>(std::max(jobs, 1), count == 0 ? 1 : count);
    if (workers <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<size_t> next{0};
    std::mutex mu;
    size_t first_error_index = count;
    std::exception_ptr first_error;

    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (i < first_error_index) {
                    first_error_index = i;
                    first_error = std::current_exception();
                }
            }
        }
    };

    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (size_t w = 0; w < workers; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace pcm

#endif
