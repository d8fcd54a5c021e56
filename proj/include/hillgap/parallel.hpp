#ifndef HILLGAP_PARALLEL_HPP
#define HILLGAP_PARALLEL_HPP

#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace hillgap {

/// Runs fn(0..n_items-1) on up to `jobs` threads (jobs <= 0 means all cores).
/// Work items must be independent; the first exception is rethrown.
inline void parallel_for(int n_items, int jobs, const std::function<void(int)>& fn) {
    if (jobs <= 0) jobs = (int)std::thread::hardware_concurrency();
    jobs = std::max(1, std::min(jobs, n_items));
    if (jobs == 1) {
        for (int i = 0; i < n_items; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) {
        pool.emplace_back([&] {
            while (true) {
                int i = next.fetch_add(1);
                if (i >= n_items) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

} // namespace hillgap

#endif
