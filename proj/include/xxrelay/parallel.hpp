#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace xxrelay {

// Runs fn(0..count-1) across up to `threads` workers. Each index writes its
// own preallocated slot, so the result is identical for any worker count.
template <typename Fn>
void parallel_for(size_t count, int threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        for (size_t a = 0; a < count; ++a) fn(a);
        return;
    }
    const int workers = static_cast<int>(std::min<size_t>(threads, count));
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const size_t a = next.fetch_add(1);
                if (a >= count || failed.load()) return;
                try {
                    fn(a);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                    return;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (failed.load()) std::rethrow_exception(error);
}

}  // namespace xxrelay
