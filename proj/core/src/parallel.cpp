#include "rieszwave/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rieszwave {
namespace {

std::atomic<unsigned> g_max_workers{0};
// Nested calls run inline so concurrent study levels do not oversubscribe.
thread_local bool t_inside_worker = false;

unsigned resolved_workers() {
    unsigned w = g_max_workers.load(std::memory_order_relaxed);
    if (w == 0) w = std::max(1u, std::thread::hardware_concurrency());
    return w;
}

}  // namespace

void set_max_workers(unsigned workers) { g_max_workers.store(workers, std::memory_order_relaxed); }

unsigned max_workers() { return resolved_workers(); }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(resolved_workers(), count);
    if (workers <= 1 || t_inside_worker) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }

    std::exception_ptr first_error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (count + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(count, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back([&, begin, end] {
                t_inside_worker = true;
                try {
                    for (std::size_t i = begin; i < end; ++i) body(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            });
        }
    }
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace rieszwave
