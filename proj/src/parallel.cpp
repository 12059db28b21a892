#include "epwind/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace epwind {

std::size_t worker_count() {
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("EPWIND_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1) n = std::min(n, static_cast<std::size_t>(cap));
    }
    return n;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min(worker_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::mutex guard;
    std::size_t failed_index = std::numeric_limits<std::size_t>::max();
    std::exception_ptr failure;
    const std::size_t chunk = (count + workers - 1) / workers;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        pool.emplace_back([&, begin, end] {
            for (std::size_t i = begin; i < end; ++i) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(guard);
                    if (i < failed_index) {
                        failed_index = i;
                        failure = std::current_exception();
                    }
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace epwind
