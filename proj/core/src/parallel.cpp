#include "wolff/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace wolff {

int max_threads() {
    static const int cap = [] {
        int hw = static_cast<int>(std::thread::hardware_concurrency());
        if (hw < 1) hw = 1;
        if (const char *env = std::getenv("WOLFF_TRACE_THREADS")) {
            const int requested = std::atoi(env);
            if (requested >= 1 && requested < hw) hw = requested;
        }
        return hw;
    }();
    return cap;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body) {
    const int workers = std::min<std::size_t>(max_threads(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto run = [&] {
        std::size_t i;
        while ((i = next.fetch_add(1)) < count) {
            if (failed.load()) return;
            try {
                body(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int t = 1; t < workers; ++t) pool.emplace_back(run);
    run();
    for (auto &t : pool) t.join();
    if (failed.load() && error) std::rethrow_exception(error);
}

} // namespace wolff
