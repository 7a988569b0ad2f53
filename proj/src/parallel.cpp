#include "wpmix/parallel.hpp"

#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "wpmix/errors.hpp"

namespace wpmix {

std::size_t thread_budget() {
    const char* env = std::getenv("WPMIX_THREADS");
    if (env == nullptr || *env == '\0') {
        const unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : hw;
    }
    std::size_t pos = 0;
    long long parsed = -1;
    try {
        parsed = std::stoll(env, &pos);
    } catch (const std::exception&) {
        throw ConfigError(std::string("WPMIX_THREADS is not a number: ") + env);
    }
    if (env[pos] != '\0' || parsed <= 0) {
        throw ConfigError(std::string("WPMIX_THREADS must be a positive integer, got ") + env);
    }
    return static_cast<std::size_t>(parsed);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    const std::size_t workers = std::min(thread_budget(), n);
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::mutex mu;
    std::exception_ptr first_error;
    auto run_range = [&](std::size_t lo, std::size_t hi) {
        try {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            if (!first_error) first_error = std::current_exception();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t base = n / workers, extra = n % workers;
    std::size_t lo = 0;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t hi = lo + base + (w < extra ? 1 : 0);
        pool.emplace_back(run_range, lo, hi);
        lo = hi;
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace wpmix
