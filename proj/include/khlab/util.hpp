#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace khlab {

// Internal consistency failure: a mathematically-impossible state was reached.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error("internal error: " + what) {}
};

// Invalid user input (bad PD text, bad movie line, bad flag combination).
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

#define KHLAB_CHECK(cond, msg) \
    do { \
        if (!(cond)) throw ::khlab::internal_error(msg); \
    } while (0)

inline int default_jobs()
{
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

// Runs fn(0..n-1) on up to `jobs` threads. Results must be written to
// pre-sized slots so output order never depends on scheduling.
inline void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn)
{
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    std::vector<std::exception_ptr> errs(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t]() {
            try {
                for (std::size_t i = t; i < n; i += nthreads) fn(i);
            }
            catch (...) {
                errs[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

inline int popcount32(uint32_t x)
{
    return __builtin_popcount(x);
}

inline int popcount64(uint64_t x)
{
    return __builtin_popcountll(x);
}

}  // namespace khlab
