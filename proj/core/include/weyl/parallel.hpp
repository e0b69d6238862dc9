#pragma once

#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace weyl {

// Evaluates fn(slab) for every slab in [lo, hi] and returns the results
// indexed by slab. Workers pick up slabs by striding, so the set of values
// computed does not depend on the worker count; reductions over the returned
// vector must run in index order to stay bit-identical.
template <typename T, typename Fn>
std::vector<T> map_slabs(long long lo, long long hi, int workers, Fn fn) {
    if (hi < lo) return {};
    auto count = static_cast<std::size_t>(hi - lo + 1);
    std::vector<T> out(count);
    if (workers <= 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(lo + static_cast<long long>(i));
        return out;
    }
    int nw = workers;
    if (static_cast<std::size_t>(nw) > count) nw = static_cast<int>(count);
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex guard;
    pool.reserve(nw);
    for (int w = 0; w < nw; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = static_cast<std::size_t>(w); i < count;
                     i += static_cast<std::size_t>(nw))
                    out[i] = fn(lo + static_cast<long long>(i));
            } catch (...) {
                std::lock_guard<std::mutex> lk(guard);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

// Verbosity switch: WEYL_LOG=info or WEYL_LOG=debug enables progress lines
// on stderr.
bool log_enabled();
void log_line(const std::string& msg);

}  // namespace weyl
