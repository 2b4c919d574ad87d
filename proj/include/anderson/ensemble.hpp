#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace anderson {

/// Monte Carlo average of one observable.
struct EnsembleResult {
    std::vector<double> per_sample;
    double mean = 0.0;
    /// sample standard deviation / sqrt(samples); 0 for a single sample
    double standard_error = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::string config_digest;
};

EnsembleResult summarize(std::vector<double> values, std::uint64_t seed = 0, std::string config_digest = {});

/// Evaluates fn(i) for i in [0, count) on up to `workers` threads and
/// returns the results by index, so the output never depends on scheduling.
template <typename T, typename Fn>
std::vector<T> run_indexed(std::size_t count, unsigned workers, Fn&& fn) {
    std::vector<T> out(count);
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    out[i] = fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = count;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace anderson
