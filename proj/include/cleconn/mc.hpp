#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace cleconn {

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
};

using Rng = std::mt19937_64;

// Independent stream for (seed, index); the only source of randomness for a sample.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);
Rng make_rng(std::uint64_t seed, std::uint64_t index);

// Worker count: CLECONN_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

// Runs body(i) for i in [0, n) across worker threads.  Any exception from a
// worker is rethrown (the one with the smallest index wins, for determinism).
void parallel_for(std::uint64_t n, const std::function<void(std::uint64_t)>& body);

// Mean and standard error (sample sd with n-1, over sqrt n) of values summed in
// index order, so the result does not depend on the thread count.
McEstimate summarize(const std::vector<double>& values, std::uint64_t seed);

// Per-index samples evaluated in parallel, then summarized.
McEstimate estimate_mean(std::uint64_t n, std::uint64_t seed,
                         const std::function<double(std::uint64_t)>& sample);

}  // namespace cleconn
