#include "cleconn/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "cleconn/errors.hpp"

namespace cleconn {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

Rng make_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(stream_seed(seed, index)),
                      static_cast<std::uint32_t>(stream_seed(seed, index) >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(seed)};
    return Rng(seq);
}

unsigned worker_count() {
    if (const char* env = std::getenv("CLECONN_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(std::min<long>(v, 256));
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_for(std::uint64_t n, const std::function<void(std::uint64_t)>& body) {
    if (n == 0) return;
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), n));
    if (workers <= 1) {
        for (std::uint64_t i = 0; i < n; ++i) body(i);
        return;
    }
    constexpr std::uint64_t kBlock = 64;
    std::atomic<std::uint64_t> next{0};
    std::mutex err_mu;
    std::exception_ptr first_error;
    std::uint64_t first_error_index = std::numeric_limits<std::uint64_t>::max();
    auto worker = [&] {
        for (;;) {
            std::uint64_t start = next.fetch_add(kBlock);
            if (start >= n) return;
            std::uint64_t stop = std::min(n, start + kBlock);
            for (std::uint64_t i = start; i < stop; ++i) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (i < first_error_index) {
                        first_error_index = i;
                        first_error = std::current_exception();
                    }
                    return;
                }
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

McEstimate summarize(const std::vector<double>& values, std::uint64_t seed) {
    McEstimate est;
    est.n = values.size();
    est.seed = seed;
    if (values.empty()) throw StatisticsError("no samples to summarize");
    long double sum = 0.0L;
    for (double v : values) sum += v;
    const long double mean = sum / values.size();
    long double ss = 0.0L;
    for (double v : values) ss += (v - mean) * (v - mean);
    est.mean = static_cast<double>(mean);
    if (values.size() > 1)
        est.std_error = static_cast<double>(std::sqrt(ss / (values.size() - 1) / values.size()));
    return est;
}

McEstimate estimate_mean(std::uint64_t n, std::uint64_t seed,
                         const std::function<double(std::uint64_t)>& sample) {
    std::vector<double> values(n);
    parallel_for(n, [&](std::uint64_t i) { values[i] = sample(i); });
    return summarize(values, seed);
}

}  // namespace cleconn
