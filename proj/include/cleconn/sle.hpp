#pragma once

#include <cstdint>

#include "cleconn/hookup.hpp"
#include "cleconn/mc.hpp"

namespace cleconn {

// Which interval of length eps next to 1 is probed.
enum class IntervalAnchor {
    LeftOfOne,   // [1 - eps, 1]
    RightOfOne,  // [1, 1 + eps]
};

struct SleHitConfig {
    double kappa = 6.0;
    double eps = 0.4;
    // Step in the log-time of the nearer point, before adaptive widening.
    double dt = 1e-2;
    // Relative thresholds; zero selects defaults tuned so that the chance of a
    // later reversal stays below 1e-7.
    double tol_swallow = 0.0;
    double tol_separation = 0.0;
    std::uint64_t seed = 1;
    std::uint64_t n_samples = 1000;
    IntervalAnchor anchor = IntervalAnchor::LeftOfOne;
    // Both endpoints multiplied by this factor.
    double scale = 1.0;
};

// Copy with defaults filled in; throws on invalid fields.
SleHitConfig resolve_config(const SleHitConfig& cfg);

// Endpoints (left, right) of the probed interval.
struct Interval {
    double left;
    double right;
};
Interval probed_interval(const SleHitConfig& cfg);

// Exact hitting probability for the configured interval.
double exact_hit_probability(const SleHitConfig& cfg);

// One sample: does the curve touch the interval?  Depends only on
// (seed, sample_index) and the config.
bool simulate_hit_event(const SleHitConfig& cfg, std::uint64_t sample_index);

// The same Brownian path discretized with dt and dt/2.
struct CoupledHit {
    bool coarse;
    bool fine;
};
CoupledHit simulate_hit_event_coupled(const SleHitConfig& cfg, std::uint64_t sample_index);

McEstimate estimate_hit_probability(const SleHitConfig& cfg);

struct StepHalving {
    McEstimate coarse;
    McEstimate fine;
    McEstimate difference;  // fine - coarse, per sample
};
StepHalving compare_step_halving(const SleHitConfig& cfg);

}  // namespace cleconn
