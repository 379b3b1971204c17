#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "cleconn/hookup.hpp"
#include "cleconn/mc.hpp"

namespace cleconn {

// ---- grid simulation of the driving triple ---------------------------------

struct TrackedPoint {
    double b = 1.0;
    double gap = 0.0;  // V_t - O_t
    std::optional<double> swallowed_at;
};

struct DrivingPath {
    std::vector<double> times;
    std::vector<double> x;  // Bessel process, x >= 0
    std::vector<double> o;  // force point image
    std::vector<double> w;  // driving function, o - sqrt(kappa) x
    // zero_touch[i]: the path visited 0 on (times[i-1], times[i]]
    std::vector<std::uint8_t> zero_touch;
    std::vector<TrackedPoint> tracked;
};

struct DrivingConfig {
    double start_o = 0.0;
    double start_w = 0.0;
    double horizon = std::numeric_limits<double>::infinity();
    // stop once O - W reaches this level
    double stop_level = std::numeric_limits<double>::infinity();
    std::vector<double> tracked_points;
    bool stop_when_swallowed = true;
    double dt = 1e-8;         // finest step
    double dt_max = std::numeric_limits<double>::infinity();
    double step_fraction = 1e-2;  // step ~ step_fraction * X^2 away from zero
    // length scale of interest for O - W (counting level); sets the finest
    // step and where the bridge correction for O kicks in
    double resolution_level = 1e-3;
    double tol_swallow = 1e-9;    // relative to b
    bool track_o = true;
    bool record = true;
    std::uint64_t seed = 1;
    std::uint64_t sample_index = 0;
    std::uint64_t max_steps = 1000000000ULL;
};

DrivingPath simulate_driving_pair(const KappaContext& ctx, const DrivingConfig& cfg);

// First grid time at which b was swallowed.  b must be one of the tracked points.
double swallow_time(const DrivingPath& path, double b);

// Simulates until b is swallowed (the path grows until then or the step cap).
double sample_swallow_time(const KappaContext& ctx, double b, DrivingConfig cfg);

// E[1/X_{h}] for the Bessel bridge of duration 2h from x0 to x1, in units
// where h = 1.  Tabulated per dimension and interpolated.
double bridge_inverse_midpoint(double dim, double x0, double x1);

// ---- local time ------------------------------------------------------------

struct LocalTimeConfig {
    double up_level = 1e-3;   // counting level for O - W
    double dt = 1e-8;         // finest grid step of the Bessel simulation
    std::uint64_t seed = 1;
    std::uint64_t n_samples = 1000;
    // excursion engine: step in log time and the sub-resolution fraction
    double log_step = 1e-2;
    double resolution = 1e-2;
    double tol_gap = 1e-12;   // stop once V - O falls below tol_gap * b
};

// up_level^{8/k - 1} times the number of upcrossings of O - W from 0 to
// up_level completed by time up_to on a recorded path.
double local_time_estimate(const DrivingPath& path, const KappaContext& ctx,
                           const LocalTimeConfig& ltc, double up_to);

// Grid estimate of E[l at tau_level], the first time O - W reaches level.
McEstimate estimate_localtime_at_passage(const KappaContext& ctx, const LocalTimeConfig& ltc,
                                         double level);

struct LocalTimeRun {
    McEstimate primary;     // up_level^{p} N(up_level)
    McEstimate halved;      // (up_level/2)^{p} N(up_level/2), same paths
    McEstimate difference;  // halved - primary, per path
    McEstimate exact;       // local time accumulated by the sampler itself
};

LocalTimeRun run_localtime_expectation(const KappaContext& ctx, const LocalTimeConfig& ltc,
                                       double b = 1.0);
McEstimate estimate_localtime_expectation(const KappaContext& ctx, const LocalTimeConfig& ltc,
                                          double b = 1.0);

// P[tau_{y^{3/4}} < T_y] / (y^{1/4})^{8/k-1}.
McEstimate estimate_excursion_ratio(const KappaContext& ctx, double y, const LocalTimeConfig& ltc);

struct WaldCheck {
    McEstimate scaled_count;  // h^{p} * #excursions reaching h = y^{3/4} before T_y
    McEstimate local_time;    // up_level^{p} N(up_level) on the same paths
    McEstimate difference;
};
WaldCheck wald_consistency(const KappaContext& ctx, double y, const LocalTimeConfig& ltc);

}  // namespace cleconn
