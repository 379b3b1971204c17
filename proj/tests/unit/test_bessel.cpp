#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "cleconn/bessel.hpp"
#include "cleconn/errors.hpp"

using namespace cleconn;

namespace {

double z(const McEstimate& e, double target) { return (e.mean - target) / e.std_error; }

// two-sample Kolmogorov-Smirnov statistic
double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v) ++i;
        while (j < b.size() && b[j] <= v) ++j;
        d = std::max(d, std::fabs(double(i) / a.size() - double(j) / b.size()));
    }
    return d;
}

}  // namespace

TEST_CASE("squared Bessel process has mean dim * t") {
    const KappaContext ctx = make_context(6.0);
    DrivingConfig cfg;
    cfg.horizon = 1.0;
    cfg.dt = 1e-3;
    cfg.resolution_level = 1.0;
    cfg.track_o = false;
    cfg.record = false;
    const std::uint64_t n = 4000;
    const McEstimate est = estimate_mean(n, 3, [&](std::uint64_t i) {
        DrivingConfig c = cfg;
        c.sample_index = i;
        const double x = simulate_driving_pair(ctx, c).x.back();
        return x * x;
    });
    CHECK(std::fabs(z(est, ctx.bessel_dim)) < 4.0);
}

TEST_CASE("recorded path: O non-decreasing, W = O - sqrt(k) X, X >= 0") {
    const KappaContext ctx = make_context(5.5);
    DrivingConfig cfg;
    cfg.horizon = 0.5;
    cfg.dt = 1e-5;
    cfg.seed = 9;
    const DrivingPath path = simulate_driving_pair(ctx, cfg);
    REQUIRE(path.times.size() > 10);
    for (std::size_t i = 0; i < path.times.size(); ++i) {
        CHECK(path.x[i] >= 0.0);
        CHECK(path.w[i] == doctest::Approx(path.o[i] - std::sqrt(5.5) * path.x[i]).epsilon(1e-12));
        if (i > 0) {
            CHECK(path.o[i] >= path.o[i - 1]);
            CHECK(path.times[i] > path.times[i - 1]);
        }
    }
    CHECK(path.times.back() == doctest::Approx(0.5));
}

TEST_CASE("nearer points are swallowed first") {
    const KappaContext ctx = make_context(6.0);
    for (std::uint64_t i = 0; i < 20; ++i) {
        DrivingConfig cfg;
        cfg.tracked_points = {0.5, 1.0, 2.0};
        cfg.record = false;
        cfg.sample_index = i;
        const DrivingPath path = simulate_driving_pair(ctx, cfg);
        CHECK(swallow_time(path, 0.5) <= swallow_time(path, 1.0));
        CHECK(swallow_time(path, 1.0) <= swallow_time(path, 2.0));
    }
}

TEST_CASE("swallowing time scales like b^2") {
    const KappaContext ctx = make_context(6.0);
    const std::uint64_t n = 400;
    std::vector<double> one(n), two(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        DrivingConfig cfg;
        cfg.sample_index = i;
        one[i] = sample_swallow_time(ctx, 1.0, cfg);
        cfg.seed = 2;
        two[i] = sample_swallow_time(ctx, 2.0, cfg) / 4.0;
    }
    // 1% critical value
    CHECK(ks_statistic(one, two) < 1.63 * std::sqrt(2.0 / n));
}

TEST_CASE("bridge midpoint table") {
    // far from zero the bridge hardly bends
    CHECK(bridge_inverse_midpoint(5.0 / 3.0, 9.0, 9.0) == doctest::Approx(1.0 / 9.0).epsilon(2e-2));
    CHECK(bridge_inverse_midpoint(5.0 / 3.0, 0.0, 0.0) > bridge_inverse_midpoint(5.0 / 3.0, 1.0, 1.0));
    CHECK_THROWS_AS(bridge_inverse_midpoint(2.5, 1.0, 1.0), DomainError);
}

TEST_CASE("local time expectation at kappa 6") {
    const KappaContext ctx = make_context(6.0);
    LocalTimeConfig ltc;
    ltc.n_samples = 4000;
    const LocalTimeRun run = run_localtime_expectation(ctx, ltc);
    CHECK(std::fabs(z(run.primary, 1.0)) < 4.0);
    CHECK(std::fabs(z(run.exact, 1.0)) < 4.0);
    CHECK(std::fabs(run.difference.mean) < 4.0 * run.difference.std_error + 0.01);
}

TEST_CASE("local time at first passage") {
    const KappaContext ctx = make_context(6.0);
    LocalTimeConfig ltc;
    ltc.n_samples = 4000;
    ltc.up_level = 0.25e-3;
    const McEstimate est = estimate_localtime_at_passage(ctx, ltc, 1e-3);
    CHECK(std::fabs(z(est, std::cbrt(1e-3))) < 4.0);
    CHECK_THROWS_AS(estimate_localtime_at_passage(ctx, ltc, 1e-4), DomainError);
}

TEST_CASE("Wald identity for completed excursions") {
    const KappaContext ctx = make_context(6.0);
    LocalTimeConfig ltc;
    ltc.n_samples = 4000;
    const WaldCheck w = wald_consistency(ctx, 0.01, ltc);
    CHECK(std::fabs(w.difference.mean) < 4.0 * w.difference.std_error);
}

TEST_CASE("estimates do not depend on the thread count") {
    const KappaContext ctx = make_context(6.0);
    LocalTimeConfig ltc;
    ltc.n_samples = 300;
    setenv("CLECONN_THREADS", "1", 1);
    const McEstimate one = estimate_localtime_expectation(ctx, ltc);
    const McEstimate ratio_one = estimate_excursion_ratio(ctx, 0.01, ltc);
    setenv("CLECONN_THREADS", "3", 1);
    const McEstimate three = estimate_localtime_expectation(ctx, ltc);
    const McEstimate ratio_three = estimate_excursion_ratio(ctx, 0.01, ltc);
    unsetenv("CLECONN_THREADS");
    CHECK(one.mean == three.mean);
    CHECK(one.std_error == three.std_error);
    CHECK(ratio_one.mean == ratio_three.mean);
}

TEST_CASE("argument checks") {
    LocalTimeConfig ltc;
    CHECK_THROWS_AS(estimate_localtime_expectation(make_context(3.0), ltc), DomainError);
    ltc.log_step = 0.9;
    CHECK_THROWS_AS(estimate_localtime_expectation(make_context(6.0), ltc), DomainError);
    DrivingConfig cfg;
    cfg.tracked_points = {1.0};
    cfg.track_o = false;
    CHECK_THROWS_AS(simulate_driving_pair(make_context(6.0), cfg), ConfigurationError);
    CHECK_THROWS_AS(estimate_excursion_ratio(make_context(6.0), 1.5, LocalTimeConfig{}), DomainError);
}

TEST_CASE("start at the origin") {
    DrivingConfig cfg;
    cfg.horizon = 1e-6;
    const DrivingPath path = simulate_driving_pair(make_context(6.0), cfg);
    CHECK(path.x.front() == 0.0);
    CHECK(path.o.front() == 0.0);
    CHECK(path.w.front() == 0.0);
}

TEST_CASE("swallowing time of 1 is positive and reproducible") {
    const KappaContext ctx = make_context(6.0);
    DrivingConfig cfg;
    cfg.sample_index = 5;
    const double t = sample_swallow_time(ctx, 1.0, cfg);
    CHECK(t > 0.0);
    CHECK(std::isfinite(t));
    CHECK(sample_swallow_time(ctx, 1.0, cfg) == t);
}

TEST_CASE("no local time while X stays away from zero") {
    const KappaContext ctx = make_context(6.0);
    DrivingConfig cfg;
    cfg.start_o = 1.0;
    cfg.horizon = 1e-3;
    const DrivingPath path = simulate_driving_pair(ctx, cfg);
    CHECK(*std::min_element(path.x.begin(), path.x.end()) > 0.1);
    CHECK(local_time_estimate(path, ctx, LocalTimeConfig{}, 1e-3) == 0.0);
}

TEST_CASE("local time constant at kappa 5") {
    const KappaContext ctx = make_context(5.0);
    LocalTimeConfig ltc;
    ltc.n_samples = 2000;
    const McEstimate est = estimate_localtime_expectation(ctx, ltc);
    CHECK(std::fabs(z(est, localtime_expectation(ctx))) < 4.0);
    CHECK(estimate_localtime_expectation(ctx, ltc).mean == est.mean);
}
