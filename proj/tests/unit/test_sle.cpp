#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "cleconn/errors.hpp"
#include "cleconn/sle.hpp"

using namespace cleconn;

namespace {

SleHitConfig config(double kappa, double eps, std::uint64_t n) {
    SleHitConfig c;
    c.kappa = kappa;
    c.eps = eps;
    c.n_samples = n;
    return c;
}

double z(const McEstimate& e, double target) { return (e.mean - target) / e.std_error; }

}  // namespace

TEST_CASE("probed interval and its exact probability") {
    SleHitConfig c = config(6.0, 0.4, 1000);
    Interval left = probed_interval(c);
    CHECK(left.left == doctest::Approx(0.6));
    CHECK(left.right == doctest::Approx(1.0));
    CHECK(exact_hit_probability(c) == doctest::Approx(0.4520237630262451739188642).epsilon(1e-12));
    c.anchor = IntervalAnchor::RightOfOne;
    c.scale = 2.0;
    const Interval right = probed_interval(c);
    CHECK(right.left == doctest::Approx(2.0));
    CHECK(right.right == doctest::Approx(2.8));
    CHECK(exact_hit_probability(c) == doctest::Approx(0.3935263055351389263496666).epsilon(1e-12));
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(resolve_config(config(3.0, 0.4, 1000)), DomainError);
    CHECK_THROWS_AS(resolve_config(config(6.0, 1.5, 1000)), DomainError);
    CHECK_THROWS_AS(estimate_hit_probability(config(6.0, 0.4, 50)), DomainError);
    SleHitConfig c = config(6.0, 0.4, 1000);
    c.tol_swallow = 1e-2;
    c.tol_separation = 1e-3;
    CHECK_THROWS_AS(resolve_config(c), DomainError);
    const SleHitConfig r = resolve_config(config(6.0, 0.4, 1000));
    CHECK(r.tol_swallow > 0.0);
    CHECK(r.tol_separation > r.tol_swallow);
}

TEST_CASE("a sample depends only on seed and index") {
    const SleHitConfig c = config(6.0, 0.4, 100);
    for (std::uint64_t i = 0; i < 20; ++i) CHECK(simulate_hit_event(c, i) == simulate_hit_event(c, i));
    CHECK_THROWS_AS(simulate_hit_event(c, 100), DomainError);
}

TEST_CASE("estimate matches the exact probability, both anchors") {
    for (double k : {5.0, 6.0, 7.0}) {
        SleHitConfig c = config(k, 0.3, 20000);
        CAPTURE(k);
        CHECK(std::fabs(z(estimate_hit_probability(c), exact_hit_probability(c))) < 4.0);
        c.anchor = IntervalAnchor::RightOfOne;
        CHECK(std::fabs(z(estimate_hit_probability(c), exact_hit_probability(c))) < 4.0);
    }
}

TEST_CASE("scaling both endpoints leaves the estimate unchanged") {
    SleHitConfig c = config(6.0, 0.4, 10000);
    const McEstimate base = estimate_hit_probability(c);
    c.scale = 2.0;
    c.seed = 2;
    const McEstimate scaled = estimate_hit_probability(c);
    const double se = std::hypot(base.std_error, scaled.std_error);
    CHECK(std::fabs(base.mean - scaled.mean) < 4.0 * se);
}

TEST_CASE("halving the step changes little") {
    const StepHalving h = compare_step_halving(config(6.0, 0.4, 5000));
    CHECK(std::fabs(h.difference.mean) < 4.0 * h.difference.std_error + 5e-3);
    CHECK(h.difference.mean == doctest::Approx(h.fine.mean - h.coarse.mean).epsilon(1e-12));
}

TEST_CASE("estimate does not depend on the thread count") {
    const SleHitConfig c = config(6.0, 0.4, 3000);
    setenv("CLECONN_THREADS", "1", 1);
    const McEstimate one = estimate_hit_probability(c);
    setenv("CLECONN_THREADS", "4", 1);
    const McEstimate four = estimate_hit_probability(c);
    unsetenv("CLECONN_THREADS");
    CHECK(one.mean == four.mean);
    CHECK(one.std_error == four.std_error);
}

TEST_CASE("interval abutting the seed") {
    SleHitConfig c = config(6.0, 0.99, 20000);
    CHECK(std::fabs(z(estimate_hit_probability(c), exact_hit_probability(c))) < 4.0);
}

TEST_CASE("sample count checks") {
    CHECK_THROWS_AS(estimate_hit_probability(config(6.0, 0.4, 0)), DomainError);
    // standard error falls like 1/sqrt(n)
    const McEstimate small = estimate_hit_probability(config(6.0, 0.4, 2000));
    const McEstimate big = estimate_hit_probability(config(6.0, 0.4, 8000));
    CHECK(big.std_error / small.std_error == doctest::Approx(0.5).epsilon(0.2));
}
