#include "cleconn/sle.hpp"

#include <cmath>
#include <random>
#include <string>

#include "cleconn/errors.hpp"

namespace cleconn {

// Two boundary points a < b under chordal SLE.  With Xa = g(a) - W, G = g(b) - g(a)
// and V = log(G / Xa), in the time r with dr = dt / Xa^2 one has
//   dV = (k/2 - 2 - 2/(1 + e^V)) dr + sqrt(k) dB.
// V -> +inf means a is swallowed while b is not (the curve hits [a, b]);
// V -> -inf means both go together.

namespace {

constexpr std::uint64_t kStepCap = 1000000000ULL;

struct Walker {
    double kappa;
    double v_hit;
    double v_miss;
    double dt;

    double drift(double v) const {
        double s = v > 0.0 ? 2.0 * std::exp(-v) / (1.0 + std::exp(-v)) : 2.0 / (1.0 + std::exp(v));
        return 0.5 * kappa - 2.0 - s;
    }
    // Small steps where the drift bends (|V| of order one); in the far tails the
    // drift is constant to within e^{-|V|} and the steps may grow.
    double step_size(double v) const {
        double a = std::fabs(v);
        double cap = 100.0 * dt + (a > 10.0 ? 0.5 * (a - 10.0) : 0.0);
        return std::min(cap, dt * (1.0 + std::exp(a)));
    }
    // Heun for the drift, exact Gaussian noise increment.
    double advance(double v, double h, double noise) const {
        double m0 = drift(v);
        double pred = v + m0 * h + noise;
        return v + 0.5 * (m0 + drift(pred)) * h + noise;
    }
    // +1 hit, -1 miss, 0 undecided
    int verdict(double v) const { return v >= v_hit ? 1 : (v <= v_miss ? -1 : 0); }
};

Walker make_walker(const SleHitConfig& c, double dt) {
    Walker w;
    w.kappa = c.kappa;
    w.dt = dt;
    w.v_hit = std::log1p(-c.tol_swallow) - std::log(c.tol_swallow);
    w.v_miss = std::log(c.tol_separation) - std::log1p(-c.tol_separation);
    return w;
}

double initial_v(const SleHitConfig& c) {
    Interval iv = probed_interval(c);
    return std::log((iv.right - iv.left) / iv.left);
}

}  // namespace

SleHitConfig resolve_config(const SleHitConfig& cfg) {
    SleHitConfig c = cfg;
    if (!(c.kappa > 4.0 && c.kappa < 8.0)) throw DomainError("sle hit needs kappa in (4,8)");
    if (!(c.eps > 0.0 && c.eps < 1.0)) throw DomainError("sle hit needs eps in (0,1)");
    if (!(c.dt > 0.0) || !std::isfinite(c.dt)) throw DomainError("dt must be positive");
    if (!(c.scale > 0.0) || !std::isfinite(c.scale)) throw DomainError("scale must be positive");
    const double p = 8.0 / c.kappa - 1.0;
    if (c.tol_separation == 0.0) c.tol_separation = std::max(1e-290, std::pow(1e-7, 1.0 / p));
    if (c.tol_swallow == 0.0)
        c.tol_swallow = std::max(
            1e-300, std::min(std::pow(1e-7, 1.0 / (1.0 - 4.0 / c.kappa)), c.tol_separation / 10.0));
    if (!(c.tol_swallow > 0.0 && c.tol_swallow < c.tol_separation && c.tol_separation < 0.01 * c.eps))
        throw DomainError("need 0 < tol_swallow < tol_separation << eps");
    return c;
}

Interval probed_interval(const SleHitConfig& cfg) {
    if (cfg.anchor == IntervalAnchor::LeftOfOne) return {cfg.scale * (1.0 - cfg.eps), cfg.scale};
    return {cfg.scale, cfg.scale * (1.0 + cfg.eps)};
}

double exact_hit_probability(const SleHitConfig& cfg) {
    SleHitConfig c = resolve_config(cfg);
    Interval iv = probed_interval(c);
    return interval_hit_probability(make_context(c.kappa), iv.left, iv.right);
}

bool simulate_hit_event(const SleHitConfig& cfg, std::uint64_t sample_index) {
    const SleHitConfig c = resolve_config(cfg);
    if (sample_index >= c.n_samples) throw DomainError("sample_index out of range");
    const Walker w = make_walker(c, c.dt);
    Rng rng = make_rng(c.seed, sample_index);
    std::normal_distribution<double> normal;
    const double sk = std::sqrt(c.kappa);
    double v = initial_v(c);
    for (std::uint64_t step = 0; step < kStepCap; ++step) {
        int verdict = w.verdict(v);
        if (verdict != 0) return verdict > 0;
        double h = w.step_size(v);
        v = w.advance(v, h, sk * std::sqrt(h) * normal(rng));
    }
    throw NonTerminationError("sle hit sample exceeded the step cap");
}

CoupledHit simulate_hit_event_coupled(const SleHitConfig& cfg, std::uint64_t sample_index) {
    const SleHitConfig c = resolve_config(cfg);
    if (sample_index >= c.n_samples) throw DomainError("sample_index out of range");
    const Walker coarse = make_walker(c, c.dt);
    Rng rng = make_rng(c.seed, sample_index);
    std::normal_distribution<double> normal;
    const double sk = std::sqrt(c.kappa);
    double vc = initial_v(c), vf = vc;
    int dc = 0, df = 0;
    for (std::uint64_t step = 0; step < kStepCap; ++step) {
        if (dc == 0) dc = coarse.verdict(vc);
        if (df == 0) df = coarse.verdict(vf);
        if (dc != 0 && df != 0) return {dc > 0, df > 0};
        // the coarse grid drives the step while it is alive
        double h = dc == 0 ? coarse.step_size(vc) : coarse.step_size(vf);
        double half = 0.5 * h;
        double n1 = sk * std::sqrt(half) * normal(rng);
        double n2 = sk * std::sqrt(half) * normal(rng);
        if (dc == 0) vc = coarse.advance(vc, h, n1 + n2);
        if (df == 0) {
            vf = coarse.advance(vf, half, n1);
            if (coarse.verdict(vf) == 0) vf = coarse.advance(vf, half, n2);
        }
    }
    throw NonTerminationError("sle hit sample exceeded the step cap");
}

McEstimate estimate_hit_probability(const SleHitConfig& cfg) {
    const SleHitConfig c = resolve_config(cfg);
    if (c.n_samples < 100) throw DomainError("estimate_hit_probability needs n_samples >= 100");
    return estimate_mean(c.n_samples, c.seed,
                         [&](std::uint64_t i) { return simulate_hit_event(c, i) ? 1.0 : 0.0; });
}

StepHalving compare_step_halving(const SleHitConfig& cfg) {
    const SleHitConfig c = resolve_config(cfg);
    if (c.n_samples < 100) throw DomainError("compare_step_halving needs n_samples >= 100");
    std::vector<double> a(c.n_samples), b(c.n_samples), d(c.n_samples);
    parallel_for(c.n_samples, [&](std::uint64_t i) {
        CoupledHit r = simulate_hit_event_coupled(c, i);
        a[i] = r.coarse ? 1.0 : 0.0;
        b[i] = r.fine ? 1.0 : 0.0;
        d[i] = b[i] - a[i];
    });
    return {summarize(a, c.seed), summarize(b, c.seed), summarize(d, c.seed)};
}

}  // namespace cleconn
