#include "cleconn/bessel.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>

#include "cleconn/errors.hpp"

namespace cleconn {

namespace {

void require_nonsimple(const KappaContext& ctx, const char* what) {
    if (!ctx.nonsimple()) throw DomainError(std::string(what) + " needs kappa in (4,8)");
}

// ---- Bessel bridge midpoint table -------------------------------------------

constexpr double kTableMax = 10.0;
constexpr double kTableStep = 0.125;
constexpr int kTableN = 81;

// (z/2)^{-nu} I_nu(z): finite at z = 0 for nu in (-1, 0).
double scaled_bessel_i(double nu, double z) {
    if (z == 0.0) return 1.0 / boost::math::tgamma(nu + 1.0);
    return boost::math::cyl_bessel_i(nu, z) * std::pow(0.5 * z, -nu);
}

double bridge_midpoint_exact(double dim, double x0, double x1) {
    const double nu = 0.5 * dim - 1.0;
    const double p = -2.0 * nu;  // density carries m^{-p}; v = m^{1-p} removes it
    const double mmax = 0.5 * (x0 + x1) + 9.0;
    const double vmax = std::pow(mmax, 1.0 - p);
    auto weight = [&](double v) {
        double m = std::pow(v, 1.0 / (1.0 - p));
        return std::exp(-m * m) * scaled_bessel_i(nu, x0 * m) * scaled_bessel_i(nu, x1 * m);
    };
    boost::math::quadrature::tanh_sinh<double> integ;
    double num = integ.integrate([&](double v) { return weight(v); }, 0.0, vmax, 1e-9);
    double den = integ.integrate(
        [&](double v) { return weight(v) * std::pow(v, 1.0 / (1.0 - p)); }, 0.0, vmax, 1e-9);
    return num / den;
}

struct BridgeTable {
    std::vector<double> values;  // kTableN x kTableN
};

const BridgeTable& bridge_table(double dim) {
    static std::mutex mu;
    static std::map<double, std::unique_ptr<BridgeTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(dim);
    if (it != cache.end()) return *it->second;
    auto t = std::make_unique<BridgeTable>();
    t->values.assign(kTableN * kTableN, 0.0);
    for (int i = 0; i < kTableN; ++i)
        for (int j = 0; j <= i; ++j) {
            double v = bridge_midpoint_exact(dim, i * kTableStep, j * kTableStep);
            t->values[i * kTableN + j] = v;
            t->values[j * kTableN + i] = v;
        }
    return *cache.emplace(dim, std::move(t)).first->second;
}

// ---- squared Bessel transitions ----------------------------------------------

double bessel_step(double x0, double delta, double dim, Rng& rng) {
    long n = 0;
    const double half_lambda = 0.5 * x0 * x0 / delta;
    if (half_lambda > 0.0) n = std::poisson_distribution<long>(half_lambda)(rng);
    const double g = std::gamma_distribution<double>(0.5 * dim + n, 1.0)(rng);
    return std::sqrt(2.0 * delta * g);
}

// Chance that the Bessel bridge from x0 to x1 over delta touches 0.
double bridge_zero_probability(double x0, double x1, double delta, double dim) {
    if (x0 <= 0.0 || x1 <= 0.0) return 1.0;
    const double z = x0 * x1 / delta;
    if (z > 30.0) return 0.0;
    const double mu = 1.0 - 0.5 * dim;
    const double r = boost::math::cyl_bessel_i(mu, z) / boost::math::cyl_bessel_i(-mu, z);
    return std::clamp(1.0 - r, 0.0, 1.0);
}

// Brownian-bridge chance of crossing level between two values below it.
double bridge_cross_probability(double level, double y0, double y1, double var) {
    if (y0 >= level || y1 >= level) return 1.0;
    return std::exp(-2.0 * (level - y0) * (level - y1) / var);
}

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

}  // namespace

double bridge_inverse_midpoint(double dim, double x0, double x1) {
    if (!(dim > 0.0 && dim < 2.0)) throw DomainError("bridge table needs dimension in (0,2)");
    if (x0 < 0.0 || x1 < 0.0) throw DomainError("bridge endpoints must be non-negative");
    if (x0 >= kTableMax || x1 >= kTableMax) return 2.0 / (x0 + x1);
    const BridgeTable& t = bridge_table(dim);
    const double fi = x0 / kTableStep, fj = x1 / kTableStep;
    const int i = std::min(static_cast<int>(fi), kTableN - 2);
    const int j = std::min(static_cast<int>(fj), kTableN - 2);
    const double di = fi - i, dj = fj - j;
    auto at = [&](int a, int b) { return t.values[a * kTableN + b]; };
    return (1 - di) * (1 - dj) * at(i, j) + di * (1 - dj) * at(i + 1, j) + (1 - di) * dj * at(i, j + 1) +
           di * dj * at(i + 1, j + 1);
}

// ---- driving pair on a grid ------------------------------------------------------

DrivingPath simulate_driving_pair(const KappaContext& ctx, const DrivingConfig& cfg) {
    require_nonsimple(ctx, "simulate_driving_pair");
    if (!(cfg.start_w <= cfg.start_o)) throw DomainError("need start_w <= start_o");
    if (!(cfg.dt > 0.0 && cfg.dt_max >= cfg.dt && cfg.step_fraction > 0.0))
        throw DomainError("bad step parameters");
    if (!cfg.tracked_points.empty() && !cfg.track_o)
        throw ConfigurationError("tracked points need the force point image");
    const double kappa = ctx.kappa, sk = std::sqrt(kappa), dim = ctx.bessel_dim;
    const double c = cfg.step_fraction;

    DrivingPath path;
    for (double b : cfg.tracked_points) {
        if (!(b > cfg.start_o)) throw DomainError("tracked point must lie right of the force point");
        TrackedPoint tp;
        tp.b = b;
        tp.gap = b - cfg.start_o;
        path.tracked.push_back(tp);
    }
    Rng rng = make_rng(cfg.seed, cfg.sample_index);
    double t = 0.0, x = (cfg.start_o - cfg.start_w) / sk, o = cfg.start_o;
    auto record = [&](std::uint8_t touched) {
        path.times.push_back(t);
        path.x.push_back(x);
        path.o.push_back(o);
        path.w.push_back(o - sk * x);
        path.zero_touch.push_back(touched);
    };
    record(x == 0.0 ? 1 : 0);

    for (std::uint64_t step = 0;; ++step) {
        if (step >= cfg.max_steps) throw NonTerminationError("driving pair exceeded the step cap");
        if (t >= cfg.horizon) break;
        if (sk * x >= cfg.stop_level) break;
        double scale = cfg.resolution_level;
        bool alive = false;
        for (const auto& tp : path.tracked)
            if (!tp.swallowed_at) {
                alive = true;
                scale = std::min(scale, tp.gap);
            }
        if (cfg.stop_when_swallowed && !path.tracked.empty() && !alive) break;

        const double floor_dt = std::min(cfg.dt, c * (scale / sk) * (scale / sk));
        double delta = std::clamp(c * x * x, floor_dt, cfg.dt_max);
        if (alive) {
            // the gap relaxes on the time scale Y (D + Y)
            double gmin = std::numeric_limits<double>::infinity();
            for (const auto& tp : path.tracked)
                if (!tp.swallowed_at) gmin = std::min(gmin, tp.gap);
            delta = std::min(delta, std::max(floor_dt, c * sk * x * (gmin + sk * x)));
        }
        if (std::isfinite(cfg.horizon)) delta = std::min(delta, cfg.horizon - t);
        if (!(delta > 0.0)) break;

        const double x1 = bessel_step(x, delta, dim, rng);
        const bool touched = uniform01(rng) < bridge_zero_probability(x, x1, delta, dim);

        if (cfg.track_o) {
            const double y0 = sk * x, y1 = sk * x1;
            double d_o;
            if (y0 >= 0.1 * scale && y1 >= 0.1 * scale) {
                d_o = delta * (1.0 / y0 + 1.0 / y1);
            } else {
                // near zero 1/X is stiff; use E[1/X] at the bridge midpoint
                const double h = 0.5 * delta, rh = std::sqrt(h);
                d_o = delta * (2.0 / sk) * bridge_inverse_midpoint(dim, x / rh, x1 / rh) / rh;
            }
            for (auto& tp : path.tracked) {
                if (tp.swallowed_at) continue;
                const double g0 = tp.gap;
                const double pred = std::max(0.0, g0 + 2.0 * delta / (g0 + y0) - d_o);
                const double dv = delta * (1.0 / (g0 + y0) + 1.0 / (pred + y1));
                tp.gap = g0 + dv - d_o;
                if (tp.gap <= cfg.tol_swallow * tp.b) {
                    tp.gap = 0.0;
                    tp.swallowed_at = t + delta;
                }
            }
            o += d_o;
        }
        t += delta;
        x = x1;
        if (cfg.record) record(touched ? 1 : 0);
    }
    if (!cfg.record) {
        path.times.push_back(t);
        path.x.push_back(x);
        path.o.push_back(o);
        path.w.push_back(o - sk * x);
        path.zero_touch.push_back(0);
    }
    return path;
}

double swallow_time(const DrivingPath& path, double b) {
    for (const auto& tp : path.tracked)
        if (tp.b == b) {
            if (!tp.swallowed_at) throw NonTerminationError("point was not swallowed on this path");
            return *tp.swallowed_at;
        }
    throw DomainError("point is not tracked on this path");
}

double sample_swallow_time(const KappaContext& ctx, double b, DrivingConfig cfg) {
    cfg.tracked_points = {b};
    cfg.stop_when_swallowed = true;
    cfg.horizon = std::numeric_limits<double>::infinity();
    cfg.record = false;
    cfg.track_o = true;
    DrivingPath path = simulate_driving_pair(ctx, cfg);
    return swallow_time(path, b);
}

double local_time_estimate(const DrivingPath& path, const KappaContext& ctx, const LocalTimeConfig& ltc,
                           double up_to) {
    require_nonsimple(ctx, "local_time_estimate");
    if (!(ltc.up_level > 0.0)) throw DomainError("up_level must be positive");
    const double sk = std::sqrt(ctx.kappa);
    bool armed = false;
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < path.times.size(); ++i) {
        if (path.times[i] > up_to) break;
        if (path.zero_touch[i] || path.x[i] == 0.0) armed = true;
        if (armed && sk * path.x[i] >= ltc.up_level) {
            ++count;
            armed = false;
        }
    }
    return std::pow(ltc.up_level, ctx.boundary_exponent) * static_cast<double>(count);
}

McEstimate estimate_localtime_at_passage(const KappaContext& ctx, const LocalTimeConfig& ltc, double level) {
    require_nonsimple(ctx, "estimate_localtime_at_passage");
    if (!(ltc.up_level > 0.0 && level >= ltc.up_level))
        throw DomainError("passage level must be at least the counting level");
    if (ltc.n_samples < 2) throw DomainError("need at least two samples");
    const double sk = std::sqrt(ctx.kappa), dim = ctx.bessel_dim, c = 1e-2;
    const double lc = ltc.up_level / sk, ls = level / sk;
    const double floor_dt = std::min(ltc.dt, c * lc * lc);
    const double weight = std::pow(ltc.up_level, ctx.boundary_exponent);
    return estimate_mean(ltc.n_samples, ltc.seed, [&](std::uint64_t idx) {
        Rng rng = make_rng(ltc.seed, idx);
        double x = 0.0;
        bool armed = true;
        std::uint64_t count = 0;
        for (std::uint64_t step = 0;; ++step) {
            if (step > 1000000000ULL) throw NonTerminationError("passage sample exceeded the step cap");
            const double delta = std::max(c * x * x, floor_dt);
            const double x1 = bessel_step(x, delta, dim, rng);
            const bool touched = uniform01(rng) < bridge_zero_probability(x, x1, delta, dim);
            if (touched) armed = true;
            // one uniform for both levels keeps the crossings nested
            const double un = uniform01(rng);
            bool up_c = x1 >= lc || (!touched && un < bridge_cross_probability(lc, x, x1, delta));
            const bool up_s = x1 >= ls || un < bridge_cross_probability(ls, x, x1, delta);
            if (up_s) up_c = true;
            if (armed && up_c) {
                ++count;
                armed = false;
            }
            if (up_s) break;
            x = x1;
        }
        return weight * static_cast<double>(count);
    });
}

// ---- excursion engine ---------------------------------------------------------
//
// Y = O - W is a Bessel process of dimension d = 2 - p in the time kappa*t.
// In r with dr = kappa dt / Y^2:
//   d log Y = -(p/2) dr + dB,   dO = (2/kappa) Y dr,   dt = Y^2 dr / kappa,
//   d log D = -(2/kappa) Y/(D+Y) dr   with D = V - O the gap to the tracked point.
// Excursions from 0 that stay below a resolution a = eta*min(D, ref) are not
// simulated; their mean effect on O and t per unit local time is added, and
// the local time between excursions reaching a is exponential with mean a^p.

namespace {

struct EngineSpec {
    double kappa;
    double gap0;
    std::vector<double> count_levels;
    double stop_level = std::numeric_limits<double>::infinity();
    double resolution_ref;
    double eta;
    double log_step;
    double tol_gap;  // absolute
};

struct EngineResult {
    double local_time = 0.0;
    std::vector<std::uint64_t> counts;
    bool reached_stop = false;
    bool swallowed = false;
};

// Conditional mean of the integral of exp(m * bridge) over [0, len] for a
// unit-variance Brownian bridge from y0 to y1.
double bridge_exp_integral(double m, double y0, double y1, double len) {
    const double spread = std::fabs(m * (y1 - y0)) + m * m * len / 8.0;
    const int panels = spread < 1.0 ? 4 : (spread < 4.0 ? 16 : 64);
    const double hs = len / panels;
    double sum = 0.0;
    for (int i = 0; i <= panels; ++i) {
        const double s = i * hs;
        const double e = std::exp(m * (y0 + (y1 - y0) * s / len) + 0.5 * m * m * s * (len - s) / len);
        const double wgt = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        sum += wgt * e;
    }
    return sum * hs / 3.0;
}

// Conditional mean of the integral of Y/(D+Y) = 1/(1 + e^{log D - log Y})
// over the bridge; Simpson in time, three-point Gauss-Hermite across.
double bridge_share_integral(double log_gap, double y0, double y1, double len) {
    constexpr int panels = 4;
    const double spread = std::sqrt(3.0);
    const double hs = len / panels;
    auto share = [log_gap](double y) { return 1.0 / (1.0 + std::exp(log_gap - y)); };
    double sum = 0.0;
    for (int i = 0; i <= panels; ++i) {
        const double s = i * hs;
        const double mean = y0 + (y1 - y0) * s / len;
        const double sd = std::sqrt(s * (len - s) / len);
        const double e = (4.0 * share(mean) + share(mean + spread * sd) + share(mean - spread * sd)) / 6.0;
        const double wgt = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        sum += wgt * e;
    }
    return sum * hs / 3.0;
}

EngineResult run_engine(const EngineSpec& spec, Rng& rng) {
    const double k = spec.kappa;
    const double p = 8.0 / k - 1.0;
    const double dim = 2.0 - p;
    const double floor_depth = 4.0;  // in log Y below the resolution
    const double max_step = 4.0;
    const double near_cap = 0.1;  // step cap while Y and D are comparable
    // sub-resolution means per unit local time: O gains o_coef a^{1-p}, t gains t_coef a^{2-p}
    const double o_coef = (2.0 / k) * 4.0 * p / (1.0 - p * p);
    const double t_coef = (1.0 / k) * 2.0 * p / (dim * (4.0 - dim));
    // the climb from 0 to a, as a dimension 4-d Bessel process
    const double rise_o = (2.0 / k) * 2.0 / (1.0 + p);
    const double rise_t = 1.0 / (k * (4.0 - dim));

    std::normal_distribution<double> normal;
    std::exponential_distribution<double> expo(1.0);

    EngineResult res;
    res.counts.assign(spec.count_levels.size(), 0);
    std::vector<char> counted(spec.count_levels.size(), 0);
    std::vector<double> log_levels;
    for (double l : spec.count_levels) log_levels.push_back(std::log(l));
    const double log_stop = std::log(spec.stop_level);

    double gap = spec.gap0;
    bool at_zero = true;
    double ly = 0.0;  // log Y during an excursion

    // count levels need a below them; the mean field needs a << gap
    auto resolution = [&](double g) { return std::min(spec.eta * g, 0.5 * spec.resolution_ref); };
    auto climb = [&](double a) {
        gap += -rise_o * a + 2.0 * rise_t * a * a / gap;
    };

    for (std::uint64_t step = 0;; ++step) {
        if (step > 2000000000ULL) throw NonTerminationError("excursion sampler exceeded the step cap");
        if (at_zero) {
            const double a = resolution(gap);
            const double ell = std::pow(a, p) * expo(rng);
            const double rate = -o_coef * std::pow(a, 1.0 - p) + 2.0 * t_coef * std::pow(a, 2.0 - p) / gap;
            if (rate < 0.0 && gap + rate * ell <= spec.tol_gap) {
                res.local_time += (gap - spec.tol_gap) / (-rate);
                res.swallowed = true;
                return res;
            }
            res.local_time += ell;
            gap += rate * ell;
            climb(a);
            if (gap <= spec.tol_gap) {
                res.swallowed = true;
                return res;
            }
            std::fill(counted.begin(), counted.end(), 0);
            ly = std::log(a);
            at_zero = false;
            for (std::size_t i = 0; i < log_levels.size(); ++i)
                if (ly >= log_levels[i]) {
                    counted[i] = 1;
                    ++res.counts[i];
                }
            if (ly >= log_stop) {
                res.reached_stop = true;
                return res;
            }
            continue;
        }

        const double lg = std::log(gap);
        const double u = ly - lg;
        const double au = std::fabs(u);
        double h = std::min({max_step, spec.log_step * (1.0 + std::exp(au)),
                                   std::max(spec.log_step, (au / 5.0) * (au / 5.0))});
        if (au < 5.0) h = std::min(h, near_cap);
        const double ly1 = ly - 0.5 * p * h + std::sqrt(h) * normal(rng);
        const double u1 = ly1 - lg;
        if (u < -5.0 && u1 < -5.0) {
            const double d_o = (2.0 / k) * bridge_exp_integral(1.0, ly, ly1, h);
            const double d_t = bridge_exp_integral(2.0, ly, ly1, h) / k;
            gap += -d_o + 2.0 * d_t / gap;
        } else {
            // midpoint in log D, bridge-averaged Y/(D+Y)
            const double lg0 = std::log(gap);
            const double half = lg0 - bridge_share_integral(lg0, ly, ly1, h) / k;
            gap = std::exp(lg0 - (2.0 / k) * bridge_share_integral(half, ly, ly1, h));
        }
        const double un = uniform01(rng);  // shared so crossings of nested levels stay nested
        for (std::size_t i = 0; i < log_levels.size(); ++i) {
            if (counted[i]) continue;
            if (ly1 >= log_levels[i] || un < bridge_cross_probability(log_levels[i], ly, ly1, h)) {
                counted[i] = 1;
                ++res.counts[i];
            }
        }
        if (std::isfinite(log_stop) &&
            (ly1 >= log_stop || un < bridge_cross_probability(log_stop, ly, ly1, h))) {
            res.reached_stop = true;
            return res;
        }
        if (gap <= spec.tol_gap) {
            res.swallowed = true;
            return res;
        }
        ly = ly1;
        const double a_new = resolution(gap);
        if (ly < std::log(a_new) - floor_depth) {
            // from deep below, either climb back to a or die at 0; the mean
            // effect of the path until then is added whichever happens
            const double y = std::exp(ly);
            const double q = std::pow(y / a_new, p);
            const double occ_o = (2.0 / p) * ((1.0 - q) * y + q * (std::pow(a_new, p) *
                                    (std::pow(a_new, 1.0 - p) - std::pow(y, 1.0 - p)) / (1.0 - p) - (a_new - y)));
            const double occ_t = (1.0 / p) * (1.0 - q) * y * y +
                                 (2.0 / p) * q * (std::pow(a_new, p) * (std::pow(a_new, 2.0 - p) - std::pow(y, 2.0 - p)) /
                                    (2.0 - p) - 0.5 * (a_new * a_new - y * y));
            gap += -(2.0 / k) * occ_o + 2.0 * (occ_t / k) / gap;
            if (gap <= spec.tol_gap) {
                res.swallowed = true;
                return res;
            }
            if (uniform01(rng) < q) {
                ly = std::log(a_new);
            } else {
                at_zero = true;
            }
        }
    }
}

void check_ltc(const LocalTimeConfig& ltc) {
    if (!(ltc.up_level > 0.0)) throw DomainError("up_level must be positive");
    if (!(ltc.log_step > 0.0 && ltc.log_step <= 0.5)) throw DomainError("log_step must lie in (0, 0.5]");
    if (!(ltc.resolution > 0.0 && ltc.resolution < 0.5)) throw DomainError("resolution must lie in (0, 0.5)");
    if (!(ltc.tol_gap > 0.0 && ltc.tol_gap < 1e-3)) throw DomainError("tol_gap must lie in (0, 1e-3)");
    if (ltc.n_samples < 2) throw DomainError("need at least two samples");
}

}  // namespace

LocalTimeRun run_localtime_expectation(const KappaContext& ctx, const LocalTimeConfig& ltc, double b) {
    require_nonsimple(ctx, "run_localtime_expectation");
    check_ltc(ltc);
    if (!(b > 0.0)) throw DomainError("b must be positive");
    EngineSpec spec;
    spec.kappa = ctx.kappa;
    spec.gap0 = b;
    spec.count_levels = {ltc.up_level, 0.5 * ltc.up_level};
    spec.resolution_ref = 0.5 * ltc.up_level;
    spec.eta = ltc.resolution;
    spec.log_step = ltc.log_step;
    spec.tol_gap = ltc.tol_gap * b;
    const double p = ctx.boundary_exponent;
    const double w1 = std::pow(ltc.up_level, p), w2 = std::pow(0.5 * ltc.up_level, p);
    const std::uint64_t n = ltc.n_samples;
    std::vector<double> v1(n), v2(n), dv(n), ex(n);
    parallel_for(n, [&](std::uint64_t i) {
        Rng rng = make_rng(ltc.seed, i);
        EngineResult r = run_engine(spec, rng);
        v1[i] = w1 * r.counts[0];
        v2[i] = w2 * r.counts[1];
        dv[i] = v2[i] - v1[i];
        ex[i] = r.local_time;
    });
    return {summarize(v1, ltc.seed), summarize(v2, ltc.seed), summarize(dv, ltc.seed), summarize(ex, ltc.seed)};
}

McEstimate estimate_localtime_expectation(const KappaContext& ctx, const LocalTimeConfig& ltc, double b) {
    return run_localtime_expectation(ctx, ltc, b).primary;
}

McEstimate estimate_excursion_ratio(const KappaContext& ctx, double y, const LocalTimeConfig& ltc) {
    require_nonsimple(ctx, "estimate_excursion_ratio");
    check_ltc(ltc);
    if (!(y > 0.0 && y < 1.0)) throw DomainError("excursion ratio needs y in (0,1)");
    EngineSpec spec;
    spec.kappa = ctx.kappa;
    spec.gap0 = y;
    spec.stop_level = std::pow(y, 0.75);
    spec.resolution_ref = spec.stop_level;
    spec.eta = ltc.resolution;
    spec.log_step = ltc.log_step;
    spec.tol_gap = ltc.tol_gap * y;
    const double norm = std::pow(std::pow(y, 0.25), ctx.boundary_exponent);
    return estimate_mean(ltc.n_samples, ltc.seed, [&](std::uint64_t i) {
        Rng rng = make_rng(ltc.seed, i);
        return run_engine(spec, rng).reached_stop ? 1.0 / norm : 0.0;
    });
}

WaldCheck wald_consistency(const KappaContext& ctx, double y, const LocalTimeConfig& ltc) {
    require_nonsimple(ctx, "wald_consistency");
    check_ltc(ltc);
    if (!(y > 0.0 && y < 1.0)) throw DomainError("wald check needs y in (0,1)");
    const double h = std::pow(y, 0.75);
    EngineSpec spec;
    spec.kappa = ctx.kappa;
    spec.gap0 = y;
    spec.count_levels = {h, ltc.up_level};
    spec.resolution_ref = std::min(h, ltc.up_level);
    spec.eta = ltc.resolution;
    spec.log_step = ltc.log_step;
    spec.tol_gap = ltc.tol_gap * y;
    const double p = ctx.boundary_exponent;
    const double wh = std::pow(h, p), we = std::pow(ltc.up_level, p);
    const std::uint64_t n = ltc.n_samples;
    std::vector<double> a(n), b(n), d(n);
    parallel_for(n, [&](std::uint64_t i) {
        Rng rng = make_rng(ltc.seed, i);
        EngineResult r = run_engine(spec, rng);
        a[i] = wh * r.counts[0];
        b[i] = we * r.counts[1];
        d[i] = a[i] - b[i];
    });
    return {summarize(a, ltc.seed), summarize(b, ltc.seed), summarize(d, ltc.seed)};
}

}  // namespace cleconn
