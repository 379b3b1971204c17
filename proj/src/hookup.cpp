#include "cleconn/hookup.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <string>

#include "cleconn/errors.hpp"

namespace cleconn {

namespace {

constexpr double kQuadTol = 1e-12;

void require_open_unit(double x, const char* what) {
    if (!(x > 0.0 && x < 1.0)) throw DomainError(std::string(what) + " needs x in (0,1)");
}

void require_nonsimple(const KappaContext& ctx, const char* what) {
    if (!ctx.nonsimple()) throw DomainError(std::string(what) + " needs kappa in (4,8)");
}

void require_simple(const KappaContext& ctx, const char* what) {
    if (ctx.regime != Regime::Simple) throw DomainError(std::string(what) + " needs kappa in (8/3,4)");
}

// Split of F(1-eps)/F(1) = 1 + regular + singular, with
// regular = F(a,b;1-g;eps) - 1 and singular = (B/A) eps^g F(c-a,c-b;1+g;eps).
struct NearOne {
    double regular;
    double singular;
};

NearOne split_near_one(const HypergeometricParams& p, double eps) {
    const double g = p.c - p.a - p.b;
    const BasisPair coef = connection1_coefficients(p);
    HypergeometricParams p1(p.a, p.b, 1.0 - g);
    HypergeometricParams p2(p.c - p.a, p.c - p.b, 1.0 + g);
    double reg = gauss_2f1_minus_one(p1, eps);
    double sing = coef.second / coef.first * std::pow(eps, g) * gauss_2f1(p2, eps);
    return {reg, sing};
}

double log_f(const KappaContext& ctx, double x, double xc) {
    double v = x <= 0.5 ? f_kappa(ctx, x) : f_kappa_complement(ctx, xc);
    if (!(v > 0.0)) throw NumericError("f is not positive at x=" + std::to_string(x));
    return std::log(v);
}

template <class F>
double tanh_sinh_checked(F f, double lo, double hi) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    double err = 0.0, l1 = 0.0;
    double v = integrator.integrate(f, lo, hi, kQuadTol, &err, &l1);
    if (!std::isfinite(v) || err > 1e-10 * std::max(1.0, l1))
        throw NumericError("quadrature missed its tolerance (error estimate " + std::to_string(err) + ")");
    return v;
}

// Integral of u^{2s-2} (1-u)^{-s} over [0, upper], with one_minus_upper = 1 - upper
// supplied separately.  This is the hitting integral after y = t/(1-t), u = 1-t.
// With v = u^{2s-1} the singularity at u = 0 disappears:
//   (1/(2s-1)) * integral over [0, upper^{2s-1}] of (1 - v^m)^{-s}, m = 1/(2s-1).
double hit_integral(double s, double upper, double one_minus_upper) {
    const double g = 2.0 * s - 1.0;
    const double m = 1.0 / g;
    const double vmax = std::pow(upper, g);
    auto f = [&](double v, double vc) {
        double one_minus;
        if (vc > 0.0)
            one_minus = one_minus_upper - upper * std::expm1(m * std::log1p(-vc / vmax));
        else
            one_minus = -std::expm1(m * std::log(v));
        return std::pow(one_minus, -s);
    };
    return tanh_sinh_checked(f, 0.0, vmax) / g;
}

}  // namespace

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Simple: return "simple";
        case Regime::Four: return "four";
        case Regime::NonSimple: return "nonsimple";
    }
    return "?";
}

KappaContext make_context(double kappa) {
    if (!(kappa > 8.0 / 3.0 && kappa < 8.0))
        throw DomainError("kappa must lie in (8/3, 8), got " + std::to_string(kappa));
    KappaContext ctx;
    ctx.kappa = kappa;
    ctx.theta = -2.0 * std::cos(4.0 * M_PI / kappa);
    ctx.eta = 1.0 / ctx.theta;
    ctx.alpha = (6.0 - kappa) / (2.0 * kappa);
    ctx.bessel_dim = 3.0 - 8.0 / kappa;
    ctx.boundary_exponent = 8.0 / kappa - 1.0;
    if (kappa < 4.0)
        ctx.regime = Regime::Simple;
    else if (kappa == 4.0)
        ctx.regime = Regime::Four;
    else
        ctx.regime = Regime::NonSimple;
    return ctx;
}

HypergeometricParams f_params(const KappaContext& ctx) {
    const double k = ctx.kappa;
    return HypergeometricParams(4.0 / k, 1.0 - 4.0 / k, 8.0 / k);
}

double f_at_one(const KappaContext& ctx) {
    const double k = ctx.kappa;
    return gamma_ratio({8.0 / k, 8.0 / k - 1.0}, {4.0 / k, 12.0 / k - 1.0});
}

double f_kappa(const KappaContext& ctx, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("f needs x in [0,1]");
    if (x == 1.0) return f_at_one(ctx);
    if (x > 0.5) return f_kappa_complement(ctx, 1.0 - x);
    return gauss_2f1(f_params(ctx), x);
}

double f_kappa_complement(const KappaContext& ctx, double eps) {
    if (!(eps >= 0.0 && eps <= 1.0)) throw DomainError("f complement needs eps in [0,1]");
    if (eps == 0.0) return f_at_one(ctx);
    return gauss_2f1_complement(f_params(ctx), eps);
}

double log_partition_Z(const KappaContext& ctx, double x, double xc) {
    const double k = ctx.kappa;
    return (2.0 / k) * std::log(x) + (1.0 - 6.0 / k) * std::log(xc) + log_f(ctx, x, xc);
}

PartitionValue partition_Z(const KappaContext& ctx, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("Z needs x in [0,1]");
    if (x == 0.0) return {0.0, LimitKind::Limit};
    if (x == 1.0) {
        if (ctx.kappa > 6.0) return {std::numeric_limits<double>::infinity(), LimitKind::Divergent};
        if (ctx.kappa < 6.0) return {0.0, LimitKind::Limit};
        return {f_at_one(ctx), LimitKind::Limit};
    }
    return {std::exp(log_partition_Z(ctx, x, 1.0 - x)), LimitKind::Value};
}

HookupEvaluation hookup_probability(const KappaContext& ctx, double x) {
    require_open_unit(x, "hookup_probability");
    const double xc = 1.0 - x;
    const double lz = log_partition_Z(ctx, x, xc);
    const double lm = log_partition_Z(ctx, xc, x);
    HookupEvaluation ev;
    ev.x = x;
    ev.z_x = std::exp(lz);
    ev.z_mirror = std::exp(lm);
    // H = 1 / (1 + theta Z(1-x)/Z(x)) in log form; survives Z under/overflow.
    ev.h = 1.0 / (1.0 + ctx.theta * std::exp(lm - lz));
    return ev;
}

double cross_to_aspect(double x) {
    require_open_unit(x, "cross_to_aspect");
    return agm(1.0, std::sqrt(1.0 - x)) / agm(1.0, std::sqrt(x));
}

double aspect_to_cross(double aspect) {
    if (!(aspect > 0.0) || !std::isfinite(aspect)) throw DomainError("aspect ratio must be positive and finite");
    if (aspect == 1.0) return 0.5;
    if (aspect < 1.0) return 1.0 - aspect_to_cross(1.0 / aspect);
    // Work with u = 1 - k so that tall rectangles (k -> 1) keep full precision.
    auto aspect_of = [](double u) {
        double k = 1.0 - u;
        double kp = std::sqrt(u * (2.0 - u));
        return 2.0 * agm(1.0, k) / agm(1.0, kp);
    };
    double lo = 1e-300;
    double hi = 2.0 * std::sqrt(2.0) - 2.0;  // k = 3 - 2 sqrt 2 gives x = 1/2
    if (aspect_of(lo) < aspect) throw DomainError("aspect ratio too large to represent");
    for (int it = 0; it < 200; ++it) {
        double mid = hi / lo > 4.0 ? std::sqrt(hi * lo) : 0.5 * (hi + lo);
        if (mid <= lo || mid >= hi) {
            double u = 0.5 * (hi + lo);
            double r = u / (2.0 - u);
            return r * r;
        }
        if (aspect_of(mid) > aspect)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-17 * hi) {
            double u = 0.5 * (hi + lo);
            double r = u / (2.0 - u);
            return r * r;
        }
    }
    throw NumericError("aspect_to_cross bisection did not converge");
}

ModelRelation relate_models(const KappaContext& ctx) {
    ModelRelation r;
    r.loop_weight = ctx.theta;
    if (ctx.kappa >= 4.0) r.cluster_weight = ctx.theta * ctx.theta;
    const double k = ctx.kappa;
    r.central_charge = (6.0 - k) * (3.0 * k - 8.0) / (2.0 * k);
    return r;
}

double cardy_denominator(const KappaContext& ctx) {
    require_nonsimple(ctx, "cardy_denominator");
    const double s = 4.0 / ctx.kappa;
    return gamma_ratio({1.0 - s, 2.0 * s - 1.0}, {s});
}

double cardy_denominator_quadrature(const KappaContext& ctx) {
    require_nonsimple(ctx, "cardy_denominator_quadrature");
    return hit_integral(4.0 / ctx.kappa, 1.0, 0.0);
}

double interval_hit_probability(const KappaContext& ctx, double left, double right) {
    require_nonsimple(ctx, "interval_hit_probability");
    if (!(left > 0.0 && right > left && std::isfinite(right)))
        throw DomainError("interval must satisfy 0 < left < right");
    const double upper = (right - left) / right;
    const double p = hit_integral(4.0 / ctx.kappa, upper, left / right) / cardy_denominator(ctx);
    return std::min(1.0, std::max(0.0, p));
}

double cardy_hit_probability(const KappaContext& ctx, double eps) {
    require_nonsimple(ctx, "cardy_hit_probability");
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("cardy_hit_probability needs eps in (0,1)");
    return interval_hit_probability(ctx, 1.0, 1.0 + eps);
}

double cardy_small_interval_constant(const KappaContext& ctx) {
    require_nonsimple(ctx, "cardy_small_interval_constant");
    const double s = 4.0 / ctx.kappa;
    return gamma_ratio({s}, {1.0 - s, 2.0 * s});
}

double localtime_expectation(const KappaContext& ctx) {
    require_nonsimple(ctx, "localtime_expectation");
    const double k = ctx.kappa;
    const double lemma = gamma_ratio({4.0 / k}, {2.0 - 8.0 / k, 12.0 / k - 1.0});
    const double u1 = -gamma_ratio({8.0 / k - 1.0, 4.0 / k}, {8.0 / k, 12.0 / k - 1.0, 1.0 - 8.0 / k});
    if (std::fabs(lemma - u1) > 1e-10 * std::fabs(lemma))
        throw NumericError("the two forms of the local-time constant disagree");
    return lemma;
}

namespace {

HypergeometricParams u_params(const KappaContext& ctx) {
    const double k = ctx.kappa;
    return HypergeometricParams(4.0 / k, 1.0, 12.0 / k);
}

}  // namespace

double bessel_value_function_U(const KappaContext& ctx, double x) {
    require_nonsimple(ctx, "bessel_value_function_U");
    if (!(x >= 1.0) || !std::isfinite(x)) throw DomainError("U needs finite x >= 1");
    const double u1 = localtime_expectation(ctx);
    if (x == 1.0) return u1;
    const HypergeometricParams p = u_params(ctx);
    const double at_one = gauss_2f1_at_one(p);
    const double eps = (x - 1.0) / x;
    const double F = eps < 0.5 ? gauss_2f1_complement(p, eps) : gauss_2f1(p, 1.0 / x);
    return u1 * std::pow(x, -p.a) * F / at_one;
}

double bessel_value_drop(const KappaContext& ctx, double h) {
    require_nonsimple(ctx, "bessel_value_drop");
    if (!(h >= 0.0)) throw DomainError("bessel_value_drop needs h >= 0");
    if (h == 0.0) return 0.0;
    const double u1 = localtime_expectation(ctx);
    const HypergeometricParams p = u_params(ctx);
    const double eps = h / (1.0 + h);
    if (eps >= 0.25) return u1 - bessel_value_function_U(ctx, 1.0 + h);
    const NearOne n = split_near_one(p, eps);
    const double reg = -std::expm1(-p.a * std::log1p(h) + std::log1p(n.regular));
    return u1 * (reg - std::pow(1.0 + h, -p.a) * n.singular);
}

double u_ode_residual(const KappaContext& ctx, double x, double h) {
    if (!(x - h > 1.0)) throw DomainError("U residual needs x - h > 1");
    const double k = ctx.kappa;
    const double um = bessel_value_function_U(ctx, x - h);
    const double u0 = bessel_value_function_U(ctx, x);
    const double up = bessel_value_function_U(ctx, x + h);
    const double d1 = (up - um) / (2.0 * h);
    const double d2 = (up - 2.0 * u0 + um) / (h * h);
    const double t2 = (1.0 - x) * x * d2;
    const double t1 = (4.0 / k + (4.0 / k - 2.0) * x) * d1;
    const double t0 = (4.0 / k) * (8.0 / k - 1.0) * u0;
    const double scale = std::fabs(t2) + std::fabs(t1) + std::fabs(t0);
    return std::fabs(t2 + t1 + t0) / scale;
}

double avoid_probability_Q(const KappaContext& ctx, double x) {
    require_simple(ctx, "avoid_probability_Q");
    if (!(x > 0.0 && x <= 1.0)) throw DomainError("Q needs x in (0,1]");
    if (x == 1.0) return 1.0;
    const double lq = (2.0 / ctx.kappa) * std::log(x) + log_f(ctx, x, 1.0 - x) - std::log(f_at_one(ctx));
    return std::exp(lq);
}

double c_event_probability(const KappaContext& ctx, double eps) {
    require_simple(ctx, "c_event_probability");
    if (!(eps >= 0.0 && eps < 1.0)) throw DomainError("c_event_probability needs eps in [0,1)");
    if (eps == 0.0) return 0.0;
    if (eps > 0.25) return 1.0 - avoid_probability_Q(ctx, 1.0 - eps);
    const NearOne n = split_near_one(f_params(ctx), eps);
    const double e = 2.0 / ctx.kappa;
    const double reg = -std::expm1(e * std::log1p(-eps) + std::log1p(n.regular));
    return reg - std::pow(1.0 - eps, e) * n.singular;
}

double q_ode_residual(const KappaContext& ctx, double x, double h) {
    require_open_unit(x, "q_ode_residual");
    const double k = ctx.kappa;
    const double qm = avoid_probability_Q(ctx, x - h);
    const double q0 = avoid_probability_Q(ctx, x);
    const double qp = avoid_probability_Q(ctx, x + h);
    const double d1 = (qp - qm) / (2.0 * h);
    const double d2 = (qp - 2.0 * q0 + qm) / (h * h);
    const double t2 = 0.5 * k * x * x * (x - 1.0) * d2;
    const double t1 = ((k - 2.0) * x - 2.0) * x * d1;
    const double t0 = -2.0 * ctx.alpha * (x - 1.0) * q0;
    const double scale = std::fabs(t2) + std::fabs(t1) + std::fabs(t0);
    return std::fabs(t2 + t1 + t0) / scale;
}

double inverse_theta_from_fone(const KappaContext& ctx) {
    require_nonsimple(ctx, "inverse_theta_from_fone");
    const double k = ctx.kappa;
    return f_at_one(ctx) * gamma_ratio({2.0 - 8.0 / k, 12.0 / k - 1.0}, {1.0 - 4.0 / k, 8.0 / k});
}

double eta_from_gamma(const KappaContext& ctx) {
    require_simple(ctx, "eta_from_gamma");
    const double k = ctx.kappa;
    return -gamma_ratio({8.0 / k, 1.0 - 8.0 / k}, {4.0 / k, 1.0 - 4.0 / k});
}

}  // namespace cleconn
