#include "cleconn/specialfn.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

#include <cmath>
#include <limits>
#include <string>

#include "cleconn/errors.hpp"

namespace cleconn {

namespace {

constexpr double kPoleTol = 1e-9;
constexpr long double kSeriesRelTol = 1e-17L;
constexpr int kMaxTerms = 100000;
// Below this distance of c-a-b from an integer the two-term expansion about
// 1 cancels badly and we prefer the direct series.
constexpr double kIntegerGap = 1e-4;

double integer_distance(double v) { return std::fabs(v - std::nearbyint(v)); }

bool nonpositive_integer(double v) { return v <= 0.5 && integer_distance(v) < kPoleTol; }

long double series(double a, double b, double c, double x, bool drop_leading) {
    long double sum = drop_leading ? 0.0L : 1.0L;
    long double term = 1.0L;
    const long double la = a, lb = b, lc = c, lx = x;
    for (int n = 0; n < kMaxTerms; ++n) {
        term *= (la + n) * (lb + n) / ((lc + n) * (n + 1)) * lx;
        sum += term;
        if (term == 0.0L) return sum;
        long double scale = std::fabs(sum) + (drop_leading ? 1.0L : 0.0L);
        if (std::fabs(term) < kSeriesRelTol * scale) {
            // Only stop once the term ratio has settled below one, otherwise a
            // small early term can hide a growing tail.
            long double ratio = std::fabs((la + n + 1) * (lb + n + 1) / ((lc + n + 1) * (n + 2)) * lx);
            if (ratio < 1.0L) return sum;
        }
    }
    throw AccuracyLossError("2F1 series did not converge within 1e5 terms (a=" + std::to_string(a) +
                            ", b=" + std::to_string(b) + ", c=" + std::to_string(c) +
                            ", x=" + std::to_string(x) + ")");
}

double connection_about_one(const HypergeometricParams& p, double eps) {
    const double a = p.a, b = p.b, c = p.c;
    const double g = c - a - b;
    const BasisPair coef = connection1_coefficients(p);
    double f1 = static_cast<double>(series(a, b, 1.0 - g, eps, false));
    double f2 = 0.0;
    if (coef.second != 0.0)
        f2 = std::pow(eps, g) * static_cast<double>(series(c - a, c - b, 1.0 + g, eps, false));
    return coef.first * f1 + coef.second * f2;
}

}  // namespace

HypergeometricParams::HypergeometricParams(double a_, double b_, double c_) : a(a_), b(b_), c(c_) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
        throw ParameterError("hypergeometric parameters must be finite");
    if (nonpositive_integer(c))
        throw ParameterError("2F1 third parameter is a non-positive integer: c=" + std::to_string(c));
}

bool near_gamma_pole(double x) { return nonpositive_integer(x); }

double log_gamma(double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw DomainError("log_gamma needs a positive finite argument, got " + std::to_string(x));
    return boost::math::lgamma(x);
}

SignedLog log_gamma_signed(double x) {
    if (!std::isfinite(x)) throw DomainError("log_gamma_signed: non-finite argument");
    if (near_gamma_pole(x)) throw ParameterError("Gamma pole at " + std::to_string(x));
    if (x > 0.0) return {boost::math::lgamma(x), 1};
    // Gamma(x) Gamma(1-x) = pi / sin(pi x)
    double s = boost::math::sin_pi(x);
    double la = std::log(M_PI) - std::log(std::fabs(s)) - boost::math::lgamma(1.0 - x);
    return {la, s > 0.0 ? 1 : -1};
}

double gamma_ratio(std::initializer_list<double> num, std::initializer_list<double> den) {
    double log_sum = 0.0;
    int sign = 1;
    for (double z : num) {
        if (near_gamma_pole(z))
            throw ParameterError("Gamma pole in numerator at " + std::to_string(z));
        SignedLog s = log_gamma_signed(z);
        log_sum += s.log_abs;
        sign *= s.sign;
    }
    for (double z : den) {
        if (near_gamma_pole(z)) return 0.0;
        SignedLog s = log_gamma_signed(z);
        log_sum -= s.log_abs;
        sign *= s.sign;
    }
    return sign * std::exp(log_sum);
}

double gauss_2f1_at_one(const HypergeometricParams& p) {
    if (!p.convergent_at_one())
        throw DivergenceError("2F1 at 1 diverges unless c > a + b");
    if (p.a == 0.0 || p.b == 0.0) return 1.0;
    return gamma_ratio({p.c, p.c - p.a - p.b}, {p.c - p.a, p.c - p.b});
}

double gauss_2f1_minus_one(const HypergeometricParams& p, double x) {
    if (!(std::fabs(x) <= 0.5)) throw DomainError("gauss_2f1_minus_one needs |x| <= 1/2");
    if (p.a == 0.0 || p.b == 0.0 || x == 0.0) return 0.0;
    return static_cast<double>(series(p.a, p.b, p.c, x, true));
}

double gauss_2f1_complement(const HypergeometricParams& p, double eps) {
    if (!std::isfinite(eps) || eps < 0.0)
        throw DomainError("gauss_2f1_complement needs eps >= 0");
    if (eps == 0.0) return gauss_2f1_at_one(p);
    if (eps >= 0.5) return gauss_2f1(p, 1.0 - eps);
    if (p.a == 0.0 || p.b == 0.0) return 1.0;
    const double gap = integer_distance(p.c - p.a - p.b);
    if (gap >= kIntegerGap || (gap >= kPoleTol && eps < 5e-3)) return connection_about_one(p, eps);
    return static_cast<double>(series(p.a, p.b, p.c, 1.0 - eps, false));
}

double gauss_2f1(const HypergeometricParams& p, double x) {
    if (!std::isfinite(x)) throw DomainError("gauss_2f1: non-finite argument");
    if (x >= 1.0) {
        if (x == 1.0 && p.convergent_at_one()) return gauss_2f1_at_one(p);
        throw DomainError("gauss_2f1: x >= 1 outside the convergent range (x=" + std::to_string(x) + ")");
    }
    if (x == 0.0 || p.a == 0.0 || p.b == 0.0) return 1.0;
    if (x < -0.5) {
        // Pfaff: F(a,b;c;x) = (1-x)^{-a} F(a, c-b; c; x/(x-1))
        HypergeometricParams q(p.a, p.c - p.b, p.c);
        return std::pow(1.0 - x, -p.a) * gauss_2f1(q, x / (x - 1.0));
    }
    if (x <= 0.5) return static_cast<double>(series(p.a, p.b, p.c, x, false));
    return gauss_2f1_complement(p, 1.0 - x);
}

BasisPair connection1_coefficients(const HypergeometricParams& p) {
    const double g = p.c - p.a - p.b;
    if (nonpositive_integer(1.0 - g) || nonpositive_integer(1.0 + g))
        throw ParameterError("connection formula degenerates: c-a-b is an integer");
    double A = gamma_ratio({p.c, g}, {p.c - p.a, p.c - p.b});
    double B = gamma_ratio({p.c, -g}, {p.a, p.b});
    return {A, B};
}

BasisPair basis_about_one(const HypergeometricParams& p, double x) {
    if (!(x > 0.0 && x < 1.0)) throw DomainError("basis_about_one needs x in (0,1)");
    const double g = p.c - p.a - p.b;
    if (nonpositive_integer(1.0 - g) || nonpositive_integer(1.0 + g))
        throw ParameterError("basis about 1 degenerates: c-a-b is an integer");
    const double y = 1.0 - x;
    HypergeometricParams q1(p.a, p.b, 1.0 - g);
    HypergeometricParams q2(p.c - p.a, p.c - p.b, 1.0 + g);
    return {gauss_2f1(q1, y), std::pow(y, g) * gauss_2f1(q2, y)};
}

double h1_about_infinity(const HypergeometricParams& p, double x) {
    if (!(x > 1.0)) throw DomainError("h1 needs x > 1");
    HypergeometricParams q(p.a, 1.0 + p.a - p.c, 1.0 + p.a - p.b);
    return std::pow(x, -p.a) * gauss_2f1(q, 1.0 / x);
}

BasisPair basis_about_infinity(const HypergeometricParams& p, double x) {
    if (!(x > 1.0)) throw DomainError("basis_about_infinity needs x > 1");
    if (integer_distance(p.a - p.b) < kPoleTol)
        throw ParameterError("basis about infinity degenerates: a-b is an integer");
    HypergeometricParams q2(p.b, 1.0 + p.b - p.c, 1.0 + p.b - p.a);
    return {h1_about_infinity(p, x), std::pow(x, -p.b) * gauss_2f1(q2, 1.0 / x)};
}

BasisPair basis_right_of_one(const HypergeometricParams& p, double x) {
    if (!(x > 1.0)) throw DomainError("basis_right_of_one needs x > 1");
    const double g = p.c - p.a - p.b;
    if (nonpositive_integer(1.0 - g) || nonpositive_integer(1.0 + g))
        throw ParameterError("basis right of 1 degenerates: c-a-b is an integer");
    HypergeometricParams q1(p.a, p.b, 1.0 - g);
    HypergeometricParams q2(p.c - p.a, p.c - p.b, 1.0 + g);
    const double y = 1.0 - x;
    return {gauss_2f1(q1, y), std::pow(x - 1.0, g) * gauss_2f1(q2, y)};
}

BasisPair connection2_coefficients(const HypergeometricParams& p) {
    const double a = p.a, b = p.b, c = p.c;
    double first = gamma_ratio({a - b + 1.0, c - a - b}, {1.0 - b, c - b});
    double second = gamma_ratio({a - b + 1.0, a + b - c}, {a, a - c + 1.0});
    return {first, second};
}

double hypergeometric_ode_residual(const HypergeometricParams& p,
                                   const std::function<double(double)>& y, double x, double h) {
    const double ym = y(x - h), y0 = y(x), yp = y(x + h);
    const double d1 = (yp - ym) / (2.0 * h);
    const double d2 = (yp - 2.0 * y0 + ym) / (h * h);
    const double t2 = x * (1.0 - x) * d2;
    const double t1 = (p.c - (p.a + p.b + 1.0) * x) * d1;
    const double t0 = -p.a * p.b * y0;
    const double scale = std::fabs(t2) + std::fabs(t1) + std::fabs(t0);
    const double r = t2 + t1 + t0;
    return scale > 0.0 ? std::fabs(r) / scale : std::fabs(r);
}

double agm(double a, double b) {
    if (!(a >= 0.0 && b >= 0.0)) throw DomainError("agm needs non-negative arguments");
    for (int i = 0; i < 64; ++i) {
        if (std::fabs(a - b) <= 4.0 * std::numeric_limits<double>::epsilon() * a) break;
        double m = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = m;
    }
    return 0.5 * (a + b);
}

double elliptic_hypergeometric(double m) {
    if (!(m < 1.0)) throw DomainError("elliptic_hypergeometric needs m < 1");
    return 1.0 / agm(1.0, std::sqrt(1.0 - m));
}

}  // namespace cleconn
