#pragma once

#include <functional>
#include <initializer_list>

namespace cleconn {

struct HypergeometricParams {
    double a = 0.0;
    double b = 0.0;
    double c = 1.0;

    HypergeometricParams() = default;
    // Throws ParameterError when c is a non-positive integer.
    HypergeometricParams(double a_, double b_, double c_);

    bool convergent_at_one() const { return c > a + b; }
};

struct SignedLog {
    double log_abs;
    int sign;
};

double log_gamma(double x);

// log|Gamma(x)| and sign for any real x away from the poles; negative
// arguments go through the reflection formula.
SignedLog log_gamma_signed(double x);

// Product of Gamma(num[i]) over product of Gamma(den[j]).  A pole in the
// denominator makes the ratio vanish; a pole in the numerator throws.
double gamma_ratio(std::initializer_list<double> num, std::initializer_list<double> den);

bool near_gamma_pole(double x);

// 2F1(a,b;c;x) for x < 1 (and x = 1 when convergent).
double gauss_2f1(const HypergeometricParams& p, double x);

// 2F1(a,b;c;1-eps), evaluated from the small parameter eps so that no
// precision is lost forming 1-eps.
double gauss_2f1_complement(const HypergeometricParams& p, double eps);

// 2F1 - 1 by direct series, for |x| <= 1/2.
double gauss_2f1_minus_one(const HypergeometricParams& p, double x);

double gauss_2f1_at_one(const HypergeometricParams& p);

struct BasisPair {
    double first;
    double second;
};

// (f1, f2) about x = 1.
BasisPair basis_about_one(const HypergeometricParams& p, double x);

// (A, B) with F = A f1 + B f2.
BasisPair connection1_coefficients(const HypergeometricParams& p);

// (h1, h2) about infinity, x > 1.
BasisPair basis_about_infinity(const HypergeometricParams& p, double x);

// h1 alone; only needs 1+a-b to avoid the non-positive integers.
double h1_about_infinity(const HypergeometricParams& p, double x);

// f1 and the x > 1 companion (x-1)^{c-a-b} F(c-a, c-b, 1+c-a-b; 1-x).
BasisPair basis_right_of_one(const HypergeometricParams& p, double x);

// Coefficients of h1 in terms of (f1, f2~) on x > 1.
BasisPair connection2_coefficients(const HypergeometricParams& p);

// Relative residual of x(1-x)y'' + (c-(a+b+1)x)y' - ab y with central
// differences of step h.
double hypergeometric_ode_residual(const HypergeometricParams& p,
                                   const std::function<double(double)>& y, double x,
                                   double h = 1e-4);

double agm(double a, double b);

// 2F1(1/2,1/2;1;m) = 1/agm(1, sqrt(1-m)).
double elliptic_hypergeometric(double m);

}  // namespace cleconn
