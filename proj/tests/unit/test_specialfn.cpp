#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cleconn/errors.hpp"
#include "cleconn/specialfn.hpp"

using namespace cleconn;

// reference values: tests/oracles/make_oracles.py (mpmath, 40 digits)

TEST_CASE("log_gamma against reference values") {
    const std::pair<double, double> refs[] = {
        {0.001, 6.907178885383853682512345}, {0.1, 2.252712651734205959869702},
        {0.5, 0.5723649429247000870717137},  {1.5, -0.1207822376352452223455184},
        {2.5, 0.2846828704729191596324947},  {10.0, 12.80182748008146961120772},
        {100.0, 359.134205369575398776044},  {999.5, 5901.76692069473703392974},
    };
    for (auto [x, want] : refs) CHECK(log_gamma(x) == doctest::Approx(want).epsilon(1e-14));
    CHECK(log_gamma(1.000001) == doctest::Approx(-0.0000005772148424349001218570998).epsilon(1e-9));
    CHECK_THROWS_AS(log_gamma(-0.5), DomainError);
}

TEST_CASE("signed log gamma on the negative axis") {
    const SignedLog g = log_gamma_signed(-0.5);  // Gamma(-1/2) = -2 sqrt(pi)
    CHECK(g.sign == -1);
    CHECK(std::exp(g.log_abs) == doctest::Approx(2.0 * std::sqrt(M_PI)).epsilon(1e-14));
    CHECK_THROWS_AS(log_gamma_signed(-2.0), ParameterError);
}

TEST_CASE("gamma ratio: denominator pole gives zero, numerator pole throws") {
    CHECK(gamma_ratio({5.0}, {4.0}) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(gamma_ratio({1.5}, {-1.0}) == 0.0);
    CHECK_THROWS_AS(gamma_ratio({0.0}, {1.0}), ParameterError);
}

TEST_CASE("2F1 at interior points") {
    CHECK(gauss_2f1({2.0 / 3, 1.0 / 3, 4.0 / 3}, 0.3) == doctest::Approx(1.058842786452882643051359).epsilon(1e-13));
    CHECK(gauss_2f1({0.7, -0.4, 1.3}, -0.8) == doctest::Approx(1.149218635927139908389556).epsilon(1e-13));
    CHECK(gauss_2f1({0.5, 1.25, 0.75}, -3.0) == doctest::Approx(0.3416007045676247237385113).epsilon(1e-13));
    CHECK(gauss_2f1({0.3, 0.6, 1.7}, 0.97) == doctest::Approx(1.21531951484379351272242).epsilon(1e-13));
    CHECK(gauss_2f1({1.0, 1.0, 2.0}, 0.999) == doctest::Approx(6.914669948931068120174149).epsilon(1e-12));
}

TEST_CASE("2F1 closed forms") {
    // F(1,1;2;x) = -log(1-x)/x
    for (double x : {-5.0, -0.3, 0.2, 0.6, 0.95})
        CHECK(gauss_2f1({1, 1, 2}, x) == doctest::Approx(-std::log1p(-x) / x).epsilon(1e-13));
    // Gauss sum at 1
    const HypergeometricParams p(0.3, 0.6, 1.7);
    const double gauss = std::tgamma(1.7) * std::tgamma(0.8) / (std::tgamma(1.4) * std::tgamma(1.1));
    CHECK(gauss_2f1_at_one(p) == doctest::Approx(gauss).epsilon(1e-13));
    CHECK_THROWS_AS(gauss_2f1_at_one({1, 1, 1.5}), DivergenceError);
}

TEST_CASE("complement form keeps the digits near 1") {
    const HypergeometricParams p(0.3, 0.6, 1.7);
    CHECK(gauss_2f1_complement(p, 0.03) == doctest::Approx(gauss_2f1(p, 0.97)).epsilon(1e-13));
    CHECK(gauss_2f1_complement(p, 0.0) == doctest::Approx(gauss_2f1_at_one(p)).epsilon(1e-14));
}

TEST_CASE("minus-one series matches the full value") {
    const HypergeometricParams p(0.7, -0.4, 1.3);
    for (double x : {-0.5, -1e-3, 1e-8, 0.4})
        CHECK(gauss_2f1_minus_one(p, x) == doctest::Approx(gauss_2f1(p, x) - 1.0).epsilon(1e-12));
    CHECK_THROWS_AS(gauss_2f1_minus_one(p, 0.7), DomainError);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(HypergeometricParams(0.5, 0.5, -2.0), ParameterError);
    CHECK_THROWS_AS(HypergeometricParams(0.5, NAN, 1.0), ParameterError);
    CHECK_THROWS_AS(gauss_2f1({0.5, 0.5, 1.5}, 1.5), DomainError);
    CHECK_THROWS_AS(basis_about_one({0.5, 0.5, 2.0}, 0.5), ParameterError);
}

TEST_CASE("connection about 1 reproduces F") {
    const HypergeometricParams p(0.8, 0.2, 1.6);
    const BasisPair coef = connection1_coefficients(p);
    for (double x : {0.1, 0.5, 0.9, 0.999}) {
        const BasisPair basis = basis_about_one(p, x);
        CHECK(coef.first * basis.first + coef.second * basis.second == doctest::Approx(gauss_2f1(p, x)).epsilon(1e-12));
    }
}

TEST_CASE("basis about infinity solves the equation") {
    const HypergeometricParams p(0.8, -0.6, 0.8);
    for (double x : {1.5, 3.0, 20.0}) {
        auto h1 = [&](double t) { return h1_about_infinity(p, t); };
        auto h2 = [&](double t) { return basis_about_infinity(p, t).second; };
        CHECK(hypergeometric_ode_residual(p, h1, x, 1e-4 * x) < 1e-6);
        CHECK(hypergeometric_ode_residual(p, h2, x, 1e-4 * x) < 1e-6);
        CHECK(basis_about_infinity(p, x).first == doctest::Approx(h1_about_infinity(p, x)).epsilon(1e-14));
    }
}

TEST_CASE("connection right of 1 reproduces h1") {
    const HypergeometricParams p(2.0 / 3, -1.0 / 3, 2.0 / 3);
    const BasisPair coef = connection2_coefficients(p);
    for (double x : {1.01, 1.5, 4.0}) {
        const BasisPair basis = basis_right_of_one(p, x);
        CHECK(coef.first * basis.first + coef.second * basis.second ==
              doctest::Approx(h1_about_infinity(p, x)).epsilon(1e-11));
    }
}

TEST_CASE("agm and the elliptic special case") {
    CHECK(agm(1.0, std::sqrt(2.0)) == doctest::Approx(1.198140234735592207).epsilon(1e-15));
    for (double m : {0.0, 0.3, 0.9})
        CHECK(elliptic_hypergeometric(m) == doctest::Approx(gauss_2f1({0.5, 0.5, 1.0}, m)).epsilon(1e-13));
}

TEST_CASE("trivial values") {
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::fabs(log_gamma(2.0)) < 1e-15);
    CHECK(log_gamma(0.5) == doctest::Approx(std::log(std::sqrt(M_PI))).epsilon(1e-15));
    CHECK(gauss_2f1({0.7, -0.4, 1.3}, 0.0) == 1.0);
    for (double x : {-2.0, 0.3, 0.9}) CHECK(gauss_2f1({0.0, 0.4, 1.3}, x) == 1.0);
    CHECK(gauss_2f1_at_one({0.6, 0.0, 1.3}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gauss_2f1({1, 1, 2}, 0.5) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
    CHECK(gauss_2f1_at_one({2.0 / 3, 1.0 / 3, 4.0 / 3}) == doctest::Approx(1.766638750285449957313689).epsilon(1e-14));
}

TEST_CASE("value just below 1 for c - a - b = 1/3") {
    // the gap to F(1) is -0.0099994161... (40-digit reference), i.e. of order eps^{1/3}
    const HypergeometricParams p(2.0 / 3, 1.0 / 3, 4.0 / 3);
    const double gap = gauss_2f1_complement(p, 1e-6) - gauss_2f1_at_one(p);
    CHECK(gap == doctest::Approx(-0.00999941612002755625381192).epsilon(1e-9));
}

// Kept as a record: with c - a - b = 1/3 the distance to F(1) at 1 - 1e-6 is
// 1e-2, so agreement to 1e-5 holds only for c - a - b >= 5/6 or so.
TEST_CASE("2F1 at 1 - 1e-6 within 1e-5 of F(1) for c - a - b = 1/3" * doctest::should_fail()) {
    const HypergeometricParams p(2.0 / 3, 1.0 / 3, 4.0 / 3);
    CHECK(std::fabs(gauss_2f1(p, 1.0 - 1e-6) - gauss_2f1_at_one(p)) < 1e-5);
}

TEST_CASE("basis about 1 at its ends") {
    const HypergeometricParams p(0.8, 0.2, 1.6);
    const BasisPair near = basis_about_one(p, 1.0 - 1e-13);
    CHECK(near.first == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::fabs(near.second) < 1e-7);
    // k = 3: f2 ~ (1-x)^{5/3}
    const HypergeometricParams f3(4.0 / 3, -1.0 / 3, 8.0 / 3);
    for (double e : {1e-4, 1e-6}) CHECK(basis_about_one(f3, 1.0 - e).second / std::pow(e, 5.0 / 3.0) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("connection about 1 against the plain series at 0.3") {
    const HypergeometricParams p(2.0 / 3, 1.0 / 3, 4.0 / 3);
    long double term = 1.0L, sum = 1.0L;
    for (int k = 0; k < 200; ++k) {
        term *= (p.a + k) * (p.b + k) / ((p.c + k) * (k + 1)) * 0.3L;
        sum += term;
    }
    const BasisPair coef = connection1_coefficients(p);
    const BasisPair basis = basis_about_one(p, 0.3);
    CHECK(std::fabs(coef.first * basis.first + coef.second * basis.second - static_cast<double>(sum)) < 1e-10);
}

TEST_CASE("behaviour at infinity") {
    const HypergeometricParams p(2.0 / 3, -1.0 / 3, 2.0 / 3);
    CHECK(h1_about_infinity(p, 1e8) < 1e-5);
    const HypergeometricParams q(0.8, 0.3, 1.4);
    CHECK(basis_about_infinity(q, 1e9).second * std::pow(1e9, q.b) == doctest::Approx(1.0).epsilon(1e-8));
}
