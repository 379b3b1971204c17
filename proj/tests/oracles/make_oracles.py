"""Regenerates the frozen reference values used by the C++ tests (mpmath, 40 digits)."""
from mpmath import mp, mpf, gamma, loggamma, hyp2f1, quad, ellipk, sqrt, cos, pi, inf, findroot, log

mp.dps = 40


def show(name, v):
    print(f"{name} = {mp.nstr(v, 25)}")


def f_kappa(k, x):
    return hyp2f1(4 / k, 1 - 4 / k, 8 / k, x)


def f_one(k):
    return gamma(8 / k) * gamma(8 / k - 1) / (gamma(4 / k) * gamma(12 / k - 1))


def theta(k):
    return -2 * cos(4 * pi / k)


def Z(k, x):
    return x ** (2 / k) * (1 - x) ** (1 - 6 / k) * f_kappa(k, x)


def H(k, x):
    return Z(k, x) / (Z(k, x) + theta(k) * Z(k, 1 - x))


for x in ["0.001", "0.1", "0.5", "1.5", "2.5", "10", "100", "999.5", "1.000001"]:
    show(f"lgamma({x})", loggamma(mpf(x)))

for k in [mpf(3), mpf(10) / 3, mpf(5), mpf(6), mpf(7)]:
    show(f"f1(k={mp.nstr(k, 8)})", f_one(k))
    show(f"H(k={mp.nstr(k, 8)}, 1e-6)", H(k, mpf("1e-6")))
    show(f"H(k={mp.nstr(k, 8)}, 0.3)", H(k, mpf("0.3")))
    show(f"H(k={mp.nstr(k, 8)}, 1-1e-6)", H(k, 1 - mpf("1e-6")))

show("f(k=6, 0.5)", f_kappa(6, mpf("0.5")))
show("f(k=6, 0.9)", f_kappa(6, mpf("0.9")))
show("2F1(2/3,1/3,4/3; 0.3)", hyp2f1(mpf(2) / 3, mpf(1) / 3, mpf(4) / 3, mpf("0.3")))
show("2F1(0.7,-0.4,1.3; -0.8)", hyp2f1(mpf("0.7"), mpf("-0.4"), mpf("1.3"), mpf("-0.8")))
show("2F1(0.5,1.25,0.75; -3)", hyp2f1(mpf("0.5"), mpf("1.25"), mpf("0.75"), mpf(-3)))
show("2F1(0.3,0.6,1.7; 0.97)", hyp2f1(mpf("0.3"), mpf("0.6"), mpf("1.7"), mpf("0.97")))
show("2F1(1,1,2; 0.999)", hyp2f1(1, 1, 2, mpf("0.999")))

# aspect <-> cross map: L = K(sqrt(1-x)) / K(sqrt(x)), mpmath ellipk takes the parameter m = k^2
def aspect(x):
    return ellipk(1 - x) / ellipk(x)

x2 = findroot(lambda x: aspect(x) - 2, (mpf("1e-6"), mpf("0.5")), solver="anderson")
show("x(L=2)", x2)
# independent quadrature form of the complete elliptic integral
def K_quad(m):
    return quad(lambda t: 1 / sqrt(1 - m * mp.sin(t) ** 2), [0, pi / 2])
show("check L(x(L=2)) by quadrature", K_quad(1 - x2) / K_quad(x2))

def interval_prob(k, left, right):
    # the tail integral is an incomplete Beta function in u = 1/(1+y);
    # plain quad on the y-form loses digits to the endpoint singularity
    s = 4 / k
    u0 = (right - left) / right
    return mp.betainc(2 * s - 1, 1 - s, 0, u0, regularized=True)

show("cardy(6, 0.4) [1,1.4]", interval_prob(mpf(6), mpf(1), mpf("1.4")))
show("interval(6, [0.6,1])", interval_prob(mpf(6), mpf("0.6"), mpf(1)))
show("cardy(5, 0.3) [1,1.3]", interval_prob(mpf(5), mpf(1), mpf("1.3")))
show("interval(5, [0.7,1])", interval_prob(mpf(5), mpf("0.7"), mpf(1)))
show("cardy(7, 1e-4)", interval_prob(mpf(7), mpf(1), 1 + mpf("1e-4")))

def u1(k):
    return gamma(4 / k) / (gamma(2 - 8 / k) * gamma(12 / k - 1))

for k in [mpf(5), mpf(6), mpf(7)]:
    show(f"u1(k={k})", u1(k))

def U(k, x):
    return u1(k) * x ** (-4 / k) * hyp2f1(4 / k, 1, 12 / k, 1 / x) / hyp2f1(4 / k, 1, 12 / k, 1)

show("U(6, 2)", U(mpf(6), 2))
show("U(5, 1.5)", U(mpf(5), mpf("1.5")))
show("U(6,1)-U(6,1+1e-5) / 1e-5^(1/3)", (U(mpf(6), 1) - U(mpf(6), 1 + mpf("1e-5"))) / mpf("1e-5") ** (mpf(1) / 3))

def Q(k, x):
    return x ** (2 / k) * f_kappa(k, x) / f_one(k)

k = mpf(3)
eta = -gamma(8 / k) * gamma(1 - 8 / k) / (gamma(4 / k) * gamma(1 - 4 / k))
eps = mpf("1e-6")
show("Q(3,0.5)", Q(k, mpf("0.5")))
show("(1-Q(3,1-1e-6)) / (eta/f1 eps^p)", (1 - Q(k, 1 - eps)) / (eta / f_one(k) * eps ** (8 / k - 1)))
