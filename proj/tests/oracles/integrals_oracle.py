"""Reference values for window Mellin transforms, a plain oscillatory integral,
and I_g / C_U at small scale (mpmath quadrature, 30 digits)."""
from mpmath import mp, mpf, exp, quad, besselj, pi, sqrt, expj, linspace, gamma, sinh

mp.dps = 30


def U(x):
    # canonical bump exp(-1/(1-t^2)) on (1, 2), t = 2x - 3
    t = 2 * x - 3
    if abs(t) >= 1:
        return mpf(0)
    return exp(-1 / (1 - t * t))


def mellin(s):
    return quad(lambda x: U(x) * x ** (s - 1), linspace(1, 2, 9))


def jg(kernel, y):
    kind, par = kernel
    if kind == "holo":
        return 2 * pi * (1 if par % 4 == 0 else -1) * besselj(par - 1, y)
    mu = par
    return -pi / (1j * sinh(pi * mu)) * (besselj(2j * mu, y) - besselj(-2j * mu, y))


def i_g(kernel, a, b, X):
    # x = X u^2 turns the sqrt phases linear
    k = 4 * pi * b * sqrt(X)
    f = lambda u: U(u * u) * 2 * u * expj(4 * pi * a * sqrt(X) * u) * jg(kernel, k * u)
    return X * quad(f, linspace(1, sqrt(2), 200))


def c_u0(kernel, b, X):
    # leading e^{-iy} Hankel coefficient of J_g times X k^{-1/2} U~(3/4)
    kind, par = kernel
    k = 4 * pi * b * sqrt(X)
    if kind == "holo":
        nu = par - 1
        d0 = 2 * pi * (1 if par % 4 == 0 else -1) * expj(pi * (2 * nu + 1) / 4) / sqrt(2 * pi)
    else:
        mu = par
        b0 = lambda nu: expj(pi * (2 * nu + 1) / 4) / sqrt(2 * pi)
        d0 = -pi / (1j * sinh(pi * mu)) * (b0(2j * mu) - b0(-2j * mu))
    return X * d0 * mellin(mpf(3) / 4) / sqrt(k)


if __name__ == "__main__":
    for s in ["1", "0.75", "0.25", "-0.25"]:
        print("mellin", s, mp.nstr(mellin(mpf(s)), 20))
    v = quad(lambda y: U(y) * expj(100 * y), linspace(1, 2, 64))
    print("osc100", mp.nstr(v.real, 20), mp.nstr(v.imag, 20), mp.nstr(abs(v), 20))
    X = mpf(1000)
    b = sqrt(mpf("0.1"))  # b^2 X = 100
    for kern in [("holo", 12), ("maass", 1)]:
        for a in [b, b + mpf("0.05")]:
            v = i_g(kern, a, b, X)
            print("i_g", kern, mp.nstr(a, 12), mp.nstr(v.real, 18), mp.nstr(v.imag, 18))
        c = c_u0(kern, b, X)
        print("c_u J=0", kern, mp.nstr(c.real, 18), mp.nstr(c.imag, 18))
