"""tau(n) from q prod (1 - q^n)^24 by naive integer series multiplication, and
a small smoothed exponential sum computed from it (mpmath, 30 digits)."""
from mpmath import mp, mpf, exp, expj, pi, log, cos, sin

mp.dps = 30


def tau_table(n_max):
    p = [0] * (n_max + 1)
    p[0] = 1
    for k in range(1, n_max + 1):
        # multiply by (1 - q^k) 24 times
        for _ in range(24):
            for i in range(n_max, k - 1, -1):
                p[i] -= p[i - k]
    return [0] + p[:n_max]  # shift by q


def U(x):
    t = 2 * x - 3
    if abs(t) >= 1:
        return mpf(0)
    return exp(-1 / (1 - t * t))


if __name__ == "__main__":
    n_max = 300
    tau = tau_table(n_max)
    for n in [1, 2, 3, 5, 10, 23, 100, 210, 300]:
        print("tau", n, tau[n])
    lam = lambda n: mpf(tau[n]) / mpf(n) ** mpf("5.5")
    N = 100
    T = mpf(N) ** mpf("0.9")
    s = sum(lam(n) * U(mpf(n) / N) * expj(2 * pi * T * (mpf(n) / N) ** 2) for n in range(1, 2 * N + 1))
    print("smooth N=100 T=N^0.9", mp.nstr(s.real, 18), mp.nstr(s.imag, 18))
    s = sum(lam(n) * expj(2 * pi * mpf(n) ** mpf("0.9")) for n in range(1, 301))
    print("sharp N=300 alpha=1 beta=0.9", mp.nstr(s.real, 18), mp.nstr(s.imag, 18))
    print("rankin N=300", mp.nstr(sum(lam(n) ** 2 for n in range(1, 301)) / 300, 18))
