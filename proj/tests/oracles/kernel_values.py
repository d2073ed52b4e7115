"""Arbitrary-precision oracles for kernel, sampler and admissibility golden values."""
from fractions import Fraction
import math
import mpmath as mp
from sympy import bell

mp.mp.dps = 60


def lindelof_logG(alpha, r, nmax=120000):
    """log sum r^n / log^{alpha n}(n+e), with a geometric tail bound."""
    lr = mp.log(mp.mpf(r))
    logs = [n * lr - alpha * n * mp.log(mp.log(n + mp.e)) for n in range(nmax)]
    top = max(logs)
    terms = [mp.exp(t - top) for t in logs]
    total = mp.fsum(terms) * mp.exp(top)
    terms = [t * mp.exp(top) for t in terms[-2:]]
    # ratio of consecutive terms is decreasing past the peak; bound the tail geometrically
    q = terms[-1] / terms[-2]
    assert q < 1
    tail = terms[-1] * q / (1 - q)
    return mp.log(total), tail / total


def ml2(z):
    """Mittag-Leffler kernel with alpha=2: E_{1/2}(z) = exp(z^2) erfc(-z)."""
    return mp.exp(z * z) * mp.erfc(-z)


def ml_series(alpha, z, nmax):
    return mp.fsum(mp.power(z, n) / mp.gamma(1 + mp.mpf(n) / alpha) for n in range(nmax))


def gef_truncation(R2, tol):
    """Smallest N with sum_{n>N} R2^n/n! <= tol * e^{R2}, exact rationals for integer R2."""
    R2 = Fraction(R2)
    G = mp.e ** mp.mpf(R2.numerator)
    term = Fraction(1)
    partial = Fraction(0)
    n = 0
    while True:
        partial += term
        tail = G - mp.mpf(partial.numerator) / partial.denominator
        if tail <= tol * G:
            return n
        n += 1
        term = term * R2 / n


def doubleexp_truncation(R2, tol):
    """a_n^2 = e B_n / n!; G(x) = exp(e^x)."""
    x = mp.mpf(R2)
    logG = mp.exp(x)
    partial = mp.mpf(0)
    n = 0
    while True:
        partial += mp.e * mp.mpf(int(bell(n))) / mp.factorial(n) * x**n
        tail = mp.exp(logG) - partial
        if tail <= tol * mp.exp(logG):
            return n
        n += 1


if __name__ == "__main__":
    v, rel_tail = lindelof_logG(1, 10)
    print("lindelof(1) logG(10) =", mp.nstr(v, 20), "tail", mp.nstr(rel_tail, 3))

    r = mp.mpf(20)
    print("ml2 check series vs closed form at r=3:",
          mp.nstr(ml_series(2, mp.mpf(3), 400) / ml2(mp.mpf(3)) - 1, 5))
    G20 = ml2(r)
    Gm20 = ml2(-r)
    # b(r) from closed form derivatives of log G(e^t)
    h = lambda t: mp.log(ml2(mp.exp(t)))
    b20 = mp.diff(h, mp.log(r), 2)
    print("ml2 r=20: log|G(-r)| - log G(r) =", mp.nstr(mp.log(abs(Gm20)) - mp.log(G20), 20),
          " -0.5 log b =", mp.nstr(-0.5 * mp.log(b20), 20))

    # Mittag-Leffler alpha=3 asymptotic check at moderate r: series vs alpha*exp(r^3)
    r = mp.mpf(10)
    s = ml_series(3, r, 4000)
    print("ml3 r=10 log G series =", mp.nstr(mp.log(s), 25), " asym =", mp.nstr(mp.log(3) + r**3, 25))

    print("gef truncation R=3 tol=1e-12:", gef_truncation(9, mp.mpf("1e-12")))
    print("doubleexp truncation R=2 tol=1e-12:", doubleexp_truncation(4, mp.mpf("1e-12")))

    # Claim 2, ML alpha=2, L=3, r=1, s=1.5
    L, r1, s1 = mp.mpf(3), mp.mpf(1), mp.mpf("1.5")
    lg = lambda x: mp.log(ml2(x))
    lhs = 2 * lg(L**2 * r1 * s1) - lg(L**2 * r1**2) - lg(L**2 * s1**2)
    bfun = lambda x: mp.diff(lambda t: lg(mp.exp(t)), mp.log(x), 2)
    bmin = min(bfun(x) for x in mp.linspace(L**2 * r1**2, L**2 * s1**2, 65))
    slack = -mp.log(s1 / r1) ** 2 * bmin - lhs
    print("claim2 ml2 L=3 r=1 s=1.5: lhs", mp.nstr(lhs, 15), "slack", mp.nstr(slack, 15))

    # Claim 1, GEF: ratio = sqrt(R) e^{-2R} I0(2R)
    for R in (10, 40):
        print("claim1 gef R=%d ratio" % R, mp.nstr(mp.sqrt(R) * mp.exp(-2 * R) * mp.besseli(0, 2 * R), 20))

    # Major arc error for ML alpha=2 at r=100 with delta = b^{-2/5}
    r = mp.mpf(100)
    logGr = lg(r)
    a100 = mp.diff(lambda t: lg(mp.exp(t)), mp.log(r), 1)
    b100 = mp.diff(lambda t: lg(mp.exp(t)), mp.log(r), 2)
    delta = b100 ** mp.mpf(-0.4)
    worst = 0
    for th in mp.linspace(-delta, delta, 129):
        z = r * mp.expj(th)
        val = mp.log(ml2(z))
        model = logGr + 1j * th * a100 - th**2 * b100 / 2
        d = val - model
        im = (d.imag + mp.pi) % (2 * mp.pi) - mp.pi
        worst = max(worst, abs(mp.mpc(d.real, im)))
    print("ml2 r=100: a", mp.nstr(a100, 20), "b", mp.nstr(b100, 20), "delta", mp.nstr(delta, 10),
          "major_arc_err", mp.nstr(worst, 10))

    # Expected statistic for GEF, k=0, L=1, eta=0.5: int_0^inf phi(r) 2 r dr
    eta = mp.mpf("0.5")
    sm = lambda t: 6 * t**5 - 15 * t**4 + 10 * t**3
    phi = lambda r: 1 - sm(eta * mp.log(r))
    E = 1 + mp.quad(lambda r: phi(r) * 2 * r, [1, mp.e ** (1 / eta)])
    print("gef expected_statistic k=0 L=1 eta=0.5:", mp.nstr(E, 20))

    # Minor arc for G = exp(e^z) at r=5 with delta = b^{-2/5}: sup over a 513-point grid on [delta, pi]
    r = mp.mpf(5)
    b5 = r * (r + 1) * mp.exp(r)
    delta = b5 ** mp.mpf(-0.4)
    worst = max(mp.exp(mp.re(mp.exp(r * mp.expj(th))) - mp.exp(r)) for th in mp.linspace(delta, mp.pi, 513))
    print("doubleexp r=5: delta", mp.nstr(delta, 15), "minor_arc_ratio", mp.nstr(worst * mp.sqrt(b5), 15))

    # Mittag-Leffler alpha=2, b(r)/(alpha^2 r^alpha) at r=1e4 from the closed form
    r = mp.mpf(10) ** 4
    b = mp.diff(lambda t: lg(mp.exp(t)), mp.log(r), 2)
    print("ml2 r=1e4 b/(4 r^2):", mp.nstr(b / (4 * r**2), 15))

    # Lindelof alpha=1 at r=12: b from the series against both asymptotic forms
    def lind_logG(alpha, x):
        lx = mp.log(x)
        logs = [n * lx - alpha * n * mp.log(mp.log(n + mp.e)) for n in range(400000)]
        top = max(logs)
        return top + mp.log(mp.fsum(mp.exp(t - top) for t in logs if t - top > -80))
    mp.mp.dps = 30
    r = mp.mpf(12)
    b = mp.diff(lambda t: lind_logG(1, mp.exp(t)), mp.log(r), 2)
    print("lindelof(1) r=12: b", mp.nstr(b, 12),
          "stated ratio", mp.nstr(b / mp.exp(r - mp.log(r) - 1), 8),
          "corrected ratio", mp.nstr(b / mp.exp(r + mp.log(r) - 1), 8))
