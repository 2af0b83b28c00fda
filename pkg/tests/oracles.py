"""Independent reference computations used to derive frozen test values.

None of these touch presslab code paths.
"""

import math
from fractions import Fraction

import numpy as np


def i0_series_exact(x: Fraction, terms: int = 60) -> float:
    """sum_k (x/2)^(2k)/(k!)^2 in exact rational arithmetic."""
    q = (x / 2) ** 2
    total = Fraction(0)
    term = Fraction(1)
    for k in range(terms):
        if k:
            term = term * q / (k * k)
        total += term
    return float(total)


def bisect(g, lo, hi, iterations=200):
    glo = g(lo)
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if (gm > 0) == (glo > 0):
            lo, glo = mid, gm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def numerov_endpoint(energy, v, a, n=2000):
    """Numerov integration of psi'' = 2 (v - E) psi from psi(-a) = 0;
    returns psi(a), which vanishes at an eigenvalue."""
    x = np.linspace(-a, a, n + 1)
    h = x[1] - x[0]
    k2 = 2.0 * (energy - v(x))
    c = h * h / 12.0
    prev, cur = 0.0, 1e-6
    for i in range(1, n):
        nxt = (2 * (1 - 5 * c * k2[i]) * cur - (1 + c * k2[i - 1]) * prev) / (1 + c * k2[i + 1])
        prev, cur = cur, nxt
    return cur


def delta_wall_k(u0, a, b):
    return bisect(lambda k: 1 / math.tanh(k * b) + math.tanh(k * (a - b)) - 2 * u0 / k, 0.5, 6.0)


# Numerov shooting, n = 8000 steps, brentq at xtol 1e-14, for v = x^2 on
# [-1, 1]; the n = 2000/4000/8000 runs agree to ~1e-11.
HARMONIC_BOX_LEVELS = (1.362070592266, 5.215254101352, 11.414548072090,
                       20.060486234227, 31.168247886054)

# bisection on coth(kb) + tanh(k(a-b)) = 2u0/k with u0 = 2, b = 0.5
DELTA_K = {1.0: 1.9150080481545375, 2.0: 1.6106936552820552,
           5.0: 1.593625522755016, 10.0: 1.5936242600401918}
# a -> infinity: coth(kb) + 1 = 2u0/k
DELTA_K_INF = 1.5936242600400403

# scipy.integrate.quad (epsabs = epsrel = 1e-15) of r*exp(-beta*U) on [0, 0.78], beta*sigma = 0.57
DISC_Z_057_078 = 1.7099936188867273
