"""Numerical primitives: modified Bessel I0, adaptive Simpson quadrature,
bracketed root finding and Richardson-extrapolated central differences.

Everything here is a pure function of its inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

_EPS = np.finfo(float).eps

# Power series below this |x|, asymptotic expansion above.  At 25 the
# asymptotic series' smallest term is ~1e-21 relative and the positive-term
# power series is still accurate to a few ulp, so both branches agree far
# below 1e-12 (checked in tests/test_numkernel.py).
I0_SERIES_MAX = 25.0

# log(I0(x)) exceeds log(DBL_MAX) just below x = 713.99
_LOG_MAX = math.log(np.finfo(float).max)


class NoBracket(ValueError):
    """Raised when a root-finding bracket does not straddle a sign change."""


class QuadratureError(RuntimeError):
    """Raised when adaptive quadrature hits its subdivision depth cap."""


class ConvergenceError(RuntimeError):
    """Raised when root finding exhausts its iteration budget."""


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int


@dataclass(frozen=True)
class RootResult:
    root: float
    residual: float
    iterations: int
    converged: bool = True


# ---------------------------------------------------------------------------
# Bessel I0
# ---------------------------------------------------------------------------

def _i0_series(x: np.ndarray) -> np.ndarray:
    q = 0.25 * x * x
    term = np.ones_like(x)
    total = np.ones_like(x)
    k = 0
    while True:
        k += 1
        term = term * q / (k * k)
        total = total + term
        if np.all(term <= 1e-17 * total):
            return total


def _i0e_asymptotic(x: np.ndarray) -> np.ndarray:
    """e^-x I0(x) from the large-argument expansion (x > 0)."""
    term = np.ones_like(x)
    total = np.ones_like(x)
    active = np.ones(x.shape, dtype=bool)
    k = 0
    while np.any(active):
        k += 1
        nxt = term * (2 * k - 1) ** 2 / (8.0 * k * x)
        # stop each element at convergence or where the series starts diverging
        active &= (nxt < term) & (nxt > 1e-17 * total)
        term = np.where(active, nxt, term)
        total = np.where(active, total + nxt, total)
        if k > 200:
            break
    return total / np.sqrt(2.0 * np.pi * x)


def bessel_i0e(x):
    """Exponentially scaled Bessel function ``exp(-|x|) * I0(x)``.

    Never overflows; use it whenever only products like
    ``exp(-y) * I0(x)`` with ``y ~ x`` are needed.
    """
    arr = np.abs(np.asarray(x, dtype=float))
    if not np.all(np.isfinite(arr)):
        raise ValueError("bessel_i0e requires finite arguments")
    out = np.empty_like(arr)
    small = arr <= I0_SERIES_MAX
    if np.any(small):
        xs = arr[small]
        out[small] = _i0_series(xs) * np.exp(-xs)
    if np.any(~small):
        out[~small] = _i0e_asymptotic(arr[~small])
    if np.ndim(x) == 0:
        return float(out)
    return out


def bessel_i0(x):
    """Modified Bessel function of the first kind, order zero.

    Accepts scalars or arrays.  Relative error is at the 1e-15 level for
    moderate arguments and within 1e-12 everywhere.

    Raises:
        OverflowError: if I0(x) is not representable as a double.
        ValueError: for non-finite input.
    """
    arr = np.abs(np.asarray(x, dtype=float))
    if not np.all(np.isfinite(arr)):
        raise ValueError("bessel_i0 requires finite arguments")
    out = np.empty_like(arr)
    small = arr <= I0_SERIES_MAX
    if np.any(small):
        out[small] = _i0_series(arr[small])
    if np.any(~small):
        xl = arr[~small]
        scaled = _i0e_asymptotic(xl)
        log_val = xl + np.log(scaled)
        if np.any(log_val >= _LOG_MAX):
            raise OverflowError(f"I0(x) overflows for |x| = {xl.max():g}")
        out[~small] = np.exp(log_val)
    if np.ndim(x) == 0:
        return float(out)
    return out


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------

def integrate(
    f: Callable,
    lo: float,
    hi: float,
    tol: float = 1e-10,
    *,
    vectorized: bool = False,
    max_depth: int = 60,
    min_depth: int = 3,
) -> QuadratureResult:
    """Adaptive Simpson quadrature of ``f`` over ``[lo, hi]``.

    Intervals are refined breadth first: every pending interval at a given
    depth is bisected together, so a ``vectorized`` integrand is called once
    per level with an array of abscissae.  An interval is accepted when its
    two-panel Simpson estimate differs from the one-panel estimate by at most
    ``15 * local_tol``; the local tolerance halves with each bisection so the
    accepted errors sum below ``tol``.  Accepted values carry the usual
    Richardson correction ``delta / 15``.

    Args:
        f: integrand. Called with floats, or with 1-D arrays if ``vectorized``.
        lo, hi: limits, ``lo <= hi``.
        tol: absolute error target.
        max_depth: subdivision depth cap.
        min_depth: levels refined unconditionally, to avoid accepting an
            estimate that happens to agree by symmetry at the coarsest level.

    Raises:
        ValueError: on ``lo > hi`` or non-positive ``tol``.
        QuadratureError: if intervals remain unconverged at ``max_depth``.
    """
    if not lo <= hi:
        raise ValueError(f"integrate needs lo <= hi, got [{lo}, {hi}]")
    if not tol > 0:
        raise ValueError("tol must be positive")

    if vectorized:
        def F(x):
            return np.asarray(f(x), dtype=float)
    else:
        def F(x):
            return np.fromiter((f(float(t)) for t in x), dtype=float, count=len(x))

    if lo == hi:
        F(np.array([lo]))
        return QuadratureResult(0.0, 0.0, 1)

    f0, fm0, f1 = F(np.array([lo, 0.5 * (lo + hi), hi]))
    evaluations = 3
    a = np.array([lo])
    b = np.array([hi])
    fa, fm, fb = np.array([f0]), np.array([fm0]), np.array([f1])
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    local_tol = np.array([tol])

    pieces: list[np.ndarray] = []
    error = 0.0
    for depth in range(max_depth + 1):
        m = 0.5 * (a + b)
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        n = len(a)
        vals = F(np.concatenate([lm, rm]))
        evaluations += 2 * n
        flm, frm = vals[:n], vals[n:]
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        delta = left + right - whole
        if not np.all(np.isfinite(delta)):
            raise QuadratureError("integrand produced non-finite values")

        floor = 64.0 * _EPS * np.abs(left + right)
        done = np.abs(delta) <= 15.0 * np.maximum(local_tol, floor)
        # intervals that can no longer be split in floating point
        done |= (lm <= a) | (rm >= b)
        if depth < min_depth:
            done[:] = False

        if np.any(done):
            pieces.append(left[done] + right[done] + delta[done] / 15.0)
            error += float(np.sum(np.abs(delta[done]))) / 15.0
        keep = ~done
        if not np.any(keep):
            value = math.fsum(np.concatenate(pieces))
            return QuadratureResult(value, error, evaluations)
        if depth == max_depth:
            break

        a, m, b = a[keep], m[keep], b[keep]
        fa, fm, fb = fa[keep], fm[keep], fb[keep]
        flm, frm = flm[keep], frm[keep]
        left, right = left[keep], right[keep]
        half = 0.5 * local_tol[keep]
        a = np.concatenate([a, m])
        b = np.concatenate([m, b])
        fa, fm, fb = (
            np.concatenate([fa, fm]),
            np.concatenate([flm, frm]),
            np.concatenate([fm, fb]),
        )
        whole = np.concatenate([left, right])
        local_tol = np.concatenate([half, half])

    raise QuadratureError(
        f"adaptive Simpson did not converge within depth {max_depth} on [{lo}, {hi}]"
    )


# ---------------------------------------------------------------------------
# Root finding
# ---------------------------------------------------------------------------

def find_root(
    g: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-12,
    *,
    max_iter: int = 200,
) -> RootResult:
    """Brent's method: bisection safeguarded by secant / inverse quadratic
    interpolation.  Stops once ``|g(root)| <= tol``.

    If the bracket shrinks to a few ulp before the residual reaches ``tol``
    (round-off in ``g`` dominates), the best point is returned with
    ``converged=False``.

    Raises:
        NoBracket: if ``g(lo)`` and ``g(hi)`` have the same sign.
        ConvergenceError: if ``max_iter`` is exhausted.
    """
    a, b = float(lo), float(hi)
    fa, fb = g(a), g(b)
    if fa == 0.0:
        return RootResult(a, 0.0, 0)
    if fb == 0.0:
        return RootResult(b, 0.0, 0)
    if (fa > 0) == (fb > 0):
        raise NoBracket(f"g({a}) = {fa:g} and g({b}) = {fb:g} have the same sign")

    c, fc = a, fa
    d = e = b - a
    for it in range(1, max_iter + 1):
        if (fb > 0) == (fc > 0):
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        if abs(fb) <= tol:
            return RootResult(b, fb, it)
        tol1 = 2.0 * _EPS * abs(b)
        xm = 0.5 * (c - b)
        if abs(xm) <= tol1:
            return RootResult(b, fb, it, converged=False)
        if abs(e) >= tol1 and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * xm * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            p = abs(p)
            if 2.0 * p < min(3.0 * xm * q - abs(tol1 * q), abs(e * q)):
                e, d = d, p / q
            else:
                d = e = xm
        else:
            d = e = xm
        a, fa = b, fb
        b += d if abs(d) > tol1 else math.copysign(tol1, xm)
        fb = g(b)
    raise ConvergenceError(f"find_root did not converge in {max_iter} iterations")


# ---------------------------------------------------------------------------
# Differentiation
# ---------------------------------------------------------------------------

def derivative(f: Callable[[float], float], x: float, step: float) -> float:
    """Central difference at ``step`` and ``2*step`` combined by one
    Richardson level, so the truncation error is O(step**4)."""
    if not step > 0:
        raise ValueError("step must be positive")
    d1 = (f(x + step) - f(x - step)) / (2.0 * step)
    d2 = (f(x + 2.0 * step) - f(x - 2.0 * step)) / (4.0 * step)
    return (4.0 * d1 - d2) / 3.0
