"""Classical ideal gas in a disc of radius a whose wall attracts particles.

A wall element dl at distance d pulls with ``u(d) dl``, ``u(d) = -(sigma/a)
exp(-d**2)``; integrating round the rim gives

    U(r) = -2 pi sigma exp(-r**2 - a**2) I0(2 a r).

The gas is ideal, so one particle suffices and momenta drop out of
d/da ln Z.  The reduced canonical pressure is

    P(a) = d/da ln int_0^a r exp(-beta U(r)) dr,

which depends on sigma and beta only through beta*sigma.  Both the upper
limit and U depend on a; the derivative is taken numerically.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .numkernel import QuadratureResult, bessel_i0e, derivative, integrate

DEFAULT_TOL = 1e-10
DEFAULT_FD_STEP = 1e-5
DEFAULT_GRID = (0.5, 1.5, 201)


@dataclass(frozen=True)
class DiscParams:
    a: float
    beta_sigma: float = 0.0

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError(f"radius must be positive, got {self.a}")
        if not self.beta_sigma >= 0:
            raise ValueError(f"beta_sigma must be non-negative, got {self.beta_sigma}")


@dataclass(frozen=True)
class PressureCurve:
    a: np.ndarray
    pressure: np.ndarray
    beta_sigma: float
    fd_step: float

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.a.tolist(), self.pressure.tolist()))

    def zero_crossings(self) -> list[float]:
        """Radii where the sampled curve changes sign, by linear interpolation."""
        a, p = self.a, self.pressure
        out = []
        for i in np.nonzero(np.sign(p[:-1]) * np.sign(p[1:]) < 0)[0]:
            out.append(float(a[i] - p[i] * (a[i + 1] - a[i]) / (p[i + 1] - p[i])))
        return out


def wall_potential(r, a: float):
    """Wall potential in units of sigma: ``-2 pi exp(-r**2 - a**2) I0(2 a r)``.

    Evaluated as ``-2 pi exp(-(r - a)**2) * [exp(-2 a r) I0(2 a r)]`` so
    large ``a r`` neither overflows nor underflows.
    """
    r = np.asarray(r, dtype=float)
    out = -2.0 * np.pi * np.exp(-(r - a) ** 2) * bessel_i0e(2.0 * a * r)
    if out.ndim == 0:
        return float(out)
    return out


def partition_integral(params: DiscParams, tol: float = DEFAULT_TOL) -> QuadratureResult:
    """Adaptive quadrature of ``int_0^a r exp(-beta U(r)) dr``."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    a, bs = params.a, params.beta_sigma

    def integrand(r):
        return r * np.exp(-bs * wall_potential(r, a))

    return integrate(integrand, 0.0, a, tol, vectorized=True)


def log_partition(a: float, beta_sigma: float, tol: float = DEFAULT_TOL) -> float:
    return math.log(partition_integral(DiscParams(a, beta_sigma), tol).value)


def pressure(params: DiscParams, fd_step: float = DEFAULT_FD_STEP,
             tol: float = DEFAULT_TOL) -> float:
    """Reduced pressure ``d/da ln Z`` by Richardson central differences."""
    if not 0 < fd_step < params.a / 10:
        raise ValueError(f"fd_step must lie in (0, a/10), got {fd_step}")
    return derivative(lambda t: log_partition(t, params.beta_sigma, tol), params.a, fd_step)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("PRESSLAB_THREADS", "1")))
    except ValueError:
        return 1


def pressure_scan(
    a_min: float,
    a_max: float,
    steps: int,
    beta_sigma_list: Iterable[float],
    *,
    fd_step: float = DEFAULT_FD_STEP,
    tol: float = DEFAULT_TOL,
    threads: int | None = None,
) -> list[PressureCurve]:
    """Pressure on the uniform grid ``linspace(a_min, a_max, steps)`` for each
    coupling.  Points are independent and may be evaluated on
    ``PRESSLAB_THREADS`` worker threads; output order is fixed by a."""
    if not 0 < a_min < a_max:
        raise ValueError("need 0 < a_min < a_max")
    if steps < 2:
        raise ValueError("steps must be at least 2")
    grid = np.linspace(a_min, a_max, steps)
    couplings: Sequence[float] = list(beta_sigma_list)
    if not couplings:
        raise ValueError("at least one beta_sigma value is needed")
    jobs = [(bs, a) for bs in couplings for a in grid]

    def run(job):
        bs, a = job
        return pressure(DiscParams(float(a), float(bs)), fd_step, tol)

    n = threads or _threads()
    if n > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            values = list(pool.map(run, jobs))
    else:
        values = [run(j) for j in jobs]

    vals = np.array(values).reshape(len(couplings), steps)
    return [
        PressureCurve(grid.copy(), vals[i], float(bs), fd_step)
        for i, bs in enumerate(couplings)
    ]
