"""Particle in [-a, a] with attractive delta wells at |x| = a - b.

The wall potential is ``u(a - |x|) = -u0 * delta(a - b - |x|)``.  Its single
symmetric bound state is

    psi(x) = A sinh(k (a - |x|))   for a - b <= |x| <= a
    psi(x) = B cosh(k x)           for |x| <= a - b

with E = -k**2/2, B = A sinh(k b)/cosh(k (a - b)) and k the root of

    coth(k b) + tanh(k (a - b)) = 2 u0 / k.

Multiplying by k gives ``k coth(k b) + k tanh(k (a - b)) - 2 u0``, which is
strictly increasing in k and tends to ``1/b - 2 u0`` as k -> 0, so a bound
state exists exactly when ``u0 > 1/(2 b)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import qbox
from .numkernel import find_root

K_LO = 1e-8
FD_REL_STEP = 1e-4


class NoBoundState(ValueError):
    """Raised when the wells are too weak to bind (u0 <= 1/(2b))."""


@dataclass(frozen=True)
class DeltaWallParams:
    u0: float
    a: float
    b: float

    def __post_init__(self):
        if not self.u0 > 0:
            raise ValueError(f"u0 must be positive, got {self.u0}")
        if not 0 < self.b < self.a:
            raise ValueError(f"need 0 < b < a, got a={self.a}, b={self.b}")

    @property
    def threshold(self) -> float:
        """Smallest well strength that binds: 1/(2b)."""
        return 0.5 / self.b

    def with_a(self, a: float) -> "DeltaWallParams":
        return DeltaWallParams(self.u0, a, self.b)


@dataclass(frozen=True)
class BoundState:
    energy: float
    k: float
    A: float
    B: float
    residual: float


def _z_coth(z: float) -> float:
    """z * coth(z), with its Taylor series near zero."""
    if abs(z) < 1e-3:
        z2 = z * z
        return 1.0 + z2 / 3.0 - z2 * z2 / 45.0
    return z / math.tanh(z)


def scaled_equation(k: float, params: DeltaWallParams) -> float:
    """``k coth(kb) + k tanh(k(a-b)) - 2 u0``: the bound-state condition
    times k, free of the 1/k singularity."""
    u0, a, b = params.u0, params.a, params.b
    return _z_coth(k * b) / b + k * math.tanh(k * (a - b)) - 2.0 * u0


def equation_residual(k: float, params: DeltaWallParams) -> float:
    """Residual of ``coth(kb) + tanh(k(a-b)) - 2 u0/k``."""
    u0, a, b = params.u0, params.a, params.b
    return 1.0 / math.tanh(k * b) + math.tanh(k * (a - b)) - 2.0 * u0 / k


def has_bound_state(params: DeltaWallParams) -> bool:
    return scaled_equation(K_LO, params) < 0


def bound_state(params: DeltaWallParams) -> BoundState:
    if not has_bound_state(params):
        raise NoBoundState(
            f"no bound state for u0={params.u0} (threshold 1/(2b) = {params.threshold:g})"
        )
    k_hi = 2.0 * params.u0 + 2.0
    root = find_root(lambda k: scaled_equation(k, params), K_LO, k_hi, tol=1e-15)
    k = root.root
    a, b = params.a, params.b

    s_b = math.sinh(k * b)
    c_in = math.cosh(k * (a - b))
    ratio = s_b / c_in
    outer = math.sinh(2 * k * b) / (4 * k) - b / 2          # int_0^b sinh^2(k y) dy
    inner = math.sinh(2 * k * (a - b)) / (4 * k) + (a - b) / 2  # int_0^{a-b} cosh^2
    A = 1.0 / math.sqrt(2.0 * outer + 2.0 * ratio ** 2 * inner)
    return BoundState(
        energy=-0.5 * k * k,
        k=k,
        A=A,
        B=A * ratio,
        residual=equation_residual(k, params),
    )


def wavefunction_at(state: BoundState, params: DeltaWallParams, x):
    """Piecewise sinh/cosh wavefunction; accepts scalars or arrays."""
    xa = np.asarray(x, dtype=float)
    a, b, k = params.a, params.b, state.k
    if np.any(np.abs(xa) > a * (1 + 1e-12)):
        raise ValueError(f"x outside [-{a}, {a}]")
    ax = np.minimum(np.abs(xa), a)
    out = np.where(
        ax <= a - b,
        state.B * np.cosh(k * xa),
        state.A * np.sinh(k * (a - ax)),
    )
    if np.ndim(x) == 0:
        return float(out)
    return out


def derivative_jump(state: BoundState, params: DeltaWallParams) -> tuple[float, float]:
    """Slope drop ``psi'(c-) - psi'(c+)`` across the right well c = a - b
    and ``2 u0 psi(c)``; the delta matching condition makes them equal.
    The left well mirrors it."""
    a, b, k = params.a, params.b, state.k
    c = a - b
    d_out = -state.A * k * math.cosh(k * b)
    d_in = state.B * k * math.sinh(k * c)
    # -psi''/2 - u0 delta psi = E psi  =>  psi'(c+) - psi'(c-) = -2 u0 psi(c)
    return d_in - d_out, 2.0 * params.u0 * state.B * math.cosh(k * c)


def as_eigenstate(state: BoundState, params: DeltaWallParams,
                  grid_size: int = qbox.DEFAULT_GRID) -> qbox.Eigenstate:
    """The bound state as a qbox Eigenstate with exact point evaluation."""
    x = np.linspace(-params.a, params.a, grid_size + 2)
    dw = state.A * state.k
    return qbox.Eigenstate(
        energy=state.energy,
        x=x,
        psi=wavefunction_at(state, params, x),
        psi_center=state.B,
        dpsi_center=0.0,
        dpsi_walls=(dw, -dw),
        evaluator=lambda t: wavefunction_at(state, params, t),
    )


def energy(params: DeltaWallParams) -> float:
    return bound_state(params).energy


def bound_pressure(params: DeltaWallParams, step: float | None = None) -> qbox.PressureReport:
    """Centre-formula pressure of the bound state, ``E_m * psi_m(0)**2``
    (psi_m'(0) = 0), negative since E_m < 0.  ``reference`` carries the
    independent value ``-(1/2) dE_m/da`` and ``error_estimate`` their gap."""
    st = bound_state(params)
    pressure = st.energy * st.B ** 2
    if step is None:
        step = min(FD_REL_STEP * params.a, 0.2 * (params.a - params.b))
    fd = qbox.pressure_fd(lambda a: np.array([energy(params.with_a(a))]), params.a, step=step)
    return qbox.PressureReport(
        pressure=pressure,
        per_level=np.array([pressure]),
        method="center-formula",
        error_estimate=abs(pressure - fd.pressure),
        populations=np.array([1.0]),
        reference=fd.pressure,
    )
