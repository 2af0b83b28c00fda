"""One particle in the box [-a, a] with Dirichlet walls, and the pressure
formulas built on its eigenstates.

Natural units, m = hbar = 1, so the Hamiltonian is -psi''/2 + v(x) psi.
The box is one dimensional, so the volume is V = 2a and dV = 2 da.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .numkernel import derivative

DEFAULT_GRID = 2001
# Grid eigenvalues carry ~eps/h**2 absolute round-off, so the FD step is
# larger than for closed-form energies.
DEFAULT_FD_REL_STEP = 1e-3
NO_GO_FLOOR = -1e-9


class SolverError(RuntimeError):
    """Raised when the finite-difference solver cannot deliver the request."""


@dataclass(frozen=True)
class BoxDomain:
    half_width: float

    def __post_init__(self):
        if not self.half_width > 0:
            raise ValueError(f"half_width must be positive, got {self.half_width}")

    @property
    def volume(self) -> float:
        return 2.0 * self.half_width

    def scaled(self, factor: float) -> "BoxDomain":
        return BoxDomain(self.half_width * factor)


@dataclass(frozen=True)
class WallModel:
    """Particle-wall potential written as ``u(a - |x|)``.

    ``kind`` is ``"none"``, ``"delta_well"`` (``u(d) = -u0 * delta(d - b)``)
    or ``"smooth"`` (``profile`` is u as a function of wall distance d).
    """

    kind: str = "none"
    u0: float = 0.0
    b: float = 0.0
    profile: Optional[Callable] = None

    def __post_init__(self):
        if self.kind not in ("none", "delta_well", "smooth"):
            raise ValueError(f"unknown wall kind {self.kind!r}")
        if self.kind == "delta_well" and not (self.u0 > 0 and self.b > 0):
            raise ValueError("delta_well needs u0 > 0 and b > 0")
        if self.kind == "smooth" and self.profile is None:
            raise ValueError("smooth wall needs a profile")

    @classmethod
    def none(cls) -> "WallModel":
        return cls("none")

    @classmethod
    def delta_well(cls, u0: float, b: float) -> "WallModel":
        return cls("delta_well", u0=u0, b=b)

    @classmethod
    def smooth(cls, profile: Callable) -> "WallModel":
        return cls("smooth", profile=profile)

    def check_domain(self, domain: BoxDomain) -> None:
        if self.kind == "delta_well" and not self.b < domain.half_width:
            raise ValueError(f"delta well needs 0 < b < a, got b={self.b}, a={domain.half_width}")

    def potential(self, a: float) -> Callable[[np.ndarray], np.ndarray]:
        """Grid potential ``x -> u(a - |x|)``; only for smooth walls."""
        if self.kind == "none":
            return lambda x: np.zeros_like(np.asarray(x, dtype=float))
        if self.kind == "delta_well":
            raise ValueError("delta wells are not placed on the grid; use presslab.deltawall")
        u = self.profile
        return lambda x: np.asarray(u(a - np.abs(x)), dtype=float)

    def center_value(self, a: float) -> float:
        """u(a), the wall potential felt at the box centre."""
        if self.kind == "smooth":
            return float(self.profile(a))
        return 0.0

    def expectation(self, state: "Eigenstate", a: float) -> float:
        """<state| u(a - |x|) |state> for the wall anchored at half-width ``a``."""
        if self.kind == "none":
            return 0.0
        if self.kind == "delta_well":
            c = a - self.b
            psi = state(np.array([-c, c]))
            return -self.u0 * float(psi[0] ** 2 + psi[1] ** 2)
        return state.expectation(lambda x: self.profile(a - np.abs(x)))


@dataclass(frozen=True)
class Eigenstate:
    """One level: energy, grid samples of the real wavefunction (zeros at the
    walls included) and the derivatives the pressure formulas need.

    ``evaluator`` gives exact point values when the state is known in closed
    form; otherwise point values come from interpolating the samples.
    """

    energy: float
    x: np.ndarray = field(repr=False)
    psi: np.ndarray = field(repr=False)
    psi_center: float
    dpsi_center: float
    dpsi_walls: tuple
    evaluator: Optional[Callable] = field(default=None, repr=False, compare=False)

    @property
    def half_width(self) -> float:
        return float(self.x[-1])

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.evaluator is not None:
            return self.evaluator(x)
        return np.interp(x, self.x, self.psi)

    def expectation(self, f: Callable) -> float:
        """Trapezoid-rule <psi| f |psi> on the sample grid."""
        w = self.psi ** 2 * np.asarray(f(self.x), dtype=float)
        h = self.x[1] - self.x[0]
        return float(h * (np.sum(w) - 0.5 * (w[0] + w[-1])))

    def norm(self) -> float:
        return self.expectation(lambda x: np.ones_like(x))


@dataclass(frozen=True)
class MixedState:
    populations: np.ndarray
    truncation_error: float = 0.0

    def __post_init__(self):
        p = np.asarray(self.populations, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise ValueError("populations must be a non-empty vector")
        if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-12:
            raise ValueError("populations must be non-negative and sum to 1")
        object.__setattr__(self, "populations", p)

    @classmethod
    def pure(cls, level: int, n_levels: int) -> "MixedState":
        p = np.zeros(n_levels)
        p[level] = 1.0
        return cls(p)

    def __len__(self):
        return len(self.populations)


@dataclass(frozen=True)
class PressureReport:
    pressure: float
    per_level: np.ndarray
    method: str
    error_estimate: float = 0.0
    populations: Optional[np.ndarray] = None
    reference: Optional[float] = None


def _as_populations(populations, n: int) -> np.ndarray:
    if populations is None:
        return MixedState.pure(0, n).populations
    if isinstance(populations, MixedState):
        p = populations.populations
    else:
        p = MixedState(np.asarray(populations, dtype=float)).populations
    if len(p) != n:
        raise ValueError(f"{len(p)} populations for {n} levels")
    return p


# ---------------------------------------------------------------------------
# Solver
# ---------------------------------------------------------------------------

def _solve_grid(a: float, v: Callable, n_levels: int, grid_size: int):
    n = grid_size
    h = 2.0 * a / (n + 1)
    x = -a + h * np.arange(n + 2)
    vx = np.asarray(v(x[1:-1]), dtype=float)
    if vx.shape != (n,) or not np.all(np.isfinite(vx)):
        raise SolverError("potential must be finite on the open interval")
    diag = 1.0 / h ** 2 + vx
    off = np.full(n - 1, -0.5 / h ** 2)
    # abstol = 2*tiny is LAPACK's most accurate bisection setting; the default
    # eps*||T|| ~ eps/h**2 swamps finite differences of the energies in a
    energies, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(0, n_levels - 1),
                                      tol=2.0 * np.finfo(float).tiny)

    # Each level needs several points per half wavelength to be resolved.
    k_max = math.sqrt(max(2.0 * (energies[-1] - vx.min()), 0.0))
    if k_max * h > 0.5:
        raise SolverError(
            f"grid too coarse: level {n_levels} has k*h = {k_max * h:.3g}; raise grid_size"
        )

    psi = np.zeros((n_levels, n + 2))
    psi[:, 1:-1] = vecs.T / math.sqrt(h)
    # sign convention: positive slope at the left wall
    for row in psi:
        first = row[1:][np.abs(row[1:]) > 1e-8 * np.abs(row).max()][0]
        if first < 0:
            row *= -1.0

    c = (n + 1) // 2
    psi_c = psi[:, c]
    dpsi_c = (psi[:, c + 1] - psi[:, c - 1]) / (2.0 * h)
    # second-order one-sided stencils, psi = 0 on the wall node
    d_left = (4.0 * psi[:, 1] - psi[:, 2]) / (2.0 * h)
    d_right = -(4.0 * psi[:, -2] - psi[:, -3]) / (2.0 * h)
    return x, psi, energies, psi_c, dpsi_c, d_left, d_right


def solve_box(
    domain: BoxDomain | float,
    potential: Optional[Callable] = None,
    n_levels: int = 5,
    grid_size: int = DEFAULT_GRID,
    *,
    richardson: bool = True,
) -> list[Eigenstate]:
    """Lowest ``n_levels`` eigenpairs of ``-psi''/2 + v psi = E psi`` on
    ``[-a, a]`` with ``psi(+-a) = 0``.

    The 3-point Laplacian on ``grid_size`` interior nodes gives a symmetric
    tridiagonal matrix.  With ``richardson`` the problem is solved again on
    the nested grid of ``2*grid_size + 1`` nodes and energies and derivative
    data are extrapolated as ``(4*fine - coarse)/3``.  Samples are
    extrapolated the same way on the shared nodes, so expectation values are
    fourth order too (psi = 0 at both walls makes the trapezoid rule O(h**4)).

    ``grid_size`` must be odd so that x = 0 is a node.
    """
    if not isinstance(domain, BoxDomain):
        domain = BoxDomain(float(domain))
    if n_levels < 1:
        raise ValueError("n_levels must be at least 1")
    if grid_size < 64:
        raise ValueError("grid_size must be at least 64")
    if grid_size % 2 == 0:
        raise ValueError("grid_size must be odd so the box centre is a grid node")
    if n_levels > grid_size // 8:
        raise SolverError(f"{n_levels} levels cannot be resolved on {grid_size} nodes")
    if potential is None:
        potential = lambda x: np.zeros_like(x)  # noqa: E731
    a = domain.half_width

    coarse = _solve_grid(a, potential, n_levels, grid_size)
    if richardson:
        fine = _solve_grid(a, potential, n_levels, 2 * grid_size + 1)
        # align eigenvector signs by overlap on the shared (even) fine nodes
        sign = np.sign(np.sum(coarse[1] * fine[1][:, ::2], axis=1))
        sign[sign == 0] = 1.0
        x = coarse[0]
        psi = (4.0 * fine[1][:, ::2] - sign[:, None] * coarse[1]) / 3.0
        data = [(4.0 * f - s * c) / 3.0 for f, c, s in zip(
            fine[2:], coarse[2:], (1.0, sign, sign, sign, sign))]
    else:
        x, psi = coarse[0], coarse[1]
        data = list(coarse[2:])
    energies, psi_c, dpsi_c, d_left, d_right = data

    return [
        Eigenstate(
            energy=float(energies[i]),
            x=x,
            psi=psi[i],
            psi_center=float(psi_c[i]),
            dpsi_center=float(dpsi_c[i]),
            dpsi_walls=(float(d_left[i]), float(d_right[i])),
        )
        for i in range(n_levels)
    ]


def box_energies(a: float, potential=None, n_levels: int = 5, grid_size: int = DEFAULT_GRID,
                 richardson: bool = True) -> np.ndarray:
    states = solve_box(BoxDomain(a), potential, n_levels, grid_size, richardson=richardson)
    return np.array([s.energy for s in states])


# ---------------------------------------------------------------------------
# Populations and work
# ---------------------------------------------------------------------------

def gibbs_populations(energies: Sequence[float], beta: float) -> MixedState:
    """Normalized Boltzmann weights over the given (truncated) level set.

    ``truncation_error`` is the relative weight of the highest level kept,
    a bound-sized estimate of the population left out above it.
    """
    e = np.asarray(energies, dtype=float)
    if e.size == 0 or not np.all(np.isfinite(e)):
        raise ValueError("energies must be a non-empty finite sequence")
    if beta < 0:
        raise ValueError("beta must be non-negative")
    w = np.exp(-beta * (e - e.min()))
    p = w / w.sum()
    p = p / p.sum()
    return MixedState(p, truncation_error=float(p[np.argmax(e)]))


def gibbs_level_count(energies: Sequence[float], beta: float, cutoff: float = 1e-12) -> int:
    """Number of lowest levels with ``p_n >= cutoff * p_0``."""
    e = np.sort(np.asarray(energies, dtype=float))
    return int(np.sum(np.exp(-beta * (e - e[0])) >= cutoff))


def _energies_of(states) -> np.ndarray:
    return np.array([s.energy if isinstance(s, Eigenstate) else float(s) for s in states])


def adiabatic_work(states_initial, states_final, populations) -> float:
    """Work ``sum_n p_n (E_n(final) - E_n(initial))`` with populations held
    fixed.  Accepts eigenstates or bare energies."""
    e0 = _energies_of(states_initial)
    e1 = _energies_of(states_final)
    if len(e0) != len(e1):
        raise ValueError(f"level count mismatch: {len(e0)} vs {len(e1)}")
    p = _as_populations(populations, len(e0))
    return float(np.dot(p, e1 - e0))


# ---------------------------------------------------------------------------
# Pressure formulas
# ---------------------------------------------------------------------------

def pressure_center(states: Sequence[Eigenstate], populations=None, *,
                    wall_at_center: float = 0.0) -> PressureReport:
    """Centre-point pressure for walls of the form ``u(a - |x|)``:
    ``P = sum_n p_n [psi_n'(0)**2 / 2 + (E_n - u(a)) psi_n(0)**2]``.

    ``wall_at_center`` is u(a); profiles grounded at the centre have u(a) = 0.
    Not valid when there is an interior potential besides the wall term.
    """
    p = _as_populations(populations, len(states))
    per = np.array([
        0.5 * s.dpsi_center ** 2 + (s.energy - wall_at_center) * s.psi_center ** 2
        for s in states
    ])
    return PressureReport(float(np.dot(p, per)), per, "center-formula", populations=p)


def pressure_boundary(states: Sequence[Eigenstate], populations=None,
                      p_ex: Optional[Sequence[float]] = None) -> PressureReport:
    """Boundary-integral pressure in one dimension:
    ``P = 1/(D V) sum_n p_n [a/2 (psi_n'(-a)**2 + psi_n'(a)**2) + P_ex_n]``
    with D = 1, V = 2a.  Without ``p_ex`` every summand is non-negative."""
    p = _as_populations(populations, len(states))
    ex = np.zeros(len(states)) if p_ex is None else np.asarray(p_ex, dtype=float)
    per = []
    for s, pe in zip(states, ex):
        a = s.half_width
        dl, dr = s.dpsi_walls
        per.append((0.5 * a * (dl * dl + dr * dr) + pe) / (2.0 * a))
    per = np.array(per)
    return PressureReport(float(np.dot(p, per)), per, "boundary-formula", populations=p)


def p_ex_numeric(state: Eigenstate, wall: WallModel, domain: BoxDomain | float,
                 alpha: float = 1e-4) -> float:
    """Wall-interaction term ``lim (<U_ex(Omega)> - <U_ex(Omega')>)/alpha``
    for the scaling ``a -> (1 + alpha) a`` with the profile re-anchored to
    the moved wall.

    Evaluated with central differences in alpha at ``alpha`` and
    ``alpha/2`` combined by one Richardson step.  For delta wells |psi|**2
    has a kink at the well, the central difference converges to the mean of
    the one-sided slopes with an O(alpha) error, and the Richardson weights
    are chosen for that order.
    """
    if not isinstance(domain, BoxDomain):
        domain = BoxDomain(float(domain))
    if wall.kind == "none":
        return 0.0
    wall.check_domain(domain)
    if not 0 < alpha < 0.1:
        raise ValueError("alpha must satisfy 0 < alpha << 1")
    a = domain.half_width
    if wall.kind == "delta_well" and 2 * alpha * a >= wall.b:
        raise ValueError("alpha too large: the shifted well leaves the outer region")

    def central(al):
        up = wall.expectation(state, a * (1.0 + al))
        down = wall.expectation(state, a * (1.0 - al))
        return (down - up) / (2.0 * al)

    c1, c2 = central(alpha), central(0.5 * alpha)
    if wall.kind == "delta_well":
        return 2.0 * c2 - c1
    return (4.0 * c2 - c1) / 3.0


def pressure_fd(
    energies_of_a: Callable[[float], np.ndarray],
    a: float,
    populations=None,
    *,
    beta: Optional[float] = None,
    step: Optional[float] = None,
) -> PressureReport:
    """Reference pressure from finite differences in the half-width.

    Adiabatic (``beta`` is None): populations fixed, per-level
    ``P_n = -dE_n/dV = -(1/2) dE_n/da``.

    Gibbs (``beta`` given): ``P = T d ln Z/dV`` at fixed temperature over the
    levels returned by ``energies_of_a``; ``per_level`` then holds the
    adiabatic values and ``populations`` the Gibbs weights at ``a``, so
    ``error_estimate`` is the isothermal/adiabatic mismatch.
    """
    if step is None:
        step = DEFAULT_FD_REL_STEP * a
    cache: dict[float, np.ndarray] = {}

    def energies(t):
        if t not in cache:
            cache[t] = np.asarray(energies_of_a(t), dtype=float)
        return cache[t]

    e0 = energies(a)
    per = np.array([
        -0.5 * derivative(lambda t, i=i: energies(t)[i], a, step) for i in range(len(e0))
    ])
    if beta is None:
        p = _as_populations(populations, len(e0))
        return PressureReport(float(np.dot(p, per)), per, "finite-difference", populations=p)

    if not beta > 0:
        raise ValueError("the Gibbs variant needs beta > 0")

    def log_z(t):
        e = energies(t)
        shift = e.min()
        return -beta * shift + math.log(float(np.sum(np.exp(-beta * (e - shift)))))

    pressure = 0.5 * derivative(log_z, a, step) / beta
    p = gibbs_populations(e0, beta).populations
    adiabatic = float(np.dot(p, per))
    return PressureReport(pressure, per, "free-energy", abs(pressure - adiabatic), populations=p)


@dataclass(frozen=True)
class BoxModel:
    """Box with an interior potential fixed in space plus a wall profile that
    moves with the walls; the object pressure_fd differentiates."""

    potential: Optional[Callable] = None
    wall: WallModel = field(default_factory=WallModel.none)
    n_levels: int = 5
    grid_size: int = DEFAULT_GRID

    def total_potential(self, a: float) -> Callable:
        wall_v = self.wall.potential(a)
        if self.potential is None:
            return wall_v
        v = self.potential
        return lambda x: np.asarray(v(x), dtype=float) + wall_v(x)

    def states(self, a: float) -> list[Eigenstate]:
        return solve_box(BoxDomain(a), self.total_potential(a), self.n_levels, self.grid_size)

    def energies(self, a: float) -> np.ndarray:
        return np.array([s.energy for s in self.states(a)])

    def pressures(self, a: float, populations=None, step: Optional[float] = None) -> dict:
        """All applicable pressure formulas at half-width ``a``."""
        states = self.states(a)
        p_ex = [p_ex_numeric(s, self.wall, a) for s in states]
        out = {
            "boundary": pressure_boundary(states, populations, p_ex),
            "fd": pressure_fd(self.energies, a, populations, step=step),
        }
        if self.potential is None:
            out["center"] = pressure_center(
                states, populations, wall_at_center=self.wall.center_value(a))
        return out
