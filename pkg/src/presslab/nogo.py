"""Randomized verification of the no-go theorem and its generalization.

Without a particle-wall term every summand of the boundary pressure formula
is a square weighted by x.n >= 0, so every level pushes outward; and the
Dirichlet eigenvalues cannot increase when the box grows.  These checks run
the solver on random smooth interior potentials and count anything that
contradicts either statement, cross-checking the boundary formula against
finite differences of the energies on the way.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from typing import Callable, Sequence

import numpy as np

from . import qbox
from .qbox import NO_GO_FLOOR, BoxDomain, BoxModel, WallModel

log = logging.getLogger(__name__)

MONOTONICITY_TOL = 1e-9
FORMULA_TOL = 1e-4
MONOTONICITY_FACTORS = (0.9, 0.95, 1.0, 1.05, 1.1)


class PreconditionError(ValueError):
    """The wall model does not satisfy the generalized no-go hypothesis."""


@dataclass(frozen=True)
class PotentialSample:
    """``v(x) = sum_j c_j exp(-(x - mu_j)**2 / w_j**2)``, fixed in space."""

    description: str
    amplitudes: tuple
    centers: tuple
    widths: tuple
    seed: int

    @classmethod
    def draw(cls, rng: np.random.Generator, a: float, seed: int, n_terms: int = 3):
        c = rng.uniform(-30.0, 30.0, n_terms)
        mu = rng.uniform(-0.8 * a, 0.8 * a, n_terms)
        w = rng.uniform(0.1 * a, 0.5 * a, n_terms)
        desc = " + ".join(
            f"{ci:.3f}*exp(-(x-{mi:.3f})^2/{wi:.3f}^2)" for ci, mi, wi in zip(c, mu, w)
        )
        return cls(desc, tuple(c), tuple(mu), tuple(w), seed)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for c, mu, w in zip(self.amplitudes, self.centers, self.widths):
            out += c * np.exp(-((x - mu) / w) ** 2)
        return out


@dataclass
class NogoReport:
    trials: int = 0
    min_per_level_pressure: float = np.inf
    min_total_pressure: float = np.inf
    monotonicity_violations: int = 0
    max_formula_disagreement: float = 0.0
    solver_failures: int = 0

    @property
    def violations(self) -> int:
        neg = int(self.min_per_level_pressure < NO_GO_FLOOR) + int(self.min_total_pressure < NO_GO_FLOOR)
        return neg + self.monotonicity_violations + int(self.max_formula_disagreement > FORMULA_TOL)

    @property
    def ok(self) -> bool:
        return self.violations == 0 and self.solver_failures == 0

    def merge(self, other: "NogoReport") -> "NogoReport":
        return NogoReport(
            self.trials + other.trials,
            min(self.min_per_level_pressure, other.min_per_level_pressure),
            min(self.min_total_pressure, other.min_total_pressure),
            self.monotonicity_violations + other.monotonicity_violations,
            max(self.max_formula_disagreement, other.max_formula_disagreement),
            self.solver_failures + other.solver_failures,
        )

    def to_dict(self) -> dict:
        d = asdict(self)
        for key, val in d.items():
            if isinstance(val, float) and not np.isfinite(val):
                d[key] = None
        d["violations"] = self.violations
        d["ok"] = self.ok
        return d


def _random_populations(rng: np.random.Generator, n: int, count: int) -> np.ndarray:
    # flat Dirichlet = uniform on the simplex
    return rng.dirichlet(np.ones(n), size=count)


def _relative_gap(x, ref) -> float:
    x, ref = np.asarray(x), np.asarray(ref)
    return float(np.max(np.abs(x - ref) / np.maximum(1.0, np.abs(ref))))


def check_monotonicity(potential: Callable | None, a_grid: Sequence[float], n_levels: int = 5,
                       grid_size: int = qbox.DEFAULT_GRID) -> NogoReport:
    """Count pairs with ``E_n(a[i+1]) > E_n(a[i]) + 1e-9`` (wall = none)."""
    a_grid = np.asarray(a_grid, dtype=float)
    if a_grid.size < 3 or np.any(np.diff(a_grid) <= 0):
        raise ValueError("a_grid must be ascending with at least 3 points")
    e = np.array([qbox.box_energies(a, potential, n_levels, grid_size) for a in a_grid])
    violations = int(np.sum(np.diff(e, axis=0) > MONOTONICITY_TOL))
    return NogoReport(trials=1, monotonicity_violations=violations,
                      min_per_level_pressure=np.inf, min_total_pressure=np.inf)


def _check_model(model: BoxModel, a: float, rng: np.random.Generator,
                 n_mixtures: int) -> NogoReport:
    states = model.states(a)
    p_ex = [qbox.p_ex_numeric(s, model.wall, a) for s in states]
    boundary = qbox.pressure_boundary(states, None, p_ex)
    fd = qbox.pressure_fd(model.energies, a)
    mixtures = _random_populations(rng, len(states), n_mixtures)
    totals = mixtures @ boundary.per_level
    return NogoReport(
        trials=1,
        min_per_level_pressure=float(boundary.per_level.min()),
        min_total_pressure=float(totals.min()),
        max_formula_disagreement=_relative_gap(boundary.per_level, fd.per_level),
    )


def check_nogo(n_trials: int = 100, seed: int = 42, a: float = 1.0, n_levels: int = 5, *,
               grid_size: int = qbox.DEFAULT_GRID, n_mixtures: int = 32,
               monotonicity: bool = True) -> NogoReport:
    """Random interior potentials, no wall term.  Records the smallest
    per-level and mixture boundary pressures, eigenvalue monotonicity
    violations over ``a * MONOTONICITY_FACTORS``, and the largest relative
    gap between boundary-formula and finite-difference pressures.  Solver
    failures are counted, not raised."""
    if n_trials < 1:
        raise ValueError("n_trials must be at least 1")
    rng = np.random.default_rng(seed)
    report = NogoReport()
    for _ in range(n_trials):
        sample = PotentialSample.draw(rng, a, seed)
        trial_rng = np.random.default_rng(rng.integers(2**63))
        try:
            one = _check_model(BoxModel(sample, WallModel.none(), n_levels, grid_size), a,
                               trial_rng, n_mixtures)
            if monotonicity:
                mono = check_monotonicity(sample, a * np.array(MONOTONICITY_FACTORS),
                                          n_levels, grid_size)
                one.monotonicity_violations = mono.monotonicity_violations
        except (qbox.SolverError, ValueError) as exc:
            log.warning("trial failed for %s: %s", sample.description, exc)
            one = NogoReport(trials=1, solver_failures=1)
        report = report.merge(one)
    return report


def check_wall_precondition(wall: WallModel, a: float, alphas=(1e-4, 1e-3, 1e-2),
                            n_samples: int = 4001) -> None:
    """Raise PreconditionError unless ``u((1+alpha)a - |x|) <= u(a - |x|)``
    on a sample grid for each small alpha, i.e. expansion never raises the
    wall potential."""
    if wall.kind == "delta_well":
        raise PreconditionError("attractive delta wells violate the generalized no-go hypothesis")
    if wall.kind == "none":
        return
    x = np.linspace(-a, a, n_samples)
    base = np.asarray(wall.profile(a - np.abs(x)), dtype=float)
    for al in alphas:
        moved = np.asarray(wall.profile((1 + al) * a - np.abs(x)), dtype=float)
        worst = float(np.max(moved - base))
        if worst > 1e-12 * max(1.0, float(np.max(np.abs(base)))):
            raise PreconditionError(
                f"expanding by alpha={al} raises the wall potential by up to {worst:.3g}")


def check_generalized_nogo(wall: WallModel, a: float = 1.0, n_levels: int = 5, *,
                           potential: Callable | None = None, seed: int = 0,
                           n_mixtures: int = 256,
                           grid_size: int = qbox.DEFAULT_GRID) -> NogoReport:
    """Walls that never rise under expansion give P_ex >= 0 and hence
    non-negative pressure; checked on random population vectors.  An
    optional interior potential may be added."""
    BoxDomain(a)
    check_wall_precondition(wall, a)
    rng = np.random.default_rng(seed)
    return _check_model(BoxModel(potential, wall, n_levels, grid_size), a, rng, n_mixtures)
