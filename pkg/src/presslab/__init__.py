"""Thermodynamic pressure of confined quantum and classical systems."""

from .deltawall import DeltaWallParams, NoBoundState, bound_pressure, bound_state
from .discgas import DiscParams, pressure_scan, wall_potential
from .nogo import check_generalized_nogo, check_monotonicity, check_nogo
from .qbox import (
    BoxDomain,
    BoxModel,
    Eigenstate,
    MixedState,
    PressureReport,
    WallModel,
    adiabatic_work,
    gibbs_populations,
    p_ex_numeric,
    pressure_boundary,
    pressure_center,
    pressure_fd,
    solve_box,
)

__version__ = "0.1.0"
