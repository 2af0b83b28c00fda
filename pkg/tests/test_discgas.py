import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad
from scipy.special import i0e, i1e

from presslab.discgas import (
    DiscParams,
    partition_integral,
    pressure,
    pressure_scan,
    wall_potential,
)
from presslab.numkernel import integrate

from oracles import DISC_Z_057_078


def angular_potential(r, a, tol=1e-12):
    """Rim integral of u(d) a dphi with u(d) = -(1/a) exp(-d^2), sigma = 1."""
    def f(phi):
        d2 = r * r + a * a - 2 * a * r * np.cos(phi)
        return -np.exp(-d2)
    return integrate(f, 0.0, 2 * math.pi, tol, vectorized=True).value


def analytic_pressure(a, bs):
    """d/da ln Z by differentiating under the integral (scipy Bessel I0, I1)."""
    def beta_u(r):
        return -bs * 2 * math.pi * math.exp(-(r - a) ** 2) * i0e(2 * a * r)

    def dbeta_u_da(r):
        e = math.exp(-(r - a) ** 2)
        return -bs * 2 * math.pi * e * (-2 * a * i0e(2 * a * r) + 2 * r * i1e(2 * a * r))

    z = quad(lambda r: r * math.exp(-beta_u(r)), 0, a, epsabs=1e-14, epsrel=1e-13)[0]
    dz = a * math.exp(-beta_u(a)) + quad(
        lambda r: -r * dbeta_u_da(r) * math.exp(-beta_u(r)), 0, a, epsabs=1e-14, epsrel=1e-13)[0]
    return dz / z


def test_wall_potential_at_center():
    assert wall_potential(0.0, 1.0) == pytest.approx(-2 * math.pi * math.exp(-1), rel=1e-15)
    assert wall_potential(0.0, 1.0) == pytest.approx(-2.3114, abs=1e-4)


def test_wall_potential_scaled_path():
    mpmath.mp.dps = 30
    ref = float(-2 * mpmath.pi * mpmath.exp(-8) * mpmath.besseli(0, 8))
    assert wall_potential(2.0, 2.0) == pytest.approx(ref, rel=1e-13)
    # huge a*r: I0 alone would overflow
    assert np.isfinite(wall_potential(30.0, 30.0))
    assert wall_potential(30.0, 30.0) == pytest.approx(-2 * math.pi / math.sqrt(2 * math.pi * 1800), rel=1e-3)


@pytest.mark.parametrize("r,a", [(0.0, 0.5), (0.3, 0.78), (0.7, 0.78), (1.0, 1.0), (1.4, 1.5)])
def test_wall_potential_matches_rim_integral(r, a):
    assert wall_potential(r, a) == pytest.approx(angular_potential(r, a), abs=1e-8)


@given(st.floats(0.05, 3.0), st.floats(0.0, 1.0))
def test_wall_potential_negative_and_bounded(a, frac):
    # every rim element is at least a - r away
    r = frac * a
    u = wall_potential(r, a)
    assert u < 0
    assert abs(u) <= 2 * math.pi * math.exp(-(a - r) ** 2) * (1 + 1e-13)


def test_partition_ideal_gas():
    assert partition_integral(DiscParams(1.0, 0.0), 1e-12).value == pytest.approx(0.5, abs=1e-14)
    assert partition_integral(DiscParams(2.0, 0.0), 1e-12).value == pytest.approx(2.0, abs=1e-14)


def test_partition_golden():
    res = partition_integral(DiscParams(0.78, 0.57), 1e-12)
    assert res.value > 0
    assert res.value == pytest.approx(DISC_Z_057_078, abs=1e-11)


@given(st.floats(0.2, 5.0))
def test_ideal_gas_pressure(a):
    assert pressure(DiscParams(a, 0.0), fd_step=min(1e-5, a / 20)) == pytest.approx(2 / a, abs=1e-8)


def test_sign_change_at_078():
    assert pressure(DiscParams(0.78, 0.56)) > 0
    assert pressure(DiscParams(0.78, 0.57)) < 0


@pytest.mark.parametrize("a,bs", [(0.6, 0.57), (0.78, 0.56), (0.78, 0.57), (1.2, 0.3), (1.5, 2.0)])
def test_fd_matches_differentiation_under_integral(a, bs):
    assert pressure(DiscParams(a, bs)) == pytest.approx(analytic_pressure(a, bs), abs=1e-7)


def test_pressure_validation():
    with pytest.raises(ValueError):
        pressure(DiscParams(0.5, 0.1), fd_step=0.1)
    with pytest.raises(ValueError):
        DiscParams(-1.0, 0.1)
    with pytest.raises(ValueError):
        partition_integral(DiscParams(1.0, 0.1), tol=0)


def test_scan_structure():
    curves = pressure_scan(0.5, 1.5, 101, [0.56, 0.57])
    assert [c.beta_sigma for c in curves] == [0.56, 0.57]
    c56, c57 = curves
    assert np.all(np.diff(c57.a) > 0)
    assert np.all(np.isfinite(c57.pressure))
    i = int(np.argmin(np.abs(c57.a - 0.78)))
    assert c57.pressure[i] < 0 < c56.pressure[i]
    assert c57.zero_crossings() and not c56.zero_crossings()
    assert any(abs(z - 0.78) < 0.1 for z in c57.zero_crossings())


def test_scan_ideal_gas():
    (c,) = pressure_scan(0.5, 1.5, 11, [0.0])
    np.testing.assert_allclose(c.pressure, 2 / c.a, atol=1e-8)


def test_scan_validation():
    with pytest.raises(ValueError):
        pressure_scan(0.5, 1.5, 1, [0.57])
    with pytest.raises(ValueError):
        pressure_scan(0.0, 1.5, 11, [0.57])
    with pytest.raises(ValueError):
        pressure_scan(0.5, 1.5, 11, [])


def test_threaded_scan_is_identical():
    one = pressure_scan(0.6, 1.0, 9, [0.56, 0.57], threads=1)
    many = pressure_scan(0.6, 1.0, 9, [0.56, 0.57], threads=4)
    for c1, c2 in zip(one, many):
        np.testing.assert_array_equal(c1.pressure, c2.pressure)
