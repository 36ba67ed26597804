import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cauchyspec import (CATALAN, DomainError, QuadratureSpec, b_complex,
                        eta, exp_eta, integrate, ti2)
from cauchyspec.specialfun import b_real

SERIES_CATALAN = sum((-1) ** k / (2 * k + 1) ** 2 for k in range(200000))


def test_catalan_constant_vs_series():
    assert CATALAN == pytest.approx(SERIES_CATALAN, abs=3e-11)


def test_ti2_origin_and_catalan():
    assert ti2(0.0) == 0.0
    assert ti2(1.0) == pytest.approx(CATALAN, abs=1e-13)


def test_ti2_inversion_formula():
    # Ti2(t) - Ti2(1/t) = (pi/2) log t, checked by quadrature on both sides
    for t in (3.0, 10.0):
        lhs = ti2(t) - ti2(1.0 / t)
        assert lhs == pytest.approx(0.5 * math.pi * math.log(t), abs=1e-12)


def test_ti2_seams_match_quadrature():
    spec = QuadratureSpec(abs_tol=1e-14, rel_tol=1e-14)
    for t in (0.4, 0.5, 0.7, 1.9, 2.0, 2.3):
        ref = integrate(lambda u: np.arctan(u) / u, (1e-300, t), spec)
        assert ti2(t) == pytest.approx(ref, abs=1e-12)


def test_ti2_rejects_negative():
    with pytest.raises(DomainError):
        ti2(-0.5)


def test_eta_origin():
    assert eta(0.0) == 0.0


def test_eta_closed_value():
    assert eta(1.0) == pytest.approx(0.25 * math.log(2.0) + CATALAN / math.pi,
                                     abs=1e-13)


def test_eta_vs_direct_quadrature():
    spec = QuadratureSpec(abs_tol=1e-14, rel_tol=1e-14, max_subdivisions=8000)
    for t in (0.1, 1.0, 10.0, 100.0):
        direct = 0.25 * math.log1p(t * t) - integrate(
            lambda s: np.log(np.abs(s)) / (1 + s * s), (0.0, t), spec) / math.pi
        assert eta(t) == pytest.approx(direct, abs=1e-11)


@pytest.mark.parametrize("t", [0.5, 1.0, 3.0])
def test_eta_reflection(t):
    assert eta(-t) + eta(t) == pytest.approx(0.5 * math.log1p(t * t), abs=1e-13)


@settings(max_examples=40, deadline=None)
@given(st.floats(-50.0, 50.0))
def test_eta_envelope(t):
    # |eta(t) - log(1+t^2)/4| <= Catalan/pi
    assert abs(eta(t) - 0.25 * math.log1p(t * t)) <= CATALAN / math.pi + 1e-10


def test_exp_eta_values():
    assert exp_eta(0.0) == 1.0
    assert exp_eta(1.0) == pytest.approx(2 ** 0.25 * math.exp(CATALAN / math.pi),
                                         rel=1e-12)


@pytest.mark.parametrize("t", [0.25, 2.0, 7.5])
def test_exp_eta_product_rule(t):
    assert exp_eta(t) * exp_eta(-t) == pytest.approx(math.sqrt(1 + t * t),
                                                     rel=1e-12)


def test_b_at_i():
    val = b_complex(1j)
    assert abs(val - complex(math.log(2.0) / 2.0, math.pi / 8.0)) < 1e-12


def test_b_real_positive_axis():
    val = b_complex(2.0)
    assert val.real == pytest.approx(eta(2.0), abs=1e-11)
    assert val.imag == pytest.approx(0.0, abs=1e-11)


def test_b_negative_axis_boundary_values():
    # continued-from-above limit: eta(-3) + i arctan(3)
    val = b_complex(-3.0)
    assert val.real == pytest.approx(eta(-3.0), abs=1e-10)
    assert val.imag == pytest.approx(math.atan(3.0), abs=1e-10)
    assert b_real(-3.0) == pytest.approx(complex(eta(-3.0), math.atan(3.0)))


def test_b_rejects_lower_left_quadrant():
    with pytest.raises(DomainError):
        b_complex(-1.0 - 1.0j)


def test_b_real_part_envelope_on_grid():
    # Re b within Catalan/pi of log(1+|z|^2)/4 for |z| <= 100, Re z >= 0
    pts = [1.0, 10.0 + 3.0j, 0.5j, 60.0 + 60.0j, 100.0, 2.0 - 5.0j]
    for z in pts:
        val = b_complex(z).real
        mid = 0.25 * math.log1p(abs(z) ** 2)
        assert mid - CATALAN / math.pi - 1e-9 <= val <= mid + CATALAN / math.pi + 1e-9


def test_b_conjugate_symmetry():
    z = 1.5 + 0.8j
    assert b_complex(np.conj(z)) == pytest.approx(np.conj(b_complex(z)), abs=1e-11)
