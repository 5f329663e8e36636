import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sigquiver.curvature import (
    BumpPiece,
    CurvatureFunction,
    adaptive_gl,
    bump,
    bump_value,
    constant_curvature,
    critical_points,
    integrate_kappa,
    trig_curvature,
)
from sigquiver.errors import DegenerateFunctionError, InvalidIntervalError, InvalidSpecError, JunctionError, NonMinimalPeriodError
from sigquiver.gallery import bump_curvatures, simple_signature_curvature, sine_curvature

K1, K2, K3, K4 = bump_curvatures()


# --------------------------------------------------------------------------- bump


def test_bump_midpoint_and_support():
    f, _ = bump_value(np.array([1.0]), 0, 2)
    assert f[0] == 1.0
    v, d = bump_value(np.array([-1.0, 0.0, 2.0, 3.0]), 0, 2)
    assert np.all(v == 0) and np.all(d == 0)


def test_bump_integral_is_half_width():
    val = adaptive_gl(lambda s: bump_value(s, 0, 2)[0], 0, 2)
    assert abs(val - 1.0) <= 1e-9


def test_bump_rejects_empty_interval():
    with pytest.raises(InvalidIntervalError):
        bump(2, 2)
    with pytest.raises(InvalidIntervalError):
        bump(3, 1)


@given(st.floats(-50, 50), st.floats(0.05, 20))
def test_bump_integral_random(r1, width):
    r2 = r1 + width
    val = adaptive_gl(lambda s: bump_value(s, r1, r2)[0], r1, r2)
    assert abs(val - width / 2) <= 1e-9


def test_bump_no_overflow_near_cutoffs():
    s = np.array([1e-300, 1e-12, 2 - 1e-12, 2 - 1e-300])
    with np.errstate(all="raise"):
        v, d = bump_value(s, 0.0, 2.0)
    assert np.all(np.isfinite(v)) and np.all(np.isfinite(d))
    assert np.all(v <= 1e-100)


# --------------------------------------------------------------------------- evaluation


def test_k1_values():
    assert abs(K1.kappa(1.0) - math.pi / 3) <= 1e-9
    assert K1.kappa(0.0) == 0.0
    assert abs(K1.kappa(3.0) + 2 * math.pi / 3) <= 1e-9


def test_periods():
    assert [k.period for k in (K1, K2, K3, K4)] == [8, 8, 16, 24]


@given(st.floats(-100, 100), st.integers(-20, 20), st.sampled_from(range(4)))
def test_periodicity(s, k, which):
    f = bump_curvatures()[which] if which < 3 else simple_signature_curvature()
    a, ad = f.eval(s)
    b, bd = f.eval(s + k * f.period)
    tol = 1e-12 * max(1.0, f.scale)
    # the shifted argument itself carries rounding of order |k*ell|*eps
    tol += 1e-13 * abs(k * f.period) * max(1.0, float(np.max(np.abs(f.kappa_dot(f.grid(512))))))
    assert abs(a - b) <= tol and abs(ad - bd) <= 10 * tol


@pytest.mark.parametrize("f", [K1, K3, simple_signature_curvature(), sine_curvature()], ids=["k1", "k3", "simple", "sine"])
def test_derivative_matches_finite_difference(f):
    rng = np.random.default_rng(1)
    s = rng.uniform(0, f.period, 100)
    h = 1e-5
    fd = (f.kappa(s + h) - f.kappa(s - h)) / (2 * h)
    scale = float(np.max(np.abs(f.kappa_dot(f.grid(4096)))))
    assert np.max(np.abs(fd - f.kappa_dot(s))) <= 1e-6 * scale


@pytest.mark.parametrize("f", [K1, K2, K3, K4], ids=["k1", "k2", "k3", "k4"])
def test_junctions_are_c1(f):
    for _, dk, dkd in f.junction_jumps():
        assert abs(dk) <= 1e-9 and abs(dkd) <= 1e-9


# --------------------------------------------------------------------------- construction errors


def test_gap_in_tiling_is_rejected():
    with pytest.raises(InvalidSpecError):
        CurvatureFunction([bump(0, 2), bump(3, 4)], 4)


def test_jump_at_junction_is_rejected():
    p1 = BumpPiece((0.0, 1.0), ((1.0, 0.0, 2.0),))
    p2 = BumpPiece((1.0, 2.0), ((0.0, 0.0, 2.0),))
    with pytest.raises(JunctionError):
        CurvatureFunction([p1, p2], 2)


def test_non_minimal_period_is_rejected():
    with pytest.raises(NonMinimalPeriodError):
        trig_curvature(0.1, [(2.0, 1.0, 0.0)], 2 * math.pi)


# --------------------------------------------------------------------------- integrals


def test_integral_k1_one_period():
    assert abs(integrate_kappa(K1, 0, 8) - math.pi / 3) <= 1e-6


def test_integral_k3_one_period():
    assert abs(integrate_kappa(K3, 0, 16) - 2 * math.pi / 3) <= 1e-6


def test_integral_sine():
    assert abs(integrate_kappa(sine_curvature(), 0, 2 * math.pi)) <= 1e-9


@given(st.floats(-30, 30), st.floats(0, 40), st.floats(0, 40))
def test_integral_is_additive(a, d1, d2):
    b, c = a + d1, a + d1 + d2
    total = integrate_kappa(K3, a, c)
    assert abs(total - integrate_kappa(K3, a, b) - integrate_kappa(K3, b, c)) <= 1e-8


def test_integral_over_shifted_offset():
    f = simple_signature_curvature()
    g = CurvatureFunction([f.pieces[0].shifted(0.7)], f.period, 0.7)
    assert abs(integrate_kappa(g, 0.7, 0.7 + f.period) - integrate_kappa(f, 0, f.period)) <= 1e-9
    assert abs(integrate_kappa(g, 0.0, 1.0) - integrate_kappa(f, -0.7, 0.3)) <= 1e-9


# --------------------------------------------------------------------------- critical points


def test_k1_critical_points_are_integers():
    cp = critical_points(K1)
    assert np.allclose(cp.points, np.arange(8), atol=1e-6)
    assert not cp.degenerate


def test_simple_signature_critical_points():
    cp = critical_points(simple_signature_curvature())
    assert np.allclose(cp.points, [math.pi / 4, 5 * math.pi / 4], atol=1e-6)


def test_constant_has_no_critical_points():
    with pytest.raises(DegenerateFunctionError):
        critical_points(constant_curvature(1.0))


@pytest.mark.parametrize("f", [K2, K3, K4], ids=["k2", "k3", "k4"])
def test_bump_critical_points_on_integers(f):
    cp = critical_points(f)
    assert np.allclose(cp.points, np.arange(f.period), atol=1e-6)


# --------------------------------------------------------------------------- serialization


@pytest.mark.parametrize("f", [K1, K4, simple_signature_curvature()], ids=["k1", "k4", "trig"])
def test_json_round_trip(f):
    g = CurvatureFunction.from_json(f.to_json())
    s = np.linspace(-3, 30, 333)
    assert np.array_equal(f.kappa(s), g.kappa(s))
    assert np.array_equal(f.kappa_dot(s), g.kappa_dot(s))


def test_json_layout():
    d = K1.to_dict()
    assert d["period"] == 8
    assert {"kind", "interval", "params"} <= set(d["pieces"][0])


def test_missing_field():
    with pytest.raises(InvalidSpecError):
        CurvatureFunction.from_dict({"pieces": []})


def test_reversed_negates_and_mirrors():
    f = simple_signature_curvature()
    r = f.reversed()
    s = np.linspace(0, f.period, 50)
    assert np.allclose(r.kappa(s), -f.kappa(-s), atol=1e-9)
    assert np.allclose(r.kappa_dot(s), f.kappa_dot(-s), atol=1e-7)
