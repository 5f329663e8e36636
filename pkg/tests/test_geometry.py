import io

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sigquiver.curvature import constant_curvature
from sigquiver.errors import InvalidStepError, NonRegularCurveError
from sigquiver.gallery import bump_curvatures, degenerate_curve, sine_curvature
from sigquiver.geometry import (
    PlaneCurve,
    apply_rigid_motion,
    closure_gap,
    curvature_at,
    curve_to_csv,
    polyline_curve,
    read_polyline_csv,
    resample_arclength,
    vertex_parameters,
)
from sigquiver.reconstruction import integrate_frenet


def circle(r=2.0, n=400):
    t = np.linspace(0, 2 * np.pi, n + 1)
    c, s = np.cos(t), np.sin(t)
    return PlaneCurve(
        t,
        r * np.column_stack([c, s]),
        r * np.column_stack([-s, c]),
        r * np.column_stack([-c, -s]),
        r * np.column_stack([s, -c]),
        closed=True,
    )


def parabola(t):
    t = np.asarray(t, float)
    one, zero = np.ones_like(t), np.zeros_like(t)
    return PlaneCurve(
        t,
        np.column_stack([t, t * t]),
        np.column_stack([one, 2 * t]),
        np.column_stack([zero, 2 * one]),
        np.column_stack([zero, zero]),
    )


def test_circle_curvature():
    k, kd = curvature_at(circle(2.0))
    assert np.allclose(k, 0.5, atol=1e-14) and np.allclose(kd, 0, atol=1e-14)


def test_parabola_vertex():
    c = parabola(np.linspace(-1, 1, 201))
    k, kd = curvature_at(c, 100)
    assert abs(k - 2) <= 1e-14 and abs(kd) <= 1e-14


def test_reversal_negates_kappa_keeps_kappa_dot():
    c = parabola(np.linspace(-1, 1, 201))
    k, kd = curvature_at(c)
    kr, kdr = curvature_at(c.reversed())
    assert np.allclose(kr[::-1], -k, atol=1e-13)
    assert np.allclose(kdr[::-1], kd, atol=1e-13)


def test_non_regular_sample():
    c = parabola(np.linspace(-1, 1, 5))
    d1 = c.d1.copy()
    d1[2] = 0
    bad = PlaneCurve(c.t, c.points, d1, c.d2, c.d3)
    with pytest.raises(NonRegularCurveError):
        curvature_at(bad)


def test_parameter_must_increase():
    with pytest.raises(ValueError):
        PlaneCurve(np.array([0.0, 0.0]), np.zeros((2, 2)), np.ones((2, 2)), np.zeros((2, 2)), np.zeros((2, 2)))


# --------------------------------------------------------------------------- resampling


def test_unit_circle_length():
    r = resample_arclength(circle(1.0))
    assert abs(r.t[-1] - 2 * np.pi) <= 1e-6
    assert np.allclose(r.speed, 1, atol=1e-6)


def test_segment_resampling():
    t = np.linspace(0, 5, 11)
    zero = np.zeros_like(t)
    seg = PlaneCurve(t, np.column_stack([t, zero]), np.column_stack([zero + 1, zero]), np.zeros((11, 2)), np.zeros((11, 2)))
    r = resample_arclength(seg, 0.25)
    assert len(r) == 21
    assert np.allclose(r.d1, [1, 0])


def test_bump_curve_length(wb):
    c = wb.bump_curves[0]
    r = resample_arclength(c)
    assert abs(r.t[-1] - 48) <= 1e-3


def test_invalid_step():
    with pytest.raises(InvalidStepError):
        resample_arclength(circle(), 0.0)


def test_resampling_keeps_invariants():
    # a non-unit-speed ellipse; a much denser copy serves as the interpolation oracle
    t = np.linspace(0, 2 * np.pi, 80001)
    a, b = 3.0, 1.0
    c, s = np.cos(t), np.sin(t)
    e = PlaneCurve(
        t,
        np.column_stack([a * c, b * s]),
        np.column_stack([-a * s, b * c]),
        np.column_stack([-a * c, -b * s]),
        np.column_stack([a * s, -b * c]),
        closed=True,
    )
    r = resample_arclength(e, e.length / 3000)
    k, kd = curvature_at(e)
    kr, kdr = curvature_at(r)
    from sigquiver.geometry import arc_length

    s0 = arc_length(e)
    assert np.max(np.abs(np.interp(r.t, s0, k) - kr)) <= 1e-5
    assert np.max(np.abs(np.interp(r.t, s0, kd) - kdr)) <= 1e-5 * max(1.0, np.max(np.abs(kd)))


# --------------------------------------------------------------------------- rigid motions


def test_identity_motion_is_bitwise():
    c = circle()
    assert apply_rigid_motion(c, 0.0) is c


def test_half_turn():
    c = PlaneCurve(np.array([0.0, 1.0]), np.array([[1.0, 0.0], [1.0, 1.0]]), np.array([[0, 1.0], [0, 1.0]]), np.zeros((2, 2)), np.zeros((2, 2)))
    m = apply_rigid_motion(c, np.pi)
    assert np.allclose(m.points[0], [-1, 0], atol=1e-15)


@given(st.floats(-10, 10), st.floats(-100, 100), st.floats(-100, 100))
def test_invariants_survive_motion(angle, dx, dy):
    c = parabola(np.linspace(-2, 2, 101))
    k, kd = curvature_at(c)
    km, kdm = curvature_at(apply_rigid_motion(c, angle, (dx, dy)))
    assert np.max(np.abs(k - km)) <= 1e-12 and np.max(np.abs(kd - kdm)) <= 1e-12


# --------------------------------------------------------------------------- closure


def test_circle_reconstruction_closes():
    c = integrate_frenet(constant_curvature(1.0), 2 * np.pi)
    assert closure_gap(c) <= 1e-6


def test_sine_reconstruction_is_open():
    c = integrate_frenet(sine_curvature(), 2 * np.pi)
    assert closure_gap(c) > 1e-3


def test_fourth_bump_curve_closes():
    c = integrate_frenet(bump_curvatures()[3], 48.0)
    assert closure_gap(c) <= 1e-4


# --------------------------------------------------------------------------- polylines and csv


def test_csv_round_trip():
    c = circle(1.5, 2000)
    text = "t,x,y\n" + "".join(f"{float(t)!r},{float(x)!r},{float(y)!r}\n" for t, (x, y) in zip(c.t, c.points))
    p = read_polyline_csv(text)
    assert p.closed and p.lower_trust
    k, _ = curvature_at(p)
    assert np.allclose(k, 1 / 1.5, atol=1e-6)


def test_csv_header_is_checked():
    with pytest.raises(ValueError):
        read_polyline_csv("a,b\n1,2\n")


def test_export_header():
    out = curve_to_csv(circle())
    head = out.splitlines()[0]
    assert head == "s,x,y,kappa,kappa_dot"
    rows = list(io.StringIO(out))
    assert len(rows) == 402


def test_finite_differences_are_fourth_order():
    errs = []
    for n in (200, 400):
        t = np.linspace(0, 2 * np.pi, n + 1)
        c = polyline_curve(t, np.column_stack([np.cos(t), 2 * np.sin(t)]), closed=True)
        ex = np.column_stack([np.sin(t), -2 * np.cos(t)])
        errs.append(np.max(np.abs(c.d3 - ex)))
    assert errs[0] / errs[1] > 12


# --------------------------------------------------------------------------- degeneracy flag


def test_degenerate_example_is_flagged_near_zero():
    roots, flagged, cluster = vertex_parameters(degenerate_curve())
    assert flagged
    assert np.max(np.abs(cluster)) < 0.02


def test_regular_curve_is_not_flagged():
    t = np.linspace(0, 2 * np.pi, 2001)
    c = polyline_curve(t, np.column_stack([3 * np.cos(t), np.sin(t)]), closed=True)
    roots, flagged, _ = vertex_parameters(c)
    assert not flagged
    assert len(roots) == 4
    # vertices of the ellipse sit at multiples of pi/2
    off = np.abs(roots / (np.pi / 2) - np.round(roots / (np.pi / 2)))
    assert np.max(off) <= 1e-3
