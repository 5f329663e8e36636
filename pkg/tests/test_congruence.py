import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sigquiver.congruence import are_congruent, compare, find_shift, symmetry_index
from sigquiver.curvature import CurvatureFunction
from sigquiver.errors import NotClosedError, OpenCurveError
from sigquiver.gallery import bump_curvatures, mn_curvature, simple_signature_curvature, sine_curvature
from sigquiver.geometry import apply_rigid_motion
from sigquiver.reconstruction import integrate_frenet

K = bump_curvatures()


def advanced(f, c):
    """s -> f(s + c)."""
    return CurvatureFunction([p.shifted(-c) for p in f.pieces], f.period, f.offset - c)


@pytest.mark.parametrize("f", [K[0], simple_signature_curvature()], ids=["k1", "trig"])
def test_shift_is_recovered(f):
    r = find_shift(f, advanced(f, 1.234))
    assert r.congruent and abs(r.shift_c - 1.234) <= 1e-4


@settings(max_examples=10)
@given(st.floats(0.01, 7.99))
def test_shift_antisymmetry(c):
    f, g = K[0], advanced(K[0], c)
    a, b = find_shift(f, g), find_shift(g, f)
    assert a.congruent and b.congruent
    d = (a.shift_c + b.shift_c) % 8
    assert min(d, 8 - d) <= 1e-4


def test_bump_family_congruence_classes():
    for i, j in itertools.combinations_with_replacement(range(4), 2):
        assert find_shift(K[i], K[j]).congruent == (i == j)


def test_different_periods_are_rejected_early():
    r = find_shift(K[2], K[3])
    assert not r.congruent and r.periods == (16, 24) and r.residual == math.inf


@pytest.mark.parametrize(
    "f, m", [(K[0], 6), (K[1], 6), (K[2], 3), (K[3], 2), (simple_signature_curvature(), 5), (mn_curvature(), 5)]
)
def test_symmetry_index(f, m):
    assert symmetry_index(f) == m


def test_symmetry_index_matches_traced_word(wb):
    from sigquiver.quiver import traced_word
    from sigquiver.words import minimal_subword

    for q in [*wb.bump_quivers, wb.mn_quiver, wb.cog_quiver]:
        assert minimal_subword(traced_word(q))[1] == symmetry_index(q.source)


def test_open_curvature_has_no_symmetry_index():
    with pytest.raises(NotClosedError):
        symmetry_index(sine_curvature())


def test_open_curves_are_refused():
    c = integrate_frenet(sine_curvature(), 2 * math.pi)
    with pytest.raises(OpenCurveError):
        are_congruent(c, c)


def test_moved_curve_is_congruent(wb):
    c = wb.bump_curves[0]
    r = are_congruent(c, apply_rigid_motion(c, 2.1, (40.0, -7.0)))
    assert r.congruent and r.residual <= 1e-4 * np.pi


def test_first_two_bump_curves_differ(wb):
    assert not are_congruent(wb.bump_curves[0], wb.bump_curves[1]).congruent


def test_simple_signature_shortcut():
    f = simple_signature_curvature()
    r = compare(f, advanced(f, 0.7))
    assert r.congruent and r.method == "simple-signature"
    assert abs(r.shift_c - 0.7) <= 1e-4


def test_reversed_comparison():
    f = K[0]
    assert compare(f, f.reversed(), reversed_=True).congruent


def test_verdict_json():
    import json

    d = json.loads(find_shift(K[0], K[1]).to_json())
    assert set(d) == {"congruent", "shift", "residual", "periods", "method"}
    assert d["congruent"] is False and d["shift"] is None
