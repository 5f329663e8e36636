import math

import numpy as np
import pytest

from sigquiver.curvature import integrate_kappa
from sigquiver.errors import InvalidSpecError
from sigquiver.gallery import (
    CURVATURE_NAMES,
    COGWHEEL_3456,
    CogwheelSpec,
    bump_curvatures,
    cogwheel,
    cogwheel_at,
    cogwheel_curvature,
    cogwheel_closed_form_kappa,
    cogwheel_rho,
    gallery_curvature,
    misc_examples,
    mn_curvature,
)
from sigquiver.geometry import curvature_at, vertex_parameters
from sigquiver.reconstruction import closure_info


def test_bump_periods_and_lengths():
    for f, ell in zip(bump_curvatures(), (8, 8, 16, 24)):
        info = closure_info(f)
        assert f.period == ell and abs(info.total_length_L - 48) <= 1e-3


def test_mn_values():
    f = mn_curvature()
    assert f.kappa(0.0) == pytest.approx(-0.7, abs=1e-15)
    assert abs(integrate_kappa(f, 0, 2 * math.pi) + 2 * math.pi / 5) <= 1e-9
    info = closure_info(f)
    assert info.m == 5 and abs(info.xi) == 1


@pytest.mark.parametrize("spec", [COGWHEEL_3456, CogwheelSpec(3, 1.5, (2, 5, 7))], ids=["3456", "257"])
def test_cogwheel_curvature_matches_closed_form(spec):
    rng = np.random.default_rng(11)
    for j in range(spec.n):
        t0, t1 = spec.sector(j)
        t = np.sort(rng.uniform(t0, t1, 1000))
        k, _ = curvature_at(cogwheel_at(spec, t))
        assert np.max(np.abs(k - cogwheel_closed_form_kappa(spec, t))) <= 1e-8


def test_rho_at_cog_endpoints():
    spec = COGWHEEL_3456
    t = 2 * np.pi * np.arange(spec.n) / spec.n
    r, r1, r2, r3 = cogwheel_rho(spec, t)
    assert np.allclose(r, spec.r0, atol=1e-12) and np.allclose(r1, 0, atol=1e-12)
    assert np.allclose(r2, spec.n**2, atol=1e-12) and np.allclose(r3, 0, atol=1e-9)


def test_curvature_at_cog_endpoints():
    spec = COGWHEEL_3456
    t = 2 * np.pi * np.arange(spec.n) / spec.n
    k, _ = curvature_at(cogwheel_at(spec, t))
    assert np.allclose(k, 1 - spec.n**2, atol=1e-12)
    assert np.allclose(cogwheel_closed_form_kappa(spec, t), -15, atol=1e-12)


def test_arc_length_curvature_matches_the_sampled_cogwheel():
    f = cogwheel_curvature()
    c = cogwheel(samples=4096)
    k, _ = curvature_at(c)
    from sigquiver.geometry import arc_length

    s = arc_length(c)
    assert abs(s[-1] - f.period) <= 1e-6 * f.period
    assert np.max(np.abs(f.kappa(s[:-1]) - k[:-1])) <= 1e-6 * np.max(np.abs(k))


@pytest.mark.parametrize("args", [(0, 1.0, ()), (2, -1.0, (1, 2)), (2, 1.0, (1, 0)), (2, 1.0, (1, 2.5)), (2, 1.0, (1,))])
def test_invalid_cogwheel_spec(args):
    with pytest.raises(InvalidSpecError):
        CogwheelSpec(*args)


def test_sectors_tile_the_circle():
    spec = CogwheelSpec(5, 1.0, (1, 2, 3, 4, 5))
    ends = [spec.sector(j) for j in range(5)]
    assert ends[0][0] == 0 and ends[-1][1] == pytest.approx(2 * np.pi)
    assert all(a[1] == pytest.approx(b[0]) for a, b in zip(ends, ends[1:]))


def test_misc_examples():
    ex = misc_examples()
    assert not closure_info(ex["sine"]).closed
    assert closure_info(ex["simple-sig"]).m == 5
    assert vertex_parameters(ex["degenerate"])[1]


@pytest.mark.parametrize("name", [n for n in CURVATURE_NAMES if n != "sine"])
def test_closed_gallery_integrals(name):
    f = gallery_curvature(name)
    info = closure_info(f)
    total = info.m * integrate_kappa(f, 0, f.period)
    assert info.closed and abs(total - 2 * math.pi * info.xi) <= 1e-5


def test_unknown_name():
    with pytest.raises(InvalidSpecError):
        gallery_curvature("nope")
