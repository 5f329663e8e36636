"""Named example curves: bump family, trigonometric curvatures, cogwheels, and odd cases."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curvature import (
    BumpPiece,
    CogwheelPiece,
    CurvatureFunction,
    _cog_map,
    trig_curvature,
)
from .errors import InvalidSpecError
from .geometry import PlaneCurve

THIRD_PI = np.pi / 3

# bump coefficients (in units of pi/3) on [0,2], [2,4], [4,6], [6,8]
_K1 = (1, -2, 3, -1)
_K2 = (1, 3, -2, -1)


def _bumps(blocks, period):
    pieces = []
    x = 0.0
    for block in blocks:
        for coef in block:
            pieces.append(BumpPiece((x, x + 2), ((coef * THIRD_PI, x, x + 2),)))
            x += 2
    return CurvatureFunction(pieces, period)


def bump_curvatures():
    """kappa_1 .. kappa_4: the bump curvatures of periods 8, 8, 16 and 24."""
    return (
        _bumps([_K1], 8.0),
        _bumps([_K2], 8.0),
        _bumps([_K1, _K2], 16.0),
        _bumps([_K1, _K2, _K1], 24.0),
    )


def mn_curvature() -> CurvatureFunction:
    """kappa(s) = (sin s - cos 3s)/2 - 1/5."""
    return trig_curvature(-0.2, [(1.0, 0.5, 0.0), (3.0, 0.0, -0.5)], 2 * np.pi)


def simple_signature_curvature() -> CurvatureFunction:
    """kappa(s) = sin s + cos s + 1/5, whose signature is a circle."""
    return trig_curvature(0.2, [(1.0, 1.0, 1.0)], 2 * np.pi)


def sine_curvature() -> CurvatureFunction:
    return trig_curvature(0.0, [(1.0, 1.0, 0.0)], 2 * np.pi)


# --------------------------------------------------------------------------- cogwheels


@dataclass(frozen=True)
class CogwheelSpec:
    n: int
    r0: float
    a: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1 or len(self.a) != self.n:
            raise InvalidSpecError("cogwheel needs n >= 1 and one teeth count per cog")
        if self.r0 <= 0:
            raise InvalidSpecError("inner radius must be positive")
        if any(int(x) != x or x <= 0 for x in self.a):
            raise InvalidSpecError("teeth counts must be positive integers")

    def sector(self, j: int):
        """Angular interval I_j (0-based j)."""
        return 2 * j * np.pi / self.n, 2 * (j + 1) * np.pi / self.n


COGWHEEL_3456 = CogwheelSpec(4, 1.0, (3, 4, 5, 6))


def cogwheel_rho(spec: CogwheelSpec, t):
    """rho and its first three derivatives at angles t."""
    t = np.asarray(t, float)
    u = np.mod(t, 2 * np.pi)
    j = np.minimum((u * spec.n / (2 * np.pi)).astype(int), spec.n - 1)
    a = np.asarray(spec.a, float)[j]
    n = spec.n
    ph = n * a * u
    c, s = np.cos(ph), np.sin(ph)
    return spec.r0 + (1 - c) / a**2, (n / a) * s, n**2 * c, -(n**3) * a * s


def cogwheel_at(spec: CogwheelSpec, t) -> PlaneCurve:
    """Samples of gamma(t) = rho(t)(cos t, sin t) at the given increasing angles, with analytic derivatives."""
    t = np.asarray(t, float)
    r, r1, r2, r3 = cogwheel_rho(spec, t)
    e = np.column_stack([np.cos(t), np.sin(t)])
    f = np.column_stack([-np.sin(t), np.cos(t)])
    d1 = r1[:, None] * e + r[:, None] * f
    d2 = (r2 - r)[:, None] * e + 2 * r1[:, None] * f
    d3 = (r3 - 3 * r1)[:, None] * e + (3 * r2 - r)[:, None] * f
    return PlaneCurve(t, r[:, None] * e, d1, d2, d3, meta={"cogwheel": spec})


def cogwheel(spec: CogwheelSpec = COGWHEEL_3456, samples: int = 8192) -> PlaneCurve:
    """The whole cogwheel on [0, 2pi], closed."""
    c = cogwheel_at(spec, 2 * np.pi * np.arange(samples + 1) / samples)
    pts = c.points.copy()
    pts[-1] = pts[0]
    return PlaneCurve(c.t, pts, c.d1, c.d2, c.d3, closed=True, meta=c.meta)


def cogwheel_closed_form_kappa(spec: CogwheelSpec, t):
    """Closed-form curvature on each cog, written in the cog's own parameter."""
    t = np.asarray(t, float)
    u = np.mod(t, 2 * np.pi)
    j = np.minimum((u * spec.n / (2 * np.pi)).astype(int), spec.n - 1)
    a = np.asarray(spec.a, float)[j]
    n, r0 = spec.n, spec.r0
    c = np.cos(n * a * u)
    speed = np.sqrt((1 - a**2 * n**2) * c**2 - (2 * r0 * a**2 + 2) * c + r0**2 * a**4 + (n**2 + 2 * r0) * a**2 + 1) / a**2
    return (speed**2 * a**2 - (a**2 * n**2 * r0 + n**2) * c + n**2) / (speed**3 * a**2)


def _minimal_cog_block(a):
    n = len(a)
    for p in range(1, n + 1):
        if n % p == 0 and all(a[i] == a[i % p] for i in range(n)):
            return p
    return n


def cogwheel_curvature(spec: CogwheelSpec = COGWHEEL_3456) -> CurvatureFunction:
    """Curvature of the cogwheel as a function of arc-length, one piece per cog."""
    p = _minimal_cog_block(spec.a)
    pieces = []
    s = 0.0
    for j in range(p):
        t0, t1 = spec.sector(j)
        m = _cog_map(spec.n, spec.r0, spec.a[j], t0, t1)
        pieces.append(CogwheelPiece((s, s + m.length), spec.n, spec.r0, spec.a[j], t0, t1, s))
        s += m.length
    return CurvatureFunction(pieces, s)


# --------------------------------------------------------------------------- misc


def degenerate_curve(samples: int = 4000) -> PlaneCurve:
    """(t, t^6 sin(1/t)) on (-1/4pi, 1/4pi), sampled off t = 0; vertices accumulate at 0."""
    half = 1 / (4 * np.pi)
    t = np.linspace(-half, half, samples + 2)[1:-1]
    t = t[t != 0]
    s, c = np.sin(1 / t), np.cos(1 / t)
    y = t**6 * s
    y1 = t**4 * (6 * t * s - c)
    y2 = t**2 * (-10 * t * (-3 * t * s + c) - s)
    y3 = 60 * t**2 * (2 * t * s - c) - 12 * t * s + c
    one, zero = np.ones_like(t), np.zeros_like(t)
    return PlaneCurve(
        t,
        np.column_stack([t, y]),
        np.column_stack([one, y1]),
        np.column_stack([zero, y2]),
        np.column_stack([zero, y3]),
    )


def misc_examples() -> dict:
    return {
        "simple-sig": simple_signature_curvature(),
        "sine": sine_curvature(),
        "degenerate": degenerate_curve(),
    }


CURVATURE_NAMES = ("cinf1", "cinf2", "cinf3", "cinf4", "mn", "cogwheel", "simple-sig", "sine")
CURVE_NAMES = ("degenerate",)


def gallery_curvature(name: str) -> CurvatureFunction:
    if name in ("cinf1", "cinf2", "cinf3", "cinf4"):
        return bump_curvatures()[int(name[-1]) - 1]
    table = {
        "mn": mn_curvature,
        "cogwheel": cogwheel_curvature,
        "simple-sig": simple_signature_curvature,
        "sine": sine_curvature,
    }
    if name not in table:
        raise InvalidSpecError(f"unknown gallery curvature {name!r}; choose from {', '.join(CURVATURE_NAMES)}")
    return table[name]()
