"""Frenet-Serret reconstruction of unit-speed curves from curvature, and closedness."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .curvature import CurvatureFunction
from .errors import InvalidStepError
from .geometry import CLOSURE_TOL, PlaneCurve, frenet_curve

_GL5_X, _GL5_W = np.polynomial.legendre.leggauss(5)

RATIONAL_BOUND = 64
RATIONAL_TOL = 1e-6


def _panel_edges(f: CurvatureFunction, s_max: float, step: float) -> np.ndarray:
    n = int(np.floor(s_max / step + 1e-9))
    grid = step * np.arange(n + 1)
    # piece boundaries in every period touched by [0, s_max]
    starts = np.array([p.interval[0] for p in f.pieces])
    k0 = int(np.floor((0 - f.offset) / f.period)) - 1
    k1 = int(np.ceil((s_max - f.offset) / f.period)) + 1
    bnds = (starts[None, :] + f.period * np.arange(k0, k1 + 1)[:, None]).ravel()
    bnds = bnds[(bnds > 0) & (bnds < s_max)]
    edges = np.unique(np.concatenate([grid, bnds, [s_max]]))
    # drop slivers created by boundaries landing next to grid points
    keep = np.concatenate([[True], np.diff(edges) > 1e-12 * max(1.0, s_max)])
    edges = edges[keep]
    edges[-1] = s_max
    return edges


def integrate_frenet(f: CurvatureFunction, s_max: float, step: float | None = None) -> PlaneCurve:
    """Unit-speed curve with curvature ``f`` on [0, s_max], gamma(0)=(0,0), gamma'(0)=(1,0).

    The tangent angle eta = int kappa and the position int (cos eta, sin eta)
    are accumulated with 5-point Gauss-Legendre per panel; panels never
    straddle a curvature piece boundary. Samples are returned at the panel
    edges (multiples of ``step`` plus the inserted boundaries).
    """
    if not s_max > 0:
        raise InvalidStepError("s_max must be positive")
    if step is None:
        step = s_max / 8192
    if not step > 0:
        raise InvalidStepError("step must be positive")
    e = _panel_edges(f, s_max, step)
    lo, hi = e[:-1], e[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    # angle increments per panel
    xk = mid[:, None] + half[:, None] * _GL5_X
    d_eta = half * (f.kappa(xk) @ _GL5_W)
    eta_edges = np.concatenate([[0.0], np.cumsum(d_eta)])
    # angle at each panel's Gauss nodes: eta(lo) + int_lo^x kappa
    hx = 0.5 * (xk - lo[:, None])
    inner = (lo[:, None] + hx)[..., None] + hx[..., None] * _GL5_X
    eta_nodes = eta_edges[:-1, None] + hx * (f.kappa(inner) @ _GL5_W)
    dx = half * (np.cos(eta_nodes) @ _GL5_W)
    dy = half * (np.sin(eta_nodes) @ _GL5_W)
    pts = np.column_stack([np.concatenate([[0.0], np.cumsum(dx)]), np.concatenate([[0.0], np.cumsum(dy)])])
    k, kd = f.eval(e)
    return frenet_curve(e, pts, eta_edges, k, kd)


@dataclass(frozen=True)
class ClosureInfo:
    integral_over_ell: float
    xi: int
    m: int
    closed: bool
    total_length_L: float
    gap: float = float("nan")
    diagnostic: str = ""


def endpoint_after(f: CurvatureFunction, periods: int, step: float | None = None):
    """Endpoint and tangent angle after ``periods`` periods, composing one-period rigid motions."""
    ell = f.period
    c = integrate_frenet(f, ell, step or ell / 8192)
    p1 = c.points[-1]
    theta = c.angle[-1] - c.angle[0]
    total = np.zeros(2)
    for k in range(periods):
        a = k * theta
        total += np.array([np.cos(a) * p1[0] - np.sin(a) * p1[1], np.sin(a) * p1[0] + np.cos(a) * p1[1]])
    return total, periods * theta


def closure_info(f: CurvatureFunction) -> ClosureInfo:
    """Turning number, symmetry index and closedness from the curvature integral.

    (1/2pi) int_0^ell kappa is matched to xi/m by continued fractions with
    denominator at most 64; the geometric endpoint gap over L = m ell must
    confirm it.
    """
    ell = f.period
    total = f.period_integral
    ratio = total / (2 * np.pi)
    if abs(ratio) <= RATIONAL_TOL:
        return ClosureInfo(total, 0, 1, False, ell, diagnostic="zero curvature integral over a period")
    frac = Fraction(ratio).limit_denominator(RATIONAL_BOUND)
    xi, m = frac.numerator, frac.denominator
    if abs(ratio - xi / m) > RATIONAL_TOL or gcd(abs(xi), m) != 1:
        return ClosureInfo(total, 0, 1, False, ell, diagnostic=f"integral/2pi={ratio:.9g} is not a small rational")
    L = m * ell
    end, _ = endpoint_after(f, m)
    gap = float(np.hypot(*end)) / L
    closed = gap <= CLOSURE_TOL
    diag = "" if closed else f"rational test gives {xi}/{m} but endpoint gap is {gap:.3g}"
    return ClosureInfo(total, xi, m, closed, L, gap, diag)
