"""Sampled regular plane curves: curvature from derivatives, arc-length resampling, rigid motions, I/O."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from .errors import InvalidStepError, NonRegularCurveError

CLOSURE_TOL = 1e-4  # relative to length


def _det(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def _dot(a, b):
    return a[..., 0] * b[..., 0] + a[..., 1] * b[..., 1]


@dataclass(frozen=True, eq=False)
class PlaneCurve:
    """Samples of a regular parameterization gamma(t) with its first three derivatives.

    ``lower_trust`` marks curves whose derivatives came from finite differences.
    ``angle`` optionally carries the tangent angle per sample (Frenet reconstructions).
    """

    t: np.ndarray
    points: np.ndarray
    d1: np.ndarray
    d2: np.ndarray
    d3: np.ndarray
    closed: bool = False
    lower_trust: bool = False
    angle: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if np.any(np.diff(self.t) <= 0):
            raise ValueError("curve parameter must be strictly increasing")

    def __len__(self):
        return len(self.t)

    @property
    def speed(self) -> np.ndarray:
        return np.hypot(self.d1[:, 0], self.d1[:, 1])

    @property
    def length(self) -> float:
        return float(arc_length(self)[-1])

    def reversed(self) -> PlaneCurve:
        """Same point set traversed backwards, t -> -t."""
        return PlaneCurve(
            -self.t[::-1],
            self.points[::-1].copy(),
            -self.d1[::-1],
            self.d2[::-1].copy(),
            -self.d3[::-1],
            closed=self.closed,
            lower_trust=self.lower_trust,
        )


def curvature_at(c: PlaneCurve, i=None):
    """(kappa, kappa_dot) at sample(s) ``i`` (all samples when None).

    kappa = det(d1, d2) / |d1|^3
    kappa_dot = [(d1.d1) det(d1, d3) - 3 (d1.d2) det(d1, d2)] / |d1|^6
    """
    sl = slice(None) if i is None else i
    d1, d2, d3 = c.d1[sl], c.d2[sl], c.d3[sl]
    q = _dot(d1, d1)
    if np.any(q == 0):
        raise NonRegularCurveError("|gamma'| = 0 at a sample")
    det12 = _det(d1, d2)
    k = det12 / q**1.5
    kd = (q * _det(d1, d3) - 3 * _dot(d1, d2) * det12) / q**3
    return k, kd


def arc_length(c: PlaneCurve) -> np.ndarray:
    """Cumulative arc-length at each sample (Hermite-corrected trapezoid, 4th order)."""
    g = c.speed
    if np.any(g == 0):
        raise NonRegularCurveError("|gamma'| = 0 at a sample")
    dg = _dot(c.d1, c.d2) / g
    h = np.diff(c.t)
    inc = 0.5 * h * (g[:-1] + g[1:]) + h * h / 12.0 * (dg[:-1] - dg[1:])
    return np.concatenate([[0.0], np.cumsum(inc)])


def closure_gap(c: PlaneCurve) -> float:
    """Distance between first and last points divided by the total length."""
    length = c.length
    gap = float(np.hypot(*(c.points[-1] - c.points[0])))
    return gap / length if length > 0 else float("inf")


def resample_arclength(c: PlaneCurve, step: float | None = None) -> PlaneCurve:
    """Unit-speed resampling at multiples of ``step`` (default L/8192).

    kappa, kappa_dot, the tangent angle and the points are interpolated with
    cubic Hermite splines whose slopes are the known arc-length derivatives,
    then the derivative fields are rebuilt from the Frenet frame.
    """
    s = arc_length(c)
    total = s[-1]
    if step is None:
        step = total / 8192
    if not step > 0:
        raise InvalidStepError(f"step must be positive, got {step}")
    n = int(np.floor(total / step + 1e-9))
    s_new = step * np.arange(n + 1)
    if total - s_new[-1] > 1e-9 * total:
        s_new = np.append(s_new, total)
    k, kd = curvature_at(c)
    unit = c.d1 / c.speed[:, None]
    theta = np.unwrap(np.arctan2(unit[:, 1], unit[:, 0]))
    th = CubicHermiteSpline(s, theta, k)(s_new)
    kk = CubicHermiteSpline(s, k, kd)(s_new)
    kdd = np.gradient(kd, s, edge_order=2)
    kkd = CubicHermiteSpline(s, kd, kdd)(s_new)
    px = CubicHermiteSpline(s, c.points[:, 0], unit[:, 0])(s_new)
    py = CubicHermiteSpline(s, c.points[:, 1], unit[:, 1])(s_new)
    return frenet_curve(s_new, np.column_stack([px, py]), th, kk, kkd, closed=c.closed, lower_trust=c.lower_trust)


def frenet_curve(s, points, theta, k, kd, closed=False, lower_trust=False) -> PlaneCurve:
    """Unit-speed PlaneCurve from tangent angle, curvature and its derivative."""
    T = np.column_stack([np.cos(theta), np.sin(theta)])
    N = np.column_stack([-T[:, 1], T[:, 0]])
    d2 = k[:, None] * N
    d3 = kd[:, None] * N - (k * k)[:, None] * T
    return PlaneCurve(np.asarray(s, float), np.asarray(points, float), T, d2, d3, closed, lower_trust, angle=np.asarray(theta))


def _rot(angle):
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]])


def apply_rigid_motion(c: PlaneCurve, angle: float, translation=(0.0, 0.0)) -> PlaneCurve:
    """Rotate points about the origin by ``angle`` then translate; derivatives are only rotated."""
    if angle == 0 and translation[0] == 0 and translation[1] == 0:
        return c
    R = _rot(angle).T
    return replace(
        c,
        points=c.points @ R + np.asarray(translation, float),
        d1=c.d1 @ R,
        d2=c.d2 @ R,
        d3=c.d3 @ R,
        angle=None if c.angle is None else c.angle + angle,
    )


# --------------------------------------------------------------------------- polylines


def _fd_derivatives(t, x, closed):
    """First three derivatives by 4th-order central stencils (periodic wrap when closed)."""
    h = float(np.mean(np.diff(t)))
    if closed:
        xp = x[:-1]
        r = lambda k: np.roll(xp, -k, axis=0)  # noqa: E731
        d1 = (-r(2) + 8 * r(1) - 8 * r(-1) + r(-2)) / (12 * h)
        d2 = (-r(2) + 16 * r(1) - 30 * xp + 16 * r(-1) - r(-2)) / (12 * h * h)
        d3 = (-r(3) + 8 * r(2) - 13 * r(1) + 13 * r(-1) - 8 * r(-2) + r(-3)) / (8 * h**3)
        close = lambda a: np.vstack([a, a[:1]])  # noqa: E731
        return close(d1), close(d2), close(d3)
    d1 = np.gradient(x, t, axis=0, edge_order=2)
    d2 = np.gradient(d1, t, axis=0, edge_order=2)
    d3 = np.gradient(d2, t, axis=0, edge_order=2)
    return d1, d2, d3


def polyline_curve(t, points, closed: bool | None = None) -> PlaneCurve:
    """Curve from raw samples; derivatives by finite differences (flagged lower-trust).

    Parameters must be (close to) uniformly spaced for the stencils to be 4th order.
    """
    t = np.asarray(t, float)
    points = np.asarray(points, float)
    if closed is None:
        span = np.sum(np.hypot(*np.diff(points, axis=0).T))
        closed = bool(np.hypot(*(points[-1] - points[0])) <= CLOSURE_TOL * span)
    d1, d2, d3 = _fd_derivatives(t, points, closed)
    return PlaneCurve(t, points, d1, d2, d3, closed=closed, lower_trust=True)


def read_polyline_csv(path_or_text) -> PlaneCurve:
    """Import a ``t,x,y`` CSV."""
    text = _read(path_or_text)
    rows = list(csv.DictReader(io.StringIO(text)))
    if not rows or not {"t", "x", "y"} <= set(rows[0]):
        raise ValueError("polyline CSV needs header t,x,y")
    t = np.array([float(r["t"]) for r in rows])
    pts = np.array([[float(r["x"]), float(r["y"])] for r in rows])
    return polyline_curve(t, pts)


def _read(path_or_text):
    if "\n" in str(path_or_text):
        return str(path_or_text)
    with open(path_or_text) as fh:
        return fh.read()


def curve_to_csv(c: PlaneCurve) -> str:
    """Export ``s,x,y,kappa,kappa_dot``."""
    s = arc_length(c)
    k, kd = curvature_at(c)
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["s", "x", "y", "kappa", "kappa_dot"])
    for row in zip(s, c.points[:, 0], c.points[:, 1], k, kd):
        w.writerow([f"{v:.9g}" for v in row])
    return out.getvalue()


def vertex_parameters(c: PlaneCurve, floor_samples: int = 2):
    """Parameters where kappa_dot changes sign, and a heuristic degeneracy flag.

    The flag is raised when two sign changes are closer than ``floor_samples``
    sample spacings (vertices not isolated within the resolution); the
    parameters of the offending cluster are returned as the third item.
    """
    _, kd = curvature_at(c)
    idx = np.nonzero(kd[:-1] * kd[1:] < 0)[0]
    # linear interpolation of the crossing
    t0, t1 = c.t[idx], c.t[idx + 1]
    w = kd[idx] / (kd[idx] - kd[idx + 1])
    roots = t0 + w * (t1 - t0)
    close = np.nonzero(np.diff(idx) <= floor_samples)[0]
    cluster = np.unique(np.concatenate([roots[close], roots[close + 1]])) if len(close) else np.array([])
    return roots, bool(len(close)), cluster
