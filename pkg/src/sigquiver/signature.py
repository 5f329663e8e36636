"""Euclidean signatures: the (kappa, kappa_dot) trace of a curve and set distances between traces."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .curvature import CurvatureFunction, critical_points, kappa_dot_extrema
from .errors import DegenerateSignatureError
from .geometry import PlaneCurve, arc_length, curvature_at
from .svg import polylines_svg

DEFAULT_SAMPLES = 8192
REFINE_TOL = 2e-5  # chord sagitta, relative to the trace diagonal


@dataclass(frozen=True, eq=False)
class Signature:
    """Ordered samples sigma(s) = (kappa(s), kappa_dot(s)) over one period [0, ell).

    ``closed`` traces wrap from the last sample back to the first; ``source``
    keeps the curvature function when the trace was computed from one, so
    downstream code can evaluate between samples.
    """

    s: np.ndarray
    points: np.ndarray
    period_ell: float
    closed: bool = True
    source: CurvatureFunction | None = None

    @property
    def bbox_diag(self) -> float:
        lo, hi = self.points.min(axis=0), self.points.max(axis=0)
        return float(np.hypot(*(hi - lo)))

    @property
    def trace(self):
        return list(zip(self.s, map(tuple, self.points)))

    def __len__(self):
        return len(self.s)

    def segments(self):
        """Start and end points of every polyline segment (including the wrap when closed)."""
        p = self.points
        if self.closed:
            return p, np.roll(p, -1, axis=0)
        return p[:-1], p[1:]

    def reflected(self) -> Signature:
        """Mirror image about the vertical axis, which is the signature of the reversed curve."""
        pts = self.points[::-1] * np.array([-1.0, 1.0])
        return Signature(self.period_ell - self.s[::-1], pts, self.period_ell, self.closed)


def _refine(f, s, ell, tol, rounds=6):
    """Bisect segments whose midpoint strays more than ``tol`` from the chord."""
    for _ in range(rounds):
        nxt = np.append(s[1:], s[0] + ell)
        mid = 0.5 * (s + nxt)
        p0 = np.column_stack(f.eval(s))
        p1 = np.roll(p0, -1, axis=0)
        pm = np.column_stack(f.eval(mid))
        bad = np.hypot(*(pm - 0.5 * (p0 + p1)).T) > tol
        if not bad.any():
            break
        s = np.sort(np.concatenate([s, mid[bad]]))
    return s


def signature_of(
    f: CurvatureFunction, samples_per_period: int = DEFAULT_SAMPLES, refine: float | None = REFINE_TOL
) -> Signature:
    """Signature of a periodic curvature function on a uniform grid.

    Critical points of kappa and the extremes of kappa_dot are inserted so
    the trace hits the axis crossings and the vertical extremes exactly.
    Segments are then bisected until each chord is within ``refine`` times
    the bounding-box diagonal of the trace (pass None to keep the plain grid).
    """
    if f.is_constant:
        raise DegenerateSignatureError("constant curvature: the signature is a single point")
    ell = f.period
    base = f.offset + ell * np.arange(samples_per_period) / samples_per_period
    extra = np.concatenate([critical_points(f).points, kappa_dot_extrema(f), f.special_points()])
    s = np.concatenate([base, f.offset + np.mod(extra - f.offset, ell)])
    s = np.unique(s)
    keep = np.concatenate([[True], np.diff(s) > 1e-10 * ell])
    s = s[keep]
    if ell - (s[-1] - s[0]) <= 1e-10 * ell:
        s = s[:-1]
    if refine:
        k, kd = f.eval(s)
        diag = float(np.hypot(np.ptp(k), np.ptp(kd)))
        s = _refine(f, s, ell, refine * diag)
    k, kd = f.eval(s)
    return Signature(s, np.column_stack([k, kd]), ell, True, f)


def signature_of_curve(c: PlaneCurve) -> Signature:
    """Per-sample signature of a sampled regular curve; s is its arc-length."""
    s = arc_length(c)
    k, kd = curvature_at(c)
    pts = np.column_stack([k, kd])
    if c.closed:
        s, pts = s[:-1], pts[:-1]
    return Signature(s, pts, float(arc_length(c)[-1]), c.closed)


def _point_segment_dist(p, a, b):
    ab = b - a
    den = np.einsum("ij,ij->i", ab, ab)
    t = np.einsum("ij,ij->i", p - a, ab) / np.where(den > 0, den, 1.0)
    t = np.clip(t, 0.0, 1.0)
    d = p - (a + t[:, None] * ab)
    return np.hypot(d[:, 0], d[:, 1])


def _directed(pa: np.ndarray, sb: Signature, k: int = 8) -> float:
    """max over points of A of the distance to the polyline B, exact to 1e-12 of B's diagonal.

    Candidates come from a k-d tree on segment midpoints. A point's best
    distance is exact once its k-th nearest midpoint, less half the longest
    segment, is no closer. Unresolved points that could still raise the
    maximum are settled one by one with a ball query, largest upper bound
    first, so usually only a handful need it.
    """
    a0, a1 = sb.segments()
    if len(a0) == 0:
        return float(np.max(np.hypot(*(pa - sb.points[0]).T)))
    a0, a1 = _split_long(a0, a1)
    mid = 0.5 * (a0 + a1)
    half = 0.5 * float(np.max(np.hypot(*(a1 - a0).T)))
    slack = 1e-12 * max(sb.bbox_diag, 1e-300)
    tree = cKDTree(mid)
    k = min(k, len(mid))
    dm, idx = tree.query(pa, k=k)
    dm, idx = dm.reshape(len(pa), k), idx.reshape(len(pa), k)
    best = np.full(len(pa), np.inf)
    for col in idx.T:
        best = np.minimum(best, _point_segment_dist(pa, a0[col], a1[col]))
    exact = (dm[:, -1] - half >= best) | (k == len(mid))
    lower = float(best[exact].max()) if exact.any() else 0.0
    unsure = np.nonzero(~exact & (best > lower + slack))[0]
    for i in unsure[np.argsort(-best[unsure], kind="stable")]:
        if best[i] <= lower + slack:
            break
        cand = np.asarray(tree.query_ball_point(pa[i], best[i] + half), int)
        q = np.broadcast_to(pa[i], (len(cand), 2))
        lower = max(lower, min(best[i], float(_point_segment_dist(q, a0[cand], a1[cand]).min())))
    return lower


def _split_long(a0, a1):
    """Cut segments longer than twice the median into equal parts."""
    length = np.hypot(*(a1 - a0).T)
    cap = 2 * max(float(np.median(length)), 1e-300)
    parts = np.maximum(1, np.ceil(length / cap).astype(int))
    if parts.max() == 1:
        return a0, a1
    rep = np.repeat(np.arange(len(a0)), parts)
    j = np.arange(len(rep)) - np.repeat(np.cumsum(parts) - parts, parts)
    w0 = (j / parts[rep])[:, None]
    w1 = ((j + 1) / parts[rep])[:, None]
    d = (a1 - a0)[rep]
    return a0[rep] + w0 * d, a0[rep] + w1 * d


def _densify(sig: Signature, factor: int) -> np.ndarray:
    a0, a1 = sig.segments()
    w = (np.arange(factor) / factor)[None, :, None]
    return (a0[:, None, :] + w * (a1 - a0)[:, None, :]).reshape(-1, 2)


def signature_distance(s1: Signature, s2: Signature) -> float:
    """Symmetric Hausdorff distance between two signature polylines (point to segment)."""
    if s1.points.shape == s2.points.shape and np.array_equal(s1.points, s2.points):
        return 0.0
    p1, p2 = _densify(s1, 2), _densify(s2, 2)
    return max(_directed(p1, s2), _directed(p2, s1))


def discrete_frechet(p: np.ndarray, q: np.ndarray) -> float:
    """Discrete Frechet distance between two point sequences (dynamic programming)."""
    p, q = np.asarray(p, float), np.asarray(q, float)
    d = np.hypot(p[:, None, 0] - q[None, :, 0], p[:, None, 1] - q[None, :, 1])
    n, m = d.shape
    ca = np.empty_like(d)
    ca[0, 0] = d[0, 0]
    ca[0, 1:] = np.maximum.accumulate(np.maximum(d[0, 1:], d[0, 0]))
    ca[1:, 0] = np.maximum.accumulate(np.maximum(d[1:, 0], d[0, 0]))
    for i in range(1, n):
        for j in range(1, m):
            ca[i, j] = max(min(ca[i - 1, j], ca[i - 1, j - 1], ca[i, j - 1]), d[i, j])
    return float(ca[-1, -1])


def signature_to_csv(sig: Signature) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["s", "kappa", "kappa_dot"])
    for s, (k, kd) in zip(sig.s, sig.points):
        w.writerow([f"{s:.9g}", f"{k:.9g}", f"{kd:.9g}"])
    return out.getvalue()


def signature_svg(sig: Signature, **kw) -> str:
    pts = np.vstack([sig.points, sig.points[:1]]) if sig.closed else sig.points
    return polylines_svg([pts], **kw)
