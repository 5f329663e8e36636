"""Self-crossings of a polyline, found with a uniform spatial hash."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np


class Crossings(NamedTuple):
    i: np.ndarray  # first segment index
    j: np.ndarray  # second segment index (i < j)
    t: np.ndarray  # position along segment i, in [0, 1)
    u: np.ndarray  # position along segment j, in [0, 1)
    points: np.ndarray
    angle: np.ndarray  # acute angle between the two segments, radians


def _cell_pairs(a0, a1, cell):
    """Candidate segment pairs sharing at least one hash cell."""
    lo = np.floor(np.minimum(a0, a1) / cell).astype(np.int64)
    hi = np.floor(np.maximum(a0, a1) / cell).astype(np.int64)
    nx = hi[:, 0] - lo[:, 0] + 1
    ny = hi[:, 1] - lo[:, 1] + 1
    count = nx * ny
    seg = np.repeat(np.arange(len(a0)), count)
    k = np.arange(len(seg)) - np.repeat(np.cumsum(count) - count, count)
    cx = lo[seg, 0] + k % nx[seg]
    cy = lo[seg, 1] + k // nx[seg]
    order = np.lexsort((seg, cy, cx))
    seg, cx, cy = seg[order], cx[order], cy[order]
    brk = np.nonzero((np.diff(cx) != 0) | (np.diff(cy) != 0))[0] + 1
    starts = np.concatenate([[0], brk])
    sizes = np.diff(np.concatenate([starts, [len(seg)]]))
    pairs = []
    for st, sz in zip(starts[sizes > 1], sizes[sizes > 1]):
        r, c = np.triu_indices(sz, 1)
        pairs.append(np.column_stack([seg[st + r], seg[st + c]]))
    if not pairs:
        return np.empty((0, 2), np.int64)
    return np.unique(np.vstack(pairs), axis=0)


def self_crossings(points: np.ndarray, closed: bool = True, min_separation: float = 0.0) -> Crossings:
    """All proper crossings between non-adjacent segments of a polyline.

    Pairs whose connecting path along the polyline is shorter than
    ``min_separation`` are treated as local and skipped. The hash cell size
    is twice the median segment length.
    """
    p = np.asarray(points, float)
    a0 = p if closed else p[:-1]
    a1 = np.roll(p, -1, axis=0) if closed else p[1:]
    n = len(a0)
    length = np.hypot(*(a1 - a0).T)
    empty = Crossings(*(np.empty(0, int),) * 2, *(np.empty(0),) * 2, np.empty((0, 2)), np.empty(0))
    if n < 3:
        return empty
    cell = 2 * max(float(np.median(length)), 1e-300)
    pr = _cell_pairs(a0, a1, cell)
    i, j = pr[:, 0], pr[:, 1]
    # skip neighbours and pairs close along the path
    cum = np.concatenate([[0.0], np.cumsum(length)])
    total = cum[-1]
    gap = cum[j] - cum[i + 1]
    if closed:
        gap = np.minimum(gap, total - (cum[j + 1] - cum[i]))
    ok = (j - i > 1) & (gap >= min_separation)
    if closed:
        ok &= ~((i == 0) & (j == n - 1))
    i, j = i[ok], j[ok]
    r = a1[i] - a0[i]
    s = a1[j] - a0[j]
    q = a0[j] - a0[i]
    den = r[:, 0] * s[:, 1] - r[:, 1] * s[:, 0]
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (q[:, 0] * s[:, 1] - q[:, 1] * s[:, 0]) / den
        u = (q[:, 0] * r[:, 1] - q[:, 1] * r[:, 0]) / den
    hit = (den != 0) & (t >= 0) & (t < 1) & (u >= 0) & (u < 1)
    i, j, t, u, r, s, den = i[hit], j[hit], t[hit], u[hit], r[hit], s[hit], den[hit]
    if len(i) == 0:
        return empty
    pts = a0[i] + t[:, None] * r
    sin = np.abs(den) / (np.hypot(*r.T) * np.hypot(*s.T))
    return Crossings(i, j, t, u, pts, np.arcsin(np.clip(sin, 0, 1)))
