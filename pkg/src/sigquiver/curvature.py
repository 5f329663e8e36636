"""
Periodic, piecewise-smooth curvature functions of arc-length.

A ``CurvatureFunction`` is an ordered list of pieces tiling one period
``[offset, offset + period)``; evaluation extends it periodically to the
whole real line. Every piece kind returns both kappa and its exact
arc-length derivative.

Piece kinds:
    bump      -- scaled sums of the C-infinity bump f_{r1,r2}
    trig      -- trigonometric polynomial const + sum a sin(w s) + b cos(w s)
    cogwheel  -- curvature of one cog of a trigonometric cogwheel, evaluated
                 in its own angular parameter and converted to arc-length
    sampled   -- cubic Hermite interpolation of (s, kappa, kappa_dot) samples
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np
from scipy.interpolate import CubicHermiteSpline
from scipy.optimize import brentq
from scipy.special import expit

from .errors import (
    DegenerateFunctionError,
    InvalidIntervalError,
    InvalidSpecError,
    JunctionError,
    NonMinimalPeriodError,
)

# exponent arguments beyond this are treated as saturated (the analytic limits are 0/1)
_EXP_CLAMP = 700.0

GL_NODES, GL_WEIGHTS = np.polynomial.legendre.leggauss(10)


def _bump_branch(s, r1, r2, rising):
    """Value and derivative of the logistic cutoff on the open interval (r1, r2).

    ``rising`` selects g_{r1,r2} (0 -> 1); otherwise h_{r1,r2} (1 -> 0).
    """
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        u = 1.0 / (s - r1)
        v = 1.0 / (r2 - s)
        # g = 1/(1+exp(u - v)), h = 1/(1+exp(v - u))
        z = u - v if rising else v - u
        dz = (-u * u - v * v) if rising else (u * u + v * v)
        val = expit(-z)
        dval = -val * expit(z) * dz
    dval = np.where(np.abs(z) > _EXP_CLAMP, 0.0, dval)
    return val, dval


def bump_value(s, r1: float, r2: float):
    """(f, f') of the bump f_{r1,r2}: zero outside (r1, r2), one at the midpoint."""
    s = np.asarray(s, dtype=float)
    mid = 0.5 * (r1 + r2)
    val = np.zeros_like(s)
    der = np.zeros_like(s)
    left = (s > r1) & (s < mid)
    right = (s > mid) & (s < r2)
    if left.any():
        val[left], der[left] = _bump_branch(s[left], r1, mid, rising=True)
    if right.any():
        val[right], der[right] = _bump_branch(s[right], mid, r2, rising=False)
    val[s == mid] = 1.0
    return val, der


# --------------------------------------------------------------------------- pieces


@dataclass(frozen=True)
class CurvaturePiece:
    """Base class. ``interval`` is the half-open arc-length range [a, b)."""

    interval: tuple[float, float]

    kind = "abstract"

    def __post_init__(self):
        a, b = self.interval
        if not b > a:
            raise InvalidIntervalError(f"empty piece interval {self.interval}")

    def evaluate(self, s):
        raise NotImplementedError

    def shifted(self, delta: float) -> CurvaturePiece:
        """Same formula translated right by ``delta`` in arc-length."""
        raise NotImplementedError

    def clipped(self, a: float, b: float) -> CurvaturePiece:
        return _replace(self, interval=(float(a), float(b)))

    def special_points(self) -> list[float]:
        """Points where kappa_dot may vanish without changing sign."""
        return []

    def params(self) -> dict:
        raise NotImplementedError

    def to_dict(self) -> dict:
        return {"kind": self.kind, "interval": list(self.interval), "params": self.params()}


def _replace(piece, **changes):
    return dataclasses.replace(piece, **changes)


@dataclass(frozen=True)
class BumpPiece(CurvaturePiece):
    terms: tuple[tuple[float, float, float], ...] = ()  # (coefficient, r1, r2)

    kind = "bump"

    def evaluate(self, s):
        s = np.asarray(s, dtype=float)
        k = np.zeros_like(s)
        kd = np.zeros_like(s)
        for coef, r1, r2 in self.terms:
            v, d = bump_value(s, r1, r2)
            k += coef * v
            kd += coef * d
        return k, kd

    def shifted(self, delta):
        a, b = self.interval
        return BumpPiece(
            (a + delta, b + delta),
            tuple((c, r1 + delta, r2 + delta) for c, r1, r2 in self.terms),
        )

    def special_points(self):
        pts = []
        for _, r1, r2 in self.terms:
            pts += [r1, r2]
        return pts

    def params(self):
        return {"terms": [list(t) for t in self.terms]}


def bump(r1: float, r2: float) -> BumpPiece:
    """The unit bump f_{r1,r2} as a piece covering its support."""
    if not r1 < r2:
        raise InvalidIntervalError(f"bump needs r1 < r2, got ({r1}, {r2})")
    return BumpPiece((float(r1), float(r2)), ((1.0, float(r1), float(r2)),))


@dataclass(frozen=True)
class TrigPiece(CurvaturePiece):
    const: float = 0.0
    terms: tuple[tuple[float, float, float], ...] = ()  # (frequency, sin coef, cos coef)

    kind = "trig"

    def evaluate(self, s):
        s = np.asarray(s, dtype=float)
        k = np.full_like(s, self.const)
        kd = np.zeros_like(s)
        for w, a, b in self.terms:
            sn, cs = np.sin(w * s), np.cos(w * s)
            k += a * sn + b * cs
            kd += w * (a * cs - b * sn)
        return k, kd

    def shifted(self, delta):
        # a sin(w(s - d)) + b cos(w(s - d)) rewritten in sin(ws), cos(ws)
        terms = []
        for w, a, b in self.terms:
            c, sn = np.cos(w * delta), np.sin(w * delta)
            terms.append((w, a * c + b * sn, b * c - a * sn))
        a0, b0 = self.interval
        return TrigPiece((a0 + delta, b0 + delta), self.const, tuple(terms))

    def params(self):
        return {"const": self.const, "terms": [list(t) for t in self.terms]}


_GL5_NODES, _GL5_WEIGHTS = np.polynomial.legendre.leggauss(5)


class _CogMap:
    """Arc-length <-> angle map for one cog of a trigonometric cogwheel."""

    def __init__(self, n, r0, a, t0, t1, nodes_per_tooth=256):
        self.n, self.r0, self.a = n, r0, a
        self.t0, self.t1 = t0, t1
        m = max(8, int(nodes_per_tooth * a))
        self.t = np.linspace(t0, t1, m + 1)
        speeds = self.speed(self.t)
        self.s = np.concatenate([[0.0], np.cumsum(self._panel(self.t[:-1], self.t[1:]))])
        self._inv = CubicHermiteSpline(self.s, self.t, 1.0 / speeds)

    def rho(self, t):
        n, a, r0 = self.n, self.a, self.r0
        ph = n * a * t
        c, sn = np.cos(ph), np.sin(ph)
        return (
            r0 + (1.0 - c) / a**2,
            (n / a) * sn,
            n**2 * c,
            -(n**3) * a * sn,
        )

    def speed(self, t):
        r, r1, _, _ = self.rho(t)
        return np.sqrt(r * r + r1 * r1)

    def _panel(self, lo, hi):
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        x = mid[..., None] + half[..., None] * GL_NODES
        return half * (self.speed(x) @ GL_WEIGHTS)

    @property
    def length(self):
        return float(self.s[-1])

    def angle(self, sigma):
        """Angle t at arc-length sigma measured from t0 (Newton-polished)."""
        sigma = np.clip(np.asarray(sigma, dtype=float), 0.0, self.length)
        t = self._inv(sigma)
        # the spline is already ~1e-10 accurate, so one Newton step on a single
        # grid cell (5-point rule, exact to rounding there) finishes the job
        idx = np.clip(np.searchsorted(self.t, t) - 1, 0, len(self.t) - 2)
        tk = self.t[idx]
        mid, half = 0.5 * (tk + t), 0.5 * (t - tk)
        x = mid[..., None] + half[..., None] * _GL5_NODES
        s_t = self.s[idx] + half * (self.speed(x) @ _GL5_WEIGHTS)
        return t - (s_t - sigma) / self.speed(t)

    def curvature(self, t):
        """(kappa, d kappa / ds) at angle t from the polar formulas."""
        r, r1, r2, r3 = self.rho(t)
        q = r * r + r1 * r1
        num = r * r + 2 * r1 * r1 - r * r2
        den = q**1.5
        dnum = 2 * r * r1 + 3 * r1 * r2 - r * r3
        dden = 3 * np.sqrt(q) * (r * r1 + r1 * r2)
        k = num / den
        dk_dt = (dnum * den - num * dden) / den**2
        return k, dk_dt / np.sqrt(q)


_COG_CACHE: dict[tuple, _CogMap] = {}


def _cog_map(n, r0, a, t0, t1) -> _CogMap:
    key = (n, r0, a, t0, t1)
    if key not in _COG_CACHE:
        _COG_CACHE[key] = _CogMap(n, r0, a, t0, t1)
    return _COG_CACHE[key]


@dataclass(frozen=True)
class CogwheelPiece(CurvaturePiece):
    """One cog: angular sector [t0, t1] with ``a`` teeth, placed so that t0 sits at arc-length ``s0``."""

    n: int = 1
    r0: float = 1.0
    a: int = 1
    t0: float = 0.0
    t1: float = 2 * np.pi
    s0: float = 0.0

    kind = "cogwheel"

    @property
    def map(self) -> _CogMap:
        return _cog_map(self.n, self.r0, self.a, self.t0, self.t1)

    def evaluate(self, s):
        t = self.map.angle(np.asarray(s, dtype=float) - self.s0)
        return self.map.curvature(t)

    def shifted(self, delta):
        a, b = self.interval
        return _replace(self, interval=(a + delta, b + delta), s0=self.s0 + delta)

    def special_points(self):
        # tooth boundaries: cos(n a t) = 1 where kappa_dot = 0 and the trace turns vertically
        m = self.map
        ts = np.linspace(self.t0, self.t1, self.a + 1)
        return list(self.s0 + np.interp(ts, m.t, m.s))

    def params(self):
        return {"n": self.n, "r0": self.r0, "a": self.a, "t0": self.t0, "t1": self.t1, "s0": self.s0}


@dataclass(frozen=True)
class SampledPiece(CurvaturePiece):
    s: tuple[float, ...] = ()
    kappa: tuple[float, ...] = ()
    kappa_dot: tuple[float, ...] = ()

    kind = "sampled"

    @cached_property
    def _spline(self):
        return CubicHermiteSpline(np.asarray(self.s), np.asarray(self.kappa), np.asarray(self.kappa_dot))

    def evaluate(self, s):
        s = np.asarray(s, dtype=float)
        sp = self._spline
        return sp(s), sp(s, 1)

    def shifted(self, delta):
        a, b = self.interval
        return SampledPiece(
            (a + delta, b + delta), tuple(np.asarray(self.s) + delta), self.kappa, self.kappa_dot
        )

    def params(self):
        return {"s": list(self.s), "kappa": list(self.kappa), "kappa_dot": list(self.kappa_dot)}


_KINDS = {"bump": BumpPiece, "trig": TrigPiece, "cogwheel": CogwheelPiece, "sampled": SampledPiece}


def piece_from_dict(d: dict) -> CurvaturePiece:
    try:
        cls = _KINDS[d["kind"]]
        interval = tuple(float(x) for x in d["interval"])
        p = d.get("params", {})
    except (KeyError, TypeError) as exc:
        raise InvalidSpecError(f"malformed piece: {d!r}") from exc
    if cls is BumpPiece:
        return BumpPiece(interval, tuple(tuple(map(float, t)) for t in p["terms"]))
    if cls is TrigPiece:
        return TrigPiece(interval, float(p.get("const", 0.0)), tuple(tuple(map(float, t)) for t in p.get("terms", [])))
    if cls is CogwheelPiece:
        return CogwheelPiece(
            interval, int(p["n"]), float(p["r0"]), int(p["a"]), float(p["t0"]), float(p["t1"]), float(p["s0"])
        )
    return SampledPiece(interval, tuple(map(float, p["s"])), tuple(map(float, p["kappa"])), tuple(map(float, p["kappa_dot"])))


# --------------------------------------------------------------------------- function


class CurvatureFunction:
    """Periodic curvature kappa(s) built from pieces tiling one period.

    Parameters
    ----------
    pieces : list of CurvaturePiece
        Must tile ``[offset, offset + period)`` in order.
    period : float
        The minimal period; verified unless ``validate=False``.
    junction_tol : float
        Allowed jump of kappa / kappa_dot at junctions, relative to ``max(1, scale)``.
    periodic_c1 : bool
        Also require the wrap-around junction to be C1.
    """

    def __init__(
        self,
        pieces,
        period: float,
        offset: float = 0.0,
        *,
        validate: bool = True,
        junction_tol: float = 1e-6,
        periodic_c1: bool = True,
    ):
        self.pieces = tuple(pieces)
        self.period = float(period)
        self.offset = float(offset)
        if not self.pieces:
            raise InvalidSpecError("a curvature function needs at least one piece")
        if self.period <= 0:
            raise InvalidSpecError("period must be positive")
        self._starts = np.array([p.interval[0] for p in self.pieces])
        self._tile_check()
        self.periodic_c1 = periodic_c1
        if validate:
            self._junction_check(junction_tol)
            self._minimality_check()

    # -- construction checks

    def _tile_check(self):
        tol = 1e-9 * self.period
        if abs(self.pieces[0].interval[0] - self.offset) > tol:
            raise InvalidSpecError("first piece must start at the offset")
        for p, q in zip(self.pieces, self.pieces[1:]):
            if abs(p.interval[1] - q.interval[0]) > tol:
                raise InvalidSpecError(f"gap or overlap between {p.interval} and {q.interval}")
        if abs(self.pieces[-1].interval[1] - (self.offset + self.period)) > tol:
            raise InvalidSpecError("pieces must cover exactly one period")

    def junction_jumps(self) -> list[tuple[float, float, float]]:
        """(position, |jump kappa|, |jump kappa_dot|) at every junction, wrap included."""
        out = []
        n = len(self.pieces)
        for i in range(n):
            p = self.pieces[i]
            if i + 1 < n:
                q, shift = self.pieces[i + 1], 0.0
            else:
                q, shift = self.pieces[0], self.period
            x = p.interval[1]
            kl, dl = p.evaluate(np.array([x]))
            kr, dr = q.evaluate(np.array([x - shift]))
            out.append((x, abs(kl[0] - kr[0]), abs(dl[0] - dr[0])))
        return out

    def _junction_check(self, tol):
        lim = tol * max(1.0, self.scale)
        jumps = self.junction_jumps()
        if not self.periodic_c1:
            jumps = jumps[:-1]
        for x, jk, jd in jumps:
            if jk > lim or jd > lim:
                raise JunctionError(f"C1 junction violated at s={x:.9g}: jumps {jk:.3g}, {jd:.3g}")

    def _minimality_check(self):
        s = self.offset + self.period * (np.arange(512) + 0.37) / 512
        k0 = self.kappa(s)
        tol = 1e-7 * max(1.0, self.scale)
        if np.ptp(k0) <= tol:
            return  # constant curvature: every number is a period
        for k in range(2, 17):
            if np.max(np.abs(self.kappa(s + self.period / k) - k0)) <= tol:
                raise NonMinimalPeriodError(f"period {self.period:.9g} is not minimal (divisible by {k})")

    # -- evaluation

    def _locate(self, s):
        u = self.offset + np.mod(s - self.offset, self.period)
        idx = np.clip(np.searchsorted(self._starts, u, side="right") - 1, 0, len(self.pieces) - 1)
        return u, idx

    def eval(self, s):
        """(kappa, kappa_dot) at s; scalars in, floats out."""
        arr = np.asarray(s, dtype=float)
        flat = np.atleast_1d(arr).ravel()
        u, idx = self._locate(flat)
        k = np.empty_like(u)
        kd = np.empty_like(u)
        for i in np.unique(idx):
            sel = idx == i
            k[sel], kd[sel] = self.pieces[i].evaluate(u[sel])
        if arr.ndim == 0:
            return float(k[0]), float(kd[0])
        return k.reshape(arr.shape), kd.reshape(arr.shape)

    __call__ = eval

    def kappa(self, s):
        return self.eval(s)[0]

    def kappa_dot(self, s):
        return self.eval(s)[1]

    def kappa_ddot(self, s, h: float | None = None):
        """Second arc-length derivative by central differences of kappa_dot."""
        h = h or 1e-6 * self.period
        s = np.asarray(s, dtype=float)
        return (self.kappa_dot(s + h) - self.kappa_dot(s - h)) / (2 * h)

    def grid(self, n: int) -> np.ndarray:
        return self.offset + self.period * np.arange(n) / n

    @cached_property
    def scale(self) -> float:
        """max(|kappa|, |kappa_dot|) over a dense grid of one period."""
        k, kd = self.eval(self.grid(4096))
        return float(max(np.max(np.abs(k)), np.max(np.abs(kd))))

    @cached_property
    def is_constant(self) -> bool:
        return bool(np.ptp(self.kappa(self.grid(1024))) <= 1e-12 * max(1.0, self.scale))

    @cached_property
    def period_integral(self) -> float:
        return sum(_integrate_piece(p, *p.interval) for p in self.pieces)

    def special_points(self) -> np.ndarray:
        pts = [p.interval[0] for p in self.pieces]
        for p in self.pieces:
            pts += [x for x in p.special_points() if p.interval[0] <= x <= p.interval[1]]
        u = self.offset + np.mod(np.asarray(pts) - self.offset, self.period)
        return np.unique(u)

    # -- transforms

    def reversed(self, samples: int = 8192) -> CurvatureFunction:
        """Curvature of the curve traversed backwards, s -> -kappa(-s), as a sampled piece."""
        u = self.period * np.arange(samples + 1) / samples
        k, kd = self.eval(-u)
        piece = SampledPiece((0.0, self.period), tuple(u), tuple(-k), tuple(kd))
        return CurvatureFunction([piece], self.period, validate=False)

    # -- serialization

    def to_dict(self) -> dict:
        return {"period": self.period, "offset": self.offset, "pieces": [p.to_dict() for p in self.pieces]}

    @classmethod
    def from_dict(cls, d: dict, **kw) -> CurvatureFunction:
        try:
            pieces = [piece_from_dict(p) for p in d["pieces"]]
            return cls(pieces, float(d["period"]), float(d.get("offset", 0.0)), **kw)
        except KeyError as exc:
            raise InvalidSpecError(f"missing field {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_json(cls, text: str, **kw) -> CurvatureFunction:
        return cls.from_dict(json.loads(text), **kw)

    def __repr__(self):
        kinds = sorted({p.kind for p in self.pieces})
        return f"CurvatureFunction(period={self.period:.6g}, pieces={len(self.pieces)}, kinds={kinds})"


# --------------------------------------------------------------------------- operations


def _gl(func, a, b, panels):
    edges = np.linspace(a, b, panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    x = (mid[:, None] + half[:, None] * GL_NODES).ravel()
    vals = func(x).reshape(panels, -1)
    return float(np.sum(half * (vals @ GL_WEIGHTS)))


def adaptive_gl(func, a: float, b: float, tol: float = 1e-11, max_panels: int = 1 << 14) -> float:
    """Composite 10-point Gauss-Legendre, doubling panels until two estimates agree."""
    if b <= a:
        return 0.0
    panels = 4
    prev = _gl(func, a, b, panels)
    while panels < max_panels:
        panels *= 2
        cur = _gl(func, a, b, panels)
        if abs(cur - prev) <= tol:
            return cur
        prev = cur
    return prev


def _integrate_piece(piece, a, b):
    return adaptive_gl(lambda x: piece.evaluate(x)[0], a, b)


def integrate_kappa(f: CurvatureFunction, s0: float, s1: float) -> float:
    """Integral of kappa over [s0, s1], split at piece boundaries."""
    if s1 < s0:
        raise InvalidIntervalError("integrate_kappa needs s0 <= s1")
    ell = f.period
    n_full = int(np.floor((s1 - s0) / ell))
    total = n_full * f.period_integral
    lo = s0 + n_full * ell
    if s1 - lo <= 0:
        return total
    # walk the remaining partial period piece by piece
    base = np.floor((lo - f.offset) / ell) * ell
    x = lo
    while x < s1 - 1e-15 * max(1.0, abs(s1)):
        u = x - base
        if u >= f.offset + ell - 1e-15 * ell:
            base += ell
            continue
        i = int(np.clip(np.searchsorted(f._starts, u, side="right") - 1, 0, len(f.pieces) - 1))
        p = f.pieces[i]
        end = min(p.interval[1] + base, s1)
        total += _integrate_piece(p, x - base, end - base)
        x = end
        if end >= p.interval[1] + base and i == len(f.pieces) - 1:
            base += ell
    return total


class CriticalPoints(NamedTuple):
    points: np.ndarray
    degenerate: bool


def critical_points(f: CurvatureFunction, resolution: int = 4096) -> CriticalPoints:
    """All s in [offset, offset+period) with kappa_dot(s) = 0.

    Sign changes of kappa_dot on a grid are polished with Brent's method;
    zeros without a sign change (flat contacts such as the ends of bump
    supports) are picked up from the pieces' special points, and from the
    smallest sample of any other stretch where |kappa_dot| is negligible. ``degenerate`` is set when two roots are closer
    than the grid resolution.
    """
    if f.is_constant:
        raise DegenerateFunctionError("constant curvature has no isolated critical points")
    ell = f.period
    s = f.offset + ell * np.arange(resolution + 1) / resolution
    kd = f.kappa_dot(s)
    scale = max(1e-300, float(np.max(np.abs(kd))))
    flat_tol = 1e-9 * scale
    roots = []
    roots.extend(_sign_change_roots(f.kappa_dot, s, kd, 1e-13))
    for x in f.special_points():
        if abs(f.kappa_dot(x)) <= flat_tol:
            roots.append(float(x))
    # a flat run of |kappa_dot| with no root found inside it touches zero once: take its minimum
    ad = np.abs(kd)
    flat = np.concatenate([[False], ad <= flat_tol, [False]])
    edges = np.flatnonzero(np.diff(flat.astype(np.int8)))
    known = np.mod(np.asarray(roots, float) - f.offset, ell) + f.offset
    for lo, hi in zip(edges[::2], edges[1::2]):
        a, b = s[lo] - ell / resolution, s[hi - 1] + ell / resolution
        if not np.any((known >= a) & (known <= b)):
            roots.append(float(s[lo + np.argmin(ad[lo:hi])]))
    if not roots:
        return CriticalPoints(np.array([]), False)
    r = np.sort(f.offset + np.mod(np.asarray(roots) - f.offset, ell))
    # merge duplicates (and the wrap-around pair near offset / offset + period)
    merge = 1e-7 * ell
    out = [r[0]]
    for x in r[1:]:
        if x - out[-1] > merge:
            out.append(x)
    if len(out) > 1 and out[0] + ell - out[-1] <= merge:
        out.pop()
    pts = np.asarray(out)
    gaps = np.diff(np.concatenate([pts, [pts[0] + ell]]))
    degenerate = bool(len(pts) > 1 and np.min(gaps) < ell / resolution)
    return CriticalPoints(pts, degenerate)


def _sign_change_roots(func, s, vals, xtol):
    """Roots bracketed by consecutive nonzero samples of opposite sign."""
    nz = np.nonzero(vals != 0.0)[0]
    out = []
    for i, j in zip(nz[:-1], nz[1:]):
        if vals[i] * vals[j] < 0:
            r = brentq(func, s[i], s[j], xtol=xtol)
            if func(r) == 0.0:
                r = _plateau_middle(func, s[i], r, s[j], xtol)
            out.append(r)
    return out


def _plateau_middle(func, a, r, b, xtol):
    """Centre of the interval around r where func is exactly zero (underflow plateaus)."""
    lo, hi = a, r
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        lo, hi = (lo, mid) if func(mid) == 0.0 else (mid, hi)
    left = hi
    lo, hi = r, b
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if func(mid) == 0.0 else (lo, mid)
    return 0.5 * (left + lo)


def kappa_dot_extrema(f: CurvatureFunction, resolution: int = 4096) -> np.ndarray:
    """Points where kappa_dot has a local extremum (sign changes of kappa_ddot)."""
    s = f.offset + f.period * np.arange(resolution + 1) / resolution
    kdd = f.kappa_ddot(s)
    kdd[np.abs(kdd) <= 1e-12 * max(1.0, f.scale)] = 0.0
    return np.asarray(_sign_change_roots(f.kappa_ddot, s, kdd, 1e-12))


def sum_of_bumps(terms, period: float, **kw) -> CurvatureFunction:
    """Curvature from (coefficient, r1, r2) bump terms with disjoint supports tiling one period."""
    pieces = [BumpPiece((float(r1), float(r2)), ((float(c), float(r1), float(r2)),)) for c, r1, r2 in terms]
    return CurvatureFunction(pieces, period, pieces[0].interval[0], **kw)


def trig_curvature(const: float, terms, period: float, **kw) -> CurvatureFunction:
    """Single trigonometric piece over [0, period)."""
    piece = TrigPiece((0.0, float(period)), float(const), tuple(tuple(map(float, t)) for t in terms))
    return CurvatureFunction([piece], period, **kw)


def constant_curvature(value: float, period: float = 2 * np.pi) -> CurvatureFunction:
    return CurvatureFunction([TrigPiece((0.0, float(period)), float(value), ())], period)
