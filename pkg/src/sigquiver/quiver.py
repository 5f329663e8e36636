"""Signature quivers: self-intersections of a signature, the edges between them, and traced words."""

from __future__ import annotations

import itertools
import json
import string
import warnings
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from .curvature import CurvatureFunction, SampledPiece, critical_points, integrate_kappa
from .errors import (
    DegenerateSignatureError,
    InternalConsistencyError,
    SimpleSignatureError,
    TangentialIntersectionWarning,
)
from .polyline import self_crossings
from .reconstruction import closure_info
from .signature import DEFAULT_SAMPLES, Signature, discrete_frechet, signature_of
from .words import Word

CLUSTER_EPS = 1e-4  # vertex clustering radius, relative to the signature diagonal
EDGE_MATCH_TOL = 1e-3  # Frechet distance for "same edge", relative to the diagonal
TANGENT_ANGLE = 1e-3  # radians; crossings below this are tangential
LOCAL_SEPARATION = 1e-2  # path length along the trace below which segment pairs are ignored
AXIS_MERGE = 1e-3  # refined crossings this close to a touch vertex are artefacts of the contact
IMAGE_SAMPLES = 64
WEIGHT_TOL = 1e-6

LETTERS = string.ascii_lowercase + string.ascii_uppercase


@dataclass(frozen=True)
class QuiverVertex:
    """A self-intersection point; ``kind`` is "crossing" (transversal) or "touch" (branches meeting on the axis)."""

    id: int
    location: tuple[float, float]
    preimages: tuple[float, ...]
    kind: str = "crossing"


@dataclass(frozen=True)
class QuiverEdge:
    id: str
    from_vertex: int
    to_vertex: int
    representative_interval: tuple[float, float]
    multiplicity_mu: int
    weight_omega: float
    intervals: tuple[tuple[float, float], ...] = ()


@dataclass(frozen=True, eq=False)
class SignatureQuiver:
    vertices: tuple[QuiverVertex, ...]
    edges: tuple[QuiverEdge, ...]
    ell: float
    m: int
    breakpoints: tuple[float, ...]
    word_per_period: tuple[str, ...]
    xi: int = 0
    closed: bool = True
    diag: float = 1.0
    source: CurvatureFunction | None = None
    warnings: tuple[str, ...] = field(default=())

    def edge(self, letter: str) -> QuiverEdge:
        for e in self.edges:
            if e.id == letter:
                return e
        raise KeyError(letter)

    @property
    def sig_index(self) -> int:
        return min(e.multiplicity_mu for e in self.edges)

    @property
    def weighted_sum(self) -> float:
        return float(sum(e.multiplicity_mu * e.weight_omega for e in self.edges))

    def to_dict(self) -> dict:
        return {
            "ell": self.ell,
            "m": self.m,
            "xi": self.xi,
            "closed": self.closed,
            "diag": self.diag,
            "breakpoints": list(self.breakpoints),
            "word_per_period": "".join(self.word_per_period),
            "vertices": [
                {"id": v.id, "location": list(v.location), "preimages": list(v.preimages), "kind": v.kind}
                for v in self.vertices
            ],
            "edges": [
                {
                    "id": e.id,
                    "from": e.from_vertex,
                    "to": e.to_vertex,
                    "interval": list(e.representative_interval),
                    "intervals": [list(i) for i in e.intervals],
                    "mu": e.multiplicity_mu,
                    "omega": e.weight_omega,
                }
                for e in self.edges
            ],
            "warnings": list(self.warnings),
            "source": None if self.source is None else self.source.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, d: dict) -> SignatureQuiver:
        src = d.get("source")
        return cls(
            vertices=tuple(
                QuiverVertex(v["id"], tuple(v["location"]), tuple(v["preimages"]), v.get("kind", "crossing"))
                for v in d["vertices"]
            ),
            edges=tuple(
                QuiverEdge(
                    e["id"],
                    e["from"],
                    e["to"],
                    tuple(e["interval"]),
                    int(e["mu"]),
                    float(e["omega"]),
                    tuple(tuple(i) for i in e.get("intervals", [e["interval"]])),
                )
                for e in d["edges"]
            ),
            ell=float(d["ell"]),
            m=int(d["m"]),
            breakpoints=tuple(d["breakpoints"]),
            word_per_period=tuple(d["word_per_period"]),
            xi=int(d.get("xi", 0)),
            closed=bool(d.get("closed", True)),
            diag=float(d.get("diag", 1.0)),
            source=None if src is None else CurvatureFunction.from_dict(src, validate=False),
            warnings=tuple(d.get("warnings", ())),
        )

    @classmethod
    def from_json(cls, text: str) -> SignatureQuiver:
        return cls.from_dict(json.loads(text))


# --------------------------------------------------------------------------- vertex detection


def _sigma(f, s):
    k, kd = f.eval(s)
    return np.column_stack([k, kd]), np.column_stack([kd, f.kappa_ddot(s)])


def _refine_pairs(f, s1, s2, ell, iters=12):
    """Newton on sigma(s1) = sigma(s2); returns refined pairs, residuals and crossing angles."""
    s1, s2 = s1.copy(), s2.copy()
    start1, start2 = s1.copy(), s2.copy()
    active = np.ones(len(s1), bool)
    for _ in range(iters):
        idx = np.nonzero(active)[0]
        if len(idx) == 0:
            break
        p1, v1 = _sigma(f, s1[idx])
        p2, v2 = _sigma(f, s2[idx])
        F = p1 - p2
        det = v2[:, 0] * v1[:, 1] - v1[:, 0] * v2[:, 1]
        ok = np.abs(det) > 0
        den = np.where(ok, det, 1.0)
        d1 = np.where(ok, (F[:, 0] * v2[:, 1] - F[:, 1] * v2[:, 0]) / den, 0.0)
        d2 = np.where(ok, (F[:, 0] * v1[:, 1] - F[:, 1] * v1[:, 0]) / den, 0.0)
        s1[idx] += d1
        s2[idx] += d2
        wander = np.maximum(np.abs(s1[idx] - start1[idx]), np.abs(s2[idx] - start2[idx])) > 1e-2 * ell
        done = (np.maximum(np.abs(d1), np.abs(d2)) < 1e-14 * ell) | ~ok | wander
        active[idx[done]] = False
    p1, v1 = _sigma(f, s1)
    p2, v2 = _sigma(f, s2)
    res = np.hypot(*(p1 - p2).T)
    n1, n2 = np.hypot(*v1.T), np.hypot(*v2.T)
    with np.errstate(invalid="ignore", divide="ignore"):
        sin = np.abs(v1[:, 0] * v2[:, 1] - v1[:, 1] * v2[:, 0]) / (n1 * n2)
    moved = np.maximum(np.abs(s1 - start1), np.abs(s2 - start2))
    return s1, s2, 0.5 * (p1 + p2), res, np.arcsin(np.clip(np.nan_to_num(sin), 0, 1)), moved


def _clusters(points, radius):
    """Connected components of the 'closer than radius' graph."""
    if len(points) == 0:
        return np.empty(0, int)
    pairs = cKDTree(points).query_pairs(radius, output_type="ndarray")
    n = len(points)
    g = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(n, n)) if len(pairs) else coo_matrix((n, n))
    return connected_components(g, directed=False)[1]


def _unique_mod(values, ell, tol):
    v = np.sort(np.mod(np.asarray(values, float), ell))
    out = []
    for x in v:
        if not out or x - out[-1] > tol:
            out.append(float(x))
    if len(out) > 1 and out[0] + ell - out[-1] <= tol:
        out.pop()
    return out


def _touch_vertices(f, eps):
    """Provisional vertices where two or more critical points share a curvature value."""
    cp = critical_points(f).points
    if len(cp) < 2:
        return []
    k = f.kappa(cp)
    order = np.argsort(k)
    groups = np.split(order, np.nonzero(np.diff(k[order]) > eps)[0] + 1)
    return [(float(np.mean(k[g])), 0.0, cp[g]) for g in groups if len(g) >= 2]


def _complete_preimages(f, sig: Signature, loc, eps, known):
    """Every pass of the trace through ``loc``, polished by Gauss-Newton on |sigma - loc|."""
    a0, a1 = sig.segments()
    ab = a1 - a0
    den = np.maximum(np.einsum("ij,ij->i", ab, ab), 1e-300)
    t = np.clip(np.einsum("ij,ij->i", loc - a0, ab) / den, 0, 1)
    dist = np.hypot(*(a0 + t[:, None] * ab - loc).T)
    near = np.nonzero(dist <= 50 * eps)[0]
    s_next = np.append(sig.s[1:], sig.s[0] + sig.period_ell)
    found = list(known)
    if len(near):
        runs = np.split(near, np.nonzero(np.diff(near) > 1)[0] + 1)
        for run in runs:
            i = run[np.argmin(dist[run])]
            s = sig.s[i] + t[i] * (s_next[i] - sig.s[i])
            for _ in range(8):
                p, v = _sigma(f, np.array([s]))
                vv = float(v[0] @ v[0])
                if vv == 0:
                    break
                s -= float((p[0] - loc) @ v[0]) / vv
            p, _ = _sigma(f, np.array([s]))
            if np.hypot(*(p[0] - loc)) <= eps:
                found.append(s)
    return found


def _branch_spread(f, s1, s2, delta):
    """How fast two branches through a meeting point separate, relative to how fast they move.

    The smaller of the forward and backward ratios is returned, so arcs that
    overlap on one side only (a shared stretch ending at a vertex) count as
    coincident.
    """
    best = np.full(len(s1), np.inf)
    q1, _ = _sigma(f, s1)
    for d in (-delta, delta):
        p1, _ = _sigma(f, s1 + d)
        p2, _ = _sigma(f, s2 + d)
        step = np.maximum(np.hypot(*(p1 - q1).T), 1e-300)
        best = np.minimum(best, np.hypot(*(p1 - p2).T) / step)
    return best


def _crossing_vertices(f, sig, eps, touch_locs):
    diag = sig.bbox_diag
    ell = sig.period_ell
    cand = self_crossings(sig.points, True, LOCAL_SEPARATION * diag)
    if len(cand.i) == 0:
        return [], 0
    s_next = np.append(sig.s[1:], sig.s[0] + ell)
    s1 = sig.s[cand.i] + cand.t * (s_next[cand.i] - sig.s[cand.i])
    s2 = sig.s[cand.j] + cand.u * (s_next[cand.j] - sig.s[cand.j])
    s1, s2, pts, res, ang, moved = _refine_pairs(f, s1, s2, ell)
    ok = (res <= 1e-9 * diag) & (moved <= 1e-2 * ell)
    gap = np.abs(np.mod(s1 - s2 + 0.5 * ell, ell) - 0.5 * ell)
    ok &= gap > 1e-6 * ell
    if len(touch_locs):
        d, _ = cKDTree(np.asarray(touch_locs)).query(pts)
        ok &= d > AXIS_MERGE * diag
    # a repeated traversal of one arc meets itself at zero angle along its whole length
    flat = np.nonzero(ok & (ang < TANGENT_ANGLE))[0]
    coincident = _branch_spread(f, s1[flat], s2[flat], 2 * ell / len(sig)) <= 1e-6
    tangential = int(np.count_nonzero(~coincident))
    ok &= ang >= TANGENT_ANGLE
    s1, s2, pts = s1[ok], s2[ok], pts[ok]
    labels = _clusters(pts, eps)
    out = []
    for lab in np.unique(labels):
        mask = labels == lab
        loc = pts[mask].mean(axis=0)
        pre = np.concatenate([s1[mask], s2[mask]])
        out.append((loc, pre))
    return out, tangential


@dataclass
class _Layout:
    vertices: list  # (location, preimages, kind)
    breaks: np.ndarray
    owner: np.ndarray
    intervals: list
    edge_of: list
    reps: list  # (from, to, image, first interval index)


def _images(f, a, b):
    s = np.linspace(a, b, IMAGE_SAMPLES)
    k, kd = f.eval(s)
    return np.column_stack([k, kd])


def _layout(f, ell, vertices, diag, eps):
    """Breakpoints, interval list and edge assignment for a candidate vertex set."""
    tol = 1e-9 * ell
    pairs = []
    for vid, (_, pre, _) in enumerate(vertices):
        pairs.extend((x, vid) for x in _unique_mod(pre, ell, tol))
    pairs.sort()
    # merge breakpoints shared by two vertices (keep the first)
    breaks, owner = [], []
    for x, vid in pairs:
        if breaks and x - breaks[-1] <= tol:
            continue
        breaks.append(x)
        owner.append(vid)
    breaks, owner = np.asarray(breaks), np.asarray(owner, int)
    # drop intervals that never leave the vertex (flat stretches of the curvature)
    changed = True
    while changed and len(breaks) > 1:
        changed = False
        nxt = np.append(breaks[1:], breaks[0] + ell)
        for r in range(len(breaks)):
            if owner[r] != owner[(r + 1) % len(breaks)]:
                continue
            img = _images(f, breaks[r], nxt[r])
            loc = np.asarray(vertices[owner[r]][0])
            if np.max(np.hypot(*(img - loc).T)) <= eps:
                keep = np.ones(len(breaks), bool)
                keep[(r + 1) % len(breaks)] = False
                breaks, owner = breaks[keep], owner[keep]
                changed = True
                break
    nxt = np.append(breaks[1:], breaks[0] + ell)
    intervals = list(zip(breaks, nxt))
    edge_of, reps = [], []
    for r, (a, b) in enumerate(intervals):
        fr, to = int(owner[r]), int(owner[(r + 1) % len(breaks)])
        img = _images(f, a, b)
        match = None
        for e, (rf, rt, rimg, _) in enumerate(reps):
            if rf == fr and rt == to and discrete_frechet(img, rimg) <= EDGE_MATCH_TOL * diag:
                match = e
                break
        if match is None:
            reps.append((fr, to, img, r))
            match = len(reps) - 1
        edge_of.append(match)
    return _Layout(vertices, breaks, owner, intervals, edge_of, reps)


def _pass_through(lay: _Layout):
    """Vertices entered by a single edge and left by a single edge: not real intersections."""
    n = len(lay.breaks)
    ins, outs = {}, {}
    for r in range(n):
        outs.setdefault(int(lay.owner[r]), set()).add(lay.edge_of[r])
        ins.setdefault(int(lay.owner[(r + 1) % n]), set()).add(lay.edge_of[r])
    return {v for v in outs if len(outs[v]) == 1 and len(ins.get(v, ())) == 1}


def _analyse(f: CurvatureFunction, sig: Signature | None = None, eps_rel: float = CLUSTER_EPS):
    if f.is_constant:
        raise DegenerateSignatureError("constant curvature: the signature is a single point")
    sig = sig if sig is not None and sig.source is f else signature_of(f)
    diag = sig.bbox_diag
    eps = eps_rel * diag
    ell = f.period
    touches = _touch_vertices(f, eps)
    crossings, tangential = _crossing_vertices(f, sig, eps, [(k, 0.0) for k, _, _ in touches])
    vertices = [((k, z), pre, "touch") for k, z, pre in touches]
    for loc, pre in crossings:
        pre = _complete_preimages(f, sig, loc, eps, pre)
        vertices.append((tuple(map(float, loc)), np.asarray(pre), "crossing"))
    notes = []
    if tangential:
        msg = f"{tangential} near-tangential crossing candidates merged away"
        warnings.warn(msg, TangentialIntersectionWarning, stacklevel=3)
        notes.append(msg)
    while vertices:
        lay = _layout(f, ell, vertices, diag, eps)
        drop = _pass_through(lay)
        if not drop:
            return lay, sig, notes
        vertices = [v for i, v in enumerate(vertices) if i not in drop]
    return None, sig, notes


def self_intersections(sig: Signature, eps_rel: float = CLUSTER_EPS) -> list[QuiverVertex]:
    """Self-intersection points of a signature trace, with all their preimages in [0, ell)."""
    f = sig.source if sig.source is not None else _sampled_source(sig)
    lay, _, _ = _analyse(f, sig if sig.source is not None else None, eps_rel)
    if lay is None:
        return []
    return _vertices_from(lay, f.period)


def _sampled_source(sig: Signature) -> CurvatureFunction:
    s = np.append(sig.s, sig.s[0] + sig.period_ell)
    pts = np.vstack([sig.points, sig.points[:1]])
    piece = SampledPiece((float(s[0]), float(s[-1])), tuple(s), tuple(pts[:, 0]), tuple(pts[:, 1]))
    return CurvatureFunction([piece], sig.period_ell, float(s[0]), validate=False)


def _vertices_from(lay: _Layout, ell) -> list[QuiverVertex]:
    used = sorted(set(int(v) for v in lay.owner), key=lambda v: lay.breaks[list(lay.owner).index(v)])
    remap = {old: new for new, old in enumerate(used)}
    out = []
    for old in used:
        loc, _, kind = lay.vertices[old]
        pre = tuple(float(x) for x, o in zip(lay.breaks, lay.owner) if o == old)
        out.append(QuiverVertex(remap[old], (float(loc[0]), float(loc[1])), pre, kind))
    return out


def build_quiver(f: CurvatureFunction, samples: int = DEFAULT_SAMPLES, eps_rel: float = CLUSTER_EPS) -> SignatureQuiver:
    """Quiver of the signature of ``f``: vertices, edges with multiplicity per curve period and weights."""
    sig = signature_of(f, samples)
    lay, sig, notes = _analyse(f, sig, eps_rel)
    if lay is None:
        raise SimpleSignatureError("the signature has no self-intersections; compare such curves with the congruence module")
    ell = f.period
    verts = _vertices_from(lay, ell)
    vmap = {}
    for v in verts:
        for x in v.preimages:
            vmap[x] = v.id
    info = closure_info(f)
    m = info.m if info.closed else 1
    # letters by first traversal from the first breakpoint
    letter_of = {}
    for e in lay.edge_of:
        if e not in letter_of:
            letter_of[e] = LETTERS[len(letter_of)]
    edges = []
    for e, (fr, to, _, first) in enumerate(lay.reps):
        ivs = [lay.intervals[r] for r in range(len(lay.intervals)) if lay.edge_of[r] == e]
        rep = lay.intervals[first]
        weights = [integrate_kappa(f, a, b) for a, b in ivs]
        w = weights[0]
        spread = max(abs(x - w) for x in weights)
        if spread > WEIGHT_TOL * max(1.0, abs(w)):
            raise InternalConsistencyError(f"edge {letter_of[e]} has preimage weights spreading by {spread:.3g}")
        a, b = rep
        edges.append(
            QuiverEdge(
                letter_of[e],
                vmap[float(lay.breaks[first])],
                vmap[float(lay.breaks[(first + 1) % len(lay.breaks)])],
                (float(a), float(b)),
                len(ivs) * m,
                float(w),
                tuple((float(x), float(y)) for x, y in ivs),
            )
        )
    edges.sort(key=lambda e: LETTERS.index(e.id))
    q = SignatureQuiver(
        vertices=tuple(verts),
        edges=tuple(edges),
        ell=ell,
        m=m,
        breakpoints=tuple(float(x) for x in lay.breaks),
        word_per_period=tuple(letter_of[e] for e in lay.edge_of),
        xi=info.xi,
        closed=info.closed,
        diag=sig.bbox_diag,
        source=f,
        warnings=tuple(notes),
    )
    total = q.weighted_sum
    expected = m * f.period_integral
    if abs(total - expected) > 1e-5 * max(1.0, abs(expected)):
        raise InternalConsistencyError(f"sum of mu*omega is {total:.9g}, expected {expected:.9g}")
    return q


def traced_word(q: SignatureQuiver) -> Word:
    """The word the curve traces over a full period: the per-period word repeated m times."""
    return Word(tuple(q.word_per_period) * q.m)


# --------------------------------------------------------------------------- labels and export


def relabel(q: SignatureQuiver, mapping: dict) -> SignatureQuiver:
    """Rename edges with ``mapping`` (old letter -> new letter); must be a bijection on the edge set."""
    ids = [e.id for e in q.edges]
    new = [mapping.get(i, i) for i in ids]
    if len(set(new)) != len(new):
        raise ValueError("relabelling must be one-to-one")
    edges = tuple(sorted((replace(e, id=mapping.get(e.id, e.id)) for e in q.edges), key=lambda e: e.id))
    return replace(q, edges=edges, word_per_period=tuple(mapping.get(x, x) for x in q.word_per_period))


def match_labels(q: SignatureQuiver, reference) -> dict:
    """Letter mapping onto a reference quiver given as (letter, from, to, weight or None) rows.

    Vertex numberings are matched by brute force over permutations; edges
    are then paired by least total weight mismatch among edges with the
    same endpoints. Returns {our letter: reference letter}.
    """
    ref = list(reference)
    ref_vertices = sorted({r[1] for r in ref} | {r[2] for r in ref})
    ours = [v.id for v in q.vertices]
    if len(ref_vertices) != len(ours) or len(ref) != len(q.edges):
        raise ValueError("reference quiver has a different number of vertices or edges")
    best, best_map = np.inf, None
    for perm in itertools.permutations(ref_vertices):
        vm = dict(zip(ours, perm))
        cost = np.full((len(q.edges), len(ref)), 1e9)
        for i, e in enumerate(q.edges):
            for j, (_, fr, to, w) in enumerate(ref):
                if vm[e.from_vertex] == fr and vm[e.to_vertex] == to:
                    cost[i, j] = 0.0 if w is None else abs(e.weight_omega - w)
        rows, cols = linear_sum_assignment(cost)
        total = cost[rows, cols].sum()
        if total < best:
            best = total
            best_map = {q.edges[i].id: ref[j][0] for i, j in zip(rows, cols)}
    if best >= 1e9:
        raise ValueError("no endpoint-preserving correspondence with the reference quiver")
    return best_map


def export_dot(q: SignatureQuiver) -> str:
    """DOT digraph, one node per vertex and one arc per edge labelled letter:mu:omega."""
    lines = ["digraph signature_quiver {"]
    for v in sorted(q.vertices, key=lambda v: v.id):
        lines.append(f'  q{v.id} [label="q{v.id} ({v.location[0]:.6f}, {v.location[1]:.6f})"];')
    for e in sorted(q.edges, key=lambda e: e.id):
        lines.append(f'  q{e.from_vertex} -> q{e.to_vertex} [label="{e.id}:{e.multiplicity_mu}:{e.weight_omega:.6f}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def quiver_svg(q: SignatureQuiver, samples: int = 400) -> str:
    """Signature plot with each edge drawn in its own colour."""
    from .svg import polylines_svg

    f = q.source
    lines, classes = [], []
    for e in q.edges:
        a, b = e.representative_interval
        lines.append(_images_n(f, a, b, samples))
        classes.append(f"edge-{e.id}")
    return polylines_svg(lines, classes)


def _images_n(f, a, b, n):
    s = np.linspace(a, b, n)
    k, kd = f.eval(s)
    return np.column_stack([k, kd])
