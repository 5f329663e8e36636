"""End-to-end checks on the gallery, shared by ``sigquiver verify`` and the test suite.

Each criterion function returns a list of Check rows; ``run_all`` collects
them in order. Expensive objects (quivers, signatures) are cached per
``Workbench`` so one verify run builds each of them once.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .congruence import RESIDUAL_TOL, SIGNATURE_TOL, are_congruent, compare, find_shift
from .gallery import bump_curvatures, cogwheel_curvature, mn_curvature, simple_signature_curvature
from .geometry import apply_rigid_motion, curvature_at
from .quiver import CLUSTER_EPS, QuiverEdge, QuiverVertex, SignatureQuiver, build_quiver, match_labels, relabel, traced_word
from .reconstruction import closure_info, integrate_frenet
from .signature import signature_distance, signature_of
from .synthesis import synthesize_curve
from .words import Word, canonical, closure_test, enumerate_words, parse_word

# Edge weights of the bump quiver under the conventional lettering (one vertex, four loops).
BUMP_REFERENCE = (
    ("a", 0, 0, -2 * math.pi / 3),
    ("b", 0, 0, -math.pi / 3),
    ("c", 0, 0, math.pi / 3),
    ("d", 0, 0, math.pi),
)
BUMP_WORDS = ("(cadb)^6", "(cdab)^6", "(cadbcdab)^3", "(cadbcdabcadb)^2")
BUMP_M = (6, 6, 3, 2)


class Check(NamedTuple):
    criterion: int
    name: str
    passed: bool
    detail: str


@dataclass
class Workbench:
    """Gallery objects built on demand and kept for the rest of the run."""

    seed: int = 0
    cluster_eps: float = CLUSTER_EPS
    hausdorff_tol: float = SIGNATURE_TOL
    residual_tol: float = RESIDUAL_TOL
    samples: int = 8192

    def rng(self, salt: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, salt])

    @cached_property
    def bumps(self):
        return bump_curvatures()

    @cached_property
    def bump_curves(self):
        # each closes after 48 units (checked by criterion 1), so mark them closed
        return [replace(integrate_frenet(f, 48.0, 48.0 / self.samples), closed=True) for f in self.bumps]

    @cached_property
    def bump_signatures(self):
        return [signature_of(f, self.samples) for f in self.bumps]

    @cached_property
    def bump_quivers(self):
        """Quivers of the four bump curves, lettered like BUMP_REFERENCE."""
        out = []
        for f in self.bumps:
            q = build_quiver(f, self.samples, self.cluster_eps)
            out.append(relabel(q, match_labels(q, BUMP_REFERENCE)))
        return out

    @cached_property
    def mn(self):
        return mn_curvature()

    @cached_property
    def mn_quiver(self):
        return build_quiver(self.mn, self.samples, self.cluster_eps)

    @cached_property
    def cog(self):
        return cogwheel_curvature()

    @cached_property
    def cog_quiver(self):
        """Cogwheel quiver with loops lettered a, b, c, d by increasing multiplicity."""
        q = build_quiver(self.cog, self.samples, self.cluster_eps)
        order = sorted(q.edges, key=lambda e: (e.multiplicity_mu, e.id))
        return relabel(q, {e.id: "abcdefghijklmnopqrstuvwxyz"[i] for i, e in enumerate(order)})

    @cached_property
    def simple(self):
        return simple_signature_curvature()


def _fmt(x: float) -> str:
    return f"{x:.3g}"


def _same_cycle(w1: Word, w2: Word) -> bool:
    return len(w1) == len(w2) and canonical(w1) == canonical(w2)


def same_up_to_bijection(w1: Word, w2: Word) -> bool:
    """Equal after renaming letters one-to-one and rotating."""
    a, b = sorted(set(w1.letters)), sorted(set(w2.letters))
    if len(a) != len(b) or len(w1) != len(w2):
        return False
    for perm in itertools.permutations(b):
        m = dict(zip(a, perm))
        if _same_cycle(Word(tuple(m[x] for x in w1.letters)), w2):
            return True
    return False


# --------------------------------------------------------------------------- criteria


def criterion_1(wb: Workbench) -> list[Check]:
    out = []
    for i, (f, m_expected) in enumerate(zip(wb.bumps, BUMP_M), 1):
        info = closure_info(f)
        c = wb.bump_curves[i - 1]
        gap = float(np.hypot(*(c.points[-1] - c.points[0])))
        turning = (c.angle[-1] - c.angle[0]) / (2 * math.pi)
        ok = (
            info.closed
            and abs(info.total_length_L - 48.0) <= 1e-3
            and gap <= 1e-4 * info.total_length_L
            and abs(turning - 1) <= 1e-5 / (2 * math.pi)
            and info.m == m_expected
        )
        detail = f"L={info.total_length_L:.9g} gap={_fmt(gap)} xi={turning:.9g} m={info.m}"
        out.append(Check(1, f"bump curve {i} closes", ok, detail))
    return out


def criterion_2(wb: Workbench) -> list[Check]:
    sigs = wb.bump_signatures
    diag = max(s.bbox_diag for s in sigs)
    worst = max(signature_distance(a, b) for a, b in itertools.combinations(sigs, 2))
    return [Check(2, "bump signatures coincide", worst <= wb.hausdorff_tol * diag, f"max Hausdorff/diag={_fmt(worst / diag)}")]


def criterion_3(wb: Workbench) -> list[Check]:
    out = []
    target = sorted(w for *_, w in BUMP_REFERENCE)
    for i, (q, expected) in enumerate(zip(wb.bump_quivers, BUMP_WORDS), 1):
        loc = np.asarray(q.vertices[0].location) if q.vertices else np.array([np.inf, np.inf])
        eps = wb.cluster_eps * q.diag
        weights = sorted(e.weight_omega for e in q.edges)
        ok_shape = (
            len(q.vertices) == 1
            and float(np.hypot(*loc)) <= eps
            and len(q.edges) == 4
            and all(e.multiplicity_mu == 6 for e in q.edges)
            and all(abs(a - b) <= 1e-4 for a, b in zip(weights, target))
        )
        detail = f"{len(q.vertices)} vertex, {len(q.edges)} edges, mu={[e.multiplicity_mu for e in q.edges]}"
        out.append(Check(3, f"bump quiver {i} shape and weights", ok_shape, detail))
        w = traced_word(q)
        ok_word = same_up_to_bijection(w, parse_word(expected))
        out.append(Check(3, f"bump curve {i} traces {expected}", ok_word, f"traced {w}"))
    return out


def criterion_4(wb: Workbench) -> list[Check]:
    out = []
    for i, j in itertools.combinations(range(4), 2):
        r = compare(wb.bumps[i], wb.bumps[j], tol=wb.residual_tol, signature_tol=wb.hausdorff_tol)
        out.append(Check(4, f"bump curves {i + 1},{j + 1} not congruent", not r.congruent, f"residual={_fmt(r.residual)}"))
    rng = wb.rng(4)
    for i, c in enumerate(wb.bump_curves, 1):
        moved = apply_rigid_motion(c, rng.uniform(0, 2 * math.pi), rng.uniform(-50, 50, 2))
        r = are_congruent(c, moved, tol=wb.residual_tol)
        scale = float(np.max(np.abs(curvature_at(c)[0])))
        ok = r.congruent and r.residual <= 1e-4 * scale
        out.append(Check(4, f"bump curve {i} congruent to a moved copy", ok, f"residual={_fmt(r.residual)}"))
    return out


def criterion_5(wb: Workbench) -> list[Check]:
    q = wb.bump_quivers[0]
    out = []
    for text, m, sig in (("(cbdacacccbda)^2", 2, 4), ("(cbdacacc)^3", 3, 3), ("(ccabdacc)^3", 3, 3)):
        r = synthesize_curve(q, parse_word(text))
        ok = r.closed and r.sym_index_m == m and r.sig_index == sig
        detail = f"closed={r.closed} gap={_fmt(r.closure_gap)} m={r.sym_index_m} sig-index={r.sig_index}"
        out.append(Check(5, f"{text} closes", ok, detail))
    r = synthesize_curve(q, parse_word("cadbcdabcdabcadbcadbcdab"))
    sig = signature_of(r.kappa_w, wb.samples)
    d = signature_distance(sig, wb.bump_signatures[0]) / q.diag
    ok = (not r.closed) and d <= wb.hausdorff_tol
    out.append(Check(5, "aperiodic word gives an open curve", ok, f"gap={_fmt(r.closure_gap)} Hausdorff/diag={_fmt(d)}"))
    return out


def criterion_6(wb: Workbench) -> list[Check]:
    q = wb.mn_quiver
    out = []
    ok = len(q.vertices) == 4 and len(q.edges) == 8 and all(e.multiplicity_mu == 5 for e in q.edges)
    out.append(Check(6, "Musso-Nicolodi quiver shape", ok, f"{len(q.vertices)} vertices, {len(q.edges)} edges"))
    en = enumerate_words(q, {e.id: 1 for e in q.edges})
    out.append(Check(6, "unit multiplicities give 5 classes", en.count == 5 and not en.truncated, f"{en.count} classes"))
    results = [synthesize_curve(q, w * 5) for w in en.words]
    closed = all(r.closed and r.sym_index_m == 5 for r in results)
    out.append(Check(6, "all enumerated words close with m=5", closed, f"gaps={[_fmt(r.closure_gap) for r in results]}"))
    cong = [
        compare(a.kappa_w, b.kappa_w, tol=wb.residual_tol, signature_tol=wb.hausdorff_tol).congruent
        for a, b in itertools.combinations(results, 2)
    ]
    out.append(Check(6, "synthesized curves pairwise non-congruent", not any(cong), f"{sum(cong)} congruent pairs"))
    sigs = [signature_of(r.kappa_w, wb.samples) for r in results]
    worst = max(signature_distance(a, b) for a, b in itertools.combinations(sigs, 2)) / q.diag
    out.append(Check(6, "synthesized signatures coincide", worst <= wb.hausdorff_tol, f"max Hausdorff/diag={_fmt(worst)}"))
    return out


def criterion_7(wb: Workbench) -> list[Check]:
    q = wb.cog_quiver
    out = []
    mus = [e.multiplicity_mu for e in q.edges]
    ok = (
        len(q.vertices) == 1
        and mus == [3, 4, 5, 6]
        and q.sig_index == 3
        and abs(q.weighted_sum - 2 * math.pi) <= 1e-3
    )
    out.append(Check(7, "cogwheel quiver", ok, f"mu={mus} sum={q.weighted_sum:.9g}"))
    for text in ("a^3c^5b^4d^6", "a^3c^5d^6b^4"):
        r = synthesize_curve(q, parse_word(text))
        v = compare(r.kappa_w, wb.cog, tol=wb.residual_tol, signature_tol=wb.hausdorff_tol)
        ok = r.closed and not v.congruent
        out.append(Check(7, f"{text} closes, not congruent to the cogwheel", ok, f"gap={_fmt(r.closure_gap)} residual={_fmt(v.residual)}"))
    for text in ("a^2b^4c^5d^8", "a^3b^6c^5d^3"):
        ct = closure_test(q, parse_word(text))
        out.append(Check(7, f"{text} passes the closure test", ct.holds, f"sum={ct.sum:.9g}"))
    return out


def criterion_8(wb: Workbench) -> list[Check]:
    f = wb.simple
    sig = signature_of(f, wb.samples)
    from .quiver import self_intersections

    crossings = self_intersections(sig, wb.cluster_eps)
    p = sig.points
    circle = float(np.max(np.abs((p[:, 0] - 0.2) ** 2 + p[:, 1] ** 2 - 2)))
    out = [Check(8, "signature is a simple circle", not crossings and circle <= 1e-6, f"max circle residual={_fmt(circle)}")]
    info = closure_info(f)
    out.append(Check(8, "curve closes with m=5", info.closed and info.m == 5, f"m={info.m} gap={_fmt(info.gap)}"))
    g = type(f)([p.shifted(0.7) for p in f.pieces], f.period, 0.7)
    r = compare(f, g, tol=wb.residual_tol, signature_tol=wb.hausdorff_tol)
    out.append(Check(8, "simple-signature shortcut decides congruence", r.congruent and r.method == "simple-signature", r.method))
    return out


def loop_quiver(n: int = 4) -> SignatureQuiver:
    """A single vertex with n loops, used to cross-check enumeration."""
    edges = tuple(QuiverEdge("abcdefgh"[i], 0, 0, (float(i), float(i + 1)), 1, 0.0, ((float(i), float(i + 1)),)) for i in range(n))
    return SignatureQuiver((QuiverVertex(0, (0.0, 0.0), (0.0,), "crossing"),), edges, float(n), 1, (), ())


def brute_force_classes(q: SignatureQuiver, mult: dict) -> int:
    letters = [x for x, c in sorted(mult.items()) for _ in range(c)]
    found = set()
    from .words import is_path

    for perm in set(itertools.permutations(letters)):
        w = Word(perm)
        if is_path(q, w):
            found.add(canonical(w))
    return len(found)


def criterion_9(wb: Workbench) -> list[Check]:
    out = []
    rng = wb.rng(9)
    c = wb.bump_curves[0]
    k0, kd0 = curvature_at(c)
    worst = 0.0
    for _ in range(50):
        moved = apply_rigid_motion(c, rng.uniform(0, 2 * math.pi), rng.uniform(-100, 100, 2))
        k, kd = curvature_at(moved)
        worst = max(worst, float(np.max(np.abs(k - k0))), float(np.max(np.abs(kd - kd0))))
    out.append(Check(9, "signature invariant under 50 rigid motions", worst <= 1e-9, f"max change={_fmt(worst)}"))

    f = wb.bumps[0]
    sig = wb.bump_signatures[0]
    rev = signature_of(f.reversed(), wb.samples)
    d = signature_distance(rev, sig.reflected()) / sig.bbox_diag
    out.append(Check(9, "reversal mirrors the signature", d <= wb.hausdorff_tol, f"Hausdorff/diag={_fmt(d)}"))

    quivers = {"cinf1": wb.bump_quivers[0], "cinf2": wb.bump_quivers[1], "cinf3": wb.bump_quivers[2], "cinf4": wb.bump_quivers[3]}
    quivers["mn"] = wb.mn_quiver
    quivers["cogwheel"] = wb.cog_quiver
    for name, q in quivers.items():
        r = synthesize_curve(q, traced_word(q))
        v = find_shift(q.source, r.kappa_w, tol=wb.residual_tol)
        out.append(Check(9, f"{name}: word round trip is congruent", v.congruent and r.closed, f"residual={_fmt(v.residual)}"))
        dev = abs(q.weighted_sum - 2 * math.pi * q.xi)
        out.append(Check(9, f"{name}: sum of mu*omega is 2 pi xi", dev <= 1e-5, f"xi={q.xi} deviation={_fmt(dev)}"))
        ok = all(e.multiplicity_mu % q.m == 0 for e in q.edges)
        out.append(Check(9, f"{name}: m divides every mu", ok, f"m={q.m} mu={[e.multiplicity_mu for e in q.edges]}"))

    lq = loop_quiver(4)
    mult = {e.id: 1 for e in lq.edges}
    n = enumerate_words(lq, mult).count
    counted = enumerate_words(lq, mult, count_only=True).count
    brute = brute_force_classes(lq, mult)
    out.append(Check(9, "enumeration on four loops", n == counted == brute == 6, f"listed={n} counted={counted} brute={brute}"))
    return out


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9)


def run_all(wb: Workbench | None = None, only=None) -> list[Check]:
    wb = wb or Workbench()
    out = []
    for k, fn in enumerate(CRITERIA, 1):
        if only and k not in only:
            continue
        out.extend(fn(wb))
    return out


def format_table(checks) -> str:
    lines = []
    for c in checks:
        lines.append(f"{'PASS' if c.passed else 'FAIL'}  {c.criterion}  {c.name}  [{c.detail}]")
    passed = sum(c.passed for c in checks)
    lines.append(f"{passed}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n"
