"""Curves from words: splice the source curvature along a path in the quiver and integrate it."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .curvature import CurvatureFunction
from .errors import InternalConsistencyError, NotAPathError, NotCyclicError, SigQuiverError
from .geometry import CLOSURE_TOL, PlaneCurve
from .polyline import self_crossings
from .quiver import SignatureQuiver
from .reconstruction import integrate_frenet
from .signature import signature_distance, signature_of
from .words import ClosureTest, Word, check_path, closure_test, is_complete, minimal_subword, multiplicities, parse_word

JUNCTION_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class SynthesisResult:
    word: Word
    kappa_w: CurvatureFunction
    curve: PlaneCurve
    breakpoints_c: tuple[float, ...]
    sym_index_m: int
    sig_index: int
    closed: bool
    closure_gap: float
    closure: ClosureTest
    xi: int
    diagnostics: dict = field(default_factory=dict)

    @property
    def length(self) -> float:
        return self.breakpoints_c[-1]


def _segment_pieces(f: CurvatureFunction, a: float, b: float, c: float):
    """Pieces of f restricted to [a, b] (which may run past one period), moved to start at c."""
    ell = f.period
    out = []
    k0 = int(np.floor((a - f.offset) / ell))
    k1 = int(np.floor((b - f.offset) / ell))
    for k in range(k0, k1 + 1):
        for p in f.pieces:
            lo = max(a, p.interval[0] + k * ell)
            hi = min(b, p.interval[1] + k * ell)
            if hi - lo <= 1e-12 * ell:
                continue
            out.append(p.shifted(k * ell).clipped(lo, hi).shifted(c - a))
    if not out:
        raise InternalConsistencyError(f"no curvature pieces cover [{a}, {b}]")
    # snap the ends so consecutive segments tile exactly
    out[0] = out[0].clipped(c, out[0].interval[1])
    out[-1] = out[-1].clipped(out[-1].interval[0], c + (b - a))
    return out


def kappa_from_word(q: SignatureQuiver, w: Word) -> CurvatureFunction:
    """Periodic curvature whose period is the word's minimal block, spliced from representative intervals."""
    if q.source is None:
        raise InternalConsistencyError("the quiver carries no source curvature")
    if not w.closed:
        raise NotCyclicError("synthesis needs a closed word")
    if not w.letters:
        raise NotAPathError("empty word")
    check_path(q, w)
    u, _ = minimal_subword(w)
    pieces = []
    c = 0.0
    for letter in u.letters:
        a, b = q.edge(letter).representative_interval
        pieces.extend(_segment_pieces(q.source, a, b, c))
        c += b - a
    try:
        return CurvatureFunction(pieces, c, 0.0, junction_tol=JUNCTION_TOL)
    except SigQuiverError as exc:
        raise InternalConsistencyError(f"spliced curvature is inconsistent: {exc}") from exc


def synthesize_curve(q: SignatureQuiver, w: Word, xi: int | None = None, samples: int = 8192) -> SynthesisResult:
    """Integrate the spliced curvature over the whole word.

    ``xi`` is the turning number used by the closure test; when None it is
    the nearest integer to (sum of multiplicity times weight) / 2 pi, or 1
    if that is zero. The closed flag always comes from the endpoint gap.
    """
    check_path(q, w)
    probe = closure_test(q, w, 1)
    if xi is None:
        xi = int(round(probe.sum / (2 * np.pi))) or 1
    ct = closure_test(q, w, xi)
    kw = kappa_from_word(q, w)
    _, m = minimal_subword(w)
    total = m * kw.period
    curve = integrate_frenet(kw, total, total / samples)
    gap = float(np.hypot(*(curve.points[-1] - curve.points[0]))) / total
    closed = gap <= CLOSURE_TOL
    curve = PlaneCurve(curve.t, curve.points, curve.d1, curve.d2, curve.d3, closed=closed, angle=curve.angle)
    cuts = [0.0]
    for letter in w.letters:
        a, b = q.edge(letter).representative_interval
        cuts.append(cuts[-1] + (b - a))
    counts = multiplicities(w)
    crossings = self_crossings(curve.points[:-1] if closed else curve.points, closed, 1e-3 * total)
    sig_dev = signature_distance(signature_of(kw), signature_of(q.source)) / q.diag
    diagnostics = {
        "complete": is_complete(q, w),
        "self_crossings": int(len(crossings.i)),
        "signature_deviation": float(sig_dev),
        "weight_sum": ct.sum,
    }
    return SynthesisResult(
        word=w,
        kappa_w=kw,
        curve=curve,
        breakpoints_c=tuple(cuts),
        sym_index_m=m,
        sig_index=min(counts.values()),
        closed=closed,
        closure_gap=gap,
        closure=ct,
        xi=xi,
        diagnostics=diagnostics,
    )


def synthesize_batch(q: SignatureQuiver, lines, xi: int | None = None) -> str:
    """CSV rows word,closed,m,sig_index,length,closure_gap for each non-blank line."""
    out = io.StringIO()
    wr = csv.writer(out, lineterminator="\n")
    wr.writerow(["word", "closed", "m", "sig_index", "length", "closure_gap"])
    for line in lines:
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        r = synthesize_curve(q, parse_word(text), xi)
        wr.writerow([text, str(r.closed).lower(), r.sym_index_m, r.sig_index, f"{r.length:.9g}", f"{r.closure_gap:.9g}"])
    return out.getvalue()
