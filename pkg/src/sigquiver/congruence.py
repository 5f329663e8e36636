"""Congruence of curves under rotations and translations, decided on curvature functions."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .curvature import CurvatureFunction, SampledPiece
from .errors import NotClosedError, OpenCurveError
from .geometry import PlaneCurve, curvature_at, resample_arclength
from .reconstruction import closure_info
from .signature import signature_distance, signature_of

SHIFT_GRID = 8192
RESIDUAL_TOL = 1e-4  # relative to max |kappa|
PERIOD_TOL = 1e-6
SIGNATURE_TOL = 1e-3


@dataclass(frozen=True)
class CongruenceResult:
    congruent: bool
    shift_c: float | None
    residual: float
    periods: tuple[float, float]
    method: str = "shift"

    def to_json(self) -> str:
        return json.dumps(
            {
                "congruent": self.congruent,
                "shift": None if self.shift_c is None else float(f"{self.shift_c:.9g}"),
                "residual": float(f"{self.residual:.9g}"),
                "periods": [float(f"{p:.9g}") for p in self.periods],
                "method": self.method,
            }
        )


def _sup_residual(f1, f2, s, c):
    return float(np.max(np.abs(f2.kappa(s) - f1.kappa(s + c))))


def find_shift(
    f1: CurvatureFunction, f2: CurvatureFunction, grid: int = SHIFT_GRID, tol: float = RESIDUAL_TOL
) -> CongruenceResult:
    """Search c with kappa2(s) = kappa1(s + c) for all s.

    Candidate shifts come from the circular cross-correlation on a uniform
    grid; the best few are polished by a bounded scalar minimisation of the
    sup-norm mismatch.
    """
    l1, l2 = f1.period, f2.period
    if abs(l1 - l2) > PERIOD_TOL * max(l1, l2):
        return CongruenceResult(False, None, float("inf"), (l1, l2))
    ell = l1
    s = ell * np.arange(grid) / grid
    k1, k2 = f1.kappa(s), f2.kappa(s)
    scale = max(float(np.max(np.abs(k1))), float(np.max(np.abs(k2))), 1e-300)
    # (k1 shifted by c) vs k2: minimise sum (k1(s+c) - k2(s))^2, i.e. maximise the correlation
    corr = np.fft.irfft(np.fft.rfft(k1) * np.conj(np.fft.rfft(k2)), grid)
    h = ell / grid
    best_c, best_r = None, float("inf")
    for j in np.argsort(-corr)[:8]:
        c0 = j * h
        res = minimize_scalar(
            lambda c: _sup_residual(f1, f2, s, c), bounds=(c0 - h, c0 + h), method="bounded", options={"xatol": 1e-12 * ell}
        )
        c, r = float(res.x), float(res.fun)
        r0 = _sup_residual(f1, f2, s, c0)
        if r0 < r:
            c, r = c0, r0
        if r < best_r:
            best_c, best_r = c, r
    # confirm off the search grid
    check = ell * (np.arange(grid) + 0.5) / grid
    best_r = max(best_r, _sup_residual(f1, f2, check, best_c))
    ok = best_r <= tol * scale
    c = float(np.mod(best_c, ell))
    if ell - c <= 1e-12 * ell:
        c = 0.0
    return CongruenceResult(bool(ok), c if ok else None, best_r, (l1, l2))


def symmetry_index(f: CurvatureFunction) -> int:
    """m = L / ell for a closing curvature function."""
    info = closure_info(f)
    if not info.closed:
        raise NotClosedError(info.diagnostic or "the curve does not close")
    return info.m


def sampled_curvature(c: PlaneCurve, samples: int = 8192) -> CurvatureFunction:
    """Curvature of a closed sampled curve as a function of arc-length over its full length."""
    if not c.closed:
        raise OpenCurveError("congruence is decided for closed curves; compare open pieces segment by segment")
    r = resample_arclength(c, c.length / samples)
    k, kd = curvature_at(r)
    s = r.t
    # close the period exactly: the last sample is the first one again
    k[-1], kd[-1] = k[0], kd[0]
    piece = SampledPiece((0.0, float(s[-1])), tuple(s), tuple(k), tuple(kd))
    return CurvatureFunction([piece], float(s[-1]), validate=False)


def are_congruent(c1: PlaneCurve, c2: PlaneCurve, samples: int = 8192, tol: float = RESIDUAL_TOL) -> CongruenceResult:
    """Resample both curves by arc-length and compare their curvature functions by shifts."""
    f1, f2 = sampled_curvature(c1, samples), sampled_curvature(c2, samples)
    return find_shift(f1, f2, tol=tol)


def compare(
    f1: CurvatureFunction,
    f2: CurvatureFunction,
    *,
    reversed_: bool = False,
    tol: float = RESIDUAL_TOL,
    signature_tol: float = SIGNATURE_TOL,
) -> CongruenceResult:
    """Congruence verdict for two curvature functions.

    When both signatures are free of self-intersections and coincide, the
    curves are congruent outright; the shift is still searched over the
    closing length as a certificate. Otherwise the shift search decides.
    """
    from .quiver import self_intersections

    if reversed_:
        f2 = f2.reversed()
    s1, s2 = signature_of(f1), signature_of(f2)
    if not self_intersections(s1) and not self_intersections(s2):
        diag = max(s1.bbox_diag, s2.bbox_diag)
        if signature_distance(s1, s2) <= signature_tol * diag:
            cert = find_shift(f1, f2, tol=tol)
            return CongruenceResult(True, cert.shift_c, cert.residual, (f1.period, f2.period), "simple-signature")
    return find_shift(f1, f2, tol=tol)
