"""Euclidean signatures of closed planar curves, their quivers, and curves synthesized from quiver words."""

from .congruence import CongruenceResult, are_congruent, compare, find_shift, symmetry_index
from .curvature import CurvatureFunction, bump, constant_curvature, critical_points, integrate_kappa, trig_curvature
from .errors import SigQuiverError
from .gallery import CogwheelSpec, bump_curvatures, cogwheel, cogwheel_curvature, gallery_curvature, mn_curvature
from .geometry import PlaneCurve, apply_rigid_motion, curvature_at, resample_arclength
from .quiver import SignatureQuiver, build_quiver, export_dot, self_intersections, traced_word
from .reconstruction import closure_info, integrate_frenet
from .signature import Signature, signature_distance, signature_of, signature_of_curve
from .synthesis import SynthesisResult, kappa_from_word, synthesize_curve
from .words import Word, canonical, closure_test, enumerate_words, minimal_subword, parse_word

__all__ = [
    "CogwheelSpec",
    "CongruenceResult",
    "CurvatureFunction",
    "PlaneCurve",
    "SigQuiverError",
    "Signature",
    "SignatureQuiver",
    "SynthesisResult",
    "Word",
    "apply_rigid_motion",
    "are_congruent",
    "build_quiver",
    "bump",
    "bump_curvatures",
    "canonical",
    "closure_info",
    "closure_test",
    "cogwheel",
    "cogwheel_curvature",
    "compare",
    "constant_curvature",
    "critical_points",
    "curvature_at",
    "enumerate_words",
    "export_dot",
    "find_shift",
    "gallery_curvature",
    "integrate_frenet",
    "integrate_kappa",
    "kappa_from_word",
    "minimal_subword",
    "mn_curvature",
    "parse_word",
    "resample_arclength",
    "self_intersections",
    "signature_distance",
    "signature_of",
    "signature_of_curve",
    "symmetry_index",
    "synthesize_curve",
    "traced_word",
    "trig_curvature",
]
