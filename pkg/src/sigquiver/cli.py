"""Command-line entry point: ``sigquiver <command> ...``.

Inputs are ``gallery:NAME``, a curvature JSON document, a quiver JSON
document, or a ``t,x,y`` polyline CSV. Results go to stdout (or ``-o``);
diagnostics go to stderr. Exit status is 0 on success, 2 on any error, and
``congruent`` / ``verify`` use 1 for a negative answer.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass, replace

from . import acceptance
from .congruence import RESIDUAL_TOL, SIGNATURE_TOL, are_congruent, compare
from .curvature import CurvatureFunction
from .errors import SigQuiverError, SimpleSignatureError
from .gallery import CURVATURE_NAMES, CURVE_NAMES, degenerate_curve, gallery_curvature
from .geometry import PlaneCurve, curve_to_csv, read_polyline_csv
from .quiver import CLUSTER_EPS, SignatureQuiver, build_quiver, export_dot, quiver_svg
from .reconstruction import closure_info, integrate_frenet
from .signature import DEFAULT_SAMPLES, signature_of, signature_of_curve, signature_svg, signature_to_csv
from .svg import polylines_svg
from .synthesis import synthesize_curve
from .words import enumerate_words, format_word, parse_word


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...] = ()
    output: str | None = None
    cluster_eps: float = CLUSTER_EPS
    hausdorff_tol: float = SIGNATURE_TOL
    residual_tol: float = RESIDUAL_TOL
    samples: int = DEFAULT_SAMPLES
    seed: int = 0

    def __post_init__(self):
        for name in ("cluster_eps", "hausdorff_tol", "residual_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name.replace('_', '-')} must be positive")
        if self.samples < 16:
            raise ValueError("samples must be at least 16")


def g9(x) -> str:
    return f"{float(x):.9g}"


# --------------------------------------------------------------------------- inputs


def load_input(ref: str):
    """A CurvatureFunction, PlaneCurve or SignatureQuiver from a command-line reference."""
    if ref.startswith("gallery:"):
        name = ref.split(":", 1)[1]
        if name in CURVE_NAMES:
            return degenerate_curve()
        if name not in CURVATURE_NAMES:
            raise SigQuiverError(f"unknown gallery item {name!r}; choose from {', '.join(CURVATURE_NAMES + CURVE_NAMES)}")
        return gallery_curvature(name)
    with open(ref) as fh:
        text = fh.read()
    if ref.lower().endswith(".csv") or text.lstrip().startswith("t,"):
        return read_polyline_csv(text if "\n" in text else text + "\n")
    doc = json.loads(text)
    if "edges" in doc:
        return SignatureQuiver.from_dict(doc)
    return CurvatureFunction.from_dict(doc)


def _curvature(obj) -> CurvatureFunction:
    if isinstance(obj, CurvatureFunction):
        return obj
    if isinstance(obj, SignatureQuiver):
        if obj.source is None:
            raise SigQuiverError("the quiver file carries no source curvature")
        return obj.source
    from .congruence import sampled_curvature

    return sampled_curvature(obj)


def _quiver(obj, cfg: RunConfig) -> SignatureQuiver:
    if isinstance(obj, SignatureQuiver):
        return obj
    return build_quiver(_curvature(obj), cfg.samples, cfg.cluster_eps)


def reconstruct(f: CurvatureFunction, samples: int) -> PlaneCurve:
    """The whole curve when it closes, otherwise one period."""
    info = closure_info(f)
    span = info.total_length_L if info.closed else f.period
    c = integrate_frenet(f, span, span / samples)
    return replace(c, closed=info.closed)


# --------------------------------------------------------------------------- commands


def cmd_curve(cfg: RunConfig, args) -> tuple[str, int]:
    obj = load_input(cfg.inputs[0])
    c = obj if isinstance(obj, PlaneCurve) else reconstruct(_curvature(obj), cfg.samples)
    return (curve_to_csv(c) if args.out == "csv" else polylines_svg([c.points])), 0


def cmd_signature(cfg: RunConfig, args) -> tuple[str, int]:
    obj = load_input(cfg.inputs[0])
    sig = signature_of_curve(obj) if isinstance(obj, PlaneCurve) else signature_of(_curvature(obj), cfg.samples)
    return (signature_to_csv(sig) if args.out == "csv" else signature_svg(sig)), 0


def cmd_quiver(cfg: RunConfig, args) -> tuple[str, int]:
    q = _quiver(load_input(cfg.inputs[0]), cfg)
    for note in q.warnings:
        print(f"warning: {note}", file=sys.stderr)
    text = {"dot": export_dot, "json": lambda q: q.to_json() + "\n", "svg": quiver_svg}[args.out](q)
    return text, 0


def _parse_mult(text: str, q: SignatureQuiver) -> dict:
    out = {}
    for item in filter(None, (x.strip() for x in text.split(","))):
        key, sep, val = item.partition("=")
        if not sep:
            raise SigQuiverError(f"multiplicity {item!r} is not of the form letter=count")
        n = int(val)
        if key == "all":
            out.update({e.id: n for e in q.edges})
        else:
            out[key] = n
    return out


def cmd_words(cfg: RunConfig, args) -> tuple[str, int]:
    q = _quiver(load_input(cfg.inputs[0]), cfg)
    en = enumerate_words(q, _parse_mult(args.mult, q), max_results=args.max, count_only=args.count_only)
    if args.count_only:
        return f"{en.count}\n", 0
    if en.truncated:
        print(f"warning: stopped after {args.max} words", file=sys.stderr)
    return "".join(w.text + "\n" for w in en.words), 0


def cmd_synth(cfg: RunConfig, args) -> tuple[str, int]:
    q = _quiver(load_input(cfg.inputs[0]), cfg)
    r = synthesize_curve(q, parse_word(args.word), args.xi, cfg.samples)
    print(
        f"word {format_word(r.word)}  closed {str(r.closed).lower()}  m {r.sym_index_m}  sig-index {r.sig_index}"
        f"  length {g9(r.length)}  gap {g9(r.closure_gap)}  closure-test {str(r.closure.holds).lower()}",
        file=sys.stderr,
    )
    return (curve_to_csv(r.curve) if args.out == "csv" else polylines_svg([r.curve.points])), 0


def cmd_congruent(cfg: RunConfig, args) -> tuple[str, int]:
    a, b = (load_input(x) for x in cfg.inputs)
    if isinstance(a, PlaneCurve) or isinstance(b, PlaneCurve):
        ca = a if isinstance(a, PlaneCurve) else reconstruct(_curvature(a), cfg.samples)
        cb = b if isinstance(b, PlaneCurve) else reconstruct(_curvature(b), cfg.samples)
        if args.reversed:
            cb = cb.reversed()
        r = are_congruent(ca, cb, cfg.samples, tol=cfg.residual_tol)
    else:
        r = compare(
            _curvature(a), _curvature(b), reversed_=args.reversed, tol=cfg.residual_tol, signature_tol=cfg.hausdorff_tol
        )
    return r.to_json() + "\n", 0 if r.congruent else 1


def cmd_indices(cfg: RunConfig, args) -> tuple[str, int]:
    obj = load_input(cfg.inputs[0])
    f = _curvature(obj)
    info = closure_info(f)
    lines = [f"closed {str(info.closed).lower()}", f"xi {info.xi}", f"m {info.m}"]
    try:
        q = _quiver(obj, cfg)
    except SimpleSignatureError:
        # one loop covered m times
        lines += [f"sig-index {info.m}", "edges none (simple signature)"]
        return "\n".join(lines) + "\n", 0
    lines.append(f"sig-index {q.sig_index}")
    lines.append("edge from to mu omega")
    for e in q.edges:
        lines.append(f"{e.id} {e.from_vertex} {e.to_vertex} {e.multiplicity_mu} {g9(e.weight_omega)}")
    return "\n".join(lines) + "\n", 0


def cmd_verify(cfg: RunConfig, args) -> tuple[str, int]:
    wb = acceptance.Workbench(cfg.seed, cfg.cluster_eps, cfg.hausdorff_tol, cfg.residual_tol, cfg.samples)
    only = {int(x) for x in args.only.split(",")} if args.only else None
    checks = acceptance.run_all(wb, only)
    return acceptance.format_table(checks), 0 if all(c.passed for c in checks) else 1


# --------------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write the result to this file instead of stdout")
    common.add_argument("--cluster-eps", type=float, default=CLUSTER_EPS, help="vertex clustering radius over the signature diagonal")
    common.add_argument("--hausdorff-tol", type=float, default=SIGNATURE_TOL, help="signature match tolerance over the diagonal")
    common.add_argument("--residual-tol", type=float, default=RESIDUAL_TOL, help="curvature shift residual over max |kappa|")
    common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="samples per period")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="sigquiver", description="Signatures, signature quivers and curve synthesis for planar curves.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("curve", parents=[common], help="reconstruct a curve from its curvature")
    s.add_argument("input")
    s.add_argument("--out", choices=("csv", "svg"), default="csv")

    s = sub.add_parser("signature", parents=[common], help="sample the signature (kappa, kappa_dot)")
    s.add_argument("input")
    s.add_argument("--out", choices=("csv", "svg"), default="csv")

    s = sub.add_parser("quiver", parents=[common], help="build the signature quiver")
    s.add_argument("input")
    s.add_argument("--out", choices=("dot", "json", "svg"), default="json")

    s = sub.add_parser("words", parents=[common], help="enumerate closed words on a quiver")
    s.add_argument("action", choices=("enumerate",))
    s.add_argument("input")
    s.add_argument("--mult", required=True, help="per-period multiplicities, e.g. a=1,b=2 or all=1")
    s.add_argument("--count-only", action="store_true")
    s.add_argument("--max", type=int, default=10000)

    s = sub.add_parser("synth", parents=[common], help="synthesize a curve from a word")
    s.add_argument("input")
    s.add_argument("--word", required=True)
    s.add_argument("--xi", type=int, default=None, help="turning number for the closure test")
    s.add_argument("--out", choices=("csv", "svg"), default="csv")

    s = sub.add_parser("congruent", parents=[common], help="decide congruence; exit 0 yes, 1 no")
    s.add_argument("inputs", nargs=2, metavar="INPUT")
    s.add_argument("--reversed", action="store_true", help="compare against the second curve traversed backwards")

    s = sub.add_parser("indices", parents=[common], help="symmetry index, signature index and edge data")
    s.add_argument("input")

    s = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    s.add_argument("--only", help="comma-separated criterion numbers")
    return p


COMMANDS = {
    "curve": cmd_curve,
    "signature": cmd_signature,
    "quiver": cmd_quiver,
    "words": cmd_words,
    "synth": cmd_synth,
    "congruent": cmd_congruent,
    "indices": cmd_indices,
    "verify": cmd_verify,
}


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # usage errors exit 2, --help exits 0; report them as return codes
        return exc.code if isinstance(exc.code, int) else 2
    inputs = tuple(getattr(args, "inputs", None) or ([args.input] if hasattr(args, "input") else []))
    try:
        cfg = RunConfig(
            args.command, inputs, args.output, args.cluster_eps, args.hausdorff_tol, args.residual_tol, args.samples, args.seed
        )
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            text, code = COMMANDS[args.command](cfg, args)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
    except (SigQuiverError, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); not an error of ours
        sys.stdout = None
        code = 0
    sys.exit(code)


if __name__ == "__main__":
    main()
