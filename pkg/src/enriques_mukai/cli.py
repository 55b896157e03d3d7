"""Command-line front end.

Exit codes: 0 success or decided verdict, 1 bad input, 2 search radius or step
cap exceeded, 3 undecidable with the supplied nodal data, 4 invariant
violation (including a trace that fails to replay).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .census import census_lines, oracle_check, summarize
from .config import DEFAULT_SEARCH_RADIUS, DEFAULT_STEP_CAP, CensusBounds, ReductionConfig
from .errors import (
    IntegerOverflowError,
    InternalConsistencyError,
    InvalidInputError,
    MukaiError,
    PreconditionError,
    SearchBoundExceeded,
    StepCapExceeded,
    TraceReplayError,
)
from .existence import Case, exists
from .lattice import (
    RANK,
    NSClass,
    SurfaceContext,
    classify_content,
    content,
    is_primitive,
    mukai_square,
    parity_class,
    parse_vector,
    vector_from_dict,
)
from .moves import MoveTrace, replay
from .reduction import reduce

EXIT_OK, EXIT_INPUT, EXIT_BOUND, EXIT_UNDECIDABLE, EXIT_INVARIANT = 0, 1, 2, 3, 4


def _emit(obj, out):
    out.write(json.dumps(obj, indent=2) + "\n")


def _read_arg(text):
    """A literal, ``-`` for stdin, or ``@path``."""
    if text == "-":
        return sys.stdin.read()
    if text.startswith("@"):
        return Path(text[1:]).read_text()
    return text


def _load_cycles(path):
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInputError(f"cannot read nodal cycles from {path}: {exc}") from None
    return _cycles_from(data)


def _cycles_from(data):
    if not isinstance(data, list):
        raise InvalidInputError("nodal cycles must be a JSON list")
    out = []
    for item in data:
        if isinstance(item, dict):
            coords, kappa = item.get("D"), item.get("kappa", 0)
        else:
            coords, kappa = item, 0
        if not isinstance(coords, list) or len(coords) != RANK:
            raise InvalidInputError(f"each nodal cycle needs {RANK} coordinates")
        out.append(NSClass.from_free(coords, kappa))
    return out


def _context(args, extra=None):
    extra = extra or {}
    nodal = bool(args.nodal or extra.get("nodal", False))
    ample = extra.get("ample", args.ample)
    if ample is None:
        ample = [1, 1] + [0] * 8
    if len(ample) != RANK:
        raise InvalidInputError(f"--ample needs {RANK} integers")
    cycles = []
    if args.nodal_cycles:
        cycles = _load_cycles(args.nodal_cycles)
    elif "nodal_cycles" in extra:
        cycles = _cycles_from(extra["nodal_cycles"])
    try:
        return SurfaceContext(nodal, NSClass.from_free(ample), tuple(cycles))
    except PreconditionError as exc:
        raise InvalidInputError(str(exc)) from None


def _vector(args):
    """Parse the vector argument; returns (vector, kappa_asserted, context extras)."""
    text = _read_arg(args.vector).strip()
    extra = {}
    if text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"invalid JSON: {exc}") from None
        if isinstance(data, dict) and "vector" in data:
            extra = data.get("context", {}) or {}
            data = data["vector"]
        v, given = vector_from_dict(data)
    else:
        v, given = parse_vector(text)
    if args.kappa is not None:
        v, given = v.with_kappa(args.kappa), True
    return v, given, extra


def _config(args):
    return ReductionConfig(search_radius=args.search_radius, step_cap=args.step_cap)


def cmd_analyze(args, out):
    v, _, _ = _vector(args)
    report = {
        "r": v.r, "s": v.s, "a": str(v.a), "kappa": v.kappa,
        "square": mukai_square(v),
        "parity_class": list(parity_class(v.c1)),
    }
    if v.is_zero():
        report.update(ell=None, primitive=False, classification="zero vector")
    else:
        prim = is_primitive(v)
        report.update(ell=content(v), primitive=prim)
        if prim:
            rep = classify_content(v)
            report["classification"] = {"ell": rep.ell, "r_plus_s_mod4": rep.r_plus_s_mod4, "checks": rep.checks}
        else:
            report["classification"] = "not primitive"
    _emit(report, out)
    return EXIT_OK


def cmd_reduce(args, out):
    v, _, _ = _vector(args)
    form = reduce(v, _config(args))
    _emit(form.to_dict(), out)
    return EXIT_OK


def cmd_exists(args, out):
    v, given, extra = _vector(args)
    ctx = _context(args, extra)
    verdict = exists(v, ctx, kappa_asserted=given)
    _emit(verdict.to_dict(), out)
    return EXIT_UNDECIDABLE if verdict.case is Case.N4_FAIL else EXIT_OK


def cmd_verify(args, out):
    try:
        data = json.loads(_read_arg(args.trace) if args.trace == "-" else Path(args.trace).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInputError(f"cannot read trace: {exc}") from None
    trace = MoveTrace.from_dict(data)
    final = replay(trace)
    _emit({"ok": True, "steps": len(trace.steps), "final": str(final)}, out)
    return EXIT_OK


def cmd_census(args, out):
    bounds = CensusBounds(args.r_max, args.s_max, args.coeff_bound)
    ctx = _context(args)
    lines = census_lines(bounds, ctx, _config(args), jobs=args.jobs)
    if args.summary:
        _emit(summarize(json.loads(line) for line in lines), out)
    else:
        for line in lines:
            out.write(line + "\n")
    return EXIT_OK


def cmd_oracle(args, out):
    bounds = CensusBounds(*args.bounds)
    rep = oracle_check(bounds, perturb=tuple(args.perturb) if args.perturb else None, config=_config(args),
                       stop_after=args.stop_after)
    _emit(rep.to_dict(), out)
    return EXIT_OK if rep.ok else EXIT_INVARIANT


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--nodal", action="store_true", help="treat the surface as nodal")
    common.add_argument("--ample", type=int, nargs=RANK, metavar="N", help="ample class H (default sigma+f)")
    common.add_argument("--nodal-cycles", metavar="FILE", help="JSON list of nodal cycle classes")
    common.add_argument("--kappa", type=int, choices=(0, 1), help="override the torsion coefficient")
    common.add_argument("--search-radius", type=int, default=DEFAULT_SEARCH_RADIUS)
    common.add_argument("--step-cap", type=int, default=DEFAULT_STEP_CAP)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--summary", action="store_true", help="census: aggregate counts only")

    p = argparse.ArgumentParser(prog="enriques-mukai", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    vec_help = "vector as [r; c1; s; kappa] or JSON, '-' for stdin, '@file'"
    for name, fn, hlp in (
        ("analyze", cmd_analyze, "invariants of a Mukai vector"),
        ("reduce", cmd_reduce, "reduce to the canonical form with a trace"),
        ("exists", cmd_exists, "non-emptiness verdict"),
    ):
        sp = sub.add_parser(name, parents=[common], help=hlp)
        sp.add_argument("vector", help=vec_help)
        sp.set_defaults(func=fn)
    sp = sub.add_parser("verify", parents=[common], help="replay a trace file")
    sp.add_argument("trace", help="trace JSON file or '-'")
    sp.set_defaults(func=cmd_verify)
    sp = sub.add_parser("census", parents=[common], help="enumerate a box of vectors as JSON lines")
    sp.add_argument("r_max", type=int)
    sp.add_argument("s_max", type=int)
    sp.add_argument("coeff_bound", type=int)
    sp.set_defaults(func=cmd_census)
    sp = sub.add_parser("oracle", parents=[common], help="independent recomputation over a box")
    sp.add_argument("--bounds", type=int, nargs=3, default=(2, 2, 1), metavar=("R", "S", "B"))
    sp.add_argument("--perturb", type=int, nargs=3, metavar=("I", "J", "DELTA"),
                    help="perturb the oracle Gram matrix (checker self-test)")
    sp.add_argument("--stop-after", type=int, metavar="N", help="stop after N violations")
    sp.set_defaults(func=cmd_oracle)
    return p


_EXIT_FOR = (
    (TraceReplayError, EXIT_INVARIANT),
    (InternalConsistencyError, EXIT_INVARIANT),
    (IntegerOverflowError, EXIT_INVARIANT),
    (SearchBoundExceeded, EXIT_BOUND),
    (StepCapExceeded, EXIT_BOUND),
    (InvalidInputError, EXIT_INPUT),
    (PreconditionError, EXIT_INPUT),
)


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.search_radius < 0 or args.step_cap < 0 or args.jobs < 1:
            raise InvalidInputError("--search-radius and --step-cap must be >= 0 and --jobs >= 1")
        return args.func(args, out)
    except (MukaiError, OSError, ValueError) as exc:
        code = next((c for cls, c in _EXIT_FOR if isinstance(exc, cls)), EXIT_INPUT)
        err.write(f"error: {exc}\n")
        return code

if __name__ == "__main__":
    sys.exit(main())
