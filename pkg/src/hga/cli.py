"""Command line interface: build, check, enumerate, reduce, verify.

Exit codes: 0 success, 1 negative verdict, 2 input error, 3 scale cap.
All reports are JSON with sorted keys so identical invocations produce
byte-identical output; exact values are emitted as strings where they are
not integers.
"""

import argparse
import json
import math
import os
import sys

from . import reps
from .algebras import build_algebra
from .axioms import built, is_d_gentle_certificate, is_gentle
from .cluster import SummandCollection, cluster_endo_algebra
from .errors import HgaError, NoCommutativeSquare, NotReducible, ScaleExceeded
from .presentations import (
    Idempotent,
    presentation_from_dict,
    presentation_to_dict,
    presentation_to_dot,
)
from .reduction import gentle_sg_invariant, reduce_to_gentle, verify_sg_example
from .typea import (
    build_typeA_auslander,
    canonical_cluster_tilting,
    maximal_nonintertwining,
    tuple_set,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_SCALE = 3


def _dump(data, out):
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _num(x):
    if x == math.inf:
        return "inf"
    return x


def _load_algebra(path):
    return built(presentation_from_dict(_load(path)))


def _cap(default):
    raw = os.environ.get("HGA_CAP")
    if raw is None:
        return default
    return int(raw)


def cmd_auslander(args):
    a = build_typeA_auslander(args.n, args.d)
    p = a.presentation
    report = {
        "n": args.n,
        "d": args.d,
        "vertices": len(p.quiver.vertices),
        "arrows": len(p.quiver.arrows),
        "dim": a.dim,
        "presentation": presentation_to_dict(p),
    }
    _dump(report, args.out)
    return EXIT_OK


def cmd_check_gentle(args):
    cover = _load_algebra(args.cover)
    e = Idempotent.of(_load(args.e))
    cert = is_d_gentle_certificate(cover, e, args.d)
    _dump(cert.to_dict(), args.out)
    return EXIT_OK if cert.verdict == "pass" else EXIT_NEGATIVE


def cmd_tuples(args):
    ts = tuple_set(args.d, args.m, cyclic=args.cyclic)
    report = {
        "d": args.d,
        "m": args.m,
        "cyclic": args.cyclic,
        "count": len(ts),
        "tuples": [list(t.entries) for t in ts],
    }
    _dump(report, args.out)
    return EXIT_OK


def cmd_collections(args):
    cols = maximal_nonintertwining(
        args.d, args.m, cyclic=args.cyclic, scale_cap=_cap(60))
    report = {
        "d": args.d,
        "m": args.m,
        "cyclic": args.cyclic,
        "count": len(cols),
        "collections": [[list(t.entries) for t in c.tuples] for c in cols],
    }
    _dump(report, args.out)
    return EXIT_OK


def cmd_endo(args):
    fam = canonical_cluster_tilting(build_typeA_auslander(args.n, args.d))
    data = _load(args.collection)
    entries = data["tuples"] if isinstance(data, dict) else data
    c = SummandCollection(fam, [tuple(e) for e in entries])
    res = cluster_endo_algebra(c)
    report = {
        "endDim": res.end_dim,
        "extDim": res.ext_dim,
        "extSquareZero": res.ext_square_zero,
        "summands": list(res.summand_labels),
        "presentation": presentation_to_dict(res.presentation),
    }
    _dump(report, args.out)
    return EXIT_OK


def cmd_reduce(args):
    a = _load_algebra(args.algebra)
    try:
        trace = reduce_to_gentle(a, d=args.d, seed=args.seed)
    except (NotReducible, NoCommutativeSquare) as exc:
        _dump({"reduced": False, "error": str(exc)}, args.out)
        return EXIT_NEGATIVE
    report = trace.to_dict()
    report["terminalPresentation"] = presentation_to_dict(
        trace.terminal.presentation)
    report["sgInvariant"] = gentle_sg_invariant(trace.terminal).to_dict()
    _dump(report, args.out)
    if args.terminal_out:
        _dump(presentation_to_dict(trace.terminal.presentation),
              args.terminal_out)
    return EXIT_OK


def cmd_homdims(args):
    a = _load_algebra(args.algebra)
    rec = reps.homological_dims(a, cap=_cap(None))
    report = {
        "projDims": {v: _num(x) for v, x in rec["projDims"].items()},
        "globalDim": _num(rec["globalDim"]),
        "dominantDim": _num(rec["dominantDim"]),
        "injDimOfA": _num(rec["injDimOfA"]),
        "projDimOfDA": _num(rec["projDimOfDA"]),
    }
    _dump(report, args.out)
    return EXIT_OK


def cmd_verify_example(args):
    a = _load_algebra(args.algebra)
    mods = [reps.representation_from_dict(a, d) for d in _load(args.modules)]
    rep = verify_sg_example(a, mods)
    _dump(rep, args.out)
    return EXIT_OK if rep["pass"] else EXIT_NEGATIVE


def cmd_export_dot(args):
    p = presentation_from_dict(_load(args.algebra))
    text = presentation_to_dot(p)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hga", description="Workbench for higher gentle algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("auslander", help="build a higher Auslander algebra")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_auslander)

    p = sub.add_parser("check-gentle", help="run the d-gentle certificate")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--cover", required=True)
    p.add_argument("--e", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_check_gentle)

    p = sub.add_parser("tuples", help="enumerate separated index tuples")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--cyclic", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_tuples)

    p = sub.add_parser(
        "collections", help="enumerate maximal non-intertwining collections")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--cyclic", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_collections)

    p = sub.add_parser(
        "endo", help="endomorphism algebra of a summand collection")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--collection", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_endo)

    p = sub.add_parser("reduce", help="reduce to a gentle algebra")
    p.add_argument("algebra")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--terminal-out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("homdims", help="homological dimension report")
    p.add_argument("algebra")
    p.add_argument("--out")
    p.set_defaults(func=cmd_homdims)

    p = sub.add_parser(
        "verify-example", help="verify a proposed syzygy orbit")
    p.add_argument("--algebra", required=True)
    p.add_argument("--modules", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify_example)

    p = sub.add_parser("export-dot", help="emit a DOT figure")
    p.add_argument("algebra")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScaleExceeded as exc:
        sys.stderr.write(f"scale cap: {exc}\n")
        return EXIT_SCALE
    except (OSError, json.JSONDecodeError, KeyError, ValueError,
            HgaError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
