"""Command-line front end.

Exit codes: 0 success or true, 1 semantic false or failed verification,
2 invalid input.
"""

import argparse
import json
import sys
from dataclasses import fields

import numpy as np

from . import io
from .config import DEFAULT, Tolerances
from .errors import DistvarError
from .moduli import invariants, reconstruct_Q, same_variety
from .numerics import haar_unitary
from .transfer import BlockUnitary
from .variety import sample_variety, variety_poly
from .verify import verify_unitary

EXIT_OK, EXIT_FALSE, EXIT_INVALID = 0, 1, 2


class InvalidInput(Exception):
    pass


def _emit(text, out):
    if out:
        io.write_text(out, text)
    else:
        sys.stdout.write(text)


def _load_unitary(path, tol, check=True):
    try:
        return io.unitary_from_dict(io.read_json(path), check=check, tol=tol.load_unitarity)
    except (OSError, json.JSONDecodeError, DistvarError) as exc:
        raise InvalidInput(f"{path}: {exc}") from exc


def cmd_gen(args, tol):
    if args.m < 1 or args.n < 1:
        raise InvalidInput("m and n must be >= 1")
    U = BlockUnitary(args.m, args.n, haar_unitary(args.m + args.n, args.seed))
    _emit(io.dumps(io.unitary_to_dict(U)), args.out)
    return EXIT_OK


def cmd_poly(args, tol):
    U = _load_unitary(args.input, tol)
    _emit(io.dumps(io.poly_to_dict(variety_poly(U))), args.out)
    return EXIT_OK


def cmd_invariants(args, tol):
    U = _load_unitary(args.input, tol)
    try:
        inv = invariants(U)
    except DistvarError as exc:
        raise InvalidInput(str(exc)) from exc
    _emit(io.dumps(io.invariants_to_dict(inv)), args.out)
    return EXIT_OK


def cmd_same_variety(args, tol):
    U, U0 = _load_unitary(args.a, tol), _load_unitary(args.b, tol)
    try:
        same = same_variety(U, U0, args.tol if args.tol is not None else tol.same_variety)
    except DistvarError as exc:
        raise InvalidInput(str(exc)) from exc
    print("SAME" if same else "DIFFERENT")
    return EXIT_OK if same else EXIT_FALSE


def cmd_reconstruct(args, tol):
    try:
        inv = io.invariants_from_dict(io.read_json(args.input))
        Q = reconstruct_Q(inv)
    except (OSError, json.JSONDecodeError, DistvarError) as exc:
        raise InvalidInput(f"{args.input}: {exc}") from exc
    _emit(io.dumps(io.poly_to_dict(Q)), args.out)
    return EXIT_OK


def cmd_verify(args, tol):
    U = _load_unitary(args.input, tol, check=False)
    report = verify_unitary(U, args.samples, tol)
    _emit(io.dumps(report.to_dict()), args.out)
    return EXIT_OK if report.passed else EXIT_FALSE


def cmd_sheets(args, tol):
    U = _load_unitary(args.input, tol)
    rows = sample_variety(U, args.grid)
    if args.out:
        with open(args.out, "w", newline="") as f:
            io.write_sheets_csv(f, rows)
    else:
        io.write_sheets_csv(sys.stdout, rows)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="distvar", description=__doc__.splitlines()[0])
    p.add_argument("--strict", action="store_true", help="halve every tolerance")
    for f in fields(Tolerances):
        p.add_argument(f"--tol-{f.name.replace('_', '-')}", dest=f"tol_{f.name}", type=float,
                       default=f.default, metavar="X", help=f"default {f.default:g}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="write a Haar-random block unitary")
    s.add_argument("m", type=int)
    s.add_argument("n", type=int)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("poly", help="variety polynomial of a unitary")
    s.add_argument("input")
    s.add_argument("--out")
    s.set_defaults(func=cmd_poly)

    s = sub.add_parser("invariants", help="rank (2,2) moduli invariants")
    s.add_argument("input")
    s.add_argument("--out")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("same-variety", help="decide whether two unitaries cut out the same variety")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--tol", type=float, default=None)
    s.set_defaults(func=cmd_same_variety)

    s = sub.add_parser("reconstruct", help="variety polynomial from invariants")
    s.add_argument("input")
    s.add_argument("--out")
    s.set_defaults(func=cmd_reconstruct)

    s = sub.add_parser("verify", help="run every numerical identity check")
    s.add_argument("input")
    s.add_argument("--samples", type=int, default=64)
    s.add_argument("--out")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("sheets", help="export variety sample points as CSV")
    s.add_argument("input")
    s.add_argument("--grid", type=int, default=16)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sheets)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    tol = Tolerances(**{f.name: getattr(args, f"tol_{f.name}") for f in fields(Tolerances)})
    if args.strict:
        tol = tol.halved()
    try:
        with np.errstate(all="ignore"):
            return args.func(args, tol)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
