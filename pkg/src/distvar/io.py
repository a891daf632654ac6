"""JSON and CSV formats for unitaries, polynomials, invariants and sheets.

Complex numbers are ``[re, im]`` pairs. Floats are written with Python's
shortest round-trip repr, so loading reproduces every double exactly.
"""

import csv
import json

import numpy as np

from .errors import DegenerateInputError, DimensionError
from .moduli import Invariants
from .transfer import BlockUnitary
from .variety import BivariatePoly

SHEETS_HEADER = ["re_z", "im_z", "re_w", "im_w", "sheet"]


def _pair(c):
    c = complex(c)
    return [float(c.real), float(c.imag)]


def _complex(pair):
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise DegenerateInputError(f"expected [re, im], got {pair!r}")
    return complex(float(pair[0]), float(pair[1]))


def _grid(rows):
    return [[_pair(c) for c in row] for row in np.asarray(rows)]


def _ungrid(rows):
    return np.array([[_complex(p) for p in row] for row in rows], dtype=complex)


def dumps(obj) -> str:
    return json.dumps(obj) + "\n"


def unitary_to_dict(U: BlockUnitary):
    return {"m": U.m, "n": U.n, "U": _grid(U.U)}


def unitary_from_dict(d, check=True, tol=1e-8) -> BlockUnitary:
    try:
        m, n, rows = int(d["m"]), int(d["n"]), d["U"]
    except (KeyError, TypeError, ValueError) as exc:
        raise DegenerateInputError(f"malformed unitary JSON: {exc}") from exc
    return BlockUnitary(m, n, _ungrid(rows), check=check, tol=tol)


def poly_to_dict(Q: BivariatePoly):
    return {"deg_z": Q.deg_z, "deg_w": Q.deg_w, "coeff": _grid(Q.coeff)}


def poly_from_dict(d) -> BivariatePoly:
    Q = BivariatePoly(_ungrid(d["coeff"]))
    if (Q.deg_z, Q.deg_w) != (int(d["deg_z"]), int(d["deg_w"])):
        raise DimensionError("declared degrees do not match the coefficient grid")
    return Q


def invariants_to_dict(inv: Invariants):
    return {
        "eigA": [_pair(x) for x in inv.eigA],
        "eigD": [_pair(x) for x in inv.eigD],
        "trBC": _pair(inv.trBC),
    }


def invariants_from_dict(d) -> Invariants:
    try:
        return Invariants(
            [_complex(p) for p in d["eigA"]],
            [_complex(p) for p in d["eigD"]],
            _complex(d["trBC"]),
        )
    except (KeyError, TypeError) as exc:
        raise DegenerateInputError(f"malformed invariants JSON: {exc}") from exc


def read_json(path):
    with open(path) as f:
        return json.load(f)


def write_text(path, text):
    with open(path, "w", newline="") as f:
        f.write(text)


def write_sheets_csv(f, rows):
    writer = csv.writer(f, lineterminator="\n")
    writer.writerow(SHEETS_HEADER)
    for z, w, k in rows:
        writer.writerow([repr(float(z.real)), repr(float(z.imag)), repr(float(w.real)), repr(float(w.imag)), int(k)])


def read_sheets_csv(f):
    reader = csv.DictReader(f)
    return [
        (complex(float(r["re_z"]), float(r["im_z"])), complex(float(r["re_w"]), float(r["im_w"])), int(r["sheet"]))
        for r in reader
    ]
