"""The full verification sweep behind ``distvar verify``."""

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import DistvarError, PoleError
from .moduli import palindrome_residuals
from .numerics import unitarity_defect
from .report import Check, VerificationReport
from .transfer import BlockUnitary, defect_residual
from .variety import is_distinguished, lemma_residual, variety_poly

_GOLDEN_TURN = 0.5 * (3.0 - np.sqrt(5.0))


def spiral_points(count, r_min, r_max):
    """Deterministic points filling the annulus ``r_min <= |z| <= r_max``."""
    k = np.arange(count)
    radii = np.sqrt(r_min**2 + (r_max**2 - r_min**2) * (k + 0.5) / count)
    return radii * np.exp(2j * np.pi * _GOLDEN_TURN * k)


def _sweep(name, fn, points, tol):
    worst, witness = 0.0, None
    for z in points:
        r = fn(z)
        if witness is None or r > worst:
            worst, witness = r, (z,)
    return Check(name, worst, tol, witness)


def _failed(name, tol, exc):
    return Check(name, float("inf"), tol, None, f"{type(exc).__name__}: {exc}")


def verify_unitary(U: BlockUnitary, samples=64, tol: Tolerances = DEFAULT) -> VerificationReport:
    report = VerificationReport()
    report.add(Check("unitarity", unitarity_defect(U.U), tol.unitarity))

    try:
        report.add(_sweep("defect_identity", lambda z: defect_residual(U, z), spiral_points(samples, 0.0, 0.95), tol.defect))
    except (DistvarError, np.linalg.LinAlgError) as exc:
        report.add(_failed("defect_identity", tol.defect, exc))

    try:
        Q = variety_poly(U)
    except (DistvarError, np.linalg.LinAlgError) as exc:
        report.add(_failed("variety_poly", 0.0, exc))
        return report

    try:
        report.extend(is_distinguished(U, samples, tol.boundary, Q=Q))
    except (DistvarError, np.linalg.LinAlgError) as exc:
        report.add(_failed("distinguished_boundary", tol.boundary, exc))

    if U.m != 2:
        report.skip("lemma_identity", f"needs m = 2, got rank {U.rank}")
    else:
        def lemma(z):
            try:
                return lemma_residual(U, z, Q=Q)
            except PoleError:
                return 0.0

        try:
            report.add(_sweep("lemma_identity", lemma, spiral_points(samples, 0.1, 0.9), tol.lemma))
        except (DistvarError, np.linalg.LinAlgError) as exc:
            report.add(_failed("lemma_identity", tol.lemma, exc))

    if U.rank != (2, 2):
        report.skip("palindrome", f"needs rank (2,2), got {U.rank}")
    elif abs(np.linalg.det(U.A)) <= 1e-8:
        report.skip("palindrome", "det A vanishes")
    else:
        res = palindrome_residuals(U, Q)
        report.add(Check("palindrome", max(res["b0"], res["b1"]), tol.palindrome))
    return report
