"""Small dense complex linear algebra.

Matrices are plain ``complex128`` numpy arrays; every public function
accepts anything ``np.asarray`` understands and rejects non-finite input.
The sizes handled here are tiny (at most 16, usually 4), so clarity wins
over speed except where a hot loop needs batching.
"""

import itertools
import warnings

import numpy as np
import scipy.linalg

from .errors import (
    ConvergenceError,
    DegenerateInputError,
    DimensionError,
    SingularMatrixError,
)

EPS = np.finfo(float).eps
MAX_DET_DIM = 16
MAX_EIG_DIM = 4
ABERTH_MAX_ITER = 500
BACKWARD_TOL = 1e-10
# irrational angle offset for the Aberth starting circle
_START_ANGLE = 0.5 * (np.sqrt(5.0) - 1.0)


def as_matrix(M, name="matrix"):
    """Return ``M`` as a finite 2-D complex array (a copy is not forced)."""
    a = np.asarray(M, dtype=complex)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise DimensionError(f"{name} must be a non-empty 2-D array, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DegenerateInputError(f"{name} has non-finite entries")
    return a


def _square(M, name="matrix"):
    a = as_matrix(M, name)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {a.shape}")
    return a


def frob(M) -> float:
    return float(np.linalg.norm(np.asarray(M), "fro"))


def adjoint(M):
    return np.conj(np.asarray(M)).T


def mat_det(M) -> complex:
    """Determinant by LU with partial pivoting (LAPACK ``getrf``)."""
    a = _square(M)
    if a.shape[0] > MAX_DET_DIM:
        raise DimensionError(f"determinant limited to dimension {MAX_DET_DIM}")
    return complex(np.linalg.det(a))


def mat_solve(M, rhs, rtol=1e-13):
    """Solve ``M X = rhs``.

    Raises :class:`SingularMatrixError` when an LU pivot is below
    ``rtol * max|M|``; the exception carries the offending pivot magnitude.
    """
    a = _square(M)
    b = np.asarray(rhs, dtype=complex)
    if b.shape[0] != a.shape[0]:
        raise DimensionError(f"rhs has {b.shape[0]} rows, matrix has {a.shape[0]}")
    if not np.all(np.isfinite(b)):
        raise DegenerateInputError("rhs has non-finite entries")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    pivots = np.abs(np.diag(lu))
    scale = np.max(np.abs(a))
    if scale == 0.0 or pivots.min() <= rtol * scale:
        raise SingularMatrixError(pivots.min())
    return scipy.linalg.lu_solve((lu, piv), b, check_finite=False)


def charpoly(M):
    """Characteristic polynomial det(xI - M), coefficients ascending (monic).

    Faddeev-LeVerrier recursion; fine for the dimensions used here.
    """
    a = _square(M)
    d = a.shape[0]
    coeffs = np.zeros(d + 1, dtype=complex)
    coeffs[d] = 1.0
    N = np.eye(d, dtype=complex)
    for k in range(1, d + 1):
        AN = a @ N
        c = -np.trace(AN) / k
        coeffs[d - k] = c
        N = AN + c * np.eye(d)
    return coeffs


def _quadratic_roots(c0, c1, c2):
    # merges a numerically double root instead of splitting it by sqrt(eps)
    disc = c1 * c1 - 4.0 * c2 * c0
    if abs(disc) <= 64 * EPS * (abs(c1) ** 2 + 4.0 * abs(c2 * c0)):
        r = -c1 / (2.0 * c2)
        return [r, r]
    s = np.sqrt(disc)
    if (np.conj(c1) * s).real < 0:
        s = -s
    q = -0.5 * (c1 + s)
    r1 = q / c2
    r2 = c0 / q if q != 0 else -c1 / c2 - r1
    return [r1, r2]


def _horner(coeffs, x):
    acc = np.zeros_like(x, dtype=complex)
    for c in coeffs[::-1]:
        acc = acc * x + c
    return acc


def _aberth(coeffs):
    d = len(coeffs) - 1
    monic = coeffs / coeffs[-1]
    dcoeffs = np.arange(1, d + 1) * monic[1:]
    # Fujiwara-type scale: max_k |a_{d-k}|^(1/k)
    radius = max(abs(monic[d - k]) ** (1.0 / k) for k in range(1, d + 1))
    z = radius * np.exp(2j * np.pi * (np.arange(d) / d + _START_ANGLE / d) + 0.25j)
    for _ in range(ABERTH_MAX_ITER):
        p = _horner(monic, z)
        dp = _horner(dcoeffs, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = p / dp
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            step = ratio / (1.0 - ratio * inv.sum(axis=1))
        step = np.where(np.isfinite(step), step, 0.0)
        z = z - step
        if np.all(np.abs(step) <= 4 * EPS * np.maximum(np.abs(z), 1.0)):
            break
    return _recenter_clusters(coeffs, z)


def _clusters(z, radius):
    labels = list(range(len(z)))
    for i in range(len(z)):
        for j in range(i + 1, len(z)):
            if abs(z[i] - z[j]) <= radius * max(1.0, abs(z[i])):
                old, new = labels[j], labels[i]
                labels = [new if lab == old else lab for lab in labels]
    groups = {}
    for i, lab in enumerate(labels):
        groups.setdefault(lab, []).append(i)
    return [g for g in groups.values() if len(g) > 1]


def _recenter_clusters(coeffs, z):
    """Shift each numerically multiple root cluster onto its exact centroid.

    A k-fold root spreads by ~eps**(1/k) and its centroid drifts; the
    centroid is a simple root of the (k-1)-th derivative, so Newton on that
    derivative pins it down, and the cluster is replaced by the roots of
    the local model ``p(c) + p^(k)(c)/k! (x - c)^k``. The change is kept
    only if every residual stays within the rounding bound of Horner's rule,
    which holds for genuinely multiple roots and fails for distinct close
    ones.
    """
    P = np.polynomial.Polynomial(coeffs)
    absP = np.polynomial.Polynomial(np.abs(coeffs))
    z = np.array(z)
    settled = set()
    # coarse to fine, so a rejected cluster can still split into valid ones
    for radius in (10 * EPS**0.25, 10 * EPS ** (1 / 3), 10 * EPS**0.5):
        for group in _clusters(z, radius):
            if settled.isdisjoint(group) and _try_recenter(P, absP, z, group):
                settled.update(group)
    return list(z)


def _try_recenter(P, absP, z, group):
    k = len(group)
    c = z[group].mean()
    f, df = P.deriv(k - 1), P.deriv(k)
    for _ in range(20):
        d = df(c)
        if d == 0:
            break
        step = f(c) / d
        c = c - step
        if abs(step) <= 4 * EPS * max(1.0, abs(c)):
            break
    # roots of the local model tk (x - c)^k + p(c)
    tk = P.deriv(k)(c) / np.prod(np.arange(1, k + 1))
    offset = (-P(c) / tk) ** (1.0 / k) if tk != 0 else 0.0
    moved = c + offset * np.exp(2j * np.pi * np.arange(k) / k)
    before = np.abs(P(z[group]))
    after = np.abs(P(moved))
    bound = 16 * EPS * absP(np.abs(moved))
    if np.all(after <= np.maximum(before, bound)):
        z[group] = moved
        return True
    return False


def _expansion_error(roots, coeffs):
    back = coeffs[-1] * np.polynomial.polynomial.polyfromroots(roots)
    return float(np.max(np.abs(back - coeffs)) / np.max(np.abs(coeffs)))


def poly_roots(coeffs, deflation_tol=1e-14, residual_tol=1e-9):
    """All roots (with multiplicity) of ``sum coeffs[k] x**k``.

    Leading coefficients smaller than ``deflation_tol * max|coeff|`` are
    dropped first. Degree 1 and 2 are solved in closed form, higher
    degrees by Aberth-Ehrlich simultaneous iteration. If the Aberth roots
    do not multiply back to the coefficients (tight clusters), companion
    matrix eigenvalues are used instead.
    """
    c = np.asarray(coeffs, dtype=complex).ravel()
    if not np.all(np.isfinite(c)):
        raise DegenerateInputError("polynomial has non-finite coefficients")
    scale = np.max(np.abs(c)) if c.size else 0.0
    if scale == 0.0:
        raise DegenerateInputError("identically zero polynomial")
    d = len(c) - 1
    while d > 0 and abs(c[d]) <= deflation_tol * scale:
        d -= 1
    c = c[: d + 1]
    zeros = 0
    while zeros < d and c[zeros] == 0:
        zeros += 1
    if zeros:
        return [0j] * zeros + poly_roots(c[zeros:], deflation_tol, residual_tol)
    if d == 0:
        return []
    if d == 1:
        return [complex(-c[0] / c[1])]
    if d == 2:
        roots = _quadratic_roots(c[0], c[1], c[2])
    else:
        roots = _aberth(c)
        if _expansion_error(roots, c) > BACKWARD_TOL:
            # clusters near multiple roots: companion eigenvalues are backward stable
            companion = np.polynomial.polynomial.polyroots(c)
            if _expansion_error(companion, c) < _expansion_error(roots, c):
                roots = companion
    roots = [complex(r) for r in roots]
    worst = max(abs(_horner(c, np.array(r))) / max(1.0, abs(r)) ** d for r in roots)
    if worst > residual_tol * scale:
        raise ConvergenceError(f"root residual {worst:.3e} exceeds {residual_tol:.1e} * max|coeff|")
    return roots


def eig_small(M):
    """Eigenvalues with multiplicity for matrices up to 4x4."""
    a = _square(M)
    d = a.shape[0]
    if d > MAX_EIG_DIM:
        raise DimensionError(f"eig_small handles dimension <= {MAX_EIG_DIM}, got {d}")
    if d == 1:
        return [complex(a[0, 0])]
    if d == 2:
        half_tr = 0.5 * (a[0, 0] + a[1, 1])
        half_gap = 0.5 * (a[0, 0] - a[1, 1])
        s = np.sqrt(half_gap * half_gap + a[0, 1] * a[1, 0])
        return [complex(half_tr + s), complex(half_tr - s)]
    return poly_roots(charpoly(a))


def haar_unitary(dim, seed):
    """Haar-distributed ``dim x dim`` unitary, deterministic in ``seed``.

    ``seed`` may be an int or a ``numpy.random.SeedSequence``.
    """
    if dim < 1:
        raise DimensionError("dim must be >= 1")
    rng = np.random.default_rng(seed)
    g = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(g)
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def op_norm(M) -> float:
    """Largest singular value."""
    return float(np.linalg.norm(as_matrix(M), 2))


def unitarity_defect(M) -> float:
    """Frobenius norm of ``M* M - I``."""
    a = _square(M)
    return frob(adjoint(a) @ a - np.eye(a.shape[0]))


def multiset_distance(a, b) -> float:
    """Smallest worst-case pairing distance between two equal-size multisets.

    Exhaustive over permutations, so only meant for a handful of values.
    """
    a = [complex(x) for x in a]
    b = [complex(x) for x in b]
    if len(a) != len(b):
        return float("inf")
    if not a:
        return 0.0
    return min(
        max(abs(x - y) for x, y in zip(a, perm)) for perm in itertools.permutations(b)
    )


def multiset_match(a, b, tol=1e-8) -> bool:
    return multiset_distance(a, b) <= tol
