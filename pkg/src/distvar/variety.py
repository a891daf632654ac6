"""The determinantal polynomial of a block unitary and its zero set.

``Q(z, w) = det [[A - wI, zB], [C, zD - I]]`` vanishes on the
distinguished variety cut out by the transfer function. ``Q`` is stored as
a coefficient grid ``coeff[i, j]`` of ``z**i w**j``.
"""

from dataclasses import dataclass, field

import numpy as np

from .config import BOUNDARY_RADIUS
from .errors import DegenerateFiberError, DimensionError, InterpolationError, PoleError
from .numerics import adjoint, poly_roots, unitarity_defect
from .report import Check, VerificationReport
from .transfer import BlockUnitary, psi

# fixed nodes for the post-interpolation residual check
_CHECK_SEED = 20070611
_CHECK_POINTS = 5


@dataclass(frozen=True)
class BivariatePoly:
    coeff: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.array(self.coeff, dtype=complex)
        if c.ndim != 2:
            raise DimensionError(f"coefficient grid must be 2-D, got shape {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coeff", c)

    @property
    def deg_z(self):
        return self.coeff.shape[0] - 1

    @property
    def deg_w(self):
        return self.coeff.shape[1] - 1

    def __call__(self, z, w):
        return eval_poly(self, z, w)

    def p(self, j):
        """Coefficients (ascending in z) of the ``w**j`` slice."""
        return self.coeff[:, j]

    def q(self, i):
        """Coefficients (ascending in w) of the ``z**i`` slice."""
        return self.coeff[i, :]

    def w_coeffs(self, z):
        z = complex(z)
        return np.array([np.polyval(self.coeff[::-1, j], z) for j in range(self.deg_w + 1)])

    def z_coeffs(self, w):
        w = complex(w)
        return np.array([np.polyval(self.coeff[i, ::-1], w) for i in range(self.deg_z + 1)])

    def scale(self) -> float:
        return float(np.max(np.abs(self.coeff)))

    def deviation(self, other: "BivariatePoly") -> float:
        """Largest coefficient difference relative to the largest coefficient of ``other``."""
        a, b = _pad_to_common(self.coeff, other.coeff)
        return float(np.max(np.abs(a - b)) / max(np.max(np.abs(b)), np.finfo(float).tiny))

    def max_abs_difference(self, other: "BivariatePoly") -> float:
        a, b = _pad_to_common(self.coeff, other.coeff)
        return float(np.max(np.abs(a - b)))


def _pad_to_common(a, b):
    shape = (max(a.shape[0], b.shape[0]), max(a.shape[1], b.shape[1]))
    out = []
    for c in (a, b):
        p = np.zeros(shape, dtype=complex)
        p[: c.shape[0], : c.shape[1]] = c
        out.append(p)
    return out


def eval_poly(Q: BivariatePoly, z, w) -> complex:
    """Horner in w over Horner-in-z slices."""
    acc = 0j
    for j in range(Q.deg_w, -1, -1):
        acc = acc * w + np.polyval(Q.coeff[::-1, j], z)
    return complex(acc)


def _block_dets(U: BlockUnitary, zs, ws):
    """``det [[A - wI, zB], [C, zD - I]]`` for every pair in ``zip(zs, ws)``."""
    zs = np.asarray(zs, dtype=complex)[:, None, None]
    ws = np.asarray(ws, dtype=complex)[:, None, None]
    m, n = U.m, U.n
    top = np.concatenate([U.A - ws * np.eye(m), zs * U.B], axis=2)
    bottom = np.concatenate([np.broadcast_to(U.C, (len(zs), n, m)), zs * U.D - np.eye(n)], axis=2)
    return np.linalg.det(np.concatenate([top, bottom], axis=1))


def _adjoint_form_dets(U: BlockUnitary, zs, ws):
    """The same polynomial through the companion blocks, (-1)^(m+n) det D / conj(det A) scaled."""
    zs = np.asarray(zs, dtype=complex)[:, None, None]
    ws = np.asarray(ws, dtype=complex)[:, None, None]
    m, n = U.m, U.n
    As, Bs, Cs, Ds = (adjoint(X) for X in (U.A, U.B, U.C, U.D))
    top = np.concatenate([Ds - zs * np.eye(n), ws * Bs], axis=2)
    bottom = np.concatenate([np.broadcast_to(Cs, (len(zs), m, n)), ws * As - np.eye(m)], axis=2)
    factor = (-1) ** (m + n) * np.linalg.det(U.D) / np.conj(np.linalg.det(U.A))
    return factor * np.linalg.det(np.concatenate([top, bottom], axis=1))


def _ring_nodes(count):
    roots = np.exp(2j * np.pi * np.arange(count) / count)
    return np.concatenate([roots, 0.5 * roots])


def variety_poly(U: BlockUnitary, rtol=1e-8) -> BivariatePoly:
    """Coefficients of ``Q`` by interpolating the block determinant.

    Sample nodes are two rings (radius 1 and 1/2) of roots of unity in
    each variable; the tensor Vandermonde system is solved by least
    squares and the result re-checked at a few fresh points.
    """
    m, n = U.m, U.n
    zn, wn = _ring_nodes(n + 1), _ring_nodes(m + 1)
    Z, Wg = np.meshgrid(zn, wn, indexing="ij")
    F = _block_dets(U, Z.ravel(), Wg.ravel()).reshape(Z.shape)
    Vz = np.vander(zn, n + 1, increasing=True)
    Vw = np.vander(wn, m + 1, increasing=True)
    half = np.linalg.lstsq(Vz, F, rcond=None)[0]
    coeff = np.linalg.lstsq(Vw, half.T, rcond=None)[0].T
    # entries at the interpolation rounding level are exact zeros
    noise = 64 * np.finfo(float).eps * np.max(np.abs(coeff))
    coeff.real[np.abs(coeff.real) <= noise] = 0.0
    coeff.imag[np.abs(coeff.imag) <= noise] = 0.0
    Q = BivariatePoly(coeff)

    rng = np.random.default_rng(_CHECK_SEED)
    pts = rng.uniform(0, 1, (2, _CHECK_POINTS)) * np.exp(2j * np.pi * rng.uniform(0, 1, (2, _CHECK_POINTS)))
    direct = _block_dets(U, pts[0], pts[1])
    interp = np.array([eval_poly(Q, z, w) for z, w in zip(pts[0], pts[1])])
    scale = max(1.0, Q.scale())
    err = np.max(np.abs(direct - interp))
    if err > rtol * scale:
        raise InterpolationError(f"interpolation residual {err:.3e} exceeds {rtol:.1e} relative")
    # the companion form relies on unitarity; skip it for raw block data
    if abs(np.linalg.det(U.A)) > 1e-10 and unitarity_defect(U.U) <= 1e-8:
        err = np.max(np.abs(_adjoint_form_dets(U, pts[0], pts[1]) - interp))
        if err > rtol * scale:
            raise InterpolationError(f"adjoint-form determinant disagrees by {err:.3e}")
    return Q


def _roots_of_slice(coeffs, point, variable, lead_tol):
    if abs(coeffs[-1]) <= lead_tol * max(np.max(np.abs(coeffs)), 1e-300):
        raise DegenerateFiberError(point, variable)
    return poly_roots(coeffs)


def sheets_w(Q: BivariatePoly, z, lead_tol=1e-12):
    """All ``w`` with ``Q(z, w) = 0``, with multiplicity."""
    return _roots_of_slice(Q.w_coeffs(z), z, "z", lead_tol)


def sheets_z(Q: BivariatePoly, w, lead_tol=1e-12):
    """All ``z`` with ``Q(z, w) = 0``, with multiplicity."""
    return _roots_of_slice(Q.z_coeffs(w), w, "w", lead_tol)


def _boundary_check(name, Q, solver, samples, radius, tol):
    worst, witness, detail = 0.0, None, ""
    for k in range(samples):
        t = radius * np.exp(2j * np.pi * k / samples)
        try:
            roots = solver(Q, t)
        except DegenerateFiberError as exc:
            return Check(name, float("inf"), tol, (t,), str(exc))
        for r in roots:
            dev = max(0.0, 1.0 - abs(r))
            if witness is None or dev > worst:
                worst, witness = dev, (t, r)
    return Check(name, worst, tol, witness, detail)


def is_distinguished(U: BlockUnitary, samples=64, tol=1e-4, radius=BOUNDARY_RADIUS, Q=None):
    """Numerically confirm the zero set leaves the bidisk through the torus.

    On the circle ``|z| = radius`` every w-sheet must have ``|w| >= 1 - tol``,
    and symmetrically with the roles of z and w swapped. The witness of each
    check is the (point, sheet) pair with the worst deviation.
    """
    Q = variety_poly(U) if Q is None else Q
    report = VerificationReport()
    report.add(_boundary_check("boundary_z_circle", Q, sheets_w, samples, radius, tol))
    report.add(_boundary_check("boundary_w_circle", Q, sheets_z, samples, radius, tol))
    return report


def lemma_residual(U: BlockUnitary, z, Q=None, pole_tol=1e-12) -> float:
    """Residual of the reflection identity ``a1(z) = a0(z) conj(a1(1/conj z))``.

    ``a1 = tr Psi`` and ``a0 = det Psi`` come from the realization inside
    the disk; the reflected value of ``a1`` is taken from the rational
    function ``-p1/p2`` so Psi is never evaluated outside the disk.
    """
    if U.m != 2:
        raise DimensionError(f"lemma_residual needs m = 2, got m = {U.m}")
    z = complex(z)
    if not 0 < abs(z) < 1:
        raise ValueError("need 0 < |z| < 1")
    Q = variety_poly(U) if Q is None else Q
    P = psi(U, z)
    a1 = np.trace(P)
    a0 = np.linalg.det(P)
    zeta = 1.0 / np.conj(z)
    p2 = np.polyval(Q.p(2)[::-1], zeta)
    if abs(p2) <= pole_tol * Q.scale():
        raise PoleError(f"p2 vanishes at 1/conj(z) = {zeta:.6g}")
    a1_reflected = -np.polyval(Q.p(1)[::-1], zeta) / p2
    return float(abs(a1 - a0 * np.conj(a1_reflected)))


def _polar_mesh(grid):
    radii = np.arange(grid) / grid
    angles = 2 * np.pi * np.arange(grid) / grid
    return [r * np.exp(1j * a) for r in radii for a in angles]


def sample_variety(U: BlockUnitary, grid, Q=None):
    """Points ``(z, w, sheet)`` of the variety above a polar mesh of the disk.

    The mesh has ``grid`` radii ``k/grid`` and ``grid`` angles. Sheets above
    each ``z`` are numbered after sorting by (Re w, Im w); only sheets with
    ``|w| < 1`` are emitted. No continuation between mesh points is tried.
    """
    if grid < 1:
        raise ValueError("grid must be >= 1")
    Q = variety_poly(U) if Q is None else Q
    out = []
    for z in _polar_mesh(grid):
        roots = sorted(sheets_w(Q, z), key=lambda r: (round(r.real, 12), round(r.imag, 12)))
        out.extend((complex(z), w, k) for k, w in enumerate(roots) if abs(w) < 1)
    return out
