"""Moduli of rank (2, 2) distinguished varieties.

Two unitaries in U^2_2 cut out the same variety exactly when their A
blocks share eigenvalues, their D blocks share eigenvalues and ``tr BC``
agrees. This module extracts that triple, compares triples, and rebuilds
the polynomial ``Q = p2(z) w^2 + p1(z) w + p0(z)`` from it.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDeterminantError, DimensionError, FeasibilityError
from .numerics import eig_small, haar_unitary, multiset_match
from .transfer import BlockUnitary
from .variety import BivariatePoly, variety_poly


@dataclass(frozen=True)
class Invariants:
    eigA: tuple
    eigD: tuple
    trBC: complex

    def __post_init__(self):
        object.__setattr__(self, "eigA", tuple(complex(x) for x in self.eigA))
        object.__setattr__(self, "eigD", tuple(complex(x) for x in self.eigD))
        object.__setattr__(self, "trBC", complex(self.trBC))
        if len(self.eigA) != 2 or len(self.eigD) != 2:
            raise DimensionError("rank (2,2) invariants need two eigenvalues per block")

    @property
    def detA(self):
        return self.eigA[0] * self.eigA[1]

    @property
    def detD(self):
        return self.eigD[0] * self.eigD[1]

    def feasibility_defect(self) -> float:
        """Size of the violation of the necessary conditions (0 when feasible).

        Block eigenvalues of a unitary lie in the closed disk and
        ``|det A| = |det D|``.
        """
        outside = max(abs(x) - 1.0 for x in self.eigA + self.eigD)
        return max(0.0, outside, abs(abs(self.detA) - abs(self.detD)))

    def check_feasible(self, tol=1e-8):
        defect = self.feasibility_defect()
        if defect > tol:
            raise FeasibilityError(f"invariants cannot come from a unitary (defect {defect:.3e})")
        return self


def _require_22(U):
    if U.rank != (2, 2):
        raise DimensionError(f"rank (2,2) required, got {U.rank}")


def invariants(U: BlockUnitary, tol=1e-8) -> Invariants:
    _require_22(U)
    inv = Invariants(eig_small(U.A), eig_small(U.D), np.trace(U.B @ U.C))
    return inv.check_feasible(tol)


def same_variety(U: BlockUnitary, U0: BlockUnitary, tol=1e-7) -> bool:
    a, b = invariants(U), invariants(U0)
    return (
        multiset_match(a.eigA, b.eigA, tol)
        and multiset_match(a.eigD, b.eigD, tol)
        and abs(a.trBC - b.trBC) <= tol
    )


def unimodular_factor(inv: Invariants) -> complex:
    """``det D / conj(det A)``, the ``z^2`` coefficient of Q."""
    return inv.detD / np.conj(inv.detA)


def reconstruct_Q(inv: Invariants, det_tol=1e-8, feas_tol=1e-8) -> BivariatePoly:
    """Rebuild the rank (2, 2) polynomial from its invariants.

    Requires ``|det A| > det_tol``; degenerate determinants are refused
    rather than approximated by a limit.
    """
    if abs(inv.detA) <= det_tol:
        raise DegenerateDeterminantError(
            f"|det A| = {abs(inv.detA):.3e} <= {det_tol:.1e}; reconstruction needs det A != 0"
        )
    inv.check_feasible(feas_tol)
    (l1, l2), (m1, m2) = inv.eigA, inv.eigD
    phase = unimodular_factor(inv)
    sum_a, sum_d = l1 + l2, m1 + m2

    coeff = np.zeros((3, 3), dtype=complex)
    # p2(z) = (z mu1 - 1)(z mu2 - 1)
    coeff[:, 2] = [1.0, -sum_d, m1 * m2]
    # p0(z) = e^{i theta} (z - conj mu1)(z - conj mu2)
    coeff[:, 0] = phase * np.array([np.conj(m1 * m2), -np.conj(sum_d), 1.0])
    # p1(z) = b2 z^2 + b1 z + b0
    b2 = -phase * np.conj(sum_a)
    b0 = phase * np.conj(b2)
    b1 = sum_a * sum_d - inv.trBC
    coeff[:, 1] = [b0, b1, b2]
    return BivariatePoly(coeff)


def gauge_orbit_sample(U: BlockUnitary, seed, V=None, W=None) -> BlockUnitary:
    """``diag(V, W)* U diag(V, W)`` with Haar-random V, W drawn from ``seed``.

    Explicit ``V`` or ``W`` override the random factors.
    """
    _require_22(U)
    sv, sw = np.random.SeedSequence(seed).spawn(2)
    V = haar_unitary(U.m, sv) if V is None else V
    W = haar_unitary(U.n, sw) if W is None else W
    return U.conjugate_by(V, W)


def palindrome_residuals(U: BlockUnitary, Q=None) -> dict:
    """Residuals of ``b0 = e^{i theta} conj b2`` and ``b1 = e^{i theta} conj b1``.

    Also returns ``|Im(b1 e^{-i theta/2})|`` using the principal square root.
    """
    _require_22(U)
    Q = variety_poly(U) if Q is None else Q
    phase = np.linalg.det(U.D) / np.conj(np.linalg.det(U.A))
    b0, b1, b2 = Q.p(1)
    return {
        "b0": float(abs(b0 - phase * np.conj(b2))),
        "b1": float(abs(b1 - phase * np.conj(b1))),
        "b1_real": float(abs((b1 / np.sqrt(phase)).imag)),
        "phase_modulus": float(abs(abs(phase) - 1.0)),
    }
