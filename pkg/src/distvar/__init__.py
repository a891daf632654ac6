"""Distinguished varieties of the bidisk from block unitary matrices."""

from .config import DEFAULT, Tolerances
from .moduli import Invariants, gauge_orbit_sample, invariants, reconstruct_Q, same_variety
from .numerics import haar_unitary
from .transfer import BlockUnitary, defect_residual, find_gauge_W, psi, psi_prime, transfer_equal
from .variety import (
    BivariatePoly,
    eval_poly,
    is_distinguished,
    lemma_residual,
    sample_variety,
    sheets_w,
    sheets_z,
    variety_poly,
)

__all__ = [
    "DEFAULT", "Tolerances", "Invariants", "gauge_orbit_sample", "invariants", "reconstruct_Q",
    "same_variety", "haar_unitary", "BlockUnitary", "defect_residual", "find_gauge_W", "psi",
    "psi_prime", "transfer_equal", "BivariatePoly", "eval_poly", "is_distinguished",
    "lemma_residual", "sample_variety", "sheets_w", "sheets_z", "variety_poly",
]
