import numpy as np
import pytest

from distvar.numerics import haar_unitary
from distvar.transfer import BlockUnitary

I2 = np.eye(2)
FLIP = np.array([[0.0, 1.0], [1.0, 0.0]])


def swap_unitary():
    return BlockUnitary.from_blocks(0 * I2, I2, I2, 0 * I2)


def flip_unitary():
    return BlockUnitary.from_blocks(0 * I2, I2, FLIP, 0 * I2)


def blaschke_unitary():
    return BlockUnitary.from_blocks(0.6 * I2, 0.8 * I2, -0.8 * I2, 0.6 * I2)


def haar_block(seed, m=2, n=2):
    return BlockUnitary(m, n, haar_unitary(m + n, seed))


def poly_product(a, b):
    """Coefficient grid of the product of two bivariate polynomials (test oracle)."""
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    out = np.zeros((a.shape[0] + b.shape[0] - 1, a.shape[1] + b.shape[1] - 1), dtype=complex)
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            out[i : i + b.shape[0], j : j + b.shape[1]] += a[i, j] * b
    return out


# (w - z)^2, w^2 - z^2 and ((0.6 z - 1) w + (0.6 - z))^2 as coeff[i][j] of z^i w^j
_lin_swap = np.array([[0, 1], [-1, 0]])
_lin_blaschke = np.array([[0.6, -1.0], [-1.0, 0.6]])
SWAP_Q = poly_product(_lin_swap, _lin_swap)
FLIP_Q = poly_product(np.array([[0, 1], [1, 0]]), np.array([[0, 1], [-1, 0]]))
BLASCHKE_Q = poly_product(_lin_blaschke, _lin_blaschke)


@pytest.fixture
def swap():
    return swap_unitary()


@pytest.fixture
def flip():
    return flip_unitary()


@pytest.fixture
def blaschke():
    return blaschke_unitary()
