"""Block unitaries and their transfer functions.

A unitary ``U = [[A, B], [C, D]]`` on ``C^m (+) C^n`` gives the matrix
inner function ``Psi(z) = A + z B (I - z D)^{-1} C``. This module
evaluates it, checks the defect identity that makes it inner, and decides
when two unitaries share the same transfer function (and recovers the
unitary ``W`` relating them).
"""

from dataclasses import InitVar, dataclass, field

import numpy as np

from .config import BOUNDARY_RADIUS
from .errors import DimensionError, UnitarityError
from .numerics import adjoint, as_matrix, frob, mat_solve, op_norm, unitarity_defect


@dataclass(frozen=True)
class BlockUnitary:
    """An ``(m+n) x (m+n)`` unitary split into blocks A (m x m), B, C, D (n x n).

    Pass ``check=False`` to build arbitrary block data (used to exercise the
    verifiers on non-unitary input).
    """

    m: int
    n: int
    U: np.ndarray = field(repr=False)
    check: InitVar[bool] = True
    tol: InitVar[float] = 1e-10

    def __post_init__(self, check, tol):
        if self.m < 1 or self.n < 1:
            raise DimensionError("block sizes must be >= 1")
        u = as_matrix(self.U, "U").copy()
        if u.shape != (self.m + self.n, self.m + self.n):
            raise DimensionError(f"U has shape {u.shape}, expected {(self.m + self.n,) * 2}")
        u.setflags(write=False)
        object.__setattr__(self, "U", u)
        if check:
            defect = unitarity_defect(u)
            if defect > tol:
                raise UnitarityError(f"||U*U - I||_F = {defect:.3e} exceeds {tol:.1e}")

    @classmethod
    def from_blocks(cls, A, B, C, D, check=True, tol=1e-10):
        A, B, C, D = (as_matrix(X, name) for X, name in zip((A, B, C, D), "ABCD"))
        m, n = A.shape[0], D.shape[0]
        if A.shape != (m, m) or B.shape != (m, n) or C.shape != (n, m) or D.shape != (n, n):
            raise DimensionError(
                f"incompatible block shapes A{A.shape} B{B.shape} C{C.shape} D{D.shape}"
            )
        return cls(m, n, np.block([[A, B], [C, D]]), check=check, tol=tol)

    @property
    def A(self):
        return self.U[: self.m, : self.m]

    @property
    def B(self):
        return self.U[: self.m, self.m :]

    @property
    def C(self):
        return self.U[self.m :, : self.m]

    @property
    def D(self):
        return self.U[self.m :, self.m :]

    @property
    def rank(self):
        return (self.m, self.n)

    def adjoint(self) -> "BlockUnitary":
        """The companion ``[[D*, B*], [C*, A*]]`` on ``C^n (+) C^m``."""
        return BlockUnitary.from_blocks(
            adjoint(self.D), adjoint(self.B), adjoint(self.C), adjoint(self.A), check=False
        )

    def conjugate_by(self, V=None, W=None) -> "BlockUnitary":
        """``diag(V, W)* U diag(V, W)``; either factor defaults to the identity."""
        V = np.eye(self.m) if V is None else as_matrix(V, "V")
        W = np.eye(self.n) if W is None else as_matrix(W, "W")
        if V.shape != (self.m, self.m) or W.shape != (self.n, self.n):
            raise DimensionError("gauge factors do not match block sizes")
        G = np.block([[V, np.zeros((self.m, self.n))], [np.zeros((self.n, self.m)), W]])
        return BlockUnitary(self.m, self.n, adjoint(G) @ self.U @ G, check=False)


def _realization(A, B, C, D, z, boundary):
    z = complex(z)
    if z == 0:
        return np.array(A, dtype=complex)
    if abs(z) >= 1 and not boundary:
        raise ValueError(f"|z| = {abs(z):.6g} >= 1; pass boundary=True to evaluate there")
    n = D.shape[0]
    return A + z * B @ mat_solve(np.eye(n) - z * D, C)


def psi(U: BlockUnitary, z, boundary=False):
    """Transfer function ``A + z B (I - z D)^{-1} C``."""
    return _realization(U.A, U.B, U.C, U.D, z, boundary)


def psi_prime(U: BlockUnitary, w, boundary=False):
    """Transfer function of the companion: ``D* + w B* (I - w A*)^{-1} C*``."""
    return _realization(adjoint(U.D), adjoint(U.B), adjoint(U.C), adjoint(U.A), w, boundary)


def psi_radial(U: BlockUnitary, z, radius=BOUNDARY_RADIUS):
    """Radial limit of Psi toward the boundary point ``z/|z|``."""
    z = complex(z)
    return psi(U, radius * z / abs(z))


def defect_residual(U: BlockUnitary, z) -> float:
    """Frobenius residual of I - Psi*Psi = (1-|z|^2) C*(I - zbar D*)^{-1}(I - zD)^{-1} C."""
    z = complex(z)
    P = psi(U, z)
    X = mat_solve(np.eye(U.n) - z * U.D, U.C)
    lhs = np.eye(U.m) - adjoint(P) @ P
    rhs = (1.0 - abs(z) ** 2) * adjoint(X) @ X
    return frob(lhs - rhs)


def _moments(U, count):
    out = [U.B @ U.C]
    Dk = np.eye(U.n, dtype=complex)
    for _ in range(1, count):
        Dk = Dk @ U.D
        out.append(U.B @ Dk @ U.C)
    return out


def transfer_equal(U: BlockUnitary, U1: BlockUnitary, tol=1e-8) -> bool:
    """Do ``U`` and ``U1`` realize the same transfer function?

    Compares ``A`` and the moments ``B D^k C`` for ``k < 2n``; by
    Cayley-Hamilton the higher moments are fixed by these.
    """
    if U.rank != U1.rank:
        raise DimensionError(f"ranks differ: {U.rank} vs {U1.rank}")
    if np.max(np.abs(U.A - U1.A)) > tol:
        return False
    count = 2 * U.n
    return all(
        np.max(np.abs(M - M1)) <= tol for M, M1 in zip(_moments(U, count), _moments(U1, count))
    )


@dataclass(frozen=True)
class GaugeMatch:
    """Unitary ``W`` with ``U1 = diag(I, W)* U diag(I, W)``.

    ``free_dim`` is the dimension of the subspace on which ``W`` is not
    determined by the data; ``W`` is chosen to act as the identity there
    whenever that is consistent. ``unique`` is ``free_dim == 0``.
    """

    W: np.ndarray
    free_dim: int
    method: str

    @property
    def unique(self) -> bool:
        return self.free_dim == 0


def _gauge_residual(U, U1, W):
    Ws = adjoint(W)
    return max(
        frob(Ws @ W - np.eye(U.n)),
        np.max(np.abs(U.B @ W - U1.B)),
        np.max(np.abs(Ws @ U.C - U1.C)),
        np.max(np.abs(Ws @ U.D @ W - U1.D)),
    )


def _word_images(U, U1):
    # W* intertwines D with D1 and D* with D1*, and sends C -> C1, B* -> B1*.
    # Apply every word of length <= n in {D, D*} to the generators.
    gens = np.hstack([U.C, adjoint(U.B)])
    gens1 = np.hstack([U1.C, adjoint(U1.B)])
    V, V1 = [gens], [gens1]
    frontier = [(gens, gens1)]
    ops = [(U.D, U1.D), (adjoint(U.D), adjoint(U1.D))]
    for _ in range(U.n):
        frontier = [(X @ G, X1 @ G1) for G, G1 in frontier for X, X1 in ops]
        V.extend(G for G, _ in frontier)
        V1.extend(G1 for _, G1 in frontier)
    return np.hstack(V), np.hstack(V1)


def _gauge_from_subspace(U, U1, rank_tol):
    n = U.n
    V, V1 = _word_images(U, U1)
    Q, s, Yh = np.linalg.svd(V, full_matrices=True)
    r = int(np.sum(s > rank_tol * s[0])) if s.size and s[0] > 0 else 0
    Q_det, Q_free = Q[:, :r], Q[:, r:]
    # W* on the determined subspace: W* Q_det = V1 Y Sigma^{-1}
    image = V1 @ adjoint(Yh[:r]) / s[:r]
    Ws = image @ adjoint(Q_det)
    if r < n:
        # complement of the image, matched to the free subspace by a polar factor
        P1_perp = np.eye(n) - image @ adjoint(image)
        X, sig, Zh = np.linalg.svd(P1_perp @ Q_free, full_matrices=False)
        if sig.min() > 1e-6:
            iso = X @ Zh
        else:
            Qi, _, _ = np.linalg.svd(image, full_matrices=True)
            iso = Qi[:, r:]
        Ws = Ws + iso @ adjoint(Q_free)
    return adjoint(Ws), n - r


def find_gauge_W(U: BlockUnitary, U1: BlockUnitary, tol=1e-8, rank_tol=1e-8):
    """Recover ``W`` with ``B1 = BW``, ``C1 = W*C``, ``D1 = W*DW``.

    Returns a :class:`GaugeMatch`, or ``None`` when the two unitaries do
    not share a transfer function (or no such ``W`` exists).
    """
    if not transfer_equal(U, U1, tol):
        return None
    s = np.linalg.svd(U.B, compute_uv=False)
    if U.m >= U.n and s[U.n - 1] > rank_tol * s[0]:
        # B injective: W = B^+ B1 (B^{-1} B1 when square)
        if U.m == U.n:
            W = mat_solve(U.B, U1.B)
        else:
            W = np.linalg.pinv(U.B) @ U1.B
        match = GaugeMatch(W, 0, "direct")
    else:
        # ||A|| = 1: B is not injective; work on the subspace generated
        # from B*, C under D and D*, and fix W on its complement
        W, free = _gauge_from_subspace(U, U1, rank_tol)
        match = GaugeMatch(W, free, "compressed")
    if _gauge_residual(U, U1, match.W) > tol:
        return None
    return match


def norm_one(U: BlockUnitary, tol=1e-8) -> bool:
    """True when ``||A|| = 1`` to tolerance (the case where W may be non-unique)."""
    return op_norm(U.A) >= 1.0 - tol
