"""Index, core-EP decomposition and the core inverse of group matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotApplicable, NotGroupMatrix
from .numkit import DEFAULT_TOL, ComplexMatrix, Tolerance, chop, ct, eye, fro, is_zero, orth_basis, rank, zeros


def _square(A, name="A") -> ComplexMatrix:
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {A.shape}")
    return A


def index(A, tol: Tolerance = DEFAULT_TOL) -> int:
    """Smallest k >= 0 with rank(A^k) == rank(A^(k+1)), taking A^0 = I.

    Powers are chopped at the scale ||A||^j so that a power which vanishes
    in exact arithmetic is not ranked from its rounding noise.
    """
    A = _square(A)
    n = A.shape[0]
    prev_rank = n
    power = eye(n)
    for k in range(n + 1):
        power = _power_step(power, A, k + 1, tol)
        r = rank(power, tol)
        if r == prev_rank:
            return k
        prev_rank = r
    return n


def _power_step(power, A, j, tol):
    return chop(power @ A, fro(A) ** j, tol)


def _chopped_power(A, k, tol):
    power = eye(A.shape[0])
    for j in range(1, k + 1):
        power = _power_step(power, A, j, tol)
    return power


@dataclass(frozen=True)
class CoreEpFactors:
    """A = U [[T, S], [0, N]] U* with T nonsingular and N nilpotent."""

    U: ComplexMatrix
    T: ComplexMatrix
    S: ComplexMatrix
    N: ComplexMatrix
    t: int
    k: int

    def assemble(self) -> ComplexMatrix:
        n = self.U.shape[0]
        M = zeros(n, n)
        M[: self.t, : self.t] = self.T
        M[: self.t, self.t :] = self.S
        M[self.t :, self.t :] = self.N
        return self.U @ M @ ct(self.U)

    def split(self) -> tuple[ComplexMatrix, ComplexMatrix]:
        """(A1, A2): the group part and the nilpotent part."""
        n = self.U.shape[0]
        t = self.t
        M1 = zeros(n, n)
        M1[:t, :t] = self.T
        M1[:t, t:] = self.S
        M2 = zeros(n, n)
        M2[t:, t:] = self.N
        return self.U @ M1 @ ct(self.U), self.U @ M2 @ ct(self.U)


def core_ep_decompose(A, tol: Tolerance = DEFAULT_TOL) -> CoreEpFactors:
    """Core-EP decomposition built from an orthonormal basis of R(A^k).

    R(A^k) is A-invariant, so with U = [U1 U2] (U1 spanning R(A^k)) the
    block U2* A U1 vanishes. The discarded block is not returned; see
    :func:`core_ep_residual` for the reconstruction check.
    """
    A = _square(A)
    n = A.shape[0]
    k = index(A, tol)
    Ak = _chopped_power(A, k, tol)
    if k == 0:
        U1, U2 = eye(n), zeros(n, 0)
    else:
        U1, U2 = orth_basis(Ak, tol)
    U = np.hstack([U1, U2])
    t = U1.shape[1]
    M = ct(U) @ A @ U
    return CoreEpFactors(U=U, T=M[:t, :t], S=M[:t, t:], N=M[t:, t:], t=t, k=k)


def core_ep_residual(A, f: CoreEpFactors) -> float:
    """||A - U [[T,S],[0,N]] U*||_F / (1 + ||A||_F)."""
    A = np.asarray(A, dtype=np.complex128)
    return fro(A - f.assemble()) / (1.0 + fro(A))


def is_group_matrix(A, tol: Tolerance = DEFAULT_TOL) -> bool:
    return index(A, tol) <= 1


def core_inverse(A, tol: Tolerance = DEFAULT_TOL, *, name: str = "A") -> ComplexMatrix:
    """Core inverse U [[T^-1, 0], [0, 0]] U* of a group matrix.

    Raises :class:`NotGroupMatrix` when the index exceeds 1.
    """
    A = _square(A, name)
    n = A.shape[0]
    k = index(A, tol)
    if k > 1:
        raise NotGroupMatrix(name, k)
    if k == 0:
        return np.linalg.solve(A, eye(n))
    U1, _ = orth_basis(A, tol)
    t = U1.shape[1]
    if t == 0:
        return zeros(n, n)
    T = ct(U1) @ A @ U1
    return U1 @ np.linalg.solve(T, ct(U1))


def try_core_inverse(A, tol: Tolerance = DEFAULT_TOL):
    """Core inverse, or None when A is not a group matrix."""
    try:
        return core_inverse(A, tol)
    except NotGroupMatrix:
        return None


def _block_cores(P, R, tol):
    Pc = try_core_inverse(P, tol) if P.size else zeros(0, 0)
    if Pc is None:
        raise NotApplicable("P has no core inverse")
    Rc = try_core_inverse(R, tol) if R.size else zeros(0, 0)
    if Rc is None:
        raise NotApplicable("R has no core inverse")
    return Pc, Rc


def core_inverse_lower_block(P, Q, R, tol: Tolerance = DEFAULT_TOL) -> ComplexMatrix:
    """Core inverse of [[P, 0], [Q, R]] in lower block-triangular form.

    Requires P, R group matrices and (I - R R^core) Q = 0; otherwise raises
    :class:`NotApplicable` naming the failed clause.
    """
    P = _square(P, "P")
    R = _square(R, "R")
    Q = np.asarray(Q, dtype=np.complex128)
    if Q.shape != (R.shape[0], P.shape[0]):
        raise DimensionMismatch(f"Q must be {R.shape[0]}x{P.shape[0]}, got {Q.shape}")
    Pc, Rc = _block_cores(P, R, tol)
    gap = Q - R @ (Rc @ Q)
    if not is_zero(gap, fro(Q), tol):
        raise NotApplicable("(I - R R^core) Q != 0")
    p, r = P.shape[0], R.shape[0]
    X = zeros(p + r, p + r)
    X[:p, :p] = Pc
    X[p:, :p] = -Rc @ Q @ Pc
    X[p:, p:] = Rc
    return X


def core_inverse_upper_block(P, Q, R, tol: Tolerance = DEFAULT_TOL) -> ComplexMatrix:
    """Core inverse of [[P, Q], [0, R]] in upper block-triangular form.

    Requires P, R group matrices and (I - P P^core) Q = 0.
    """
    P = _square(P, "P")
    R = _square(R, "R")
    Q = np.asarray(Q, dtype=np.complex128)
    if Q.shape != (P.shape[0], R.shape[0]):
        raise DimensionMismatch(f"Q must be {P.shape[0]}x{R.shape[0]}, got {Q.shape}")
    Pc, Rc = _block_cores(P, R, tol)
    gap = Q - P @ (Pc @ Q)
    if not is_zero(gap, fro(Q), tol):
        raise NotApplicable("(I - P P^core) Q != 0")
    p, r = P.shape[0], R.shape[0]
    X = zeros(p + r, p + r)
    X[:p, :p] = Pc
    X[:p, p:] = -Pc @ Q @ Rc
    X[p:, p:] = Rc
    return X
