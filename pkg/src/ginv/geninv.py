"""Moore-Penrose inverse: SVD route, block formulas, projectors, g-inverses."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidMatrix
from .numkit import DEFAULT_TOL, ComplexMatrix, Tolerance, ct, eye, fro, rank_cutoff, svd, zeros


def pinv(A, tol: Tolerance = DEFAULT_TOL) -> ComplexMatrix:
    """Moore-Penrose inverse V diag(1/sigma, 0) U* from the truncated SVD.

    Empty matrices are accepted (block formulas produce them when a block
    has zero width) and give the empty transpose-shaped result.
    """
    A = np.asarray(A, dtype=np.complex128)
    m, n = A.shape
    if m == 0 or n == 0 or not np.any(A):
        return zeros(n, m)
    f = svd(A, tol)
    r = f.r
    return (f.V[:, :r] / f.sigma) @ ct(f.U[:, :r])


@dataclass(frozen=True)
class Projectors:
    """Orthogonal projectors onto R(A), R(A*), N(A*), N(A)."""

    P: ComplexMatrix
    Q: ComplexMatrix
    Pbar: ComplexMatrix
    Qbar: ComplexMatrix


def projectors(A, tol: Tolerance = DEFAULT_TOL) -> Projectors:
    A = np.asarray(A, dtype=np.complex128)
    m, n = A.shape
    X = pinv(A, tol)
    P = A @ X
    Q = X @ A
    # symmetrize away rounding so P == P* exactly
    P = (P + ct(P)) / 2
    Q = (Q + ct(Q)) / 2
    return Projectors(P=P, Q=Q, Pbar=eye(m) - P, Qbar=eye(n) - Q)


def pinv_stacked_columns(P, Q, tol: Tolerance = DEFAULT_TOL, *, zero_cols: int = 0) -> ComplexMatrix:
    """Pseudoinverse of [[0, P], [0, Q]] where the zero block has ``zero_cols`` columns.

    Uses (P*P + Q*Q)^+ [P*, Q*] for the nonzero block row of the result.
    """
    P = np.asarray(P, dtype=np.complex128)
    Q = np.asarray(Q, dtype=np.complex128)
    if P.shape[1] != Q.shape[1]:
        raise DimensionMismatch(f"P and Q need equal column counts: {P.shape} vs {Q.shape}")
    if zero_cols < 0:
        raise ValueError("zero_cols must be nonnegative")
    c = P.shape[1]
    G = pinv(ct(P) @ P + ct(Q) @ Q, tol)
    out = zeros(zero_cols + c, P.shape[0] + Q.shape[0])
    out[zero_cols:, : P.shape[0]] = G @ ct(P)
    out[zero_cols:, P.shape[0] :] = G @ ct(Q)
    return out


def pinv_stacked_rows(P, Q, tol: Tolerance = DEFAULT_TOL, *, zero_rows: int = 0) -> ComplexMatrix:
    """Pseudoinverse of [[0, 0], [P, Q]] where the zero block row has ``zero_rows`` rows."""
    P = np.asarray(P, dtype=np.complex128)
    Q = np.asarray(Q, dtype=np.complex128)
    if P.shape[0] != Q.shape[0]:
        raise DimensionMismatch(f"P and Q need equal row counts: {P.shape} vs {Q.shape}")
    if zero_rows < 0:
        raise ValueError("zero_rows must be nonnegative")
    s = P.shape[0]
    G = pinv(P @ ct(P) + Q @ ct(Q), tol)
    out = zeros(P.shape[1] + Q.shape[1], zero_rows + s)
    out[: P.shape[1], zero_rows:] = ct(P) @ G
    out[P.shape[1] :, zero_rows:] = ct(Q) @ G
    return out


@dataclass(frozen=True)
class TriangularBlockForm:
    """A = U [[A1, A2], [0, A3]] V* with A1 (t x t) nonsingular."""

    U: ComplexMatrix
    V: ComplexMatrix
    A1: ComplexMatrix
    A2: ComplexMatrix
    A3: ComplexMatrix
    Omega: ComplexMatrix
    Delta: ComplexMatrix

    @property
    def t(self) -> int:
        return self.A1.shape[0]

    def assemble(self) -> ComplexMatrix:
        m, n = self.U.shape[0], self.V.shape[0]
        t = self.t
        M = zeros(m, n)
        M[:t, :t] = self.A1
        M[:t, t:] = self.A2
        M[t:, t:] = self.A3
        return self.U @ M @ ct(self.V)


def triangular_form(A1, A2, A3, U=None, V=None, tol: Tolerance = DEFAULT_TOL) -> TriangularBlockForm:
    """Build a :class:`TriangularBlockForm`, computing Omega and Delta.

    Delta = (A1 A1* + Omega Omega*)^-1 is obtained by a Hermitian
    positive-definite solve, not by general inversion.
    """
    A1 = np.asarray(A1, dtype=np.complex128)
    A2 = np.asarray(A2, dtype=np.complex128)
    A3 = np.asarray(A3, dtype=np.complex128)
    t = A1.shape[0]
    if A1.shape != (t, t) or A2.shape[0] != t or A3.shape[1] != A2.shape[1]:
        raise DimensionMismatch(
            f"non-conforming blocks A1{A1.shape} A2{A2.shape} A3{A3.shape}"
        )
    m, n = t + A3.shape[0], t + A3.shape[1]
    U = eye(m) if U is None else np.asarray(U, dtype=np.complex128)
    V = eye(n) if V is None else np.asarray(V, dtype=np.complex128)
    if U.shape != (m, m) or V.shape != (n, n):
        raise DimensionMismatch("unitary factors do not conform to the blocks")
    if t:
        s = np.linalg.svd(A1, compute_uv=False)
        if s[-1] <= rank_cutoff(s, A1.shape, tol) or s[-1] == 0:
            raise InvalidMatrix("A1 is numerically singular")
    Qbar3 = eye(A3.shape[1]) - pinv(A3, tol) @ A3
    Omega = A2 @ Qbar3
    K = A1 @ ct(A1) + Omega @ ct(Omega)
    K = (K + ct(K)) / 2
    if t:
        c = np.linalg.cholesky(K)
        Delta = np.linalg.solve(ct(c), np.linalg.solve(c, eye(t)))
    else:
        Delta = zeros(0, 0)
    return TriangularBlockForm(U=U, V=V, A1=A1, A2=A2, A3=A3, Omega=Omega, Delta=Delta)


def pinv_upper_triangular(form: TriangularBlockForm, tol: Tolerance = DEFAULT_TOL) -> ComplexMatrix:
    """Pseudoinverse of a block upper-triangular matrix with nonsingular A1."""
    A1, A2, A3 = form.A1, form.A2, form.A3
    D, Om = form.Delta, form.Omega
    t = form.t
    A3p = pinv(A3, tol)
    m, n = form.U.shape[0], form.V.shape[0]
    X = zeros(n, m)
    A1sD = ct(A1) @ D
    OmsD = ct(Om) @ D
    X[:t, :t] = A1sD
    X[:t, t:] = -A1sD @ A2 @ A3p
    X[t:, :t] = OmsD
    X[t:, t:] = A3p - OmsD @ A2 @ A3p
    return form.V @ X @ ct(form.U)


def triangular_projectors(form: TriangularBlockForm, tol: Tolerance = DEFAULT_TOL) -> tuple[ComplexMatrix, ComplexMatrix]:
    """(P_A, Q_A) from the block upper-triangular form."""
    A1, A3, D, Om = form.A1, form.A3, form.Delta, form.Omega
    t = form.t
    m, n = form.U.shape[0], form.V.shape[0]
    A3p = pinv(A3, tol)
    P = zeros(m, m)
    P[:t, :t] = eye(t)
    P[t:, t:] = A3 @ A3p
    Q = zeros(n, n)
    Q[:t, :t] = ct(A1) @ D @ A1
    Q[:t, t:] = ct(A1) @ D @ Om
    Q[t:, :t] = ct(Om) @ D @ A1
    Q[t:, t:] = A3p @ A3 + ct(Om) @ D @ Om
    return form.U @ P @ ct(form.U), form.V @ Q @ ct(form.V)


def sample_g_inverse(A, seed: int, tol: Tolerance = DEFAULT_TOL) -> ComplexMatrix:
    """A seeded element of A{1}: G = A^+ + W - Q_A W P_A.

    W has entries uniform in the complex unit square [0,1) + i[0,1).
    """
    A = np.asarray(A, dtype=np.complex128)
    m, n = A.shape
    rng = np.random.default_rng(seed)
    W = rng.random((n, m)) + 1j * rng.random((n, m))
    X = pinv(A, tol)
    return X + W - (X @ A) @ W @ (A @ X)


def penrose_residuals(A, X) -> tuple[float, float, float, float]:
    """Relative residuals of the four Penrose equations, scaled by 1 + ||A|| ||X||."""
    A = np.asarray(A, dtype=np.complex128)
    X = np.asarray(X, dtype=np.complex128)
    s = 1.0 + fro(A) * fro(X)
    AX = A @ X
    XA = X @ A
    return (
        fro(AX @ A - A) / s,
        fro(XA @ X - X) / s,
        fro(ct(AX) - AX) / s,
        fro(ct(XA) - XA) / s,
    )
