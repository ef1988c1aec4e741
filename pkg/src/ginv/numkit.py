"""Dense complex matrices, SVD, numerical rank and range tests.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``; real
input is promoted. Every "equals zero" decision in the library goes through
:func:`is_zero` with a caller-supplied context magnitude so that the tests are
insensitive to the overall scale of the operands.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

import numpy as np

from .errors import DimensionMismatch, InvalidMatrix, SvdError

ComplexMatrix = np.ndarray


@dataclass(frozen=True)
class Tolerance:
    """Relative thresholds used for rank, zero and equality decisions."""

    rank_rel: float = 1e-10
    zero_rel: float = 1e-9
    eq_rel: float = 1e-9

    def __post_init__(self):
        for name in ("rank_rel", "zero_rel", "eq_rel"):
            value = getattr(self, name)
            if not np.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be a nonnegative float, got {value!r}")

    @classmethod
    def from_env(cls, environ=None) -> "Tolerance":
        """Default tolerance, with ``GINV_TOL`` overriding zero_rel and eq_rel."""
        environ = os.environ if environ is None else environ
        raw = environ.get("GINV_TOL")
        if raw is None or raw.strip() == "":
            return cls()
        try:
            value = float(raw)
        except ValueError:
            raise ValueError(f"GINV_TOL is not a decimal float: {raw!r}") from None
        return cls(zero_rel=value, eq_rel=value)

    def with_eq(self, value: float) -> "Tolerance":
        return replace(self, zero_rel=value, eq_rel=value)


DEFAULT_TOL = Tolerance()


def as_matrix(A, *, allow_empty: bool = False) -> ComplexMatrix:
    """Validate and copy ``A`` into a 2-D complex128 array."""
    M = np.array(A, dtype=np.complex128, copy=True)
    if M.ndim != 2:
        raise InvalidMatrix(f"expected a 2-D matrix, got ndim={M.ndim}")
    if not allow_empty and (M.shape[0] == 0 or M.shape[1] == 0):
        raise InvalidMatrix(f"matrix must have at least one row and column, got {M.shape}")
    if not np.all(np.isfinite(M)):
        raise InvalidMatrix("matrix has non-finite entries")
    return M


def ct(A: ComplexMatrix) -> ComplexMatrix:
    """Conjugate transpose."""
    return np.conj(A).T


def fro(A: ComplexMatrix) -> float:
    return float(np.linalg.norm(A)) if A.size else 0.0


def eye(n: int) -> ComplexMatrix:
    return np.eye(n, dtype=np.complex128)


def zeros(m: int, n: int) -> ComplexMatrix:
    return np.zeros((m, n), dtype=np.complex128)


def _fix_phase(X: ComplexMatrix) -> np.ndarray:
    """Unit phases making the first dominant entry of each column real positive."""
    phases = np.ones(X.shape[1], dtype=np.complex128)
    for j in range(X.shape[1]):
        col = X[:, j]
        mag = np.abs(col)
        top = mag.max()
        if top == 0:
            continue
        i = int(np.flatnonzero(mag >= top * (1 - 1e-8))[0])
        phases[j] = np.conj(col[i]) / mag[i]
    return phases


@dataclass(frozen=True)
class SvdFactors:
    """A = U diag(sigma, 0) V* with U (m x m) and V (n x n) unitary."""

    U: ComplexMatrix
    V: ComplexMatrix
    sigma: np.ndarray

    @property
    def r(self) -> int:
        return len(self.sigma)

    def reconstruct(self) -> ComplexMatrix:
        r = self.r
        return (self.U[:, :r] * self.sigma) @ ct(self.V[:, :r])


def rank_cutoff(sigma_all: np.ndarray, shape: tuple[int, int], tol: Tolerance) -> float:
    smax = float(sigma_all[0]) if len(sigma_all) else 0.0
    return smax * max(shape) * tol.rank_rel


def svd(A, tol: Tolerance = DEFAULT_TOL) -> SvdFactors:
    """Full SVD with numerical rank truncation.

    Singular vectors are phase-normalized (first dominant entry of each
    column of U real positive, V adjusted to match) so that results are
    reproducible across platforms up to rounding.
    """
    A = as_matrix(A)
    m, n = A.shape
    try:
        U, s, Vh = np.linalg.svd(A, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise SvdError(f"SVD did not converge for {m}x{n} matrix: {exc}") from exc
    V = ct(Vh)
    cut = rank_cutoff(s, A.shape, tol)
    r = int(np.count_nonzero(s > cut)) if len(s) and s[0] > 0 else 0

    pu = _fix_phase(U)
    U = U * pu
    pv = _fix_phase(V)
    pv[:r] = pu[:r]
    V = V * pv
    return SvdFactors(U=U, V=V, sigma=s[:r].copy())


def rank(A, tol: Tolerance = DEFAULT_TOL) -> int:
    A = np.asarray(A, dtype=np.complex128)
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.count_nonzero(s > rank_cutoff(s, A.shape, tol)))


def orth_basis(A, tol: Tolerance = DEFAULT_TOL) -> tuple[ComplexMatrix, ComplexMatrix]:
    """Orthonormal bases (range, complement) of the column space of ``A``."""
    A = np.asarray(A, dtype=np.complex128)
    m = A.shape[0]
    if A.shape[1] == 0 or not np.any(A):
        return zeros(m, 0), eye(m)
    f = svd(A, tol)
    return f.U[:, : f.r], f.U[:, f.r :]


def is_zero(A, scale: float = 0.0, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff ||A||_F <= zero_rel * (1 + scale)."""
    if scale < 0:
        raise ValueError("scale must be nonnegative")
    return fro(np.asarray(A)) <= tol.zero_rel * (1.0 + scale)


def chop(A, scale: float = 0.0, tol: Tolerance = DEFAULT_TOL) -> ComplexMatrix:
    """Exact zeros in place of a block that :func:`is_zero` accepts at ``scale``.

    Blocks cut out of a unitarily transformed matrix carry rounding noise.
    When the whole block is noise, relative rank cutoffs would read it as
    full rank, so callers that know the parent's magnitude chop first.
    """
    A = np.asarray(A, dtype=np.complex128)
    return np.zeros_like(A) if is_zero(A, scale, tol) else A


def _same_rows(A, B):
    if A.shape[0] != B.shape[0]:
        raise DimensionMismatch(f"row counts differ: {A.shape} vs {B.shape}")


def range_contains(A, B, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff R(B) is contained in R(A), up to tolerance."""
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    _same_rows(A, B)
    # local import: geninv depends on this module
    from .geninv import pinv

    residual = B - A @ (pinv(A, tol) @ B)
    return fro(residual) <= tol.eq_rel * (1.0 + fro(B))


def ranges_disjoint(A, B, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff R(A) and R(B) intersect only in {0}."""
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    _same_rows(A, B)
    return rank(np.hstack([A, B]), tol) == rank(A, tol) + rank(B, tol)


def close(X, Y, scale: float, tol: Tolerance = DEFAULT_TOL) -> bool:
    """||X - Y||_F <= eq_rel * (1 + scale)."""
    return fro(np.asarray(X) - np.asarray(Y)) <= tol.eq_rel * (1.0 + scale)


def rel_residual(X, Y) -> float:
    """||X - Y||_F / (1 + max(||X||_F, ||Y||_F))."""
    return fro(np.asarray(X) - np.asarray(Y)) / (1.0 + max(fro(np.asarray(X)), fro(np.asarray(Y))))
