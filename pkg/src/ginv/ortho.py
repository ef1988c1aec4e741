"""One-sided star- and core-orthogonality, and simultaneous canonical forms."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .coreinv import core_ep_decompose, core_inverse, is_group_matrix, try_core_inverse
from .errors import DimensionMismatch, NotGroupMatrix, PredicateFailed
from .geninv import pinv, pinv_stacked_columns, pinv_stacked_rows, projectors
from .numkit import DEFAULT_TOL, ComplexMatrix, Tolerance, chop, ct, fro, is_zero, svd, zeros


def _pair(A, B, square=False):
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    if A.shape != B.shape:
        raise DimensionMismatch(f"shapes differ: {A.shape} vs {B.shape}")
    if square and A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"square matrices required, got {A.shape}")
    return A, B


def _scale(A, B):
    return fro(A) * fro(B)


def left_star_orth(A, B, tol: Tolerance = DEFAULT_TOL) -> bool:
    """A*B = 0."""
    A, B = _pair(A, B)
    return is_zero(ct(A) @ B, _scale(A, B), tol)


def right_star_orth(A, B, tol: Tolerance = DEFAULT_TOL) -> bool:
    """B A* = 0."""
    A, B = _pair(A, B)
    return is_zero(B @ ct(A), _scale(A, B), tol)


def star_orth(A, B, tol: Tolerance = DEFAULT_TOL) -> bool:
    return left_star_orth(A, B, tol) and right_star_orth(A, B, tol)


def range_perpendicular(A, B, tol: Tolerance = DEFAULT_TOL) -> bool:
    """R(A) is orthogonal to R(B), tested as P_A P_B = 0."""
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    if A.shape[0] != B.shape[0]:
        raise DimensionMismatch(f"row counts differ: {A.shape} vs {B.shape}")
    PA = projectors(A, tol).P
    PB = projectors(B, tol).P
    return is_zero(PA @ PB, fro(PA) * fro(PB), tol)


@dataclass(frozen=True)
class StarCanonicalPair:
    """A = U [[Sigma, 0], [0, 0]] V*, with B in the matching one-sided block form.

    ``side == "right"``: B = U [[0, B2], [0, B4]] V*.
    ``side == "left"``:  B = U [[0, 0], [B3, B4]] V*.
    """

    U: ComplexMatrix
    V: ComplexMatrix
    Sigma: ComplexMatrix
    side: str
    B2: ComplexMatrix | None
    B3: ComplexMatrix | None
    B4: ComplexMatrix
    B_pinv: ComplexMatrix
    residuals: dict = field(default_factory=dict)

    @property
    def r(self) -> int:
        return self.Sigma.shape[0]

    def assemble(self) -> tuple[ComplexMatrix, ComplexMatrix]:
        m, n = self.U.shape[0], self.V.shape[0]
        r = self.r
        MA = zeros(m, n)
        MA[:r, :r] = self.Sigma
        MB = zeros(m, n)
        if self.side == "right":
            MB[:r, r:] = self.B2
        else:
            MB[r:, :r] = self.B3
        MB[r:, r:] = self.B4
        return self.U @ MA @ ct(self.V), self.U @ MB @ ct(self.V)


def _star_factor(A, B, tol, side):
    A, B = _pair(A, B)
    holds = right_star_orth(A, B, tol) if side == "right" else left_star_orth(A, B, tol)
    f = svd(A, tol)
    r = f.r
    U, V = f.U, f.V
    Bt = ct(U) @ B @ V
    nb = fro(B)
    if side == "right":
        dead = Bt[:, :r].ravel()
        name = "right_star_orth: B1, B3 blocks vanish"
    else:
        dead = Bt[:r, :].ravel()
        name = "left_star_orth: B1, B2 blocks vanish"
    dead_norm = float(np.linalg.norm(dead)) if dead.size else 0.0
    if not holds:
        raise PredicateFailed(name, dead_norm)
    Sigma = np.diag(f.sigma).astype(np.complex128)
    B4 = chop(Bt[r:, r:], nb, tol)
    if side == "right":
        B2, B3 = chop(Bt[:r, r:], nb, tol), None
        inner = pinv_stacked_columns(B2, B4, tol, zero_cols=r)
    else:
        B2, B3 = None, chop(Bt[r:, :r], nb, tol)
        inner = pinv_stacked_rows(B3, B4, tol, zero_rows=r)
    B_pinv = V @ inner @ ct(U)
    pair = StarCanonicalPair(U=U, V=V, Sigma=Sigma, side=side, B2=B2, B3=B3, B4=B4, B_pinv=B_pinv)
    A_re, B_re = pair.assemble()
    pair.residuals.update(
        A=fro(A - A_re) / (1.0 + fro(A)),
        B=fro(B - B_re) / (1.0 + nb),
        vanishing_blocks=dead_norm / (1.0 + fro(A) * nb),
        B_pinv=fro(B_pinv - pinv(B, tol)) / (1.0 + fro(B_pinv)),
    )
    return pair


def factor_right_star_pair(A, B, tol: Tolerance = DEFAULT_TOL) -> StarCanonicalPair:
    """Simultaneous form of a right star-orthogonal pair, built from svd(A).

    B^+ is reproduced from the blocks as V [[0,0],[G B2*, G B4*]] U*
    with G = (B2* B2 + B4* B4)^+.
    """
    return _star_factor(A, B, tol, "right")


def factor_left_star_pair(A, B, tol: Tolerance = DEFAULT_TOL) -> StarCanonicalPair:
    return _star_factor(A, B, tol, "left")


def _core_of(A, tol, name):
    if not is_group_matrix(A, tol):
        raise NotGroupMatrix(name)
    return core_inverse(A, tol, name=name)


def left_core_orth(A, B, tol: Tolerance = DEFAULT_TOL) -> bool:
    """A^core B = 0; only A needs to be a group matrix."""
    A, B = _pair(A, B, square=True)
    Ac = _core_of(A, tol, "A")
    return is_zero(Ac @ B, fro(Ac) * fro(B), tol)


def right_core_orth(A, B, tol: Tolerance = DEFAULT_TOL) -> bool:
    """B A^core = 0."""
    A, B = _pair(A, B, square=True)
    Ac = _core_of(A, tol, "A")
    return is_zero(B @ Ac, fro(Ac) * fro(B), tol)


def core_orth(A, B, tol: Tolerance = DEFAULT_TOL) -> bool:
    return left_core_orth(A, B, tol) and right_core_orth(A, B, tol)


def core_orth_alternative(A, B, tol: Tolerance = DEFAULT_TOL) -> bool:
    """A*B = 0 and BA = 0, the inverse-free characterization of core-orthogonality."""
    A, B = _pair(A, B, square=True)
    s = _scale(A, B)
    return is_zero(ct(A) @ B, s, tol) and is_zero(B @ A, s, tol)


def strongly_core_orth(A, B, tol: Tolerance = DEFAULT_TOL) -> bool:
    """A^core B = 0, B A^core = 0 and A B^core = 0 (both must be group matrices)."""
    A, B = _pair(A, B, square=True)
    Ac = _core_of(A, tol, "A")
    Bc = _core_of(B, tol, "B")
    return (
        is_zero(Ac @ B, fro(Ac) * fro(B), tol)
        and is_zero(B @ Ac, fro(Ac) * fro(B), tol)
        and is_zero(A @ Bc, fro(A) * fro(Bc), tol)
    )


@dataclass(frozen=True)
class CoreCanonicalPair:
    """A = U [[T, S], [0, 0]] U* with B in the matching one-sided block form.

    ``side == "left"``:  B = U [[0, 0], [B3, B4]] U*, (I - B4 B4^core) B3 = 0.
    ``side == "right"``: B = U [[0, B2], [0, B4]] U*, B2 (I - B4^+ B4) = 0.
    In both cases B4 is a group matrix.
    """

    U: ComplexMatrix
    T: ComplexMatrix
    S: ComplexMatrix
    side: str
    B2: ComplexMatrix | None
    B3: ComplexMatrix | None
    B4: ComplexMatrix
    B4_core: ComplexMatrix
    B_core: ComplexMatrix
    residuals: dict = field(default_factory=dict)

    @property
    def r(self) -> int:
        return self.T.shape[0]

    def assemble(self) -> tuple[ComplexMatrix, ComplexMatrix]:
        n = self.U.shape[0]
        r = self.r
        MA = zeros(n, n)
        MA[:r, :r] = self.T
        MA[:r, r:] = self.S
        MB = zeros(n, n)
        if self.side == "left":
            MB[r:, :r] = self.B3
        else:
            MB[:r, r:] = self.B2
        MB[r:, r:] = self.B4
        return self.U @ MA @ ct(self.U), self.U @ MB @ ct(self.U)

    @property
    def stated_form(self) -> bool:
        """Whether the off-diagonal B block is (numerically) absent."""
        return bool(self.residuals["off_block_zero"])


def _core_factor(A, B, tol, side):
    A, B = _pair(A, B, square=True)
    n = A.shape[0]
    _core_of(B, tol, "B")
    holds = left_core_orth(A, B, tol) if side == "left" else right_core_orth(A, B, tol)
    f = core_ep_decompose(A, tol)
    U, r = f.U, f.t
    Bt = ct(U) @ B @ U
    nb = fro(B)
    if side == "left":
        dead = Bt[:r, :]
        name = "left_core_orth: top block row of U* B U vanishes"
    else:
        dead = Bt[:, :r]
        name = "right_core_orth: left block column of U* B U vanishes"
    dead_norm = fro(dead)
    if not holds:
        raise PredicateFailed(name, dead_norm)
    B4 = chop(Bt[r:, r:], nb, tol)
    B4c = try_core_inverse(B4, tol) if B4.size else zeros(0, 0)
    if B4c is None:
        raise PredicateFailed("B4 is a group matrix")
    if side == "left":
        B2, B3 = None, chop(Bt[r:, :r], nb, tol)
        cond = B3 - B4 @ (B4c @ B3)
        cond_name = "(I - B4 B4^core) B3 = 0"
        off = B3
    else:
        B2, B3 = chop(Bt[:r, r:], nb, tol), None
        cond = B2 - (B2 @ pinv(B4, tol)) @ B4
        cond_name = "B2 (I - B4^+ B4) = 0"
        off = B2
    cond_norm = fro(cond)
    if not is_zero(cond, fro(off), tol):
        raise PredicateFailed(cond_name, cond_norm)
    Bc = core_inverse(B, tol, name="B")
    pair = CoreCanonicalPair(
        U=U, T=f.T, S=f.S, side=side, B2=B2, B3=B3, B4=B4, B4_core=B4c, B_core=Bc
    )
    A_re, B_re = pair.assemble()
    block_core = zeros(n, n)
    block_core[r:, r:] = B4c
    block_core = U @ block_core @ ct(U)
    pair.residuals.update(
        A=fro(A - A_re) / (1.0 + fro(A)),
        B=fro(B - B_re) / (1.0 + nb),
        vanishing_blocks=dead_norm / (1.0 + fro(A) * nb),
        block_condition=cond_norm / (1.0 + fro(off)),
        B_core_block_formula=fro(Bc - block_core) / (1.0 + fro(Bc)),
        off_block=fro(off),
        off_block_zero=is_zero(off, nb, tol),
    )
    return pair


def factor_left_core_pair(A, B, tol: Tolerance = DEFAULT_TOL) -> CoreCanonicalPair:
    """Simultaneous form of a left core-orthogonal pair from the core-EP decomposition of A.

    Also checks that B^core = U diag(0, B4^core) U*; that residual is
    stored under ``residuals["B_core_block_formula"]``.
    """
    return _core_factor(A, B, tol, "left")


def factor_right_core_pair(A, B, tol: Tolerance = DEFAULT_TOL) -> CoreCanonicalPair:
    """Simultaneous form of a right core-orthogonal pair.

    B A^core = 0 forces B = U [[0, B2], [0, B4]] U*; B group then gives
    B4 group with R(B2*) inside R(B4*). B2 vanishes exactly when A is
    also left core-orthogonal to B (``residuals["off_block_zero"]``), and
    only then does B^core equal U diag(0, B4^core) U*.
    """
    return _core_factor(A, B, tol, "right")
