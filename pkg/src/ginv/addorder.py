"""Star and core orders, Moore-Penrose and core additivity criteria."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .coreinv import core_inverse, is_group_matrix, try_core_inverse
from .errors import DimensionMismatch, NotGroupMatrix, PredicateFailed
from .geninv import pinv, projectors
from .numkit import DEFAULT_TOL, ComplexMatrix, Tolerance, ct, fro, is_zero, range_contains, rank, ranges_disjoint
from .ortho import factor_left_star_pair, factor_right_star_pair, left_core_orth, left_star_orth, right_core_orth, right_star_orth, star_orth


def _pair(A, B):
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    if A.shape != B.shape:
        raise DimensionMismatch(f"shapes differ: {A.shape} vs {B.shape}")
    return A, B


def _eq(X, Y, scale, tol):
    return fro(X - Y) <= tol.eq_rel * (1.0 + scale)


@dataclass(frozen=True)
class AdditivityReport:
    dagger_additive: bool
    rank_additive: bool
    core_additive: bool | None = None
    criterion_residuals: dict = field(default_factory=dict)


def star_leq(A, B, tol: Tolerance = DEFAULT_TOL) -> bool:
    """A <=* B:  A*A = A*B and AA* = BA*."""
    A, B = _pair(A, B)
    s = fro(A) * max(fro(A), fro(B))
    return _eq(ct(A) @ A, ct(A) @ B, s, tol) and _eq(A @ ct(A), B @ ct(A), s, tol)


def star_characterization_check(A, B, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, bool]:
    """(rank subtractivity, dagger subtractivity) of B - A."""
    A, B = _pair(A, B)
    D = B - A
    rank_sub = rank(D, tol) == rank(B, tol) - rank(A, tol)
    Dp, Ap, Bp = pinv(D, tol), pinv(A, tol), pinv(B, tol)
    dagger_sub = _eq(Dp, Bp - Ap, fro(Ap) + fro(Bp), tol)
    return rank_sub, dagger_sub


def _core_additive(A, B, tol):
    """((A+B)^core == A^core + B^core, residual, reason); needs A+B group."""
    C = A + B
    Cc = try_core_inverse(C, tol)
    if Cc is None:
        return False, float("inf"), "A+B is not a group matrix"
    Ac = core_inverse(A, tol, name="A")
    Bc = core_inverse(B, tol, name="B")
    resid = fro(Cc - Ac - Bc)
    ok = resid <= tol.eq_rel * (1.0 + fro(Ac) + fro(Bc))
    return ok, resid, None


def dagger_additivity(A, B, tol: Tolerance = DEFAULT_TOL) -> AdditivityReport:
    A, B = _pair(A, B)
    Ap, Bp = pinv(A, tol), pinv(B, tol)
    resid = fro(pinv(A + B, tol) - Ap - Bp)
    dagger = resid <= tol.eq_rel * (1.0 + fro(Ap) + fro(Bp))
    rank_add = rank(A + B, tol) == rank(A, tol) + rank(B, tol)
    residuals = {"dagger": resid}
    core = None
    if A.shape[0] == A.shape[1] and is_group_matrix(A, tol) and is_group_matrix(B, tol):
        core, cres, _ = _core_additive(A, B, tol)
        residuals["core"] = cres
    qa = projectors(A, tol)
    residuals["right_criterion"] = fro(ct(A) @ B @ qa.Qbar)
    residuals["left_criterion"] = fro(qa.Pbar @ B @ ct(A))
    return AdditivityReport(dagger_additive=dagger, rank_additive=rank_add, core_additive=core, criterion_residuals=residuals)


def right_additivity_criterion(A, B, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Given B A* = 0, dagger additivity holds iff A* B (I - Q_A) = 0."""
    A, B = _pair(A, B)
    if not right_star_orth(A, B, tol):
        raise PredicateFailed("right_star_orth(A, B)")
    X = ct(A) @ B @ projectors(A, tol).Qbar
    return is_zero(X, fro(A) * fro(B), tol)


def left_additivity_criterion(A, B, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Given A* B = 0, dagger additivity holds iff (I - P_A) B A* = 0."""
    A, B = _pair(A, B)
    if not left_star_orth(A, B, tol):
        raise PredicateFailed("left_star_orth(A, B)")
    X = projectors(A, tol).Pbar @ B @ ct(A)
    return is_zero(X, fro(A) * fro(B), tol)


def right_off_block_vanishes(A, B, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether the B2 block of the right canonical pair vanishes."""
    pair = factor_right_star_pair(A, B, tol)
    return is_zero(pair.B2, fro(B), tol)


def left_off_block_vanishes(A, B, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether the B3 block of the left canonical pair vanishes."""
    pair = factor_left_star_pair(A, B, tol)
    return is_zero(pair.B3, fro(B), tol)


def star_orth_implies_additive(A, B, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Dagger additivity of a star-orthogonal pair; False signals a violated theorem."""
    if not star_orth(A, B, tol):
        raise PredicateFailed("star_orth(A, B)")
    return dagger_additivity(A, B, tol).dagger_additive


def neg_star_conditions(A, B, tol: Tolerance = DEFAULT_TOL) -> bool:
    """AB* + BB* = 0 and B*A + B*B = 0."""
    A, B = _pair(A, B)
    s = fro(B) * (fro(A) + fro(B))
    return is_zero(A @ ct(B) + B @ ct(B), s, tol) and is_zero(ct(B) @ A + ct(B) @ B, s, tol)


def _gram_pinv_sum(X, Y, tol):
    """[(Pbar_X Y)(Pbar_X Y)*]^+ + [(Pbar_Y X)(Pbar_Y X)*]^+.

    Each term is evaluated as (M^+)* M^+, which equals (M M*)^+ but avoids
    squaring the condition number of M.
    """
    PxY = pinv(projectors(X, tol).Pbar @ Y, tol)
    PyX = pinv(projectors(Y, tol).Pbar @ X, tol)
    return ct(PxY) @ PxY + ct(PyX) @ PyX


def disjoint_range_pinv_sum_right(A, B, tol: Tolerance = DEFAULT_TOL) -> ComplexMatrix:
    """(A+B)^+ for B A* = 0 and R(A) n R(B) = {0}, via the Gram-sum formula."""
    A, B = _pair(A, B)
    if not right_star_orth(A, B, tol):
        raise PredicateFailed("right_star_orth(A, B)")
    if not ranges_disjoint(A, B, tol):
        raise PredicateFailed("R(A) and R(B) disjoint")
    return ct(A + B) @ _gram_pinv_sum(A, B, tol)


def disjoint_range_pinv_sum_left(A, B, tol: Tolerance = DEFAULT_TOL) -> ComplexMatrix:
    """(A+B)^+ for A* B = 0 and R(A*) n R(B*) = {0}."""
    A, B = _pair(A, B)
    if not left_star_orth(A, B, tol):
        raise PredicateFailed("left_star_orth(A, B)")
    if not ranges_disjoint(ct(A), ct(B), tol):
        raise PredicateFailed("R(A*) and R(B*) disjoint")
    return _gram_pinv_sum(ct(A), ct(B), tol) @ ct(A + B)


def core_leq(A, B, tol: Tolerance = DEFAULT_TOL) -> bool:
    """A <=core B:  A^core A = A^core B and A A^core = B A^core."""
    A, B = _pair(A, B)
    Ac = core_inverse(A, tol, name="A")
    s = fro(Ac) * max(fro(A), fro(B))
    return _eq(Ac @ A, Ac @ B, s, tol) and _eq(A @ Ac, B @ Ac, s, tol)


def core_additivity_theorem(A, B, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, bool, bool]:
    """(core additive, B A^core = 0, A B^core = 0) for a left core-orthogonal pair."""
    A, B = _pair(A, B)
    if not is_group_matrix(B, tol):
        raise NotGroupMatrix("B")
    if not left_core_orth(A, B, tol):
        raise PredicateFailed("left_core_orth(A, B)")
    additive, _, _ = _core_additive(A, B, tol)
    return additive, right_core_orth(A, B, tol), right_core_orth(B, A, tol)


def n1_conditions(A, B, tol: Tolerance = DEFAULT_TOL) -> bool:
    """A^core B + A^core A = 0 and B A^core + A A^core = 0."""
    A, B = _pair(A, B)
    Ac = core_inverse(A, tol, name="A")
    s = fro(Ac) * (fro(A) + fro(B))
    return is_zero(Ac @ B + Ac @ A, s, tol) and is_zero(B @ Ac + A @ Ac, s, tol)


def n1_alternative(A, B, tol: Tolerance = DEFAULT_TOL) -> bool:
    """(A+B) A = 0 and A* (A+B) = 0."""
    A, B = _pair(A, B)
    C = A + B
    s = fro(A) * (fro(A) + fro(B))
    return is_zero(C @ A, s, tol) and is_zero(ct(A) @ C, s, tol)


def theorem_sb7_check(A, B, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Literal inclusions claimed under the N1 conditions: R(B) in R(A) and R(A*) in R(B*).

    The first inclusion fails as soon as B has a nonzero block acting on
    the complement of R(A), e.g. A = diag(1, 0), B = diag(-1, 5); see
    :func:`n1_range_inclusions` for the inclusions that do hold.
    """
    if not n1_conditions(A, B, tol):
        raise PredicateFailed("n1_conditions(A, B)")
    A, B = _pair(A, B)
    return range_contains(A, B, tol) and range_contains(ct(B), ct(A), tol)


def n1_range_inclusions(A, B, tol: Tolerance = DEFAULT_TOL) -> bool:
    """R(A) in R(B) and R(A*) in R(B*) under the N1 conditions."""
    if not n1_conditions(A, B, tol):
        raise PredicateFailed("n1_conditions(A, B)")
    A, B = _pair(A, B)
    return range_contains(B, A, tol) and range_contains(ct(B), ct(A), tol)


def theorem_sb11_equivalences(A, B, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, bool, bool, bool, bool]:
    """(AB = BA, A^2 = -AB, A^2 <=core B^2, A+B <=core B, core additivity).

    A^2 and A+B are group matrices whenever the N1 conditions hold, so
    every entry is defined.
    """
    A, B = _pair(A, B)
    if not is_group_matrix(B, tol):
        raise NotGroupMatrix("B")
    if not n1_conditions(A, B, tol):
        raise PredicateFailed("n1_conditions(A, B)")
    AB, BA, A2 = A @ B, B @ A, A @ A
    s = fro(A) * fro(B)
    commute = _eq(AB, BA, s, tol)
    square = _eq(A2, -AB, max(s, fro(A) ** 2), tol)
    if not is_group_matrix(A2, tol):
        raise NotGroupMatrix("A^2")
    sq_order = core_leq(A2, B @ B, tol)
    C = A + B
    if not is_group_matrix(C, tol):
        raise NotGroupMatrix("A+B")
    sum_order = core_leq(C, B, tol)
    additive, _, _ = _core_additive(A, B, tol)
    return commute, square, sq_order, sum_order, additive
