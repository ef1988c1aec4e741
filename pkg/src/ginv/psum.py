"""Parallel summability, the parallel sum, and orthogonality-specific criteria."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BothZero, DimensionMismatch, PredicateFailed
from .geninv import pinv, projectors, sample_g_inverse
from .numkit import DEFAULT_TOL, ComplexMatrix, Tolerance, chop, ct, fro, range_contains
from .ortho import StarCanonicalPair, left_star_orth, right_star_orth


@dataclass(frozen=True)
class PsumVerdict:
    summable: bool
    sum: ComplexMatrix | None
    witness: str | None
    max_ginv_deviation: float | None = None


def is_parallel_summable(A, B, tol: Tolerance = DEFAULT_TOL) -> PsumVerdict:
    """Decide summability via P_{A+B} A = A and A Q_{A+B} = A.

    When summable the verdict carries A:B = A (A+B)^+ B.
    """
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    if A.shape != B.shape:
        raise DimensionMismatch(f"shapes differ: {A.shape} vs {B.shape}")
    if not np.any(A) and not np.any(B):
        raise BothZero("parallel sum needs at least one non-null operand")
    C = A + B
    pr = projectors(C, tol)
    scale = tol.eq_rel * (1.0 + fro(A))
    failed = []
    if fro(pr.P @ A - A) > scale:
        failed.append("R(A) not contained in R(A+B)")
    if fro(A @ pr.Q - A) > scale:
        failed.append("R(A*) not contained in R(A*+B*)")
    if failed:
        return PsumVerdict(summable=False, sum=None, witness="; ".join(failed))
    return PsumVerdict(summable=True, sum=A @ pinv(C, tol) @ B, witness=None)


def ginverse_invariance_oracle(A, B, trials: int = 25, seed: int = 0, tol: Tolerance = DEFAULT_TOL) -> float:
    """Largest deviation of A G B from A (A+B)^+ B over seeded g-inverses G of A+B.

    Deviations are divided by 1 + ||A|| ||B||. A small value is evidence of
    invariance, never proof.
    """
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    if A.shape != B.shape:
        raise DimensionMismatch(f"shapes differ: {A.shape} vs {B.shape}")
    if trials < 1:
        raise ValueError("trials must be positive")
    C = A + B
    ref = A @ pinv(C, tol) @ B
    scale = 1.0 + fro(A) * fro(B)
    seeds = np.random.SeedSequence(seed).generate_state(trials, dtype=np.uint64)
    worst = 0.0
    for s in seeds:
        G = sample_g_inverse(C, int(s), tol)
        worst = max(worst, fro(A @ G @ B - ref) / scale)
    return worst


def right_block_psum_criterion(pair: StarCanonicalPair, tol: Tolerance = DEFAULT_TOL) -> bool:
    """R(B2*) inside R(B4*) for a right canonical pair."""
    if pair.side != "right":
        raise ValueError("right_block_psum_criterion needs a right canonical pair")
    return range_contains(ct(pair.B4), ct(pair.B2), tol)


def left_block_psum_criterion(pair: StarCanonicalPair, tol: Tolerance = DEFAULT_TOL) -> bool:
    """R(B3) inside R(B4) for a left canonical pair."""
    if pair.side != "left":
        raise ValueError("left_block_psum_criterion needs a left canonical pair")
    return range_contains(pair.B4, pair.B3, tol)


def right_orth_psum_criterion(A, B, tol: Tolerance = DEFAULT_TOL) -> bool:
    """For B A* = 0: R(Qbar_A B* A) inside R(Qbar_A B* Pbar_A)."""
    if not right_star_orth(A, B, tol):
        raise PredicateFailed("right_star_orth(A, B)")
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    pr = projectors(A, tol)
    Bs = ct(B)
    X = chop(pr.Qbar @ Bs @ pr.Pbar, fro(B), tol)
    return range_contains(X, pr.Qbar @ Bs @ A, tol)


def left_orth_psum_criterion(A, B, tol: Tolerance = DEFAULT_TOL) -> bool:
    """For A* B = 0: R(Pbar_A B A*) inside R(Pbar_A B Qbar_A)."""
    if not left_star_orth(A, B, tol):
        raise PredicateFailed("left_star_orth(A, B)")
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    pr = projectors(A, tol)
    X = chop(pr.Pbar @ B @ pr.Qbar, fro(B), tol)
    return range_contains(X, pr.Pbar @ B @ ct(A), tol)
