"""Seeded generators for structured matrices and matrix pairs.

Every pair is assembled in canonical block coordinates and then conjugated
by random unitaries (QR of seeded complex Gaussians), so membership in the
requested family holds by construction. Nonzero singular values of every
structured block are drawn log-uniformly from [SIGMA_LO, SIGMA_HI].
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .numkit import ComplexMatrix, ct, zeros

FAMILIES = (
    "rank_r",
    "group_matrix",
    "right_star_pair",
    "left_star_pair",
    "left_core_pair",
    "right_core_pair",
    "star_orth_pair",
    "n1_pair",
    "disjoint_range_pair",
)
SQUARE_FAMILIES = {"group_matrix", "left_core_pair", "right_core_pair", "n1_pair"}
MAX_DIM = 12
SIGMA_LO, SIGMA_HI = 0.1, 10.0


@dataclass(frozen=True)
class GenSpec:
    """What to generate.

    ``rank_params`` keys, by family (missing keys default to 0 unless noted):

    * ``r``: rank of A (rank of the single matrix for rank_r/group_matrix)
    * ``r4``: rank of the B4 block
    * ``b2`` / ``b3`` / ``b``: off-block mode, 0 = zero, 1 = inside the
      range the relevant criterion asks for, 2 = generic
    * ``s``: for left_core_pair, 1 makes S annihilate R(B4)
    * ``commute``: for n1_pair, 1 makes S D4 = 0
    * ``side``: for disjoint_range_pair, 0 = right, 1 = left
    """

    family: str
    dims: tuple[int, int]
    rank_params: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        m, n = self.dims
        if not (1 <= m <= MAX_DIM and 1 <= n <= MAX_DIM):
            raise ValueError(f"dims must lie in [1, {MAX_DIM}], got {self.dims}")
        if self.family in SQUARE_FAMILIES and m != n:
            raise ValueError(f"{self.family} needs square dims, got {self.dims}")
        p = self.param
        r, r4 = p("r"), p("r4")
        if not 0 <= r <= min(m, n):
            raise ValueError(f"r={r} inconsistent with dims {self.dims}")
        if not 0 <= r4 <= min(m - r, n - r):
            raise ValueError(f"r4={r4} exceeds the {m - r}x{n - r} B4 block")
        for key in ("b2", "b3", "b"):
            if p(key) not in (0, 1, 2):
                raise ValueError(f"{key} must be 0, 1 or 2")

    def param(self, key: str) -> int:
        return int(self.rank_params.get(key, 0))


def random_unitary(rng: np.random.Generator, n: int) -> ComplexMatrix:
    if n == 0:
        return zeros(0, 0)
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def singular_values(rng: np.random.Generator, k: int) -> np.ndarray:
    s = np.exp(rng.uniform(np.log(SIGMA_LO), np.log(SIGMA_HI), size=k))
    return np.sort(s)[::-1]


def random_block(rng: np.random.Generator, p: int, q: int, k: int | None = None) -> ComplexMatrix:
    """p x q block of rank k (default full rank) with controlled singular values."""
    k = min(p, q) if k is None else k
    if k == 0 or p == 0 or q == 0:
        return zeros(p, q)
    U = random_unitary(rng, p)[:, :k]
    V = random_unitary(rng, q)[:, :k]
    return (U * singular_values(rng, k)) @ ct(V)


def _group_block(rng, k, r):
    """k x k group matrix W [[T, S], [0, 0]] W* of rank r, with its W."""
    W = random_unitary(rng, k)
    M = zeros(k, k)
    M[:r, :r] = random_block(rng, r, r)
    M[:r, r:] = random_block(rng, r, k - r)
    return W @ M @ ct(W), W, M


def _conj(U, M, V):
    return U @ M @ ct(V)


def _star_pair(rng, m, n, r, r4, mode, side):
    U, V = random_unitary(rng, m), random_unitary(rng, n)
    MA = zeros(m, n)
    MA[:r, :r] = np.diag(singular_values(rng, r))
    U4 = random_unitary(rng, m - r)
    V4 = random_unitary(rng, n - r)
    s4 = singular_values(rng, r4)
    B4 = (U4[:, :r4] * s4) @ ct(V4[:, :r4])
    MB = zeros(m, n)
    MB[r:, r:] = B4
    if side == "right":
        if mode == 1:
            off = random_block(rng, r, r4) @ ct(V4[:, :r4])
        elif mode == 2:
            off = random_block(rng, r, n - r)
        else:
            off = zeros(r, n - r)
        MB[:r, r:] = off
    else:
        if mode == 1:
            off = U4[:, :r4] @ random_block(rng, r4, r)
        elif mode == 2:
            off = random_block(rng, m - r, r)
        else:
            off = zeros(m - r, r)
        MB[r:, :r] = off
    return _conj(U, MA, V), _conj(U, MB, V)


def generate(spec: GenSpec):
    """One matrix (rank_r, group_matrix) or an (A, B) pair, deterministic per spec."""
    rng = np.random.default_rng(spec.seed)
    m, n = spec.dims
    p = spec.param
    r, r4 = p("r"), p("r4")
    fam = spec.family

    if fam == "rank_r":
        return random_block(rng, m, n, r)
    if fam == "group_matrix":
        return _group_block(rng, n, r)[0]
    if fam == "right_star_pair":
        return _star_pair(rng, m, n, r, r4, p("b2"), "right")
    if fam == "left_star_pair":
        return _star_pair(rng, m, n, r, r4, p("b3"), "left")
    if fam == "star_orth_pair":
        return _star_pair(rng, m, n, r, r4, 0, "right")
    if fam == "disjoint_range_pair":
        side = "left" if p("side") else "right"
        return _star_pair(rng, m, n, r, r4, min(p("b"), 1), side)

    # square families: A = U [[T, S], [0, 0]] U*
    U = random_unitary(rng, n)
    T = random_block(rng, r, r)
    k = n - r
    B4, W, M4 = _group_block(rng, k, r4)
    MA = zeros(n, n)
    MA[:r, :r] = T
    MB = zeros(n, n)
    if fam == "left_core_pair":
        if p("s") == 1:
            S = random_block(rng, r, k - r4) @ ct(W[:, r4:])
        else:
            S = random_block(rng, r, k)
        if p("b3") == 1:
            MB[r:, :r] = W[:, :r4] @ random_block(rng, r4, r)
        elif p("b3") == 2:
            MB[r:, :r] = random_block(rng, k, r)
        MB[r:, r:] = B4
    elif fam == "right_core_pair":
        S = random_block(rng, r, k)
        if p("b2") == 1:
            MB[:r, r:] = random_block(rng, r, r4) @ M4[:r4, :] @ ct(W)
        elif p("b2") == 2:
            MB[:r, r:] = random_block(rng, r, k)
        MB[r:, r:] = B4
    else:  # n1_pair
        if p("commute") == 1:
            S = random_block(rng, r, k - r4) @ ct(W[:, r4:])
        else:
            S = random_block(rng, r, k)
        MB[:r, :r] = -T
        MB[:r, r:] = -S
        MB[r:, r:] = B4
    MA[:r, r:] = S
    return _conj(U, MA, U), _conj(U, MB, U)
