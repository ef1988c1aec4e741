"""Randomized verification campaigns, one per theorem or identity.

Each campaign is a trial function ``trial(rng, tol) -> (ok, residual, pair)``
registered under a stable id. ``ok`` is False when the trial contradicts the
statement being checked, ``residual`` is the largest normalized residual of
the identities the trial asserts, and ``pair`` is the matrix (or pair) that
was tested so that a violating instance can be reported.

Trial ``i`` of a campaign run with seed ``s`` draws from
``default_rng([s, crc32(id), i])``. Trials are therefore independent of each
other and of scheduling, and a run with ``workers > 1`` returns exactly the
sequential result.
"""

from __future__ import annotations

import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import addorder, coreinv, geninv, ortho, psum
from .errors import NotApplicable, PredicateFailed, UnknownTheorem
from .generators import GenSpec, generate, random_block, random_unitary
from .numkit import DEFAULT_TOL, Tolerance, ct, fro, range_contains, ranges_disjoint, rel_residual, zeros

ROUNDTRIP = 1e-10  # reconstruction residual allowed for factorizations

Trial = Callable[[np.random.Generator, Tolerance], tuple]


@dataclass(frozen=True)
class CampaignResult:
    theorem_id: str
    trials: int
    violations: int
    worst_residual: float
    counterexample: tuple | None = None

    def __post_init__(self):
        if not 0 <= self.violations <= self.trials:
            raise ValueError("violations must lie in [0, trials]")
        if (self.counterexample is not None) != (self.violations > 0):
            raise ValueError("counterexample must be present exactly when violations > 0")


@dataclass(frozen=True)
class Campaign:
    theorem_id: str
    description: str
    trial: Trial
    expected_to_hold: bool = True


REGISTRY: dict[str, Campaign] = {}


def campaign(theorem_id: str, description: str, expected_to_hold: bool = True):
    def register(fn: Trial) -> Trial:
        REGISTRY[theorem_id] = Campaign(theorem_id, description, fn, expected_to_hold)
        return fn

    return register


def theorem_ids() -> list[str]:
    return sorted(REGISTRY)


def trial_rng(theorem_id: str, seed: int, i: int) -> np.random.Generator:
    return np.random.default_rng([int(seed) & (2**64 - 1), zlib.crc32(theorem_id.encode()), i])


def run_campaign(theorem_id: str, trials: int, seed: int = 0, tol: Tolerance = DEFAULT_TOL, workers: int | None = None) -> CampaignResult:
    """Run ``trials`` seeded instances of a registered campaign."""
    if theorem_id not in REGISTRY:
        raise UnknownTheorem(theorem_id)
    if trials < 1:
        raise ValueError("trials must be positive")
    fn = REGISTRY[theorem_id].trial

    def one(i):
        ok, resid, pair = fn(trial_rng(theorem_id, seed, i), tol)
        return bool(ok), float(resid), pair

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(one, range(trials)))
    else:
        outcomes = [one(i) for i in range(trials)]

    violations = sum(1 for ok, _, _ in outcomes if not ok)
    worst = max(r for _, r, _ in outcomes)
    first_bad = next((pair for ok, _, pair in outcomes if not ok), None)
    return CampaignResult(theorem_id, trials, violations, worst, first_bad)


# ---------------------------------------------------------------- instances


def _seed(rng) -> int:
    return int(rng.integers(0, 2**63))


def _gen(rng, family, dims, **params):
    return generate(GenSpec(family, tuple(dims), params, _seed(rng)))


def _dims(rng, lo=2, hi=6, square=False):
    m = int(rng.integers(lo, hi + 1))
    return (m, m) if square else (m, int(rng.integers(lo, hi + 1)))


def _star(rng, family, min_r=0, mode=None):
    """A star-type pair with random rank split and off-block mode."""
    m, n = _dims(rng)
    r = int(rng.integers(min_r, min(m, n) + 1))
    r4 = int(rng.integers(0, min(m - r, n - r) + 1))
    mode = int(rng.integers(0, 3)) if mode is None else mode
    key = {"right_star_pair": "b2", "left_star_pair": "b3", "disjoint_range_pair": "b"}.get(family)
    params = {"r": r, "r4": r4}
    if key:
        params[key] = mode
    return _gen(rng, family, (m, n), **params)


def _independent(rng, dims=None, min_r=0):
    m, n = dims or _dims(rng)
    ra = int(rng.integers(min_r, min(m, n) + 1))
    rb = int(rng.integers(min_r, min(m, n) + 1))
    return _gen(rng, "rank_r", (m, n), r=ra), _gen(rng, "rank_r", (m, n), r=rb)


def _any_pair(rng):
    kind = int(rng.integers(0, 4))
    if kind == 0:
        return _star(rng, "right_star_pair")
    if kind == 1:
        return _star(rng, "left_star_pair")
    if kind == 2:
        return _star(rng, "star_orth_pair")
    return _independent(rng)


def _core_pair(rng, family, **fixed):
    n = int(rng.integers(2, 7))
    r = int(rng.integers(1, n + 1))
    r4 = int(rng.integers(0, n - r + 1))
    params = {"r": r, "r4": r4}
    if family == "left_core_pair":
        params.update(b3=int(rng.integers(0, 2)), s=int(rng.integers(0, 2)))
    elif family == "right_core_pair":
        params.update(b2=int(rng.integers(0, 2)))
    elif family == "n1_pair":
        params.update(commute=int(rng.integers(0, 2)))
    params.update(fixed)
    return _gen(rng, family, (n, n), **params)


def _group_pair(rng):
    kind = int(rng.integers(0, 4))
    if kind == 3:
        n = int(rng.integers(2, 7))
        return tuple(_gen(rng, "group_matrix", (n, n), r=int(rng.integers(0, n + 1))) for _ in range(2))
    return _core_pair(rng, ("left_core_pair", "right_core_pair", "n1_pair")[kind])


# ------------------------------------------------------- orthogonality


@campaign("star_orth_duality", "one-sided star orthogonality: duality under A*, B* and symmetry")
def _star_orth_duality(rng, tol):
    A, B = _any_pair(rng)
    As, Bs = ct(A), ct(B)
    left, right = ortho.left_star_orth(A, B, tol), ortho.right_star_orth(A, B, tol)
    ok = (
        left == ortho.right_star_orth(As, Bs, tol)
        and right == ortho.left_star_orth(As, Bs, tol)
        and left == ortho.left_star_orth(B, A, tol)
        and right == ortho.right_star_orth(B, A, tol)
        and ortho.star_orth(A, B, tol) == (left and right)
    )
    resid = 0.0
    s = 1.0 + fro(A) * fro(B)
    if left:
        resid = max(resid, fro(As @ B) / s)
    if right:
        resid = max(resid, fro(B @ As) / s)
    return ok, resid, (A, B)


@campaign("range_perp", "R(A) perpendicular to R(B) iff A*B = 0")
def _range_perp(rng, tol):
    A, B = _any_pair(rng)
    left = ortho.left_star_orth(A, B, tol)
    perp = ortho.range_perpendicular(A, B, tol)
    resid = fro(ct(A) @ B) / (1.0 + fro(A) * fro(B)) if left else 0.0
    return left == perp, resid, (A, B)


def _star_canonical(rng, tol, side):
    family = f"{side}_star_pair"
    A, B = _star(rng, family) if rng.random() < 0.75 else _independent(rng)
    holds = (ortho.right_star_orth if side == "right" else ortho.left_star_orth)(A, B, tol)
    factor = ortho.factor_right_star_pair if side == "right" else ortho.factor_left_star_pair
    try:
        pair = factor(A, B, tol)
    except PredicateFailed:
        return not holds, 0.0, (A, B)
    if not holds:
        return False, 0.0, (A, B)
    res = pair.residuals
    rt = max(res["A"], res["B"])
    ok = rt <= ROUNDTRIP and res["B_pinv"] <= tol.eq_rel
    return ok, max(rt, res["B_pinv"]), (A, B)


@campaign("right_star_canonical", "B A* = 0 iff the right simultaneous form exists; B+ from blocks")
def _right_star_canonical(rng, tol):
    return _star_canonical(rng, tol, "right")


@campaign("left_star_canonical", "A* B = 0 iff the left simultaneous form exists; B+ from blocks")
def _left_star_canonical(rng, tol):
    return _star_canonical(rng, tol, "left")


# -------------------------------------------------------- parallel sums

P2_INVARIANT = 1e-8
P2_VARYING = 1e-4


def _psum_pair(rng):
    kind = int(rng.integers(0, 6))
    if kind == 0:
        return _star(rng, "right_star_pair", min_r=1)
    if kind == 1:
        return _star(rng, "left_star_pair", min_r=1)
    if kind == 2:
        A = _gen(rng, "rank_r", _dims(rng), r=1 + int(rng.integers(0, 2)))
        return A, A.copy()
    if kind == 3:
        A = _gen(rng, "rank_r", _dims(rng), r=1 + int(rng.integers(0, 2)))
        return A, zeros(*A.shape)
    if kind == 4:
        # near cancellation: A + B is a low-rank perturbation E
        m, n = _dims(rng)
        A = _gen(rng, "rank_r", (m, n), r=int(rng.integers(1, min(m, n) + 1)))
        E = _gen(rng, "rank_r", (m, n), r=int(rng.integers(0, min(m, n))))
        return A, E - A
    return _independent(rng, min_r=1)


@campaign("lemma_p2_equiv", "projector summability test agrees with g-inverse invariance")
def _lemma_p2_equiv(rng, tol):
    A, B = _psum_pair(rng)
    verdict = psum.is_parallel_summable(A, B, tol)
    dev = psum.ginverse_invariance_oracle(A, B, trials=25, seed=_seed(rng), tol=tol)
    if verdict.summable:
        return dev <= P2_INVARIANT, dev, (A, B)
    return dev > P2_VARYING, 0.0, (A, B)


def _block_psum(rng, tol, side):
    A, B = _star(rng, f"{side}_star_pair", min_r=1)
    if side == "right":
        pair = ortho.factor_right_star_pair(A, B, tol)
        crit = psum.right_block_psum_criterion(pair, tol)
    else:
        pair = ortho.factor_left_star_pair(A, B, tol)
        crit = psum.left_block_psum_criterion(pair, tol)
    A2, B2 = pair.assemble()
    summable = psum.is_parallel_summable(A2, B2, tol).summable
    return crit == summable, max(pair.residuals["A"], pair.residuals["B"]), (A, B)


@campaign("right_block_psum", "right canonical pair: summable iff R(B2*) in R(B4*)")
def _right_block_psum(rng, tol):
    return _block_psum(rng, tol, "right")


@campaign("left_block_psum", "left canonical pair: summable iff R(B3) in R(B4)")
def _left_block_psum(rng, tol):
    return _block_psum(rng, tol, "left")


def _orth_psum(rng, tol, side):
    A, B = _star(rng, f"{side}_star_pair", min_r=1)
    crit_fn = psum.right_orth_psum_criterion if side == "right" else psum.left_orth_psum_criterion
    crit = crit_fn(A, B, tol)
    verdict = psum.is_parallel_summable(A, B, tol)
    ok = crit == verdict.summable
    resid = 0.0
    if verdict.summable:
        resid = fro(verdict.sum) / (1.0 + fro(A) * fro(B))
        ok = ok and resid <= tol.eq_rel
    return ok, resid, (A, B)


@campaign("right_orth_psum", "B A* = 0: summable iff the range criterion holds, and then A:B = 0")
def _right_orth_psum(rng, tol):
    return _orth_psum(rng, tol, "right")


@campaign("left_orth_psum", "A* B = 0: summable iff the range criterion holds, and then A:B = 0")
def _left_orth_psum(rng, tol):
    return _orth_psum(rng, tol, "left")


@campaign("psum_identities", "A:0 = 0 and A:A = A/2")
def _psum_identities(rng, tol):
    m, n = _dims(rng, 1, 8)
    A = _gen(rng, "rank_r", (m, n), r=int(rng.integers(1, min(m, n) + 1)))
    zero = psum.is_parallel_summable(A, zeros(m, n), tol)
    same = psum.is_parallel_summable(A, A, tol)
    if not (zero.summable and same.summable):
        return False, 0.0, (A, None)
    r0 = fro(zero.sum) / (1.0 + fro(A))
    r1 = fro(same.sum - A / 2) / (1.0 + fro(A))
    return max(r0, r1) <= tol.eq_rel, max(r0, r1), (A, None)


# ----------------------------------------------------------- additivity


def _additivity(rng, tol, side):
    A, B = _star(rng, f"{side}_star_pair")
    report = addorder.dagger_additivity(A, B, tol)
    if side == "right":
        crit = addorder.right_additivity_criterion(A, B, tol)
        block = addorder.right_off_block_vanishes(A, B, tol)
    else:
        crit = addorder.left_additivity_criterion(A, B, tol)
        block = addorder.left_off_block_vanishes(A, B, tol)
    ok = report.dagger_additive == crit == block
    resid = report.criterion_residuals["dagger"] / (1.0 + fro(A) + fro(B)) if report.dagger_additive else 0.0
    return ok, resid, (A, B)


@campaign("thm_additivity_right", "B A* = 0: (A+B)+ = A+ + B+ iff A*B(I - Q_A) = 0 iff B2 = 0")
def _thm_additivity_right(rng, tol):
    return _additivity(rng, tol, "right")


@campaign("thm_additivity_left", "A* B = 0: (A+B)+ = A+ + B+ iff (I - P_A)BA* = 0 iff B3 = 0")
def _thm_additivity_left(rng, tol):
    return _additivity(rng, tol, "left")


@campaign("star_orth_additive", "star-orthogonal pairs are dagger and rank additive")
def _star_orth_additive(rng, tol):
    A, B = _star(rng, "star_orth_pair")
    report = addorder.dagger_additivity(A, B, tol)
    ok = ortho.star_orth(A, B, tol) and report.dagger_additive and report.rank_additive
    return ok, report.criterion_residuals["dagger"] / (1.0 + fro(A) + fro(B)), (A, B)


@campaign("star_order_characterization", "A <=* B iff rank and dagger subtractivity of B - A")
def _star_order_characterization(rng, tol):
    kind = int(rng.integers(0, 3))
    if kind == 0:
        A, C = _star(rng, "star_orth_pair")
        B = A + C
    elif kind == 1:
        A, C = _star(rng, "right_star_pair", min_r=1, mode=2)
        B = A + C
    else:
        A = _gen(rng, "rank_r", _dims(rng), r=1)
        B = 2 * A
    leq = addorder.star_leq(A, B, tol)
    rank_sub, dagger_sub = addorder.star_characterization_check(A, B, tol)
    return leq == (rank_sub and dagger_sub), 0.0, (A, B)


@campaign("neg_star_additivity", "AB* + BB* = 0 and B*A + B*B = 0 iff B <=* -A, which forces additivity")
def _neg_star_additivity(rng, tol):
    if rng.random() < 0.5:
        B, C = _star(rng, "star_orth_pair")
        A = -(B + C)
    else:
        A, B = _any_pair(rng)
    neg = addorder.neg_star_conditions(A, B, tol)
    ok = neg == addorder.star_leq(B, -A, tol)
    resid = 0.0
    if neg:
        report = addorder.dagger_additivity(A, B, tol)
        ok = ok and report.dagger_additive
        resid = report.criterion_residuals["dagger"] / (1.0 + fro(A) + fro(B))
    return ok, resid, (A, B)


def _disjoint(rng, tol, side):
    if rng.random() < 0.7:
        A, B = _gen_disjoint(rng, side)
    else:
        A, B = _star(rng, f"{side}_star_pair", min_r=1, mode=2)
    if side == "right":
        hyp = ortho.right_star_orth(A, B, tol) and ranges_disjoint(A, B, tol)
        formula = addorder.disjoint_range_pinv_sum_right
    else:
        hyp = ortho.left_star_orth(A, B, tol) and ranges_disjoint(ct(A), ct(B), tol)
        formula = addorder.disjoint_range_pinv_sum_left
    try:
        X = formula(A, B, tol)
    except PredicateFailed:
        return not hyp, 0.0, (A, B)
    if not hyp:
        return False, 0.0, (A, B)
    resid = rel_residual(X, geninv.pinv(A + B, tol))
    return resid <= tol.eq_rel, resid, (A, B)


def _gen_disjoint(rng, side):
    m, n = _dims(rng)
    r = int(rng.integers(0, min(m, n) + 1))
    r4 = int(rng.integers(0, min(m - r, n - r) + 1))
    return _gen(rng, "disjoint_range_pair", (m, n), r=r, r4=r4, b=int(rng.integers(0, 2)), side=int(side == "left"))


@campaign("disjoint_range_right", "B A* = 0 with R(A), R(B) disjoint: Gram-sum formula equals (A+B)+")
def _disjoint_range_right(rng, tol):
    return _disjoint(rng, tol, "right")


@campaign("disjoint_range_left", "A* B = 0 with R(A*), R(B*) disjoint: Gram-sum formula equals (A+B)+")
def _disjoint_range_left(rng, tol):
    return _disjoint(rng, tol, "left")


@campaign("disjoint_range_gram", "disjoint ranges: (AA* + BB*)+ as a sum of two Gram pseudoinverses")
def _disjoint_range_gram(rng, tol):
    m = int(rng.integers(2, 7))
    n = int(rng.integers(1, 7))
    ra = int(rng.integers(0, min(m, n) + 1))
    rb = int(rng.integers(0, min(m - ra, n) + 1))
    A = _gen(rng, "rank_r", (m, n), r=ra)
    B = _gen(rng, "rank_r", (m, n), r=rb)
    if not ranges_disjoint(A, B, tol):
        return False, 0.0, (A, B)
    lhs = geninv.pinv(A @ ct(A) + B @ ct(B), tol)
    rhs = addorder._gram_pinv_sum(A, B, tol)
    resid = rel_residual(lhs, rhs)
    return resid <= tol.eq_rel, resid, (A, B)


# ----------------------------------------------------- core orthogonality


@campaign("core_orth_equivalences", "group pairs: A^core B = 0 iff A*B = 0 iff B^core A = 0; B A^core = 0 iff BA = 0 iff A* (B*)^core = 0")
def _core_orth_equivalences(rng, tol):
    A, B = _group_pair(rng)
    left = ortho.left_core_orth(A, B, tol)
    right = ortho.right_core_orth(A, B, tol)
    ok = (
        left == ortho.left_star_orth(A, B, tol) == ortho.left_core_orth(B, A, tol)
        and right == ortho.right_star_orth(ct(A), B, tol) == ortho.right_core_orth(ct(B), ct(A), tol)
    )
    return ok, 0.0, (A, B)


@campaign(
    "core_orth_right_literal",
    "literal right-hand (iii): B A^core = 0 iff A* B^core = 0 (false in general)",
    expected_to_hold=False,
)
def _core_orth_right_literal(rng, tol):
    A, B = _group_pair(rng) if rng.random() < 0.5 else _core_pair(rng, "right_core_pair")
    return ortho.right_core_orth(A, B, tol) == ortho.right_core_orth(B, ct(A), tol), 0.0, (A, B)


def _core_canonical(rng, tol, side):
    A, B = _core_pair(rng, "left_core_pair" if rng.random() < 0.5 else "right_core_pair")
    holds = (ortho.left_core_orth if side == "left" else ortho.right_core_orth)(A, B, tol)
    factor = ortho.factor_left_core_pair if side == "left" else ortho.factor_right_core_pair
    try:
        pair = factor(A, B, tol)
    except PredicateFailed:
        return not holds, 0.0, (A, B), None
    if not holds:
        return False, 0.0, (A, B), None
    res = pair.residuals
    rt = max(res["A"], res["B"])
    ok = rt <= ROUNDTRIP and res["block_condition"] <= tol.eq_rel
    if side == "left" or pair.stated_form:
        ok = ok and res["B_core_block_formula"] <= tol.eq_rel
    return ok, rt, (A, B), pair


@campaign("left_core_canonical", "A^core B = 0 iff the left core simultaneous form exists; B^core from B4^core")
def _left_core_canonical(rng, tol):
    return _core_canonical(rng, tol, "left")[:3]


@campaign("right_core_canonical", "B A^core = 0 iff B = U[[0, B2], [0, B4]]U* with B4 group and R(B2*) in R(B4*)")
def _right_core_canonical(rng, tol):
    return _core_canonical(rng, tol, "right")[:3]


@campaign(
    "right_core_canonical_literal",
    "literal right core form: B A^core = 0 iff B = U diag(0, B4) U* (false in general)",
    expected_to_hold=False,
)
def _right_core_canonical_literal(rng, tol):
    A, B = _core_pair(rng, "right_core_pair")
    holds = ortho.right_core_orth(A, B, tol)
    try:
        pair = ortho.factor_right_core_pair(A, B, tol)
        stated = pair.stated_form
    except PredicateFailed:
        stated = False
    return holds == stated, 0.0, (A, B)


@campaign("core_additivity", "left core-orthogonal pairs: core additivity iff B A^core = 0 and A B^core = 0")
def _core_additivity(rng, tol):
    A, B = _core_pair(rng, "left_core_pair")
    additive, r1, r2 = addorder.core_additivity_theorem(A, B, tol)
    return additive == (r1 and r2), 0.0, (A, B)


@campaign("core_orth_alternative_form", "core orthogonality iff A*B = 0 and BA = 0")
def _core_orth_alternative_form(rng, tol):
    if rng.random() < 0.3:
        A, B = _core_pair(rng, "left_core_pair", b3=0)
    else:
        A, B = _group_pair(rng)
    return ortho.core_orth(A, B, tol) == ortho.core_orth_alternative(A, B, tol), 0.0, (A, B)


def _n1_or_other(rng):
    u = rng.random()
    if u < 0.7:
        return _core_pair(rng, "n1_pair")
    if u < 0.8:
        A = _core_pair(rng, "n1_pair")[0]
        return A, -A
    return _group_pair(rng)


@campaign("n1_equivalent_forms", "N1 conditions iff (A+B)A = 0 and A*(A+B) = 0 iff A <=core -B")
def _n1_equivalent_forms(rng, tol):
    A, B = _n1_or_other(rng)
    n1 = addorder.n1_conditions(A, B, tol)
    ok = n1 == addorder.n1_alternative(A, B, tol) == addorder.core_leq(A, -B, tol)
    return ok, 0.0, (A, B)


@campaign("n1_range_inclusion_literal", "literal N1 inclusions: R(B) in R(A) and R(A*) in R(B*) (false in general)", expected_to_hold=False)
def _n1_range_inclusion_literal(rng, tol):
    A, B = _core_pair(rng, "n1_pair")
    return addorder.theorem_sb7_check(A, B, tol), 0.0, (A, B)


@campaign("n1_range_inclusion", "N1 conditions imply R(A) in R(B) and R(A*) in R(B*)")
def _n1_range_inclusion(rng, tol):
    A, B = _core_pair(rng, "n1_pair")
    return addorder.n1_range_inclusions(A, B, tol), 0.0, (A, B)


@campaign("n1_equivalences", "N1 pairs: AB = BA, A^2 = -AB, A^2 <=core B^2, A+B <=core B, core additivity agree")
def _n1_equivalences(rng, tol):
    A, B = _core_pair(rng, "n1_pair")
    flags = addorder.theorem_sb11_equivalences(A, B, tol)
    return len(set(flags)) == 1, 0.0, (A, B)


# ---------------------------------------------------- generalized inverses


@campaign("penrose", "SVD pseudoinverse satisfies the four Penrose equations and (A+)+ = A")
def _penrose(rng, tol):
    m, n = _dims(rng, 1, 8)
    A = _gen(rng, "rank_r", (m, n), r=int(rng.integers(0, min(m, n) + 1)))
    X = geninv.pinv(A, tol)
    resid = max(max(geninv.penrose_residuals(A, X)), fro(geninv.pinv(X, tol) - A) / (1.0 + fro(A)))
    return resid <= tol.eq_rel, resid, (A, None)


@campaign("mp_stacked_blocks", "pseudoinverses of [[0, P], [0, Q]] and [[0, 0], [P, Q]] from Gram matrices")
def _mp_stacked_blocks(rng, tol):
    p, q, c, z = (int(rng.integers(1, 5)) for _ in range(4))
    P = _gen(rng, "rank_r", (p, c), r=int(rng.integers(0, min(p, c) + 1)))
    Q = _gen(rng, "rank_r", (q, c), r=int(rng.integers(0, min(q, c) + 1)))
    M = np.hstack([zeros(p + q, z), np.vstack([P, Q])])
    r1 = rel_residual(geninv.pinv_stacked_columns(P, Q, tol, zero_cols=z), geninv.pinv(M, tol))
    N = np.vstack([zeros(z, p + q), np.hstack([ct(P), ct(Q)])])
    r2 = rel_residual(geninv.pinv_stacked_rows(ct(P), ct(Q), tol, zero_rows=z), geninv.pinv(N, tol))
    resid = max(r1, r2)
    return resid <= tol.eq_rel, resid, (M, N)


def triangular_instance(rng):
    """Random block upper-triangular form with nonsingular A1, conjugated by unitaries."""
    t = int(rng.integers(0, 4))
    p = int(rng.integers(0, 4))
    q = int(rng.integers(0, 4))
    if t + p == 0:
        p = 1
    if t + q == 0:
        q = 1
    A1 = random_block(rng, t, t)
    A2 = random_block(rng, t, q)
    A3 = random_block(rng, p, q, int(rng.integers(0, min(p, q) + 1)))
    U, V = random_unitary(rng, t + p), random_unitary(rng, t + q)
    return geninv.triangular_form(A1, A2, A3, U, V)


@campaign("mp_triangular", "block upper-triangular pseudoinverse and projector expressions")
def _mp_triangular(rng, tol):
    form = triangular_instance(rng)
    A = form.assemble()
    r1 = rel_residual(geninv.pinv_upper_triangular(form, tol), geninv.pinv(A, tol))
    P, Q = geninv.triangular_projectors(form, tol)
    pr = geninv.projectors(A, tol)
    resid = max(r1, rel_residual(P, pr.P), rel_residual(Q, pr.Q))
    return resid <= tol.eq_rel, resid, (A, None)


def core_block_instance(rng, lower: bool, applicable: bool):
    """(P, Q, R) for a block-triangular core inverse, optionally violating the range clause."""
    p = int(rng.integers(1, 4))
    k = int(rng.integers(1, 4))
    P = _gen(rng, "group_matrix", (p, p), r=int(rng.integers(0, p + 1)))
    if applicable:
        R = _gen(rng, "group_matrix", (k, k), r=int(rng.integers(0, k + 1)))
        Q = R @ random_block(rng, k, p) if lower else P @ random_block(rng, p, k)
    else:
        # singular diagonal block whose range misses Q
        if lower:
            R = _gen(rng, "group_matrix", (k, k), r=int(rng.integers(0, k)))
            P = _gen(rng, "group_matrix", (p, p), r=int(rng.integers(0, p + 1)))
        else:
            P = _gen(rng, "group_matrix", (p, p), r=int(rng.integers(0, p)))
            R = _gen(rng, "group_matrix", (k, k), r=int(rng.integers(0, k + 1)))
        Q = random_block(rng, k, p) if lower else random_block(rng, p, k)
    return P, Q, R


def assemble_triangular(P, Q, R, lower):
    p, k = P.shape[0], R.shape[0]
    M = zeros(p + k, p + k)
    M[:p, :p] = P
    M[p:, p:] = R
    if lower:
        M[p:, :p] = Q
    else:
        M[:p, p:] = Q
    return M


@campaign("core_triangular", "block-triangular core inverse formulas and their applicability clauses")
def _core_triangular(rng, tol):
    lower = bool(rng.integers(0, 2))
    applicable = bool(rng.random() < 0.6)
    P, Q, R = core_block_instance(rng, lower, applicable)
    M = assemble_triangular(P, Q, R, lower)
    fn = coreinv.core_inverse_lower_block if lower else coreinv.core_inverse_upper_block
    try:
        X = fn(P, Q, R, tol)
    except NotApplicable:
        # the formula may only be refused when no core inverse of that block shape exists
        direct = coreinv.try_core_inverse(M, tol)
        if direct is None:
            return True, 0.0, (M, None)
        p = P.shape[0]
        off = direct[:p, p:] if lower else direct[p:, :p]
        return fro(off) > tol.zero_rel * (1.0 + fro(direct)), 0.0, (M, None)
    resid = rel_residual(X, coreinv.core_inverse(M, tol))
    return resid <= tol.eq_rel, resid, (M, None)


@campaign("core_inverse_defining", "group matrices: A A^core = P_A, R(A^core) in R(A), core-EP round trip")
def _core_inverse_defining(rng, tol):
    n = int(rng.integers(1, 9))
    A = _gen(rng, "group_matrix", (n, n), r=int(rng.integers(0, n + 1)))
    C = coreinv.core_inverse(A, tol)
    r1 = rel_residual(A @ C, geninv.projectors(A, tol).P)
    rt = coreinv.core_ep_residual(A, coreinv.core_ep_decompose(A, tol))
    ok = r1 <= tol.eq_rel and range_contains(A, C, tol) and rt <= ROUNDTRIP
    return ok, max(r1, rt), (A, None)


def nilpotent_instance(rng):
    """A = U [[T, S], [0, N]] U* with T well conditioned and N strictly upper triangular."""
    t = int(rng.integers(0, 4))
    q = int(rng.integers(0, 4))
    if t + q == 0:
        t = 1
    W = random_unitary(rng, t)
    T = (W * rng.uniform(0.5, 2.0, size=t)) @ ct(random_unitary(rng, t)) if t else zeros(0, 0)
    S = rng.standard_normal((t, q)) + 1j * rng.standard_normal((t, q))
    N = np.triu(rng.standard_normal((q, q)) + 1j * rng.standard_normal((q, q)), 1)
    for i in range(q - 1):  # keep the superdiagonal away from zero so Ind(N) = q
        N[i, i + 1] += np.sign(N[i, i + 1].real or 1.0)
    M = zeros(t + q, t + q)
    M[:t, :t], M[:t, t:], M[t:, t:] = T, S, N
    U = random_unitary(rng, t + q)
    return U @ M @ ct(U), t, q


@campaign("core_ep_decomposition", "core-EP decomposition: round trip, nilpotent part, A1*A2 = A2A1 = 0")
def _core_ep_decomposition(rng, tol):
    A, t, q = nilpotent_instance(rng)
    f = coreinv.core_ep_decompose(A, tol)
    rt = coreinv.core_ep_residual(A, f)
    A1, A2 = f.split()
    s = 1.0 + fro(A) ** 2
    expected_k = q if q else 0
    ok = (
        rt <= ROUNDTRIP
        and f.k == expected_k
        and f.t == t
        and coreinv.is_group_matrix(A1, tol)
        and fro(ct(A1) @ A2) <= tol.zero_rel * s
        and fro(A2 @ A1) <= tol.zero_rel * s
        and fro(np.linalg.matrix_power(A2, max(f.k, 1))) <= tol.zero_rel * (1.0 + fro(A2) ** max(f.k, 1))
    )
    return ok, rt, (A, None)


# ------------------------------------------------------------ examples

WORKED_PAIR_1 = (np.array([[1, 1], [0, 0]], dtype=complex), np.array([[0, 0], [1, 0]], dtype=complex))
WORKED_PAIR_2 = (np.eye(2, dtype=complex), np.diag([-1.0, 0.0]).astype(complex))


@campaign("worked_pair_1_regression", "left star- and core-orthogonal pair that is not right core-orthogonal")
def _worked_pair_1(rng, tol):
    A, B = WORKED_PAIR_1
    ok = (
        ortho.left_star_orth(A, B, tol)
        and ortho.left_core_orth(A, B, tol)
        and not ortho.right_core_orth(A, B, tol)
        and coreinv.index(B, tol) == 2
    )
    return ok, 0.0, (A, B)


@campaign("example_3_2_regression", "core additive pair that is not strongly core-orthogonal")
def _worked_pair_2(rng, tol):
    A, B = WORKED_PAIR_2
    Ac, Bc = coreinv.core_inverse(A, tol), coreinv.core_inverse(B, tol)
    resid = fro(coreinv.core_inverse(A + B, tol) - Ac - Bc)
    products = min(fro(Ac @ B), fro(B @ Ac), fro(A @ Bc))
    ok = resid <= 1e-12 and products >= 0.9 and not ortho.strongly_core_orth(A, B, tol)
    return ok, resid, (A, B)
