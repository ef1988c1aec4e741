import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ginv.addorder import (
    core_additivity_theorem,
    core_leq,
    dagger_additivity,
    disjoint_range_pinv_sum_left,
    disjoint_range_pinv_sum_right,
    left_additivity_criterion,
    n1_alternative,
    n1_conditions,
    neg_star_conditions,
    right_additivity_criterion,
    star_characterization_check,
    star_leq,
    star_orth_implies_additive,
    theorem_sb7_check,
    n1_range_inclusions,
    theorem_sb11_equivalences,
)
from ginv.errors import PredicateFailed
from ginv.geninv import pinv
from ginv.numkit import eye, zeros
from ginv.ortho import factor_right_core_pair, right_core_orth, right_star_orth

from conftest import EX31, EX32, gen

E11 = np.diag([1.0, 0.0]).astype(complex)
E22 = np.diag([0.0, 1.0]).astype(complex)
COL2 = np.array([[0, 1], [0, 1]], dtype=complex)


def test_star_leq_examples():
    B = np.diag([1.0, 2.0])
    assert star_leq(zeros(2, 2), B)
    assert star_leq(B, B)
    assert star_leq(E11, B)
    assert not star_leq(eye(2), 2 * eye(2))


def test_star_characterization_examples():
    assert star_characterization_check(zeros(2, 2), np.diag([1.0, 2.0])) == (True, True)
    assert star_characterization_check(E11, np.diag([1.0, 2.0])) == (True, True)
    assert star_characterization_check(eye(2), 2 * eye(2)) != (True, True)


@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 2**32))
def test_star_leq_iff_characterization(m, n, seed):
    r = min(m, n) // 2
    A, D = gen("star_orth_pair", (m, n), seed, r=r, r4=min(m, n) - r)
    B = A + D
    assert star_leq(A, B) == all(star_characterization_check(A, B))
    assert star_leq(A, B)


def test_dagger_additivity_examples():
    rep = dagger_additivity(E11, np.diag([0.0, 2.0]))
    assert rep.dagger_additive and rep.rank_additive
    rep = dagger_additivity(E11, COL2)
    assert not rep.dagger_additive
    assert np.allclose(pinv(E11 + COL2), [[1, -1], [0, 1]])
    assert not dagger_additivity(eye(2), eye(2)).dagger_additive
    rep = dagger_additivity(*EX32)
    assert rep.dagger_additive and rep.core_additive


def test_additivity_criteria_examples():
    assert not right_additivity_criterion(E11, COL2)
    assert right_additivity_criterion(E11, zeros(2, 2))
    assert left_additivity_criterion(E11, zeros(2, 2))
    assert not left_additivity_criterion(E11.T, COL2.T)
    assert not left_additivity_criterion(*EX31)
    assert not dagger_additivity(*EX31).dagger_additive
    with pytest.raises(PredicateFailed):
        right_additivity_criterion(*EX31)


@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 2**32), st.integers(0, 2), st.sampled_from(["right", "left"]))
def test_additivity_criterion_matches_oracle(m, n, seed, mode, side):
    r = min(m, n) // 2
    key = "b2" if side == "right" else "b3"
    A, B = gen(f"{side}_star_pair", (m, n), seed, r=r, r4=min(m, n) - r, **{key: mode})
    crit = right_additivity_criterion if side == "right" else left_additivity_criterion
    assert crit(A, B) == dagger_additivity(A, B).dagger_additive


@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 2**32))
def test_star_orth_pairs_are_additive(m, n, seed):
    A, B = gen("star_orth_pair", (m, n), seed, r=min(m, n) // 2, r4=1 if min(m, n) > 1 else 0)
    assert star_orth_implies_additive(A, B)


def test_star_orth_implies_additive_examples():
    assert star_orth_implies_additive(E11, np.diag([0.0, 2.0]))
    assert star_orth_implies_additive(E11, zeros(2, 2))
    with pytest.raises(PredicateFailed):
        star_orth_implies_additive(*EX31)


def test_neg_star_examples():
    A = np.array([[1.0, 2.0], [0.0, 3.0]])
    assert neg_star_conditions(A, zeros(2, 2))
    assert neg_star_conditions(A, -A)
    assert neg_star_conditions(*EX32)
    assert np.allclose(pinv(EX32[0] + EX32[1]), pinv(EX32[0]) + pinv(EX32[1]))


def test_disjoint_range_examples():
    assert np.allclose(disjoint_range_pinv_sum_right(E11, E22), np.eye(2))
    assert np.allclose(disjoint_range_pinv_sum_right(E11, COL2), [[1, -1], [0, 1]])
    A = np.array([[1.0, 1.0], [0.0, 0.0]])
    assert np.allclose(disjoint_range_pinv_sum_right(A, zeros(2, 2)), pinv(A))
    assert np.allclose(disjoint_range_pinv_sum_left(E11, E22), np.eye(2))
    assert np.allclose(disjoint_range_pinv_sum_left(E11.T, COL2.T), pinv(E11 + COL2).T)
    with pytest.raises(PredicateFailed):
        disjoint_range_pinv_sum_right(eye(2), eye(2))


@given(st.integers(1, 7), st.integers(1, 7), st.integers(0, 2**32), st.integers(0, 1), st.integers(0, 1))
def test_disjoint_range_formula(m, n, seed, side, b):
    r = min(m, n) // 2
    A, B = gen("disjoint_range_pair", (m, n), seed, r=r, r4=min(m, n) - r, side=side, b=b)
    fn = disjoint_range_pinv_sum_left if side else disjoint_range_pinv_sum_right
    X, ref = fn(A, B), pinv(A + B)
    assert np.linalg.norm(X - ref) <= 1e-9 * (1 + np.linalg.norm(ref))


def test_core_leq_examples():
    B = np.diag([1.0, 3.0])
    assert core_leq(zeros(2, 2), B)
    assert core_leq(B, B)
    assert core_leq(E11, B)


def test_core_additivity_theorem_examples():
    assert core_additivity_theorem(E11, E22) == (True, True, True)
    A = np.array([[1.0, 1.0], [0.0, 0.0]])
    additive, _, b_side = core_additivity_theorem(A, E22)
    assert not additive and not b_side


@given(st.integers(2, 7), st.integers(0, 2**32))
def test_core_additivity_iff_strong(n, seed):
    A, B = gen("left_core_pair", (n, n), seed, r=n // 2, r4=(n - n // 2) // 2, s=1)
    additive, rc_ab, rc_ba = core_additivity_theorem(A, B)
    assert additive == (rc_ab and rc_ba)


def test_n1_examples():
    A, B = np.diag([1.0, 0.0]), np.diag([-1.0, 5.0])
    assert n1_conditions(A, B) and n1_alternative(A, B)
    assert not n1_conditions(eye(2), eye(2))


@given(st.integers(1, 7), st.integers(0, 2**32), st.integers(0, 1))
def test_n1_generated_pairs(n, seed, commute):
    A, B = gen("n1_pair", (n, n), seed, r=n // 2, r4=(n - n // 2) // 2, commute=commute)
    assert n1_conditions(A, B) and n1_alternative(A, B)
    assert n1_range_inclusions(A, B)
    eq = theorem_sb11_equivalences(A, B)
    assert len(set(eq)) == 1


# Stated results that do not hold; each test pins a concrete counterexample.


def test_range_inclusion_under_n1_is_reversed():
    A, B = np.diag([1.0, 0.0]), np.diag([-1.0, 5.0])
    assert not theorem_sb7_check(A, B)  # R(B) is not inside R(A)
    assert n1_range_inclusions(A, B)  # but R(A) is inside R(B)


def test_right_core_form_keeps_an_off_diagonal_block():
    assert right_core_orth(E11, COL2)
    pair = factor_right_core_pair(E11, COL2)
    assert not pair.stated_form  # B2 cannot be removed
    assert np.allclose(np.abs(pair.B2), [[1]]) and np.allclose(np.abs(pair.B4), [[1]])


def test_right_core_equivalence_needs_conjugated_b():
    A, B = E11, COL2
    assert right_core_orth(A, B)
    assert right_star_orth(A.conj().T, B)
    assert not right_core_orth(B, A.conj().T)  # literal reading
    assert right_core_orth(B.conj().T, A.conj().T)  # corrected reading
