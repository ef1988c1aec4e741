import numpy as np
import pytest

from ginv import campaigns
from ginv.campaigns import REGISTRY, CampaignResult, run_campaign, theorem_ids, trial_rng
from ginv.errors import UnknownTheorem

REFUTED = {"n1_range_inclusion_literal", "right_core_canonical_literal", "core_orth_right_literal"}


def test_registry_flags_the_refuted_statements():
    assert {t for t in theorem_ids() if not REGISTRY[t].expected_to_hold} == REFUTED
    assert theorem_ids() == sorted(theorem_ids())


@pytest.mark.parametrize("tid", ["thm_additivity_right", "lemma_p2_equiv"])
def test_named_campaigns_hold(tid):
    res = run_campaign(tid, 200, seed=42)
    assert res.violations == 0 and res.counterexample is None


def test_worked_pair_regression():
    for seed in (0, 17):
        assert run_campaign("example_3_2_regression", 1, seed).violations == 0
    assert run_campaign("worked_pair_1_regression", 1).violations == 0
    A, B = campaigns.WORKED_PAIR_2
    assert np.array_equal(A, np.eye(2)) and np.array_equal(B, np.diag([-1, 0]))


@pytest.mark.parametrize("tid", sorted(set(REGISTRY) - REFUTED))
def test_every_campaign_holds_at_small_size(tid):
    assert run_campaign(tid, 30, seed=3).violations == 0


@pytest.mark.parametrize("tid", sorted(REFUTED))
def test_refuted_statements_have_counterexamples(tid):
    res = run_campaign(tid, 200, seed=0)
    assert res.violations > 0
    A, B = res.counterexample
    assert A.shape == B.shape


def test_unknown_and_invalid():
    with pytest.raises(UnknownTheorem):
        run_campaign("no_such_theorem", 1)
    with pytest.raises(ValueError):
        run_campaign("penrose", 0)


def test_parallel_matches_sequential():
    for tid in ("n1_range_inclusion_literal", "penrose"):
        a = run_campaign(tid, 60, seed=5)
        b = run_campaign(tid, 60, seed=5, workers=4)
        assert (a.violations, a.worst_residual) == (b.violations, b.worst_residual)
        if a.counterexample is not None:
            assert all(np.array_equal(x, y) for x, y in zip(a.counterexample, b.counterexample))


def test_trial_seeds_are_independent_of_order():
    x = trial_rng("penrose", 1, 7).standard_normal(3)
    assert np.array_equal(x, trial_rng("penrose", 1, 7).standard_normal(3))
    assert not np.array_equal(x, trial_rng("penrose", 1, 8).standard_normal(3))
    assert not np.array_equal(x, trial_rng("range_perp", 1, 7).standard_normal(3))


def test_result_invariants():
    with pytest.raises(ValueError):
        CampaignResult("x", 3, 4, 0.0)
    with pytest.raises(ValueError):
        CampaignResult("x", 3, 1, 0.0, None)
