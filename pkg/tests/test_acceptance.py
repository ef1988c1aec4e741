"""Acceptance suite: one PASS/FAIL line per criterion, each at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v``; the verdict lines are written
straight to the terminal (bypassing capture) so they also land in logs.
"""

import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from ginv import campaigns, coreinv, geninv, ortho, psum
from ginv.cli import main
from ginv.errors import NotApplicable
from ginv.generators import GenSpec, generate, random_block
from ginv.numkit import ct, fro, range_contains, zeros

from test_cli import compare

HERE = Path(__file__).parent
DATA, GOLDEN = HERE / "data", HERE / "golden"


@pytest.fixture
def verdict(capsys):
    def emit(criterion, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'}  criterion {criterion}: {detail}")
        return ok

    return emit


def rel(X, Y):
    return fro(X - Y) / (1.0 + fro(Y))


def rng_for(tag, i):
    return np.random.default_rng([0xACCE, sum(map(ord, tag)), i])


def test_criterion_1_penrose_oracle(verdict):
    worst = 0.0
    for i in range(500):
        rng = rng_for("penrose", i)
        m, n = (int(x) for x in rng.integers(1, 9, size=2))
        r = int(rng.integers(0, min(m, n) + 1))
        A = generate(GenSpec("rank_r", (m, n), {"r": r}, int(rng.integers(2**63))))
        X = geninv.pinv(A)
        worst = max(worst, *geninv.penrose_residuals(A, X), rel(geninv.pinv(X), A))
    ok = worst <= 1e-9
    verdict(1, ok, f"500 matrices, worst Penrose / double-pinv residual {worst:.2e} (tol 1e-9)")
    assert ok


def test_criterion_2_block_formulas(verdict):
    worst = 0.0
    for i in range(100):
        rng = rng_for("blocks", i)
        p, q, c, z = (int(x) for x in rng.integers(1, 5, size=4))
        P = random_block(rng, p, c, int(rng.integers(0, min(p, c) + 1)))
        Q = random_block(rng, q, c, int(rng.integers(0, min(q, c) + 1)))
        M = np.hstack([zeros(p + q, z), np.vstack([P, Q])])
        worst = max(worst, rel(geninv.pinv_stacked_columns(P, Q, zero_cols=z), geninv.pinv(M)))
        N = np.vstack([zeros(z, p + q), np.hstack([ct(P), ct(Q)])])
        worst = max(worst, rel(geninv.pinv_stacked_rows(ct(P), ct(Q), zero_rows=z), geninv.pinv(N)))
        form = campaigns.triangular_instance(rng)
        T = form.assemble()
        worst = max(worst, rel(geninv.pinv_upper_triangular(form), geninv.pinv(T)))
        PA, QA = geninv.triangular_projectors(form)
        Tp = geninv.pinv(T)
        worst = max(worst, rel(PA, T @ Tp), rel(QA, Tp @ T))
    ok = worst <= 1e-9
    verdict(2, ok, f"100 instances each of stacked-column, stacked-row, triangular and projector formulas, worst {worst:.2e} (tol 1e-9)")
    assert ok


def test_criterion_3_core_inverse(verdict):
    worst_def, worst_ep, worst_xu, flagged, applicable = 0.0, 0.0, 0.0, 0, 0
    in_range = True
    for i in range(200):
        rng = rng_for("core", i)
        n = int(rng.integers(1, 9))
        A = generate(GenSpec("group_matrix", (n, n), {"r": int(rng.integers(0, n + 1))}, int(rng.integers(2**63))))
        X = coreinv.core_inverse(A)
        worst_def = max(worst_def, rel(A @ X, geninv.projectors(A).P))
        in_range &= range_contains(A, X)
        B, _, _ = campaigns.nilpotent_instance(rng)
        worst_ep = max(worst_ep, coreinv.core_ep_residual(B, coreinv.core_ep_decompose(B)))
        lower = bool(i % 2)
        fn = coreinv.core_inverse_lower_block if lower else coreinv.core_inverse_upper_block
        P, Q, R = campaigns.core_block_instance(rng, lower, applicable=True)
        worst_xu = max(worst_xu, rel(fn(P, Q, R), coreinv.core_inverse(campaigns.assemble_triangular(P, Q, R, lower))))
        applicable += 1
        P, Q, R = campaigns.core_block_instance(rng, lower, applicable=False)
        try:
            fn(P, Q, R)
        except NotApplicable:
            flagged += 1
    ok = worst_def <= 1e-9 and in_range and worst_ep <= 1e-10 and worst_xu <= 1e-9 and flagged == 200
    verdict(
        3,
        ok,
        f"defining pair {worst_def:.2e} (1e-9), range inclusion {in_range}, core-EP {worst_ep:.2e} (1e-10), "
        f"block lemmas {worst_xu:.2e} on {applicable} applicable, NotApplicable on {flagged}/200 failing",
    )
    assert ok


def test_criterion_4_first_worked_pair(verdict):
    A, B = campaigns.WORKED_PAIR_1
    got = (ortho.left_star_orth(A, B), ortho.left_core_orth(A, B), ortho.right_core_orth(A, B), coreinv.index(B))
    ok = got == (True, True, False, 2)
    verdict(4, ok, f"left_star={got[0]}, left_core={got[1]}, right_core={got[2]}, index(B)={got[3]}")
    assert ok


def test_criterion_5_second_worked_pair(verdict):
    A, B = campaigns.WORKED_PAIR_2
    Ac, Bc, Cc = coreinv.core_inverse(A), coreinv.core_inverse(B), coreinv.core_inverse(A + B)
    add = fro(Cc - Ac - Bc)
    norms = (fro(Ac @ B), fro(B @ Ac), fro(A @ Bc))
    ok = add <= 1e-12 and min(norms) >= 0.9 and not ortho.strongly_core_orth(A, B)
    verdict(5, ok, f"core additivity residual {add:.1e} (1e-12), products {', '.join(f'{x:.3f}' for x in norms)} (>= 0.9)")
    assert ok


# Statements checked by criterion 6, each as literally posed. Corrected forms of
# the statements that fail are run alongside for information only.
CRITERION_6 = [
    "star_orth_duality",
    "range_perp",
    "right_star_canonical",
    "left_star_canonical",
    "lemma_p2_equiv",
    "right_block_psum",
    "left_block_psum",
    "right_orth_psum",
    "left_orth_psum",
    "thm_additivity_right",
    "thm_additivity_left",
    "star_orth_additive",
    "neg_star_additivity",
    "disjoint_range_right",
    "disjoint_range_left",
    "disjoint_range_gram",
    "core_orth_equivalences",
    "core_orth_right_literal",
    "left_core_canonical",
    "right_core_canonical_literal",
    "core_additivity",
    "n1_range_inclusion_literal",
    "n1_equivalences",
]
CORRECTED = ["right_core_canonical", "n1_range_inclusion"]


def test_criterion_6_campaigns(verdict, capsys):
    failed = []
    with capsys.disabled():
        print()
        for tid in CRITERION_6 + CORRECTED:
            res = campaigns.run_campaign(tid, 200, seed=0)
            tag = "  (corrected form, informational)" if tid in CORRECTED else ""
            print(f"      {'ok' if res.violations == 0 else 'VIOLATED':8s} {tid:30s} {res.violations:3d}/200{tag}")
            if res.violations and tid not in CORRECTED:
                failed.append(tid)
    ok = not failed
    detail = f"{len(CRITERION_6)} campaigns x 200 trials"
    if failed:
        detail += f"; statements with counterexamples: {', '.join(failed)}"
    verdict(6, ok, detail)
    assert ok, failed


def test_criterion_7_parallel_sum_identities(verdict):
    worst = 0.0
    for i in range(100):
        rng = rng_for("psum", i)
        m, n = (int(x) for x in rng.integers(1, 9, size=2))
        A = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
        z = psum.is_parallel_summable(A, zeros(m, n))
        h = psum.is_parallel_summable(A, A)
        assert z.summable and h.summable
        worst = max(worst, fro(z.sum) / (1 + fro(A)), rel(h.sum, A / 2))
    ok = worst <= 1e-9
    verdict(7, ok, f"A:0 = 0 and A:A = A/2 on 100 matrices, worst {worst:.2e} (tol 1e-9)")
    assert ok


def _run(*args):
    return subprocess.run([sys.executable, "-m", "ginv.cli", *args], capture_output=True)


def test_criterion_8_cli(verdict, tmp_path):
    goldens_ok = True
    for k in (1, 2):
        out = tmp_path / f"{k}.json"
        main(["analyze", str(DATA / f"worked_pair_{k}_A.mtx"), str(DATA / f"worked_pair_{k}_B.mtx"), "--json", str(out)])
        try:
            compare(json.loads(out.read_text()), json.loads((GOLDEN / f"worked_pair_{k}.json").read_text()))
        except AssertionError:
            goldens_ok = False
    v1 = _run("verify", "--all", "--trials", "50", "--seed", "1", "--json", str(tmp_path / "v1.json"))
    _run("verify", "--all", "--trials", "50", "--seed", "1", "--json", str(tmp_path / "v2.json"))
    a1 = _run("analyze", str(DATA / "worked_pair_1_A.mtx"), str(DATA / "worked_pair_1_B.mtx"))
    a2 = _run("analyze", str(DATA / "worked_pair_1_A.mtx"), str(DATA / "worked_pair_1_B.mtx"))
    identical = (tmp_path / "v1.json").read_bytes() == (tmp_path / "v2.json").read_bytes() and a1.stdout == a2.stdout
    violated = [r["theorem_id"] for r in json.loads((tmp_path / "v1.json").read_text())["results"] if r["violations"]]
    ok = goldens_ok and v1.returncode == 0 and identical
    verdict(
        8,
        ok,
        f"goldens match {goldens_ok}; verify --all exit {v1.returncode} (want 0"
        + (f"; violated: {', '.join(violated)}" if violated else "")
        + f"); reruns byte-identical {identical}",
    )
    assert ok
