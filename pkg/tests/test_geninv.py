import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ginv.errors import DimensionMismatch, InvalidMatrix
from ginv.geninv import (
    penrose_residuals,
    pinv,
    pinv_stacked_columns,
    pinv_stacked_rows,
    pinv_upper_triangular,
    projectors,
    sample_g_inverse,
    triangular_form,
    triangular_projectors,
)
from ginv.numkit import eye, zeros

from conftest import gen, rand_complex


def test_pinv_examples():
    assert np.allclose(pinv(eye(3)), np.eye(3))
    X = pinv(zeros(2, 3))
    assert X.shape == (3, 2) and not np.any(X)
    assert np.allclose(pinv(np.array([[1, 1], [0, 0]])), [[0.5, 0], [0.5, 0]])


@given(st.integers(1, 8), st.integers(1, 8), st.integers(0, 2**32), st.data())
def test_pinv_penrose_and_involution(m, n, seed, data):
    A = gen("rank_r", (m, n), seed, r=data.draw(st.integers(0, min(m, n))))
    X = pinv(A)
    assert max(penrose_residuals(A, X)) <= 1e-9
    assert np.linalg.norm(pinv(X) - A) <= 1e-9 * (1 + np.linalg.norm(A))


@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 2**32))
def test_pinv_matches_numpy(m, n, seed):
    # independent oracle: numpy's own pinv
    A = gen("rank_r", (m, n), seed, r=min(m, n) // 2 + 1 if min(m, n) > 1 else 1)
    assert np.allclose(pinv(A), np.linalg.pinv(A, rcond=1e-10), atol=1e-9)


def test_projector_examples():
    pr = projectors(eye(2))
    assert np.allclose(pr.P, np.eye(2)) and np.allclose(pr.Q, np.eye(2))
    pr = projectors(np.array([[1, 1], [0, 0]]))
    assert np.allclose(pr.P, [[1, 0], [0, 0]])
    assert np.allclose(pr.Q, [[0.5, 0.5], [0.5, 0.5]])
    pr = projectors(zeros(2, 2))
    assert not np.any(pr.P) and not np.any(pr.Q)
    assert np.allclose(pr.Pbar, np.eye(2))


def test_projectors_are_hermitian_idempotent(rng):
    A = rand_complex(rng, 4, 2) @ rand_complex(rng, 2, 5)
    pr = projectors(A)
    for M in (pr.P, pr.Q, pr.Pbar, pr.Qbar):
        assert np.array_equal(M, M.conj().T)
        assert np.allclose(M @ M, M)


def test_stacked_columns_examples(rng):
    assert not np.any(pinv_stacked_columns(zeros(1, 1), zeros(1, 1), zero_cols=1))
    X = pinv_stacked_columns(np.array([[1.0]]), np.array([[1.0]]), zero_cols=1)
    assert np.allclose(X, [[0, 0], [0.5, 0.5]])
    P, Q = rand_complex(rng, 2, 2), rand_complex(rng, 2, 2)
    M = np.hstack([zeros(4, 2), np.vstack([P, Q])])
    assert np.allclose(pinv_stacked_columns(P, Q, zero_cols=2), pinv(M))
    with pytest.raises(DimensionMismatch):
        pinv_stacked_columns(zeros(1, 2), zeros(1, 3))


def test_stacked_rows_examples(rng):
    assert not np.any(pinv_stacked_rows(zeros(1, 1), zeros(1, 1), zero_rows=1))
    X = pinv_stacked_rows(np.array([[1.0]]), np.array([[1.0]]), zero_rows=1)
    assert np.allclose(X, [[0, 0.5], [0, 0.5]])
    P, Q = rand_complex(rng, 3, 2), rand_complex(rng, 3, 1)
    M = np.vstack([zeros(2, 3), np.hstack([P, Q])])
    assert np.allclose(pinv_stacked_rows(P, Q, zero_rows=2), pinv(M))


def test_triangular_examples():
    form = triangular_form([[1.0]], [[1.0]], [[1.0]])
    assert np.allclose(pinv_upper_triangular(form), [[1, -1], [0, 1]])
    form = triangular_form([[2.0]], [[1.0]], [[0.0]])
    assert np.allclose(form.Omega, [[1]]) and np.allclose(form.Delta, [[0.2]])
    assert np.allclose(pinv_upper_triangular(form), pinv(np.array([[2, 1], [0, 0]])))


def test_triangular_diagonal_case_reduces_to_svd_shape():
    form = triangular_form(np.diag([3.0, 2.0]), zeros(2, 1), zeros(1, 1))
    assert np.allclose(pinv_upper_triangular(form), np.diag([1 / 3, 1 / 2, 0]))


def test_triangular_rejects_singular_a1():
    with pytest.raises(InvalidMatrix):
        triangular_form([[0.0]], [[1.0]], [[1.0]])


@given(st.integers(0, 2**32))
def test_triangular_formulas_match_svd_route(seed):
    from ginv.campaigns import triangular_instance

    form = triangular_instance(np.random.default_rng(seed))
    A = form.assemble()
    assert np.allclose(pinv_upper_triangular(form), pinv(A), atol=1e-9)
    P, Q = triangular_projectors(form)
    pr = projectors(A)
    assert np.allclose(P, pr.P, atol=1e-9) and np.allclose(Q, pr.Q, atol=1e-9)


def test_g_inverse_examples():
    A = np.array([[2.0, 1.0], [1.0, 1.0]])
    for seed in (0, 1, 2):
        assert np.allclose(sample_g_inverse(A, seed), np.linalg.inv(A))
    Z = zeros(2, 3)
    G = sample_g_inverse(Z, 5)
    W = np.random.default_rng(5)
    W = W.random((3, 2)) + 1j * W.random((3, 2))
    assert np.allclose(G, W)
    E = np.array([[1.0, 0.0], [0.0, 0.0]])
    G1, G2 = sample_g_inverse(E, 1), sample_g_inverse(E, 2)
    assert not np.allclose(G1, G2)
    for G in (G1, G2):
        assert np.allclose(E @ G @ E, E)


@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 2**32))
def test_g_inverse_is_inner_and_deterministic(m, n, seed):
    A = gen("rank_r", (m, n), seed, r=1)
    G = sample_g_inverse(A, seed)
    assert np.linalg.norm(A @ G @ A - A) <= 1e-9 * (1 + np.linalg.norm(A) ** 2 * np.linalg.norm(G))
    assert np.array_equal(G, sample_g_inverse(A, seed))
