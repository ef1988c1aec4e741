import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ginv.coreinv import (
    core_ep_decompose,
    core_ep_residual,
    core_inverse,
    core_inverse_lower_block,
    core_inverse_upper_block,
    index,
    is_group_matrix,
    try_core_inverse,
)
from ginv.errors import DimensionMismatch, NotApplicable, NotGroupMatrix
from ginv.geninv import projectors
from ginv.numkit import eye, range_contains, zeros

from conftest import gen

NIL = np.array([[0, 0], [1, 0]], dtype=complex)
A31 = np.array([[1, 1], [0, 0]], dtype=complex)


def test_index_examples():
    assert index(eye(3)) == 0
    assert index(NIL) == 2
    assert index(A31) == 1
    assert index(zeros(3, 3)) == 1


def test_index_needs_square():
    with pytest.raises(DimensionMismatch):
        index(zeros(2, 3))


def test_core_ep_examples():
    f = core_ep_decompose(NIL)
    assert f.t == 0 and f.k == 2 and np.allclose(f.U @ f.N @ f.U.conj().T, NIL)
    f = core_ep_decompose(A31)
    assert f.t == 1 and np.allclose(f.U, np.eye(2))
    assert np.allclose(f.T, [[1]]) and np.allclose(f.S, [[1]]) and np.allclose(f.N, [[0]])
    B = np.array([[2.0, 1.0], [0.0, 3.0]])
    f = core_ep_decompose(B)
    assert f.t == 2 and f.N.shape == (0, 0) and core_ep_residual(B, f) <= 1e-12


@given(st.integers(0, 2**32))
def test_core_ep_split_properties(seed):
    from ginv.campaigns import nilpotent_instance

    A, t, q = nilpotent_instance(np.random.default_rng(seed))
    f = core_ep_decompose(A)
    assert core_ep_residual(A, f) <= 1e-10
    assert f.t == t and f.k == q
    A1, A2 = f.split()
    assert np.allclose(A1.conj().T @ A2, 0, atol=1e-9)
    assert np.allclose(A2 @ A1, 0, atol=1e-9)
    assert is_group_matrix(A1)


def test_group_matrix_examples():
    assert is_group_matrix(A31)
    assert not is_group_matrix(NIL)
    assert is_group_matrix(zeros(3, 3))


def test_core_inverse_examples():
    assert np.allclose(core_inverse(A31), [[1, 0], [0, 0]])
    D = np.diag([-1.0, 0.0])
    assert np.allclose(core_inverse(D), D)
    M = np.array([[2.0, 1.0], [1.0, 1.0]])
    assert np.allclose(core_inverse(M), np.linalg.inv(M))
    with pytest.raises(NotGroupMatrix) as info:
        core_inverse(NIL)
    assert info.value.index == 2
    assert try_core_inverse(NIL) is None


@given(st.integers(1, 8), st.integers(0, 2**32), st.data())
def test_core_inverse_defining_pair(n, seed, data):
    A = gen("group_matrix", (n, n), seed, r=data.draw(st.integers(0, n)))
    X = core_inverse(A)
    assert np.linalg.norm(A @ X - projectors(A).P) <= 1e-9 * (1 + np.linalg.norm(A @ X))
    assert range_contains(A, X)
    # uniqueness: X is also the solution of the normal-equation oracle A X = P_A restricted to R(A)
    assert np.allclose(X @ A @ X, X, atol=1e-8)


def test_lower_block_examples():
    P, R = np.array([[2.0]]), np.array([[4.0]])
    assert np.allclose(core_inverse_lower_block(P, zeros(1, 1), R), np.diag([0.5, 0.25]))
    one = np.array([[1.0]])
    assert np.allclose(core_inverse_lower_block(one, one, one), [[1, 0], [-1, 1]])
    with pytest.raises(NotApplicable) as info:
        core_inverse_lower_block(one, one, np.array([[0.0]]))
    assert "(I - R R^core) Q" in info.value.clause


def test_upper_block_examples():
    one = np.array([[1.0]])
    P = np.diag([1.0, 0.0])
    X = core_inverse_upper_block(P, zeros(2, 1), one)
    assert np.allclose(X, np.diag([1.0, 0.0, 1.0]))
    assert np.allclose(core_inverse_upper_block(one, one, one), [[1, -1], [0, 1]])
    with pytest.raises(NotApplicable):
        core_inverse_upper_block(np.array([[0.0]]), one, one)
    with pytest.raises(NotApplicable, match="P has no core inverse"):
        core_inverse_upper_block(NIL, zeros(2, 1), one)


@given(st.integers(0, 2**32), st.booleans())
def test_block_formulas_agree_with_direct(seed, lower):
    from ginv.campaigns import assemble_triangular, core_block_instance

    rng = np.random.default_rng(seed)
    P, Q, R = core_block_instance(rng, lower, applicable=True)
    fn = core_inverse_lower_block if lower else core_inverse_upper_block
    M = assemble_triangular(P, Q, R, lower)
    assert np.allclose(fn(P, Q, R), core_inverse(M), atol=1e-9)
