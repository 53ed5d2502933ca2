"""Chain-space linear algebra: embeddings, states, comparison utilities."""

import numpy as np
import pytest

from gl3bethe import hilbert as H
from gl3bethe.monodromy import permutation_matrix


def test_vacuum_is_first_basis_vector():
    for length in (1, 2, 3):
        v = H.vacuum(length)
        assert v[0] == 1.0
        assert np.linalg.norm(v) == 1.0
        assert np.count_nonzero(v) == 1


def test_basis_state_site_one_slowest():
    # |d1 d2> -> index 3*d1 + d2
    v = H.basis_state((1, 2))
    assert v[3 * 1 + 2] == 1.0
    assert np.count_nonzero(v) == 1


def test_embed_identity():
    assert np.array_equal(H.embed_two_site(np.eye(9), 1, 2, 3), np.eye(27))
    assert np.array_equal(H.embed_one_site(np.eye(3), 2, 2), np.eye(9))


def test_embed_permutation_swaps_factors():
    p = permutation_matrix()
    op = H.embed_two_site(p, 1, 2, 2)
    e12 = np.kron(H.basis_state((1,)), H.basis_state((2,)))
    e21 = np.kron(H.basis_state((2,)), H.basis_state((1,)))
    assert np.array_equal(op @ e12, e21)


def test_embed_two_site_nonadjacent_and_order():
    rng = np.random.default_rng(5)
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    op9 = np.kron(a, b)
    # first leg at site 3, second leg at site 1
    got = H.embed_two_site(op9, 3, 1, 3)
    want = np.kron(b, np.kron(np.eye(3), a))
    assert np.allclose(got, want, atol=1e-14)


def test_embed_respects_composition():
    rng = np.random.default_rng(6)
    a = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
    b = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
    lhs = H.embed_two_site(a @ b, 1, 3, 3)
    rhs = H.embed_two_site(a, 1, 3, 3) @ H.embed_two_site(b, 1, 3, 3)
    assert np.allclose(lhs, rhs, atol=1e-12)


def test_embed_index_errors():
    with pytest.raises(IndexError):
        H.embed_two_site(np.eye(9), 1, 1, 3)
    with pytest.raises(IndexError):
        H.embed_two_site(np.eye(9), 0, 2, 3)
    with pytest.raises(IndexError):
        H.embed_one_site(np.eye(3), 4, 3)


def test_commutator_of_operator_with_itself_vanishes():
    rng = np.random.default_rng(7)
    a = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
    assert np.all(H.commutator(a, a) == 0.0)


def test_commutator_of_random_diagonals_exactly_zero():
    rng = np.random.default_rng(8)
    # real-valued diagonals commute exactly entry by entry; complex ones may
    # differ by an FMA rounding inside the matmul kernel, hence the 1-ulp bound
    a = np.diag(rng.normal(size=27)).astype(complex)
    b = np.diag(rng.normal(size=27)).astype(complex)
    assert np.all(H.commutator(a, b) == 0.0)
    ac = np.diag(rng.normal(size=27) + 1j * rng.normal(size=27))
    bc = np.diag(rng.normal(size=27) + 1j * rng.normal(size=27))
    scale = np.linalg.norm(ac) * np.linalg.norm(bc)
    assert np.linalg.norm(H.commutator(ac, bc)) < 1e-15 * scale


def test_proportionality_exact_multiple():
    rng = np.random.default_rng(9)
    y = rng.normal(size=8) + 1j * rng.normal(size=8)
    ratio, res = H.proportionality(2.0 * y, y)
    assert abs(ratio - 2.0) < 1e-14
    assert res < 1e-14


def test_proportionality_orthogonal():
    x = np.array([1.0, 0.0], dtype=complex)
    y = np.array([0.0, 1.0], dtype=complex)
    ratio, res = H.proportionality(x, y)
    assert ratio == 0.0
    assert abs(res - 1.0) < 1e-14


def test_proportionality_detects_small_orthogonal_component():
    y = np.zeros(16, dtype=complex)
    y[0] = 1.0
    z = np.zeros(16, dtype=complex)
    z[1] = 1.0
    x = y + 1e-12 * z
    _, res = H.proportionality(x, y)
    assert abs(res - 1e-12) < 1e-13


def test_proportionality_zero_reference_rejected():
    with pytest.raises(ValueError):
        H.proportionality(np.ones(3), np.zeros(3))


def test_weight_operators_grade_basis_states():
    n1, n2 = H.weight_operators(2)
    v = H.basis_state((2, 1))  # local weights (1,1) and (1,0)
    assert np.allclose(n1 @ v, 2.0 * v)
    assert np.allclose(n2 @ v, 1.0 * v)
