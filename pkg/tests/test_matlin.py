"""Kernel factorizations against reconstruction identities and numpy oracles.

The implementation route (Householder QR, cyclic Jacobi, Francis QR) never
calls numpy.linalg decompositions, so numpy.linalg here is a genuinely
independent check.
"""

import numpy as np
import pytest
from conftest import eig_multiset_close

from graphsplit import matlin
from graphsplit._rng import SplitMix64


def test_qr_identity():
    q, r, perm = matlin.qr(np.eye(3))
    assert np.allclose(q, np.eye(3))
    assert np.allclose(r, np.eye(3))
    assert list(perm) == [0, 1, 2]


def test_qr_permutation_input():
    a = np.array([[0.0, 1.0], [1.0, 0.0]])
    q, r, perm = matlin.qr(a)
    assert abs(abs(np.linalg.det(q)) - 1.0) <= 1e-12
    assert np.allclose(np.tril(r, -1), 0.0)
    assert np.linalg.norm(q @ r - a[:, perm]) <= 1e-12


def test_qr_seeded_reconstruction():
    a = SplitMix64(7).normal_matrix(10, 4)
    q, r, perm = matlin.qr(a, pivoting=True)
    assert np.linalg.norm(q @ r - a[:, perm]) / np.linalg.norm(a) <= 1e-12


@pytest.mark.parametrize("shape,seed", [((20, 20), 1), ((120, 60), 2), ((200, 200), 3)])
def test_qr_reconstruction_large(shape, seed):
    a = np.random.default_rng(seed).standard_normal(shape)
    for pivoting in (False, True):
        q, r, perm = matlin.qr(a, pivoting=pivoting)
        assert np.linalg.norm(q @ r - a[:, perm]) <= 1e-11 * np.linalg.norm(a)
        assert np.linalg.norm(q.T @ q - np.eye(shape[0])) <= 1e-11


def test_qr_pivot_diagonal_monotone():
    a = np.random.default_rng(11).standard_normal((30, 30))
    _, r, _ = matlin.qr(a, pivoting=True)
    d = np.abs(np.diagonal(r))
    assert np.all(np.diff(d) <= 1e-12)


def test_null_space_rank_one():
    n = matlin.null_space(np.array([[1.0, 1.0], [1.0, 1.0]]), tol=1e-10)
    assert n.shape == (2, 1)
    direction = np.array([1.0, -1.0]) / np.sqrt(2.0)
    assert min(np.linalg.norm(n[:, 0] - direction), np.linalg.norm(n[:, 0] + direction)) <= 1e-12


def test_null_space_sequential_laplacian():
    lap = np.array([[1.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 1.0]])
    n = matlin.null_space(lap)
    assert n.shape == (3, 1)
    ones = np.ones(3) / np.sqrt(3.0)
    assert min(np.linalg.norm(n[:, 0] - ones), np.linalg.norm(n[:, 0] + ones)) <= 1e-10


def test_null_space_full_rank():
    a = np.array([[2.0, 0.0, 0.0], [0.0, 3.0, 0.0], [0.0, 0.0, 4.0]])
    assert matlin.null_space(a).shape == (3, 0)


def test_null_space_residual_property():
    rng = np.random.default_rng(4)
    for _ in range(20):
        m, n, k = rng.integers(2, 10, size=3)
        a = rng.standard_normal((m, k)) @ rng.standard_normal((k, n))
        ns = matlin.null_space(a)
        assert ns.shape[1] == n - np.linalg.matrix_rank(a, tol=1e-10)
        if ns.shape[1]:
            assert np.linalg.norm(ns.T @ ns - np.eye(ns.shape[1])) <= 1e-11
            assert np.linalg.norm(a @ ns) <= 1e-10 * max(np.linalg.norm(a), 1.0)


def test_null_space_requires_positive_tol():
    with pytest.raises(ValueError):
        matlin.null_space(np.eye(2), tol=0.0)


def test_symmetric_eigen_2x2():
    values, vectors = matlin.symmetric_eigen(np.array([[2.0, 1.0], [1.0, 2.0]]))
    assert np.allclose(values, [1.0, 3.0], atol=1e-12)
    assert np.allclose(vectors.T @ vectors, np.eye(2), atol=1e-12)


def test_symmetric_eigen_relaxed_projector_diagonal():
    values, _ = matlin.symmetric_eigen(np.diag([1.0, 1.0 - 0.3]))
    assert np.allclose(values, [0.7, 1.0], atol=1e-14)


def test_symmetric_eigen_zero_matrix():
    values, vectors = matlin.symmetric_eigen(np.zeros((4, 4)))
    assert np.allclose(values, 0.0)
    assert np.allclose(vectors, np.eye(4))


def test_symmetric_eigen_rejects_asymmetric():
    with pytest.raises(matlin.NotSymmetricError):
        matlin.symmetric_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_symmetric_eigen_matches_numpy():
    rng = np.random.default_rng(5)
    for _ in range(15):
        n = int(rng.integers(1, 25))
        a = rng.standard_normal((n, n))
        a = a + a.T
        values, vectors = matlin.symmetric_eigen(a)
        assert np.all(np.diff(values) >= -1e-12)
        assert np.linalg.norm(a @ vectors - vectors @ np.diag(values)) <= 1e-10 * np.linalg.norm(a)
        assert np.allclose(values, np.linalg.eigvalsh(a), atol=1e-9 * (1 + np.linalg.norm(a)))


def test_general_eigenvalues_rotation():
    eigs = matlin.general_eigenvalues(np.array([[0.0, -1.0], [1.0, 0.0]]))
    assert eig_multiset_close(eigs, [1j, -1j], 1e-12)


def test_general_eigenvalues_nilpotent():
    eigs = matlin.general_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))
    assert eig_multiset_close(eigs, [0.0, 0.0], 1e-12)


def test_general_eigenvalues_half_average():
    # 0.5 (I - swap) projects onto span{(1,-1)}: spectrum {0, 1}.
    a = 0.5 * (np.eye(2) - np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert eig_multiset_close(matlin.general_eigenvalues(a), [0.0, 1.0], 1e-12)


def test_general_eigenvalues_residuals():
    rng = np.random.default_rng(6)
    for _ in range(25):
        n = int(rng.integers(1, 16))
        a = rng.standard_normal((n, n))
        norm = np.linalg.norm(a)
        for lam in matlin.general_eigenvalues(a):
            sigma = np.linalg.svd(a - lam * np.eye(n), compute_uv=False)[-1]
            assert sigma <= 1e-7 * (1.0 + norm)


def test_general_eigenvalues_conjugation_closure():
    rng = np.random.default_rng(7)
    for _ in range(25):
        n = int(rng.integers(2, 12))
        a = rng.standard_normal((n, n))
        eigs = matlin.general_eigenvalues(a)
        assert eig_multiset_close([e.conjugate() for e in eigs], eigs, 1e-12 * (1 + np.linalg.norm(a)))


def test_general_eigenvalues_matches_numpy():
    rng = np.random.default_rng(8)
    for _ in range(25):
        n = int(rng.integers(1, 20))
        a = rng.standard_normal((n, n))
        got = matlin.general_eigenvalues(a)
        want = np.linalg.eigvals(a)
        assert eig_multiset_close(got, want, 1e-7 * (1 + np.linalg.norm(a)))


def test_general_agrees_with_symmetric():
    rng = np.random.default_rng(9)
    for _ in range(10):
        n = int(rng.integers(2, 14))
        a = rng.standard_normal((n, n))
        a = a + a.T
        general = matlin.general_eigenvalues(a)
        symmetric, _ = matlin.symmetric_eigen(a)
        assert eig_multiset_close(general, [complex(v) for v in symmetric], 1e-7 * (1 + np.linalg.norm(a)))


def test_general_eigenvalues_cyclic_permutations():
    # Roots of unity exercise the exceptional-shift path.
    for n in range(2, 10):
        p = np.eye(n)[list(range(1, n)) + [0]]
        got = matlin.general_eigenvalues(p)
        want = [np.exp(2j * np.pi * k / n) for k in range(n)]
        assert eig_multiset_close(got, want, 1e-9)


def test_operator_norm_identity():
    assert matlin.operator_norm(np.eye(4)) == pytest.approx(1.0, abs=1e-12)


def test_operator_norm_shift_block():
    assert matlin.operator_norm(np.array([[0.0, 1.0], [0.0, 0.0]])) == pytest.approx(1.0, abs=1e-12)


def test_operator_norm_scaled_identity():
    assert matlin.operator_norm(3.0 * np.eye(2)) == pytest.approx(3.0, abs=1e-12)


def test_operator_norm_matches_numpy():
    rng = np.random.default_rng(10)
    for _ in range(15):
        m, n = rng.integers(1, 20, size=2)
        a = rng.standard_normal((m, n))
        assert matlin.operator_norm(a) == pytest.approx(np.linalg.norm(a, 2), rel=1e-10)


def test_kron_lift_column_factor():
    z = np.array([[1.0], [-1.0]])
    expected = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]])
    assert np.array_equal(matlin.kron_lift(z, 2), expected)


def test_kron_lift_identity():
    assert np.array_equal(matlin.kron_lift(np.eye(2), 3), np.eye(6))


def test_kron_lift_transpose_commutes():
    z = np.array([[1.0, 0.0], [-1.0, 1.0], [0.0, -1.0]])
    lifted = matlin.kron_lift(z, 2)
    assert lifted.shape == (6, 4)
    assert np.linalg.norm(matlin.kron_lift(z.T, 2) - lifted.T) == 0.0


def test_kron_lift_product_property():
    rng = np.random.default_rng(12)
    a = rng.standard_normal((3, 4))
    b = rng.standard_normal((4, 2))
    left = matlin.kron_lift(a, 3) @ matlin.kron_lift(b, 3)
    right = matlin.kron_lift(a @ b, 3)
    assert np.allclose(left, right, atol=1e-13)


def test_rejects_nonfinite_entries():
    with pytest.raises(ValueError):
        matlin.qr(np.array([[1.0, np.nan], [0.0, 1.0]]))
