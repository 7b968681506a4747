import numpy as np
import pytest
import scipy.linalg as sla

from pencilsvd.pencils import (
    build_aug_qsvd,
    build_aug_rsvd,
    build_aug_svd,
    build_cpf_qsvd,
    build_cpf_rsvd,
    build_cpf_svd,
    build_qqqq,
    build_sq_qsvd,
    build_sq_svd,
)


def assert_spectrum(pencil, expected, tol=1e-12):
    got = list(sla.eigvals(pencil.lhs, pencil.rhs))
    for want in np.asarray(expected, dtype=complex):
        dist = [abs(g - want) for g in got]
        k = int(np.argmin(dist))
        assert dist[k] <= tol, f"no eigenvalue near {want}: {got}"
        got.pop(k)
    assert not got


def test_sq_and_aug_svd_scalar():
    sq = build_sq_svd(np.array([[2.0]]))
    assert sq.lhs == pytest.approx(np.array([[4.0]]))
    assert sq.rhs == pytest.approx(np.array([[1.0]]))
    aug = build_aug_svd(np.array([[2.0]]))
    assert np.array_equal(aug.lhs, np.array([[0, 2], [2, 0]], dtype=complex))
    assert np.array_equal(aug.rhs, np.eye(2))


def test_aug_svd_identity_spectrum():
    assert_spectrum(build_aug_svd(np.eye(2)), [1, 1, -1, -1])


def test_sq_svd_diag_spectrum():
    assert_spectrum(build_sq_svd(np.diag([3.0, 4.0])), [9, 16])


def test_sq_qsvd_scalar():
    p = build_sq_qsvd(np.array([[1.0]]), np.array([[1.0]]))
    assert_spectrum(p, [1.0])


def test_aug_qsvd_2x2_oracle():
    # det([[-lam, 2], [2, -lam]]) = lam^2 - 4
    assert_spectrum(build_aug_qsvd(np.array([[2.0]]), np.array([[1.0]])), [2, -2])


def test_sq_qsvd_diagonal_quotients():
    p = build_sq_qsvd(np.eye(2), np.diag([1.0, 2.0]))
    assert_spectrum(p, [1.0, 0.25])


def test_aug_rsvd_scalar_and_identity_reduction():
    p = build_aug_rsvd(np.array([[1.0]]), np.array([[1.0]]), np.array([[1.0]]))
    assert np.array_equal(p.lhs, np.array([[0, 1], [1, 0]], dtype=complex))
    assert np.array_equal(p.rhs, np.eye(2))
    assert_spectrum(p, [1, -1])

    rng = np.random.default_rng(0)
    a = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
    full = build_aug_rsvd(a, np.eye(3), np.eye(2))
    base = build_aug_svd(a)
    assert np.array_equal(full.lhs, base.lhs)
    assert np.array_equal(full.rhs, base.rhs)


def test_aug_rsvd_normalized_scalar():
    # sigma = alpha / (beta * gamma) = 2 / (1 * 2) = 1
    p = build_aug_rsvd(np.array([[2.0]]), np.array([[1.0]]), np.array([[2.0]]))
    assert_spectrum(p, [1, -1])


def test_cpf_svd_lemma_spectrum():
    assert_spectrum(build_cpf_svd(np.array([[4.0]])), [2, -2, 2j, -2j])


def test_cpf_qsvd_scalar_spectrum():
    assert_spectrum(build_cpf_qsvd(np.array([[1.0]]), np.array([[1.0]])), [1, -1, 1j, -1j])


def test_cpf_rsvd_identity_reduction():
    rng = np.random.default_rng(1)
    a = rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3))
    full = build_cpf_rsvd(a, np.eye(2), np.eye(3))
    base = build_cpf_svd(a)
    assert np.array_equal(full.lhs, base.lhs)
    assert np.array_equal(full.rhs, base.rhs)
    assert full.row_blocks == base.row_blocks


def test_cpf_shapes_and_blocks():
    rng = np.random.default_rng(2)
    a = rng.standard_normal((3, 4))
    c = rng.standard_normal((2, 4))
    b = rng.standard_normal((3, 5))
    pq = build_cpf_qsvd(a, c)
    assert pq.dim == 3 + 4 + 3 + 2 and pq.row_blocks == (3, 4, 3, 2)
    pr = build_cpf_rsvd(a, b, c)
    assert pr.dim == 3 + 4 + 5 + 2 and pr.row_blocks == (3, 4, 5, 2)


def test_cpf_and_aug_are_hermitian():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
    b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    c = rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
    for p in (build_aug_svd(a), build_aug_qsvd(a, c), build_aug_rsvd(a, b, c),
              build_cpf_svd(a), build_cpf_qsvd(a, c), build_cpf_rsvd(a, b, c)):
        assert np.array_equal(p.lhs, p.lhs.conj().T), p.formulation
        assert np.array_equal(p.rhs, p.rhs.conj().T), p.formulation


def test_cpf_entries_are_inputs_zeros_or_ones():
    rng = np.random.default_rng(4)
    a = (rng.integers(2, 9, (3, 2)) + 1j * rng.integers(2, 9, (3, 2))).astype(complex)
    b = (rng.integers(10, 17, (3, 3)) + 1j * rng.integers(10, 17, (3, 3))).astype(complex)
    c = (rng.integers(20, 27, (4, 2)) + 1j * rng.integers(20, 27, (4, 2))).astype(complex)
    allowed = {0, 1} | set(a.ravel()) | set(a.conj().ravel()) \
        | set(b.ravel()) | set(b.conj().ravel()) | set(c.ravel()) | set(c.conj().ravel())
    for p in (build_cpf_svd(a), build_cpf_qsvd(a, c), build_cpf_rsvd(a, b, c)):
        seen = set(p.lhs.ravel()) | set(p.rhs.ravel())
        assert seen <= allowed, p.formulation


def test_qqqq_identity_reduction_and_oracle():
    rng = np.random.default_rng(5)
    a = rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3))
    b = rng.standard_normal((2, 2))
    c = rng.standard_normal((4, 3))
    full = build_qqqq(a, b, c, np.eye(2), np.eye(4))
    base = build_cpf_rsvd(a, b, c)
    assert np.array_equal(full.lhs, base.lhs)
    assert np.array_equal(full.rhs, base.rhs)

    one = np.array([[1.0]])
    assert_spectrum(build_qqqq(np.array([[4.0]]), one, one, one, one), [2, -2, 2j, -2j])

    # qqqq(A,B,C,D,E) matches the restricted problem (A, B D^-1, E^-1 C);
    # here sigma = 2 / (0.5 * 1) = 4, so the quadruple is +-2, +-2i
    p = build_qqqq(np.array([[2.0]]), one, one, np.array([[2.0]]), one)
    assert_spectrum(p, [2, -2, 2j, -2j])


def test_dimension_mismatch_errors():
    a = np.zeros((2, 3))
    with pytest.raises(ValueError):
        build_sq_qsvd(a, np.zeros((2, 2)))
    with pytest.raises(ValueError):
        build_aug_rsvd(a, np.zeros((3, 2)), np.zeros((2, 3)))
    with pytest.raises(ValueError):
        build_qqqq(a, np.zeros((2, 2)), np.zeros((2, 3)), np.zeros((2, 3)), np.zeros((2, 2)))
