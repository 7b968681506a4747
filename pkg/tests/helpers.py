"""Shared test constructions: structured matrices with known partitions."""

import numpy as np

from pencilsvd.kcf import (
    QsvdPartition,
    RsvdPartition,
    partition_from_ranks,
    qsvd_partition_from_ranks,
)
from pencilsvd.matcore import haar_unitary


def random_qsvd_counts(rng, max_count=2):
    """Free counts (p1, p2, p3, q1, q2, n3) with p1 >= 1."""
    c = rng.integers(0, max_count + 1, 6)
    return (int(c[0]) + 1,) + tuple(int(x) for x in c[1:])


def qsvd_partition_from_counts(p1, p2, p3, q1, q2, n3) -> QsvdPartition:
    return QsvdPartition(p1=p1, p2=p2, p3=p3, q1=q1, q2=q2, q3=p1, q4=p2,
                         n1=q2, n2=p1, n3=n3)


def random_rsvd_counts(rng, max_count=2):
    """Free counts (p1..p6, q1, q2, m3, n4) with p1 >= 1."""
    c = rng.integers(0, max_count + 1, 10)
    return (int(c[0]) + 1,) + tuple(int(x) for x in c[1:])


def rsvd_partition_from_counts(p1, p2, p3, p4, p5, p6, q1, q2, m3, n4) -> RsvdPartition:
    r_a = p1 + p2 + p3 + p4
    r_b = p1 + p2 + p5
    r_c = p1 + q2 + p3
    r_ab = r_a + p5
    r_ac = r_a + q2
    r_abc = p4 + r_b + r_c
    p = p1 + p2 + p3 + p4 + p5 + p6
    q = q1 + q2 + p1 + p2 + p3 + p4
    m = p1 + p2 + m3 + p5
    n = q2 + p1 + p3 + n4
    return partition_from_ranks(p, q, m, n, r_a, r_b, r_c, r_ab, r_ac, r_abc)


def canonical_qsvd_matrices(part: QsvdPartition, sigmas):
    """Canonical (A0, C0) pair realizing the partition with the given sigmas."""
    sigmas = np.asarray(sigmas, dtype=float)
    assert sigmas.size == part.p1
    alpha = sigmas / np.sqrt(1 + sigmas**2)
    gamma = 1 / np.sqrt(1 + sigmas**2)
    a0 = np.zeros((part.p, part.q), dtype=complex)
    c0 = np.zeros((part.n, part.q), dtype=complex)
    co = np.cumsum([0, part.q1, part.q2, part.q3])
    a0[:part.p1, co[2]:co[2] + part.q3] = np.diag(alpha)
    a0[part.p1:part.p1 + part.p2, co[3]:co[3] + part.q4] = np.eye(part.p2)
    c0[:part.n1, co[1]:co[1] + part.q2] = np.eye(part.n1)
    c0[part.n1:part.n1 + part.n2, co[2]:co[2] + part.q3] = np.diag(gamma)
    return a0, c0


def canonical_rsvd_matrices(part: RsvdPartition, sigmas):
    """Canonical (Sigma_alpha, Sigma_beta, Sigma_gamma) realizing the partition."""
    sigmas = np.asarray(sigmas, dtype=float)
    assert sigmas.size == part.p1
    alpha = sigmas / np.sqrt(1 + sigmas**2)
    gamma = 1 / np.sqrt(1 + sigmas**2)
    sa = np.zeros((part.p, part.q), dtype=complex)
    sb = np.zeros((part.p, part.m), dtype=complex)
    sg = np.zeros((part.n, part.q), dtype=complex)
    ro = np.cumsum([0, part.p1, part.p2, part.p3, part.p4, part.p5])
    co = np.cumsum([0, part.q1, part.q2, part.q3, part.q4, part.q5])
    cm = np.cumsum([0, part.m1, part.m2, part.m3])
    rn = np.cumsum([0, part.n1, part.n2, part.n3])
    sa[ro[0]:ro[0] + part.p1, co[2]:co[2] + part.q3] = np.diag(alpha)
    sa[ro[1]:ro[1] + part.p2, co[3]:co[3] + part.q4] = np.eye(part.p2)
    sa[ro[2]:ro[2] + part.p3, co[4]:co[4] + part.q5] = np.eye(part.p3)
    sa[ro[3]:ro[3] + part.p4, co[5]:co[5] + part.q6] = np.eye(part.p4)
    sb[ro[0]:ro[0] + part.p1, cm[0]:cm[0] + part.m1] = np.eye(part.p1)
    sb[ro[1]:ro[1] + part.p2, cm[1]:cm[1] + part.m2] = np.eye(part.p2)
    sb[ro[4]:ro[4] + part.p5, cm[3]:cm[3] + part.m4] = np.eye(part.p5)
    sg[rn[0]:rn[0] + part.n1, co[1]:co[1] + part.q2] = np.eye(part.n1)
    sg[rn[1]:rn[1] + part.n2, co[2]:co[2] + part.q3] = np.diag(gamma)
    sg[rn[2]:rn[2] + part.n3, co[4]:co[4] + part.q5] = np.eye(part.n3)
    return sa, sb, sg


def assembled_qsvd_pair(part: QsvdPartition, sigmas, rng):
    """(A, C, U, V, Y) with A = U A0 Y^-1, C = V C0 Y^-1, Haar factors."""
    a0, c0 = canonical_qsvd_matrices(part, sigmas)
    u = haar_unitary(part.p, rng) if part.p else np.zeros((0, 0), dtype=complex)
    v = haar_unitary(part.n, rng) if part.n else np.zeros((0, 0), dtype=complex)
    yq = haar_unitary(part.q, rng) if part.q else np.zeros((0, 0), dtype=complex)
    yinv = yq.conj().T
    return u @ a0 @ yinv, v @ c0 @ yinv, u, v, yq


def assembled_rsvd_triplet(part: RsvdPartition, sigmas, rng):
    """(A, B, C, U, V, X, Y) per the restricted factorization, Haar factors."""
    sa, sb, sg = canonical_rsvd_matrices(part, sigmas)
    x = haar_unitary(part.p, rng) if part.p else np.zeros((0, 0), dtype=complex)
    yq = haar_unitary(part.q, rng) if part.q else np.zeros((0, 0), dtype=complex)
    u = haar_unitary(part.m, rng) if part.m else np.zeros((0, 0), dtype=complex)
    v = haar_unitary(part.n, rng) if part.n else np.zeros((0, 0), dtype=complex)
    xict = x  # unitary: X^-* = X
    yinv = yq.conj().T
    a = xict @ sa @ yinv
    b = xict @ sb @ u.conj().T
    c = v @ sg @ yinv
    return a, b, c, u, v, x, yq
