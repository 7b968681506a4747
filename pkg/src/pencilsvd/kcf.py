"""Kronecker structure prediction and verification for the pencil families.

The canonical form of every pencil built in :mod:`pencilsvd.pencils` is known
in closed form from the decomposition structure of the inputs: a square zero
block for common null directions, nilpotent blocks ``N_k`` at infinity,
Jordan blocks ``J_2(0)`` at zero, and simple eigenvalues ``+-sqrt(sigma)``,
``+-i sqrt(sigma)`` (or ``+-sigma`` for the classical augmented forms).

This module predicts those block multisets from rank data, provides the
explicit 4x4 reductions for a single singular value, and replays the full
block-diagonalizing transformation chain (diagonal congruence, block
permutation, per-sigma 4x4 reduction) on concrete matrices, reporting how
far the result is from the predicted canonical form.

General minimal-index extraction for arbitrary singular pencils is out of
scope: only structures arising from the supported formulations are handled.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from .eigensolve import (
    CLASS_FINITE,
    CLASS_INDETERMINATE,
    CLASS_INFINITE,
    CLASS_ZERO,
    EigenSolution,
)
from .pencils import GENERIC, Pencil, generic_pencil

KIND_ZERO_BLOCK = "zero-block"
KIND_L_RIGHT = "l-right"
KIND_L_LEFT = "l-left"
KIND_N = "n-infinite"
KIND_J = "j-finite"


class PartitionError(ValueError):
    """Numerical ranks are inconsistent with any valid structure."""


@dataclass(frozen=True)
class KcfBlock:
    """One canonical block; ``size`` is the minimal index for L blocks."""

    kind: str
    rows: int
    cols: int
    eigenvalue: complex | None = None

    def __post_init__(self):
        if self.kind == KIND_L_RIGHT and self.cols != self.rows + 1:
            raise ValueError("right singular block must be k x (k+1)")
        if self.kind == KIND_L_LEFT and self.rows != self.cols + 1:
            raise ValueError("left singular block must be (k+1) x k")
        if self.kind in (KIND_N, KIND_J) and self.rows != self.cols:
            raise ValueError("N and J blocks are square")


def n_block(size: int) -> KcfBlock:
    return KcfBlock(KIND_N, size, size)


def j_block(size: int, eigenvalue: complex) -> KcfBlock:
    return KcfBlock(KIND_J, size, size, complex(eigenvalue))


def zero_block(rows: int, cols: int) -> KcfBlock:
    return KcfBlock(KIND_ZERO_BLOCK, rows, cols)


@dataclass(frozen=True)
class KcfStructure:
    """Multiset of canonical blocks for a k-by-l pencil."""

    blocks: tuple[KcfBlock, ...]
    rows: int
    cols: int

    def __post_init__(self):
        if sum(b.rows for b in self.blocks) != self.rows \
                or sum(b.cols for b in self.blocks) != self.cols:
            raise ValueError("block dimensions do not sum to the pencil shape")

    def eigenvalue_counts(self, finite_tol: float = 0.0) -> dict[str, int]:
        """Expected spectrum counts: N sizes at infinity, J(0) sizes at zero,
        square zero blocks as indeterminate pairs, remaining J sizes finite."""
        counts = {CLASS_FINITE: 0, CLASS_ZERO: 0, CLASS_INFINITE: 0,
                  CLASS_INDETERMINATE: 0}
        for b in self.blocks:
            if b.kind == KIND_N:
                counts[CLASS_INFINITE] += b.rows
            elif b.kind == KIND_J:
                if abs(b.eigenvalue) <= finite_tol:
                    counts[CLASS_ZERO] += b.rows
                else:
                    counts[CLASS_FINITE] += b.rows
            elif b.kind == KIND_ZERO_BLOCK:
                counts[CLASS_INDETERMINATE] += min(b.rows, b.cols)
        return counts


# -- structure partitions ----------------------------------------------------


@dataclass(frozen=True)
class SvdPartition:
    """Ordinary SVD sizes: p1 = q1 = rank, p2/q2 the row/column deficiencies."""

    p1: int
    p2: int
    q1: int
    q2: int

    def __post_init__(self):
        if self.p1 != self.q1:
            raise PartitionError("p1 and q1 must agree")
        _check_nonneg(self)

    @property
    def p(self):
        return self.p1 + self.p2

    @property
    def q(self):
        return self.q1 + self.q2


@dataclass(frozen=True)
class QsvdPartition:
    """Quotient SVD sizes with the coupling n2 = p1 = q3, n1 = q2, p2 = q4."""

    p1: int
    p2: int
    p3: int
    q1: int
    q2: int
    q3: int
    q4: int
    n1: int
    n2: int
    n3: int

    def __post_init__(self):
        if not (self.n2 == self.p1 == self.q3 and self.n1 == self.q2
                and self.p2 == self.q4):
            raise PartitionError("quotient partition couplings violated")
        _check_nonneg(self)

    @property
    def p(self):
        return self.p1 + self.p2 + self.p3

    @property
    def q(self):
        return self.q1 + self.q2 + self.q3 + self.q4

    @property
    def n(self):
        return self.n1 + self.n2 + self.n3


@dataclass(frozen=True)
class RsvdPartition:
    """Restricted SVD sizes plus the six ranks they derive from."""

    p1: int
    p2: int
    p3: int
    p4: int
    p5: int
    p6: int
    q1: int
    q2: int
    q3: int
    q4: int
    q5: int
    q6: int
    m1: int
    m2: int
    m3: int
    m4: int
    n1: int
    n2: int
    n3: int
    n4: int
    r_a: int
    r_b: int
    r_c: int
    r_ab: int
    r_ac: int
    r_abc: int

    def __post_init__(self):
        couplings = (
            ("q3", self.q3, self.p1), ("q4", self.q4, self.p2),
            ("q5", self.q5, self.p3), ("q6", self.q6, self.p4),
            ("n1", self.n1, self.q2), ("m4", self.m4, self.p5),
            ("n2", self.n2, self.p1), ("m1", self.m1, self.p1),
            ("n3", self.n3, self.p3), ("m2", self.m2, self.p2),
        )
        for name, got, want in couplings:
            if got != want:
                raise PartitionError(f"coupling {name} = {got} != {want}")
        _check_nonneg(self)

    @property
    def p(self):
        return self.p1 + self.p2 + self.p3 + self.p4 + self.p5 + self.p6

    @property
    def q(self):
        return self.q1 + self.q2 + self.q3 + self.q4 + self.q5 + self.q6

    @property
    def m(self):
        return self.m1 + self.m2 + self.m3 + self.m4

    @property
    def n(self):
        return self.n1 + self.n2 + self.n3 + self.n4

    def regular_triplet_count(self) -> int:
        """Triplets with a finite value attached: p1 + p2 + p3 + p4 + min(p5, q2)."""
        return self.p1 + self.p2 + self.p3 + self.p4 + min(self.p5, self.q2)


def _check_nonneg(partition) -> None:
    for f in fields(partition):
        if getattr(partition, f.name) < 0:
            raise PartitionError(f"derived count {f.name} is negative "
                                 f"({getattr(partition, f.name)}); ranks inconsistent")


def svd_partition(p: int, q: int, rank: int) -> SvdPartition:
    return SvdPartition(rank, p - rank, rank, q - rank)


def qsvd_partition_from_ranks(p: int, q: int, n: int, r_a: int, r_c: int,
                              r_ac: int) -> QsvdPartition:
    p1 = r_a + r_c - r_ac
    p2 = r_ac - r_c
    q2 = r_ac - r_a
    return QsvdPartition(
        p1=p1, p2=p2, p3=p - r_a,
        q1=q - r_ac, q2=q2, q3=p1, q4=p2,
        n1=q2, n2=p1, n3=n - r_c,
    )


def partition_from_ranks(p: int, q: int, m: int, n: int,
                         r_a: int, r_b: int, r_c: int,
                         r_ab: int, r_ac: int, r_abc: int) -> RsvdPartition:
    """Restricted-problem partition from the six ranks of A, B, C,
    [A B], [A; C] and [A B; C 0]."""
    p1 = r_abc + r_a - r_ab - r_ac
    p2 = r_ac + r_b - r_abc
    p3 = r_ab + r_c - r_abc
    p4 = r_abc - r_b - r_c
    p5 = r_ab - r_a
    q2 = r_ac - r_a
    return RsvdPartition(
        p1=p1, p2=p2, p3=p3, p4=p4, p5=p5, p6=p - r_ab,
        q1=q - r_ac, q2=q2, q3=p1, q4=p2, q5=p3, q6=p4,
        m1=p1, m2=p2, m3=m - r_b, m4=p5,
        n1=q2, n2=p1, n3=p3, n4=n - r_c,
        r_a=r_a, r_b=r_b, r_c=r_c, r_ab=r_ab, r_ac=r_ac, r_abc=r_abc,
    )


# -- block multiset prediction ------------------------------------------------


def _sigma_quadruple_blocks(sigmas) -> list[KcfBlock]:
    blocks = []
    for s in sigmas:
        root = np.sqrt(complex(s))
        blocks += [j_block(1, root), j_block(1, -root),
                   j_block(1, 1j * root), j_block(1, -1j * root)]
    return blocks


def predict_kcf(formulation: str, partition, sigmas=()) -> KcfStructure:
    """Predicted canonical block multiset for a pencil of the given kind.

    ``sigmas`` are the finite nonzero singular values (length p1); the
    classical augmented restricted form needs the per-sigma weights only
    for eigenvalue positions, which stay ``+-sigma`` regardless.
    """
    sigmas = tuple(float(s) for s in sigmas)
    blocks: list[KcfBlock] = []
    if formulation == "cpf-svd":
        part: SvdPartition = partition
        if len(sigmas) != part.p1:
            raise ValueError(f"expected {part.p1} singular values, got {len(sigmas)}")
        blocks += [j_block(2, 0.0)] * (part.p2 + part.q2)
        blocks += _sigma_quadruple_blocks(sigmas)
        dim = 2 * (part.p + part.q)
    elif formulation == "cpf-qsvd":
        qp: QsvdPartition = partition
        if len(sigmas) != qp.p1:
            raise ValueError(f"expected {qp.p1} singular values, got {len(sigmas)}")
        if qp.q1:
            blocks.append(zero_block(qp.q1, qp.q1))
        blocks += [n_block(1)] * qp.n3
        blocks += [n_block(3)] * qp.p2
        blocks += [j_block(2, 0.0)] * (qp.p3 + qp.q2)
        blocks += _sigma_quadruple_blocks(sigmas)
        dim = 2 * qp.p + qp.q + qp.n
    elif formulation == "cpf-rsvd":
        rp: RsvdPartition = partition
        if len(sigmas) != rp.p1:
            raise ValueError(f"expected {rp.p1} singular values, got {len(sigmas)}")
        if rp.p6 + rp.q1:
            blocks.append(zero_block(rp.p6 + rp.q1, rp.p6 + rp.q1))
        blocks += [n_block(1)] * (rp.p4 + rp.q6 + rp.m3 + rp.n4)
        blocks += [n_block(3)] * rp.p2
        blocks += [n_block(3)] * rp.p3
        blocks += [j_block(2, 0.0)] * (rp.p5 + rp.q2)
        blocks += _sigma_quadruple_blocks(sigmas)
        dim = rp.p + rp.q + rp.m + rp.n
    elif formulation == "aug-rsvd":
        rp = partition
        if len(sigmas) != rp.p1:
            raise ValueError(f"expected {rp.p1} singular values, got {len(sigmas)}")
        if rp.p6 + rp.q1:
            blocks.append(zero_block(rp.p6 + rp.q1, rp.p6 + rp.q1))
        blocks += [n_block(1)] * (rp.p4 + rp.q6)
        blocks += [n_block(2)] * rp.p2
        blocks += [n_block(2)] * rp.p3
        blocks += [j_block(1, 0.0)] * (rp.p5 + rp.q2)
        for s in sigmas:
            blocks += [j_block(1, s), j_block(1, -s)]
        dim = rp.p + rp.q
    elif formulation == "aug-qsvd":
        qp = partition
        if len(sigmas) != qp.p1:
            raise ValueError(f"expected {qp.p1} singular values, got {len(sigmas)}")
        if qp.q1:
            blocks.append(zero_block(qp.q1, qp.q1))
        blocks += [n_block(2)] * qp.p2
        blocks += [j_block(1, 0.0)] * (qp.p3 + qp.q2)
        for s in sigmas:
            blocks += [j_block(1, s), j_block(1, -s)]
        dim = qp.p + qp.q
    elif formulation == "aug-svd":
        part = partition
        if len(sigmas) != part.p1:
            raise ValueError(f"expected {part.p1} singular values, got {len(sigmas)}")
        blocks += [j_block(1, 0.0)] * (part.p2 + part.q2)
        for s in sigmas:
            blocks += [j_block(1, s), j_block(1, -s)]
        dim = part.p + part.q
    else:
        raise ValueError(f"no structure prediction for formulation {formulation!r}")
    return KcfStructure(tuple(blocks), dim, dim)


# -- explicit 4x4 reductions ---------------------------------------------------

_I = 1j
# sign/phase unitaries diagonalizing the order-4 pencil at sigma = 1


_X_UNIT = 0.5 * np.array([
    [1, -1, -_I, _I],
    [1, -1, _I, -_I],
    [1, 1, 1, 1],
    [1, 1, -1, -1],
], dtype=complex)

_Y_UNIT = 0.5 * np.array([
    [1, 1, 1, 1],
    [1, 1, -1, -1],
    [1, -1, -_I, _I],
    [1, -1, _I, -_I],
], dtype=complex)

_LEMMA_KINDS = ("osvd", "qsvd", "rsvd")


def lemma_pencil(kind: str, alpha: float, beta: float = 1.0,
                 gamma: float = 1.0) -> Pencil:
    """Order-4 pencil of one singular value: lhs couples alpha, rhs beta/gamma."""
    if kind not in _LEMMA_KINDS:
        raise ValueError(f"unknown lemma kind {kind!r}")
    if kind == "osvd":
        beta = gamma = 1.0
    elif kind == "qsvd":
        beta = 1.0
    lhs = np.array([
        [0, alpha, 0, 0],
        [alpha, 0, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
    ], dtype=complex)
    rhs = np.array([
        [0, 0, beta, 0],
        [0, 0, 0, gamma],
        [beta, 0, 0, 0],
        [0, gamma, 0, 0],
    ], dtype=complex)
    return generic_pencil(lhs, rhs)


@dataclass(frozen=True)
class LemmaReduction:
    x: np.ndarray
    y: np.ndarray
    source: Pencil
    target: Pencil
    sigma: float
    residual_const: float
    residual_lambda: float


def lemma_reduce(kind: str, alpha: float, beta: float = 1.0,
                 gamma: float = 1.0) -> LemmaReduction:
    """Explicit transformations with Y* (lhs - lam rhs) X = D - lam I.

    ``D = diag(sqrt(sigma), -sqrt(sigma), i sqrt(sigma), -i sqrt(sigma))``
    with ``sigma = alpha / (beta * gamma)``.  The transformation composes
    the diagonal scaling ``sigma**(-1/4) diag(1/beta, 1/gamma, sqrt(sigma),
    sqrt(sigma))`` with fixed sign/phase unitaries; at sigma = beta =
    gamma = 1 it reduces to those unitaries alone.  Both coefficient
    identities are verified entrywise before returning.
    """
    if kind not in _LEMMA_KINDS:
        raise ValueError(f"unknown lemma kind {kind!r}")
    if kind == "osvd":
        beta = gamma = 1.0
    elif kind == "qsvd":
        beta = 1.0
    if alpha <= 0 or beta <= 0 or gamma <= 0:
        raise ValueError("lemma parameters must be positive")
    sigma = alpha / (beta * gamma)
    root = np.sqrt(sigma)
    scale = sigma ** -0.25 * np.array([1.0 / beta, 1.0 / gamma, root, root])
    x = scale[:, None] * _X_UNIT
    y = scale[:, None] * _Y_UNIT
    source = lemma_pencil(kind, alpha, beta, gamma)
    d = np.diag([root, -root, 1j * root, -1j * root])
    const = y.conj().T @ source.lhs @ x
    lam = y.conj().T @ source.rhs @ x
    res_c = float(np.abs(const - d).max() / max(root, 1.0))
    res_l = float(np.abs(lam - np.eye(4)).max())
    target = generic_pencil(d, np.eye(4, dtype=complex))
    return LemmaReduction(x, y, source, target, sigma, res_c, res_l)


# -- full transformation chains -------------------------------------------------

# block permutations that sort the congruence-transformed pencils into
# canonical order, stored 1-indexed
_PERMS = {
    "cpf-svd": ((2, 6, 4, 8, 1, 3, 5, 7),
                (6, 2, 8, 4, 1, 3, 5, 7)),
    "cpf-qsvd": ((4, 13, 7, 9, 2, 3, 10, 5, 11, 1, 6, 8, 12),
                 (4, 13, 2, 9, 7, 10, 3, 11, 5, 1, 6, 8, 12)),
    "cpf-rsvd": ((6, 7, 12, 4, 15, 20, 10, 14, 2, 3, 19, 11, 5, 16, 8, 17, 1, 9, 13, 18),
                 (6, 7, 4, 12, 15, 20, 2, 14, 10, 11, 19, 3, 16, 5, 17, 8, 1, 9, 13, 18)),
}


def _block_sizes(formulation: str, partition):
    if formulation == "cpf-svd":
        pt: SvdPartition = partition
        return (pt.p1, pt.p2, pt.q1, pt.q2, pt.p1, pt.p2, pt.q1, pt.q2)
    if formulation == "cpf-qsvd":
        qp: QsvdPartition = partition
        return (qp.p1, qp.p2, qp.p3, qp.q1, qp.q2, qp.q3, qp.q4,
                qp.p1, qp.p2, qp.p3, qp.n1, qp.n2, qp.n3)
    if formulation == "cpf-rsvd":
        rp: RsvdPartition = partition
        return (rp.p1, rp.p2, rp.p3, rp.p4, rp.p5, rp.p6,
                rp.q1, rp.q2, rp.q3, rp.q4, rp.q5, rp.q6,
                rp.m1, rp.m2, rp.m3, rp.m4,
                rp.n1, rp.n2, rp.n3, rp.n4)
    raise ValueError(f"no transformation chain for formulation {formulation!r}")


def _block_permutation_indices(perm, sizes):
    """Column indices of the block permutation matrix [e_perm(1) ... e_perm(k)]."""
    offsets = np.concatenate(([0], np.cumsum(sizes)))
    cols = []
    for j in perm:
        cols.extend(range(offsets[j - 1], offsets[j]))
    return np.array(cols, dtype=int)


def _canonical_cpf_expected(formulation, partition, d_alpha, d_beta, d_gamma):
    """Expected (lhs, rhs) after stages 0 and 1, built block by block."""
    def nil(k):
        return np.eye(k, k, 1)

    parts = []  # (lhs_block, rhs_block)
    if formulation == "cpf-svd":
        pt = partition
        z2 = pt.p2 + pt.q2
        if z2:
            parts.append((np.kron(np.array([[0, 1], [0, 0]]), np.eye(pt.p2)),
                          np.eye(2 * pt.p2)))
            parts.append((np.kron(np.array([[0, 1], [0, 0]]), np.eye(pt.q2)),
                          np.eye(2 * pt.q2)))
        p1 = pt.p1
        ident = np.eye(p1)
        parts.append((_four_block(d_alpha, ident, ident),
                      _four_rhs(ident, ident)))
    elif formulation == "cpf-qsvd":
        qp = partition
        parts.append((np.zeros((qp.q1, qp.q1)), np.zeros((qp.q1, qp.q1))))
        parts.append((np.eye(qp.n3), np.zeros((qp.n3, qp.n3))))
        parts.append((np.eye(3 * qp.p2), np.kron(nil(3), np.eye(qp.p2))))
        parts.append((np.kron(np.array([[0, 1], [0, 0]]), np.eye(qp.p3)),
                      np.eye(2 * qp.p3)))
        parts.append((np.kron(np.array([[0, 1], [0, 0]]), np.eye(qp.q2)),
                      np.eye(2 * qp.q2)))
        ident = np.eye(qp.p1)
        parts.append((_four_block(d_alpha, ident, ident),
                      _four_rhs(ident, np.diag(d_gamma))))
    elif formulation == "cpf-rsvd":
        rp = partition
        z = rp.p6 + rp.q1
        parts.append((np.zeros((z, z)), np.zeros((z, z))))
        f = rp.p4 + rp.q6 + rp.m3 + rp.n4
        parts.append((np.eye(f), np.zeros((f, f))))
        parts.append((np.eye(3 * rp.p2), np.kron(nil(3), np.eye(rp.p2))))
        parts.append((np.eye(3 * rp.p3), np.kron(nil(3), np.eye(rp.p3))))
        parts.append((np.kron(np.array([[0, 1], [0, 0]]), np.eye(rp.p5)),
                      np.eye(2 * rp.p5)))
        parts.append((np.kron(np.array([[0, 1], [0, 0]]), np.eye(rp.q2)),
                      np.eye(2 * rp.q2)))
        parts.append((_four_block(d_alpha, np.eye(rp.p1), np.eye(rp.p1)),
                      _four_rhs(np.diag(d_beta), np.diag(d_gamma))))
    lhs = _block_diag([a for a, _ in parts])
    rhs = _block_diag([b for _, b in parts])
    return lhs, rhs


def _four_block(d_alpha, i3, i4):
    da = np.diag(d_alpha)
    k = da.shape[0]
    out = np.zeros((2 * k + i3.shape[0] + i4.shape[0],) * 2, dtype=complex)
    out[:k, k:2 * k] = da
    out[k:2 * k, :k] = da
    out[2 * k:2 * k + i3.shape[0], 2 * k:2 * k + i3.shape[0]] = i3
    out[2 * k + i3.shape[0]:, 2 * k + i3.shape[0]:] = i4
    return out


def _four_rhs(d_beta, d_gamma):
    k = d_beta.shape[0]
    out = np.zeros((4 * k, 4 * k), dtype=complex)
    out[:k, 2 * k:3 * k] = d_beta
    out[k:2 * k, 3 * k:] = d_gamma
    out[2 * k:3 * k, :k] = d_beta
    out[3 * k:, k:2 * k] = d_gamma
    return out


def _block_diag(blocks):
    total = sum(b.shape[0] for b in blocks)
    out = np.zeros((total, total), dtype=complex)
    at = 0
    for b in blocks:
        k = b.shape[0]
        out[at:at + k, at:at + k] = b
        at += k
    return out


@dataclass(frozen=True)
class VerificationReport:
    """Off-structure magnitudes after each stage, absolute and scaled."""

    stage1_off: float
    stage2_off: float
    pencil_scale: float

    @property
    def off_structure(self) -> float:
        return max(self.stage1_off, self.stage2_off)

    @property
    def relative(self) -> float:
        return self.off_structure / self.pencil_scale


def verify_reduction(pencil: Pencil, formulation: str, partition,
                     u=None, v=None, x=None, y=None) -> VerificationReport:
    """Replay the block-diagonalizing transformation chain on a concrete pencil.

    Stage 0 applies the diagonal congruence built from the decomposition
    factors (``diag(U, V, U, V)`` for ordinary, ``diag(U, Y, U, V)`` for
    quotient, ``diag(X, Y, U, V)`` for restricted problems); stage 1 the
    exact block permutations; stage 2 the per-sigma 4x4 reductions.  The
    report carries the largest deviation from the predicted canonical
    form, checked separately for the constant and the lambda coefficient.
    """
    if formulation not in _PERMS:
        raise ValueError(f"no transformation chain for formulation {formulation!r}")
    sizes = _block_sizes(formulation, partition)
    if formulation == "cpf-svd":
        diag_factors = [u, v, u, v]
        group_dims = (partition.p, partition.q, partition.p, partition.q)
        lemma_kind = "osvd"
    elif formulation == "cpf-qsvd":
        diag_factors = [u, y, u, v]
        group_dims = (partition.p, partition.q, partition.p, partition.n)
        lemma_kind = "qsvd"
    else:
        diag_factors = [x, y, u, v]
        group_dims = (partition.p, partition.q, partition.m, partition.n)
        lemma_kind = "rsvd"
    for f, blk in zip(diag_factors, group_dims):
        if f is None:
            raise ValueError("missing decomposition factor")
        if f.shape != (blk, blk):
            raise ValueError(f"factor shape {f.shape} does not match block size {blk}")

    t = _block_diag([np.asarray(f, dtype=complex) for f in diag_factors])
    lhs1 = t.conj().T @ pencil.lhs @ t
    rhs1 = t.conj().T @ pencil.rhs @ t

    perm_x, perm_y = _PERMS[formulation]
    cols = _block_permutation_indices(perm_x, sizes)
    rows = _block_permutation_indices(perm_y, sizes)
    lhs2 = lhs1[np.ix_(rows, cols)]
    rhs2 = rhs1[np.ix_(rows, cols)]

    p1 = partition.p1
    k = lhs2.shape[0]
    f0 = k - 4 * p1
    d_alpha = np.real(np.diagonal(lhs2[f0:f0 + p1, f0 + p1:f0 + 2 * p1]))
    if formulation == "cpf-rsvd":
        d_beta = np.real(np.diagonal(rhs2[f0:f0 + p1, f0 + 2 * p1:f0 + 3 * p1]))
    else:
        d_beta = np.ones(p1)
    if formulation == "cpf-svd":
        d_gamma = np.ones(p1)
    else:
        d_gamma = np.real(np.diagonal(rhs2[f0 + p1:f0 + 2 * p1, f0 + 3 * p1:]))

    exp_lhs, exp_rhs = _canonical_cpf_expected(formulation, partition,
                                               d_alpha, d_beta, d_gamma)
    stage1 = max(np.abs(lhs2 - exp_lhs).max(initial=0.0),
                 np.abs(rhs2 - exp_rhs).max(initial=0.0))

    stage2 = 0.0
    for j in range(p1):
        idx = np.array([f0 + j, f0 + p1 + j, f0 + 2 * p1 + j, f0 + 3 * p1 + j])
        sub_l = lhs2[np.ix_(idx, idx)]
        sub_r = rhs2[np.ix_(idx, idx)]
        red = lemma_reduce(lemma_kind, d_alpha[j], d_beta[j], d_gamma[j])
        tl = red.y.conj().T @ sub_l @ red.x
        tr = red.y.conj().T @ sub_r @ red.x
        stage2 = max(stage2,
                     float(np.abs(tl - red.target.lhs).max()),
                     float(np.abs(tr - red.target.rhs).max()))

    scale = max(np.linalg.norm(pencil.lhs, 2), np.linalg.norm(pencil.rhs, 2))
    return VerificationReport(float(stage1), float(stage2), float(scale))


@dataclass(frozen=True)
class CountsCheck:
    expected: dict
    observed: dict

    @property
    def ok(self) -> bool:
        return self.expected == self.observed

    def mismatches(self):
        return {k: (self.expected[k], self.observed[k])
                for k in self.expected if self.expected[k] != self.observed[k]}


def spectrum_counts_check(sol: EigenSolution, predicted: KcfStructure) -> CountsCheck:
    """Compare solver classification counts against a predicted structure."""
    return CountsCheck(predicted.eigenvalue_counts(), sol.counts())
