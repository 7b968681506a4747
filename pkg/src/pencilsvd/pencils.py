"""Builders for every pencil formulation of the singular value problems.

A pencil is the one-parameter matrix family ``lhs - lam * rhs``.  Three
families are built for each decomposition:

* ``sq-*``   -- squared formulations (eigenvalues ``sigma**2``),
* ``aug-*``  -- classical two-by-two augmented formulations (``+-sigma``),
* ``cpf-*``  -- four-by-four cross-product-free formulations
  (``+-sqrt(+-sigma)``), whose blocks contain only the input matrices,
  their conjugate transposes, identities and zeros.

The ``qqqq`` builder generalizes the cross-product-free form by replacing
the two remaining identity blocks with ``D*D`` and ``EE*``; it deliberately
reintroduces cross products and is kept for completeness only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

FORMULATIONS = (
    "sq-svd",
    "aug-svd",
    "sq-qsvd",
    "aug-qsvd",
    "aug-rsvd",
    "cpf-svd",
    "cpf-qsvd",
    "cpf-rsvd",
    "qqqq",
)

# plain pencils with no decomposition semantics (lemma targets, ad hoc input)
GENERIC = "generic"


@dataclass(frozen=True)
class Pencil:
    """A square dense pencil ``lhs - lam * rhs`` with block-layout metadata.

    ``row_blocks``/``col_blocks`` record the block partitioning used by the
    builder, so eigenvectors can later be sliced without recomputing offsets.
    """

    lhs: np.ndarray
    rhs: np.ndarray
    formulation: str
    row_blocks: tuple[int, ...]
    col_blocks: tuple[int, ...]

    def __post_init__(self):
        if self.lhs.shape != self.rhs.shape:
            raise ValueError("lhs and rhs must have identical shape")
        if self.formulation not in FORMULATIONS and self.formulation != GENERIC:
            raise ValueError(f"unknown formulation {self.formulation!r}")
        if sum(self.row_blocks) != self.lhs.shape[0]:
            raise ValueError("row blocks do not sum to the matrix order")
        if sum(self.col_blocks) != self.lhs.shape[1]:
            raise ValueError("column blocks do not sum to the matrix order")

    @property
    def dim(self) -> int:
        return self.lhs.shape[0]

    def row_offsets(self) -> np.ndarray:
        return np.concatenate(([0], np.cumsum(self.row_blocks)))

    def col_offsets(self) -> np.ndarray:
        return np.concatenate(([0], np.cumsum(self.col_blocks)))


def generic_pencil(lhs, rhs) -> Pencil:
    """Wrap a raw (lhs, rhs) pair as a single-block pencil."""
    lhs = np.atleast_2d(np.asarray(lhs, dtype=np.complex128))
    rhs = np.atleast_2d(np.asarray(rhs, dtype=np.complex128))
    return Pencil(lhs, rhs, GENERIC, (lhs.shape[0],), (lhs.shape[1],))


def _as_matrix(m, name) -> np.ndarray:
    m = np.atleast_2d(np.asarray(m, dtype=np.complex128))
    if m.ndim != 2:
        raise ValueError(f"{name} must be a matrix")
    return m


def _hermitize(m: np.ndarray) -> np.ndarray:
    # floating-point cross products are only Hermitian up to roundoff;
    # the definite solver path requires exact Hermitian storage
    return (m + m.conj().T) / 2.0


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def build_sq_svd(a) -> Pencil:
    """``(A*A, I)`` of order q; eigenvalues are squared singular values."""
    a = _as_matrix(a, "A")
    _require(a.size > 0, "A must be nonempty")
    q = a.shape[1]
    return Pencil(_hermitize(a.conj().T @ a), np.eye(q, dtype=np.complex128),
                  "sq-svd", (q,), (q,))


def build_aug_svd(a) -> Pencil:
    """``([0 A; A* 0], I)`` of order p+q; eigenvalues come in +-sigma pairs."""
    a = _as_matrix(a, "A")
    _require(a.size > 0, "A must be nonempty")
    p, q = a.shape
    lhs = np.zeros((p + q, p + q), dtype=np.complex128)
    lhs[:p, p:] = a
    lhs[p:, :p] = a.conj().T
    return Pencil(lhs, np.eye(p + q, dtype=np.complex128), "aug-svd", (p, q), (p, q))


def build_sq_qsvd(a, c) -> Pencil:
    """``(A*A, C*C)`` of order q."""
    a, c = _as_matrix(a, "A"), _as_matrix(c, "C")
    _require(a.shape[1] == c.shape[1], f"A and C must share columns, got {a.shape} and {c.shape}")
    q = a.shape[1]
    return Pencil(_hermitize(a.conj().T @ a), _hermitize(c.conj().T @ c),
                  "sq-qsvd", (q,), (q,))


def build_aug_qsvd(a, c) -> Pencil:
    """``([0 A; A* 0], [I 0; 0 C*C])`` of order p+q."""
    a, c = _as_matrix(a, "A"), _as_matrix(c, "C")
    _require(a.shape[1] == c.shape[1], f"A and C must share columns, got {a.shape} and {c.shape}")
    p, q = a.shape
    lhs = np.zeros((p + q, p + q), dtype=np.complex128)
    lhs[:p, p:] = a
    lhs[p:, :p] = a.conj().T
    rhs = np.zeros_like(lhs)
    rhs[:p, :p] = np.eye(p)
    rhs[p:, p:] = _hermitize(c.conj().T @ c)
    return Pencil(lhs, rhs, "aug-qsvd", (p, q), (p, q))


def build_aug_rsvd(a, b, c) -> Pencil:
    """``([0 A; A* 0], [BB* 0; 0 C*C])`` of order p+q."""
    a, b, c = _as_matrix(a, "A"), _as_matrix(b, "B"), _as_matrix(c, "C")
    _require(b.shape[0] == a.shape[0], f"B must have {a.shape[0]} rows, got {b.shape[0]}")
    _require(c.shape[1] == a.shape[1], f"C must have {a.shape[1]} columns, got {c.shape[1]}")
    p, q = a.shape
    lhs = np.zeros((p + q, p + q), dtype=np.complex128)
    lhs[:p, p:] = a
    lhs[p:, :p] = a.conj().T
    rhs = np.zeros_like(lhs)
    rhs[:p, :p] = _hermitize(b @ b.conj().T)
    rhs[p:, p:] = _hermitize(c.conj().T @ c)
    return Pencil(lhs, rhs, "aug-rsvd", (p, q), (p, q))


def _cpf_blocks(a, b13, b24, dim3, dim4, formulation, lhs33=None, lhs44=None):
    """Assemble the common 4x4 layout shared by all cpf builders.

    lhs = diag([0 A; A* 0], I, I), rhs has ``b13`` in block (1,3), ``b24``
    in (2,4) and their conjugate transposes mirrored below the diagonal.
    """
    p, q = a.shape
    blocks = (p, q, dim3, dim4)
    off = np.concatenate(([0], np.cumsum(blocks)))
    k = off[-1]
    lhs = np.zeros((k, k), dtype=np.complex128)
    rhs = np.zeros((k, k), dtype=np.complex128)
    s = [slice(off[i], off[i + 1]) for i in range(4)]
    lhs[s[0], s[1]] = a
    lhs[s[1], s[0]] = a.conj().T
    lhs[s[2], s[2]] = np.eye(dim3) if lhs33 is None else lhs33
    lhs[s[3], s[3]] = np.eye(dim4) if lhs44 is None else lhs44
    rhs[s[0], s[2]] = b13
    rhs[s[1], s[3]] = b24
    rhs[s[2], s[0]] = b13.conj().T
    rhs[s[3], s[1]] = b24.conj().T
    return Pencil(lhs, rhs, formulation, blocks, blocks)


def build_cpf_svd(a) -> Pencil:
    """Cross-product-free pencil of the ordinary SVD, order 2(p+q)."""
    a = _as_matrix(a, "A")
    _require(a.size > 0, "A must be nonempty")
    p, q = a.shape
    return _cpf_blocks(a, np.eye(p, dtype=np.complex128), np.eye(q, dtype=np.complex128),
                       p, q, "cpf-svd")


def build_cpf_qsvd(a, c) -> Pencil:
    """Cross-product-free pencil of the QSVD, order p+q+p+n."""
    a, c = _as_matrix(a, "A"), _as_matrix(c, "C")
    _require(a.shape[1] == c.shape[1], f"A and C must share columns, got {a.shape} and {c.shape}")
    p = a.shape[0]
    n = c.shape[0]
    return _cpf_blocks(a, np.eye(p, dtype=np.complex128), c.conj().T, p, n, "cpf-qsvd")


def build_cpf_rsvd(a, b, c) -> Pencil:
    """Cross-product-free pencil of the RSVD, order p+q+m+n."""
    a, b, c = _as_matrix(a, "A"), _as_matrix(b, "B"), _as_matrix(c, "C")
    _require(b.shape[0] == a.shape[0], f"B must have {a.shape[0]} rows, got {b.shape[0]}")
    _require(c.shape[1] == a.shape[1], f"C must have {a.shape[1]} columns, got {c.shape[1]}")
    m = b.shape[1]
    n = c.shape[0]
    return _cpf_blocks(a, b, c.conj().T, m, n, "cpf-rsvd")


def build_qqqq(a, b, c, d, e) -> Pencil:
    """Five-matrix generalization with ``D*D`` and ``EE*`` diagonal blocks."""
    a, b, c = _as_matrix(a, "A"), _as_matrix(b, "B"), _as_matrix(c, "C")
    d, e = _as_matrix(d, "D"), _as_matrix(e, "E")
    _require(b.shape[0] == a.shape[0], f"B must have {a.shape[0]} rows, got {b.shape[0]}")
    _require(c.shape[1] == a.shape[1], f"C must have {a.shape[1]} columns, got {c.shape[1]}")
    _require(d.shape[1] == b.shape[1], f"D must have {b.shape[1]} columns, got {d.shape[1]}")
    _require(e.shape[0] == c.shape[0], f"E must have {c.shape[0]} rows, got {e.shape[0]}")
    m = b.shape[1]
    n = c.shape[0]
    pencil = _cpf_blocks(a, b, c.conj().T, m, n, "qqqq",
                         lhs33=_hermitize(d.conj().T @ d),
                         lhs44=_hermitize(e @ e.conj().T))
    return pencil
