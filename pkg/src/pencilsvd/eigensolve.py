"""Dense generalized eigensolvers for the pencil formulations.

``solve_general`` wraps the QZ algorithm (LAPACK ``zggev`` via scipy) and
returns homogeneous eigenvalue pairs ``(alpha_e, beta_e)`` classified as
finite-nonzero, zero, infinite or indeterminate.  ``solve_hpd`` is the
specialized path for Hermitian pencils with positive definite right-hand
side (the classical augmented formulations when B has full row rank and C
full column rank).

The cross-product-free pencils are singular pencils whenever the inputs
share a null space (their canonical form contains a square zero block).
QZ output on such pencils is unreliable: rounding can scatter the
eigenvalues belonging to the singular part anywhere in the plane and
corrupt its neighbours.  Because the singular part of these pencil
families is always a *square* zero block, it equals the common left/right
null space of (lhs, rhs) and can be split off exactly: ``solve_general``
therefore deflates the common null space first (rank decisions at
``dim * eps``), solves the remaining regular pencil with QZ, and reports
one indeterminate ``(0, 0)`` pair per deflated dimension, with the null
basis vectors as their eigenvectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .matcore import EPS
from .pencils import Pencil

CLASS_FINITE = "finite-nonzero"
CLASS_ZERO = "zero"
CLASS_INFINITE = "infinite"
CLASS_INDETERMINATE = "indeterminate"


class NotDefiniteError(np.linalg.LinAlgError):
    """Right-hand side is not positive definite; use solve_general instead."""


class SingularPencilError(np.linalg.LinAlgError):
    """Pencil is singular in a way the deflation step cannot handle."""


@dataclass(frozen=True)
class GeneralizedEigenvalue:
    """Eigenvalue ``lam = alpha_e / beta_e`` in homogeneous form."""

    alpha_e: complex
    beta_e: complex
    kind: str

    @property
    def value(self) -> complex:
        if self.kind == CLASS_INFINITE:
            return complex(np.inf, 0.0)
        if self.kind == CLASS_INDETERMINATE:
            return complex(np.nan, np.nan)
        return self.alpha_e / self.beta_e


@dataclass(frozen=True)
class EigenSolution:
    """Full spectrum of a pencil plus right eigenvectors (one per column)."""

    values: tuple[GeneralizedEigenvalue, ...]
    vectors: np.ndarray
    backward_stable: bool

    def count(self, kind: str) -> int:
        return sum(1 for v in self.values if v.kind == kind)

    def counts(self) -> dict[str, int]:
        return {k: self.count(k) for k in
                (CLASS_FINITE, CLASS_ZERO, CLASS_INFINITE, CLASS_INDETERMINATE)}

    def finite(self):
        """(eigenvalue, vector) pairs for the finite-nonzero part."""
        return [(v, self.vectors[:, i]) for i, v in enumerate(self.values)
                if v.kind == CLASS_FINITE]


def classify_pair(alpha_e: complex, beta_e: complex, tol_zero: float, tol_inf: float) -> str:
    """Classify a homogeneous pair against absolute thresholds."""
    small_a = abs(alpha_e) <= tol_zero
    small_b = abs(beta_e) <= tol_inf
    if small_a and small_b:
        return CLASS_INDETERMINATE
    if small_b:
        return CLASS_INFINITE
    if small_a:
        return CLASS_ZERO
    return CLASS_FINITE


def _common_nullspaces(lhs, rhs, tol_rel):
    k = lhs.shape[0]
    stacked = np.vstack([lhs, rhs])
    _, s_r, vh = np.linalg.svd(stacked)
    smax = s_r[0] if s_r.size else 0.0
    nr = int(np.count_nonzero(s_r <= tol_rel * smax))
    right_null = vh[k - nr:, :].conj().T if nr else np.zeros((k, 0), dtype=complex)
    right_keep = vh[: k - nr, :].conj().T

    side = np.hstack([lhs, rhs])
    u, s_l, _ = np.linalg.svd(side)
    smax = s_l[0] if s_l.size else 0.0
    nl = int(np.count_nonzero(s_l <= tol_rel * smax))
    left_keep = u[:, : k - nl]
    return right_null, right_keep, left_keep, nr, nl


def solve_general(pencil: Pencil, class_tol_rel: float | None = None,
                  deflate: bool = True, residual_tol: float = 1e-12) -> EigenSolution:
    """Solve ``lhs x = lam rhs x`` for the full spectrum via QZ.

    Parameters
    ----------
    pencil : Pencil
        Square pencil to solve.
    class_tol_rel : float, optional
        Relative threshold separating zero/infinite/indeterminate pairs from
        finite ones; scaled by ``max(||lhs||_F, ||rhs||_F)``.  Defaults to
        ``dim * eps``, which suits regular pencils.  Spectra containing
        Jordan blocks need a looser value: a size-k block at 0 or infinity
        splits under roundoff into eigenvalues of magnitude ``eps**(1/k)``,
        so count checks against predicted canonical structure use ~1e-4.
    deflate : bool
        Split off the common null space of (lhs, rhs) before QZ (see module
        docstring).  Disable only to observe raw QZ behaviour.
    residual_tol : float
        Per-eigenpair residual bound defining the ``backward_stable`` flag.
    """
    lhs = np.ascontiguousarray(pencil.lhs, dtype=np.complex128)
    rhs = np.ascontiguousarray(pencil.rhs, dtype=np.complex128)
    k = lhs.shape[0]
    if lhs.shape[0] != lhs.shape[1]:
        raise ValueError("pencil must be square")
    if class_tol_rel is None:
        class_tol_rel = k * EPS
    scale = max(np.linalg.norm(lhs), np.linalg.norm(rhs))
    tol_abs = class_tol_rel * scale

    null_vecs = np.zeros((k, 0), dtype=complex)
    w_right = None
    if deflate and k > 0:
        null_vecs, right_keep, left_keep, nr, nl = _common_nullspaces(lhs, rhs, k * EPS)
        if nr != nl:
            raise SingularPencilError(
                f"common null spaces have unequal dimensions ({nr} right, {nl} left); "
                "the singular part is not a square zero block")
        if nr:
            lhs = left_keep.conj().T @ lhs @ right_keep
            rhs = left_keep.conj().T @ rhs @ right_keep
            w_right = right_keep
        else:
            null_vecs = np.zeros((k, 0), dtype=complex)

    if lhs.shape[0]:
        aw, vr = sla.eig(lhs, rhs, right=True, homogeneous_eigvals=True)
        alphas, betas = aw[0], aw[1]
    else:
        alphas = betas = np.zeros(0, dtype=complex)
        vr = np.zeros((0, 0), dtype=complex)

    vectors = vr if w_right is None else w_right @ vr
    nrm = np.linalg.norm(vectors, axis=0)
    nrm[nrm == 0] = 1.0
    vectors = vectors / nrm

    values = [GeneralizedEigenvalue(complex(a), complex(b),
                                    classify_pair(a, b, tol_abs, tol_abs))
              for a, b in zip(alphas, betas)]

    # deflated singular part: exact (0, 0) pairs, null basis as vectors
    s = null_vecs.shape[1]
    if s:
        values += [GeneralizedEigenvalue(0j, 0j, CLASS_INDETERMINATE)] * s
        vectors = np.hstack([vectors, null_vecs])

    stable = True
    lhs_full = pencil.lhs
    rhs_full = pencil.rhs
    norm_a = np.linalg.norm(lhs_full, 2) if k else 0.0
    norm_b = np.linalg.norm(rhs_full, 2) if k else 0.0
    for i, val in enumerate(values):
        if val.kind != CLASS_FINITE:
            continue
        lam = val.value
        w = vectors[:, i]
        res = np.linalg.norm(lhs_full @ w - lam * (rhs_full @ w))
        if res > residual_tol * (norm_a + abs(lam) * norm_b) * np.linalg.norm(w):
            stable = False
    return EigenSolution(tuple(values), vectors, stable)


def solve_hpd(pencil: Pencil, class_tol_rel: float | None = None) -> EigenSolution:
    """Definite-pencil path: Hermitian lhs, Hermitian positive definite rhs.

    Reduces to a standard Hermitian problem through a Cholesky factorization
    of the right-hand side, so all eigenvalues are real.  Raises
    :class:`NotDefiniteError` when the factorization fails; callers should
    fall back to :func:`solve_general`.
    """
    lhs, rhs = pencil.lhs, pencil.rhs
    k = lhs.shape[0]
    herm_tol = 64 * k * EPS
    if np.abs(lhs - lhs.conj().T).max(initial=0.0) > herm_tol * max(1.0, np.abs(lhs).max(initial=0.0)):
        raise ValueError("lhs is not Hermitian")
    if np.abs(rhs - rhs.conj().T).max(initial=0.0) > herm_tol * max(1.0, np.abs(rhs).max(initial=0.0)):
        raise ValueError("rhs is not Hermitian")
    try:
        np.linalg.cholesky(rhs)
    except np.linalg.LinAlgError as exc:
        raise NotDefiniteError(
            "rhs is not positive definite; fall back to solve_general") from exc
    if class_tol_rel is None:
        class_tol_rel = k * EPS
    w, v = sla.eigh(lhs, rhs)
    scale = max(np.linalg.norm(lhs), np.linalg.norm(rhs))
    tol_abs = class_tol_rel * scale
    values = tuple(GeneralizedEigenvalue(complex(x), 1.0 + 0j,
                                         classify_pair(x, 1.0, tol_abs, tol_abs))
                   for x in w)
    nrm = np.linalg.norm(v, axis=0)
    nrm[nrm == 0] = 1.0
    return EigenSolution(values, (v / nrm).astype(np.complex128), True)
