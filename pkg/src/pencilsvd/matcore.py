"""Dense matrix foundation: Haar sampling, rank decisions, solves, text I/O.

Working precision is ``numpy.complex128``; extended precision is the
double-double layer from :mod:`pencilsvd.ddarith` (:class:`~pencilsvd.ddarith.CDD`
matrices, :class:`~pencilsvd.ddarith.DD` reals).  Converting extended to
working rounds each real component to nearest binary64.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ddarith import CDD, cdd_solve

EPS = np.finfo(np.float64).eps


class SingularMatrixError(np.linalg.LinAlgError):
    """Coefficient matrix is singular at the requested precision."""


@dataclass(frozen=True)
class RankReport:
    """Numerical rank decision together with the evidence it was based on.

    ``rank`` counts the singular values strictly above ``tolerance``
    (an absolute threshold, already scaled by the largest singular value).
    """

    rank: int
    values: np.ndarray
    tolerance: float

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        if np.any(np.diff(vals) > 0):
            raise ValueError("singular values must be nonincreasing")
        object.__setattr__(self, "values", vals)


def haar_unitary(n: int, rng) -> np.ndarray:
    """Draw an n-by-n unitary matrix from the Haar distribution.

    Complex Ginibre sample, thin QR, then the Q columns are rescaled by the
    phases of R's diagonal so the factorization is unique and the result is
    Haar distributed.

    Parameters
    ----------
    n : int
        Matrix order, at least 1.
    rng : numpy.random.Generator or int
        Random source (an integer is used as a seed).
    """
    if n < 1:
        raise ValueError(f"matrix order must be >= 1, got {n}")
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def rank_with_tol(m: np.ndarray, tol_rel: float | None = None) -> RankReport:
    """Numerical rank from singular values.

    The rank is the number of singular values ``s_i > tol_rel * s_max``;
    ``tol_rel`` defaults to ``max(rows, cols) * eps``.
    """
    m = np.asarray(m)
    if tol_rel is None:
        tol_rel = max(m.shape) * EPS if m.size else 0.0
    if tol_rel < 0:
        raise ValueError("tolerance must be nonnegative")
    if m.size == 0:
        return RankReport(0, np.zeros(0), 0.0)
    s = np.linalg.svd(m, compute_uv=False)
    smax = s[0] if s.size else 0.0
    cutoff = tol_rel * smax
    return RankReport(int(np.count_nonzero(s > cutoff)), s, float(cutoff))


def solve_linear(m, rhs):
    """Solve ``m @ z = rhs`` at the precision of the inputs.

    ``m`` and ``rhs`` may be complex128 ndarrays (working precision) or
    :class:`CDD` matrices (extended precision).  Raises
    :class:`SingularMatrixError` when a pivot falls at or below roundoff of
    the largest entry.
    """
    if isinstance(m, CDD):
        try:
            return cdd_solve(m, rhs if isinstance(rhs, CDD) else CDD.from_complex(rhs))
        except ZeroDivisionError as exc:
            raise SingularMatrixError(str(exc)) from exc
    m = np.asarray(m, dtype=np.complex128)
    rhs = np.asarray(rhs, dtype=np.complex128)
    if m.shape[0] != m.shape[1]:
        raise ValueError("coefficient matrix must be square")
    import warnings

    import scipy.linalg as sla

    with warnings.catch_warnings():
        # singularity is detected from the pivots below and raised explicitly
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, piv = sla.lu_factor(m, check_finite=False)
    diag = np.abs(np.diagonal(lu))
    floor = m.shape[0] * EPS * (diag.max() if diag.size else 0.0)
    if diag.size == 0 or np.any(diag <= floor):
        raise SingularMatrixError("matrix is singular to working precision")
    return sla.lu_solve((lu, piv), rhs, check_finite=False)


def cond2_estimate(m: np.ndarray) -> float:
    """Spectral condition number s_max / s_min (inf for numerically singular)."""
    m = np.asarray(m)
    if m.size == 0 or not np.any(m):
        raise ValueError("condition number of a zero or empty matrix")
    s = np.linalg.svd(m, compute_uv=False)
    if s[-1] <= s[0] / np.finfo(np.float64).max:
        return np.inf
    return float(s[0] / s[-1])


# -- text format ------------------------------------------------------------
#
# First line: "rows cols field" with field in {real, complex}; then
# rows*cols lines in row-major order, one entry per line, 17 significant
# digits ("re" for real files, "re im" for complex ones).


def write_matrix_text(path, m: np.ndarray) -> None:
    m = np.atleast_2d(np.asarray(m))
    is_real = not np.iscomplexobj(m) or not np.any(m.imag)
    field = "real" if is_real else "complex"
    rows, cols = m.shape
    with open(path, "w", newline="\n") as fh:
        fh.write(f"{rows} {cols} {field}\n")
        for i in range(rows):
            for j in range(cols):
                z = complex(m[i, j])
                if is_real:
                    fh.write(f"{z.real:.16e}\n")
                else:
                    fh.write(f"{z.real:.16e} {z.imag:.16e}\n")


def read_matrix_text(path) -> np.ndarray:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 3 or header[2] not in ("real", "complex"):
            raise ValueError(f"malformed matrix header in {path}")
        rows, cols, field = int(header[0]), int(header[1]), header[2]
        out = np.zeros((rows, cols), dtype=np.complex128)
        for i in range(rows):
            for j in range(cols):
                parts = fh.readline().split()
                if field == "real":
                    out[i, j] = float(parts[0])
                else:
                    out[i, j] = float(parts[0]) + 1j * float(parts[1])
    return out
