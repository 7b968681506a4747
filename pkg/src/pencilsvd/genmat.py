"""Random test problems with prescribed condition numbers and exact values.

The quotient generator draws Haar unitaries ``U_Y, V_Y, U, V``, builds
``Y = U_Y diag(eta) V_Y*`` with the geometric grid
``eta_j = kappa_Y**(1/2 - (j-1)/(n-1))``, sets the singular value grid
``sigma_j = kappa_Sigma**(1/2 - (j-1)/(n-1))`` with
``alpha_j = sigma_j (1+sigma_j^2)**(-1/2)``, ``gamma_j = (1+sigma_j^2)**(-1/2)``,
and assembles ``A = U Sigma_alpha Y^-1``, ``C = V Sigma_gamma Y^-1``.

The restricted generator additionally draws ``X`` like ``Y`` (condition
number ``kappa_X``) and assembles ``A = X^-* Sigma_alpha Y^-1``,
``B = X^-* U*`` (``Sigma_beta = I``), ``C = V Sigma_gamma Y^-1``.

Random numbers are generated in binary64 and promoted exactly; everything
downstream (grids, products, solves) runs in double-double and is rounded
to working precision only at the very end, so the grid values are the
singular values of the generated problem to roughly 30 digits.  Problems
are square (p = q = m = n) and full rank by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ddarith import CDD, DD, cdd_diag, cdd_solve, dd_nth_root, dd_pow_int
from .matcore import haar_unitary


@dataclass(frozen=True)
class GeneratorConfig:
    n: int
    kappa_sigma: float
    kappa_y: float
    kappa_x: float = 1.0
    seed: object = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2 (the exponent grid needs n-1 > 0)")
        for name in ("kappa_sigma", "kappa_y", "kappa_x"):
            if getattr(self, name) < 1.0:
                raise ValueError(f"{name} must be >= 1")


@dataclass(frozen=True)
class GeneratedProblem:
    """Working-precision matrices plus extended-precision ground truth."""

    kind: str
    config: GeneratorConfig
    a: np.ndarray
    b: np.ndarray | None
    c: np.ndarray
    sigmas: DD
    sigma_alpha: DD
    sigma_beta: DD
    sigma_gamma: DD
    u: np.ndarray
    v: np.ndarray
    x_dd: CDD | None
    y_dd: CDD

    @property
    def n(self) -> int:
        return self.config.n

    @property
    def y(self) -> np.ndarray:
        return self.y_dd.to_complex()

    @property
    def x(self) -> np.ndarray | None:
        return None if self.x_dd is None else self.x_dd.to_complex()

    def true_sigmas_float(self) -> np.ndarray:
        return self.sigmas.to_float()


def true_sigma_grid(n: int, kappa: float) -> DD:
    """Geometric grid ``kappa**(1/2 - (j-1)/(n-1))`` in double-double.

    The grid is nonincreasing with ``sigma_1 * sigma_n = 1`` and
    ``sigma_1 / sigma_n = kappa``.
    """
    if n < 2:
        raise ValueError("grid needs n >= 2")
    if kappa < 1.0:
        raise ValueError("kappa must be >= 1")
    root = dd_nth_root(DD(np.array(float(kappa))), 2 * (n - 1))
    hi = np.empty(n)
    lo = np.empty(n)
    for j in range(n):
        val = dd_pow_int(root, n - 1 - 2 * j)
        hi[j] = val.hi
        lo[j] = val.lo
    return DD(hi, lo)


def _alpha_gamma(sigmas: DD) -> tuple[DD, DD]:
    denom = (sigmas * sigmas + 1.0).sqrt()
    return sigmas / denom, DD(np.ones(sigmas.shape)) / denom


def _conditioned_factor(n: int, kappa: float, rng) -> CDD:
    """Haar-by-Haar sandwich with exactly known singular value grid."""
    u = haar_unitary(n, rng)
    v = haar_unitary(n, rng)
    eta = true_sigma_grid(n, kappa) if kappa > 1.0 else DD(np.ones(n))
    return CDD.from_complex(u).matmul(cdd_diag(eta)).matmul(CDD.from_complex(v).conj_t())


def generate_qsvd(config: GeneratorConfig) -> GeneratedProblem:
    """Quotient pair (A, C) with quotient singular values on the sigma grid."""
    rng = np.random.default_rng(config.seed)
    n = config.n
    y_dd = _conditioned_factor(n, config.kappa_y, rng)
    u = haar_unitary(n, rng)
    v = haar_unitary(n, rng)
    sigmas = true_sigma_grid(n, config.kappa_sigma)
    alpha, gamma = _alpha_gamma(sigmas)
    y_ct = y_dd.conj_t()
    a_dd = cdd_solve(y_ct, cdd_diag(alpha).matmul(CDD.from_complex(u).conj_t())).conj_t()
    c_dd = cdd_solve(y_ct, cdd_diag(gamma).matmul(CDD.from_complex(v).conj_t())).conj_t()
    return GeneratedProblem(
        kind="qsvd", config=config,
        a=a_dd.to_complex(), b=None, c=c_dd.to_complex(),
        sigmas=sigmas, sigma_alpha=alpha, sigma_beta=DD(np.ones(n)),
        sigma_gamma=gamma, u=u, v=v, x_dd=None, y_dd=y_dd,
    )


def generate_rsvd(config: GeneratorConfig) -> GeneratedProblem:
    """Restricted triplet (A, B, C) with values on the sigma grid."""
    rng = np.random.default_rng(config.seed)
    n = config.n
    y_dd = _conditioned_factor(n, config.kappa_y, rng)
    x_dd = _conditioned_factor(n, config.kappa_x, rng)
    u = haar_unitary(n, rng)
    v = haar_unitary(n, rng)
    sigmas = true_sigma_grid(n, config.kappa_sigma)
    alpha, gamma = _alpha_gamma(sigmas)
    x_ct = x_dd.conj_t()
    y_ct = y_dd.conj_t()
    w = cdd_solve(x_ct, cdd_diag(alpha))             # X^-* Sigma_alpha
    a_dd = cdd_solve(y_ct, w.conj_t()).conj_t()      # (X^-* Sigma_alpha) Y^-1
    b_dd = cdd_solve(x_ct, CDD.from_complex(u).conj_t())
    c_dd = cdd_solve(y_ct, cdd_diag(gamma).matmul(CDD.from_complex(v).conj_t())).conj_t()
    return GeneratedProblem(
        kind="rsvd", config=config,
        a=a_dd.to_complex(), b=b_dd.to_complex(), c=c_dd.to_complex(),
        sigmas=sigmas, sigma_alpha=alpha, sigma_beta=DD(np.ones(n)),
        sigma_gamma=gamma, u=u, v=v, x_dd=x_dd, y_dd=y_dd,
    )
