import numpy as np
import pytest

from pencilsvd.ddarith import CDD, cdd_diag, dd_to_decimal_string
from pencilsvd.genmat import (
    GeneratorConfig,
    generate_qsvd,
    generate_rsvd,
    true_sigma_grid,
)
from pencilsvd.matcore import cond2_estimate, rank_with_tol

EPS_DD = 2.0 ** -104


def test_sigma_grid_n2():
    grid = true_sigma_grid(2, 100.0)
    assert np.allclose(grid.to_float(), [10.0, 0.1], rtol=1e-15)


def test_sigma_grid_n3_middle_one():
    grid = true_sigma_grid(3, 10.0)
    assert grid.to_float()[1] == 1.0
    assert np.allclose(grid.to_float(), [np.sqrt(10), 1.0, 1 / np.sqrt(10)], rtol=1e-15)


def test_sigma_grid_worked_example_digits():
    # 12-digit reference values for n = 4, kappa = 10
    grid = true_sigma_grid(4, 10.0)
    strs = [dd_to_decimal_string(grid[j], 13) for j in range(4)]
    assert strs[0].startswith("3.162277660168")
    assert strs[1].startswith("1.467799267622")
    assert strs[2].startswith("6.812920690580")  # 0.681292069058
    assert strs[3].startswith("3.162277660168")  # 0.316227766017


def test_sigma_grid_symmetry_product_one():
    for n, kappa in ((2, 10.0), (5, 1e4), (10, 1e13), (11, 7.3)):
        grid = true_sigma_grid(n, kappa)
        for j in range(n):
            prod = grid[j] * grid[n - 1 - j]
            assert abs(prod.to_float() - 1.0) <= 8 * EPS_DD * n
        ratio = grid[0] / grid[n - 1]
        assert abs(ratio.to_float() - kappa) <= kappa * 64 * EPS_DD * n


def test_config_validation():
    with pytest.raises(ValueError):
        GeneratorConfig(n=1, kappa_sigma=10, kappa_y=10)
    with pytest.raises(ValueError):
        GeneratorConfig(n=4, kappa_sigma=0.5, kappa_y=10)


def test_generate_qsvd_reconstruction_extended():
    cfg = GeneratorConfig(n=5, kappa_sigma=100.0, kappa_y=1e3, seed=11)
    prob = generate_qsvd(cfg)
    # A_dd Y = U Sigma_alpha to double-double accuracy; the stored working A
    # is its rounding, so A @ Y - U Sigma_alpha is dominated by that rounding
    ay = CDD.from_complex(prob.a).matmul(prob.y_dd)
    target = CDD.from_complex(prob.u).matmul(cdd_diag(prob.sigma_alpha))
    resid = ay - target
    mag = np.hypot(resid.re.hi, resid.im.hi).max()
    # |dA| <= eps |A|, amplified by ||Y|| = sqrt(kappa_y)
    bound = 4 * np.finfo(float).eps * np.abs(prob.a).max() * np.sqrt(cfg.kappa_y) * cfg.n
    assert mag <= bound


def test_generate_qsvd_extended_residual_tiny():
    # recompute the assembly residual entirely in extended precision
    from pencilsvd.ddarith import cdd_solve

    cfg = GeneratorConfig(n=4, kappa_sigma=10.0, kappa_y=100.0, seed=3)
    prob = generate_qsvd(cfg)
    y_ct = prob.y_dd.conj_t()
    a_dd = cdd_solve(y_ct, cdd_diag(prob.sigma_alpha).matmul(
        CDD.from_complex(prob.u).conj_t())).conj_t()
    resid = a_dd.matmul(prob.y_dd) - CDD.from_complex(prob.u).matmul(
        cdd_diag(prob.sigma_alpha))
    mag = np.hypot(resid.re.hi, resid.im.hi).max()
    assert mag <= 1e-25


def test_generate_rsvd_extended_residuals_tiny():
    from pencilsvd.ddarith import cdd_solve

    cfg = GeneratorConfig(n=4, kappa_sigma=10.0, kappa_y=100.0, kappa_x=50.0, seed=4)
    prob = generate_rsvd(cfg)
    x_ct = prob.x_dd.conj_t()
    # X* B = U* and (X* A) Y = Sigma_alpha, rebuilt fully in extended precision
    b_resid = x_ct.matmul(cdd_solve(x_ct, CDD.from_complex(prob.u).conj_t())) \
        - CDD.from_complex(prob.u).conj_t()
    assert np.hypot(b_resid.re.hi, b_resid.im.hi).max() <= 1e-25
    w = cdd_solve(x_ct, cdd_diag(prob.sigma_alpha))
    a_dd = cdd_solve(prob.y_dd.conj_t(), w.conj_t()).conj_t()
    a_resid = x_ct.matmul(a_dd.matmul(prob.y_dd)) - cdd_diag(prob.sigma_alpha)
    assert np.hypot(a_resid.re.hi, a_resid.im.hi).max() <= 1e-25


def test_generate_qsvd_kappa_y_one_unitary():
    cfg = GeneratorConfig(n=4, kappa_sigma=10.0, kappa_y=1.0, seed=5)
    prob = generate_qsvd(cfg)
    assert abs(cond2_estimate(prob.y) - 1.0) <= 1e-12


def test_generate_qsvd_condition_numbers():
    cfg = GeneratorConfig(n=6, kappa_sigma=10.0, kappa_y=1e5, seed=7)
    prob = generate_qsvd(cfg)
    assert abs(cond2_estimate(prob.y) - 1e5) <= 0.01 * 1e5
    # kappa(Sigma_alpha) = kappa(Sigma_gamma) = sqrt(kappa_sigma)
    ka = prob.sigma_alpha.to_float()
    kg = prob.sigma_gamma.to_float()
    assert ka.max() / ka.min() == pytest.approx(np.sqrt(10), rel=1e-10)
    assert kg.max() / kg.min() == pytest.approx(np.sqrt(10), rel=1e-10)


def test_generate_qsvd_quotients_equal_grid():
    cfg = GeneratorConfig(n=5, kappa_sigma=1e3, kappa_y=10.0, seed=9)
    prob = generate_qsvd(cfg)
    quot = prob.sigma_alpha / prob.sigma_gamma
    diff = quot - prob.sigmas
    assert np.max(np.abs(diff.hi) / prob.sigmas.hi) <= 16 * EPS_DD


def test_generate_qsvd_normalization():
    cfg = GeneratorConfig(n=4, kappa_sigma=100.0, kappa_y=10.0, seed=13)
    prob = generate_qsvd(cfg)
    unit = prob.sigma_alpha * prob.sigma_alpha + prob.sigma_gamma * prob.sigma_gamma
    assert np.max(np.abs(unit.to_float() - 1.0)) <= 16 * EPS_DD


def test_generate_rsvd_unitary_factors_reduce_to_svd():
    cfg = GeneratorConfig(n=4, kappa_sigma=10.0, kappa_y=1.0, kappa_x=1.0, seed=17)
    prob = generate_rsvd(cfg)
    # with unitary X, Y the restricted values are the ordinary singular
    # values of B^-1 A C^-1 = U Sigma_alpha Sigma_gamma^-1 V*, i.e. the grid
    vals = np.linalg.svd(np.linalg.solve(prob.b, prob.a) @ np.linalg.inv(prob.c),
                         compute_uv=False)
    assert np.allclose(np.sort(vals)[::-1], prob.true_sigmas_float(), rtol=1e-10)


def test_generate_rsvd_full_ranks_and_definite_rhs():
    cfg = GeneratorConfig(n=4, kappa_sigma=10.0, kappa_y=100.0, kappa_x=100.0, seed=19)
    prob = generate_rsvd(cfg)
    assert rank_with_tol(prob.b).rank == 4
    assert rank_with_tol(prob.c).rank == 4
    from pencilsvd.pencils import build_aug_rsvd

    pencil = build_aug_rsvd(prob.a, prob.b, prob.c)
    np.linalg.cholesky(pencil.rhs)  # raises if not positive definite


def test_generate_rsvd_sigma_grid_matches_qsvd():
    cfg = GeneratorConfig(n=4, kappa_sigma=10.0, kappa_y=100.0, kappa_x=10.0, seed=23)
    pq = generate_qsvd(cfg)
    pr = generate_rsvd(cfg)
    assert np.array_equal(pq.true_sigmas_float(), pr.true_sigmas_float())


def test_generator_determinism():
    cfg = GeneratorConfig(n=4, kappa_sigma=10.0, kappa_y=100.0, seed=29)
    p1 = generate_qsvd(cfg)
    p2 = generate_qsvd(cfg)
    assert np.array_equal(p1.a, p2.a)
    assert np.array_equal(p1.c, p2.c)
