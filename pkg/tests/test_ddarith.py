import numpy as np
import pytest
from fractions import Fraction

from pencilsvd.ddarith import (
    DD,
    CDD,
    cdd_diag,
    cdd_solve,
    dd_nth_root,
    dd_pow_int,
    dd_to_decimal_string,
)

EPS_DD = 2.0 ** -104


def exact(x: DD):
    """Exact rational value of a dd scalar."""
    return Fraction(float(x.hi)) + Fraction(float(x.lo))


def rel_err(x: DD, ref: Fraction) -> float:
    if ref == 0:
        return float(abs(exact(x)))
    return float(abs((exact(x) - ref) / ref))


def test_add_mul_div_against_exact_rationals():
    rng = np.random.default_rng(1)
    for _ in range(200):
        a = DD(rng.standard_normal(), rng.standard_normal() * 1e-18)
        b = DD(rng.standard_normal(), rng.standard_normal() * 1e-18)
        fa, fb = exact(a), exact(b)
        assert rel_err(a + b, fa + fb) <= 4 * EPS_DD
        assert rel_err(a - b, fa - fb) <= 4 * EPS_DD
        assert rel_err(a * b, fa * fb) <= 4 * EPS_DD
        if fb != 0:
            assert rel_err(a / b, fa / fb) <= 4 * EPS_DD


def test_vectorized_ops_match_scalar():
    rng = np.random.default_rng(2)
    a = DD(rng.standard_normal(16), rng.standard_normal(16) * 1e-18)
    b = DD(rng.standard_normal(16), rng.standard_normal(16) * 1e-18)
    c = a * b + a / b
    for i in range(16):
        ci = a[i] * b[i] + a[i] / b[i]
        assert float(ci.hi) == float(c.hi[i])
        assert float(ci.lo) == float(c.lo[i])


def test_sqrt_squares_back():
    rng = np.random.default_rng(3)
    vals = np.abs(rng.standard_normal(50)) + 0.1
    a = DD(vals)
    s = a.sqrt()
    for i in range(50):
        err = rel_err(s[i] * s[i], Fraction(float(vals[i])))
        assert err <= 8 * EPS_DD
    z = DD(np.array(0.0)).sqrt()
    assert float(z.hi) == 0.0 and float(z.lo) == 0.0


def test_roundtrip_binary64_exact():
    x = np.array([1.0, -3.5, 1e-300, 7.1e200, 0.1])
    assert np.array_equal(DD.from_float(x).to_float(), x)


def test_to_float_rounds_correctly():
    a = DD(1.0, 2.0 ** -54)  # halfway case rounds to even
    assert a.to_float() == 1.0
    b = DD(1.0, 2.0 ** -53 + 2.0 ** -60)
    assert b.to_float() == 1.0 + 2.0 ** -52


def test_pow_int_and_nth_root():
    k = DD(np.array(10.0))
    r = dd_nth_root(k, 6)
    assert rel_err(dd_pow_int(r, 6), Fraction(10)) <= 64 * EPS_DD
    assert rel_err(dd_pow_int(r, -6) * 10, Fraction(1)) <= 64 * EPS_DD
    with pytest.raises(ValueError):
        dd_nth_root(DD(np.array(-1.0)), 3)


def test_complex_mul_div():
    rng = np.random.default_rng(4)
    z = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    w = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    zc, wc = CDD.from_complex(z), CDD.from_complex(w)
    prod = (zc * wc).to_complex()
    quot = (zc / wc).to_complex()
    assert np.max(np.abs(prod - z * w)) <= 1e-15 * np.max(np.abs(z * w))
    assert np.max(np.abs(quot - z / w)) <= 1e-14 * np.max(np.abs(z / w))


def test_cdd_matmul_precision():
    # Hilbert-like product that loses digits in binary64
    n = 6
    h = np.array([[1.0 / (i + j + 1) for j in range(n)] for i in range(n)])
    hc = CDD.from_complex(h + 0j)
    prod = hc.matmul(hc)
    ref = np.zeros((n, n), dtype=object)
    hf = [[Fraction(h[i, j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            ref[i, j] = sum(hf[i][k] * hf[k][j] for k in range(n))
    for i in range(n):
        for j in range(n):
            got = Fraction(float(prod.re.hi[i, j])) + Fraction(float(prod.re.lo[i, j]))
            assert abs(got - ref[i, j]) <= Fraction(1, 10 ** 30)


def test_cdd_solve_residual_in_dd():
    rng = np.random.default_rng(5)
    n = 8
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    b = rng.standard_normal((n, 3)) + 1j * rng.standard_normal((n, 3))
    ac, bc = CDD.from_complex(a), CDD.from_complex(b)
    x = cdd_solve(ac, bc)
    resid = ac.matmul(x) - bc
    mag = np.abs(resid.re.hi) + np.abs(resid.im.hi)
    assert mag.max() <= 1e-28


def test_cdd_solve_vector_rhs_and_singular():
    a = CDD.from_complex(np.array([[2.0, 0.0], [0.0, 4.0]]) + 0j)
    b = CDD.from_complex(np.array([2.0, 4.0]) + 0j)
    x = cdd_solve(a, b)
    assert np.allclose(x.to_complex(), [1.0, 1.0])
    sing = CDD.from_complex(np.array([[1.0, 1.0], [1.0, 1.0]]) + 0j)
    with pytest.raises(ZeroDivisionError):
        cdd_solve(sing, b)


def test_cdd_diag_and_conj_t():
    d = cdd_diag(DD(np.array([1.0, 2.0])))
    assert np.array_equal(d.to_complex(), np.diag([1.0 + 0j, 2.0 + 0j]))
    z = CDD.from_complex(np.array([[1 + 2j, 3j], [0, 4.0]]))
    assert np.array_equal(z.conj_t().to_complex(), np.array([[1 + 2j, 3j], [0, 4.0]]).conj().T)


def test_decimal_string_30_digits():
    x = DD(np.array(1.0)) / DD(np.array(3.0))
    s = dd_to_decimal_string(x, digits=30)
    assert s.startswith("0.333333333333333333333333333333") or s.startswith("3.33333333333333333333333333333")
    t = dd_to_decimal_string(DD(np.array(10.0)).sqrt(), digits=30)
    assert t.startswith("3.16227766016837933199889354443")
