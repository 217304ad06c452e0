import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from renyibound.quadrature import (
    EntropyValue,
    NonConvergenceError,
    QuadratureSpec,
    entropy_on_grid,
    gauss_legendre,
    half_line_rule,
    panel_rule,
    refine,
    xlogx,
)


def test_gauss_legendre_small():
    x, w = gauss_legendre(1)
    assert x.tolist() == [0.0] and w.tolist() == [2.0]
    x, w = gauss_legendre(2)
    assert np.allclose(np.sort(x), [-1 / math.sqrt(3), 1 / math.sqrt(3)], atol=1e-15)
    assert np.allclose(w, [1.0, 1.0], atol=1e-15)


def test_x4_exact_with_three_points():
    x, w = gauss_legendre(3)
    assert abs(np.sum(w * x**4) - 0.4) <= 1e-14


@pytest.mark.parametrize("n", [1, 2, 5, 17, 64, 96, 200, 768])
def test_weights_sum_to_two(n):
    x, w = gauss_legendre(n)
    assert abs(w.sum() - 2.0) <= 1e-14
    ref_x, ref_w = np.polynomial.legendre.leggauss(n)
    order = np.argsort(x)
    assert np.allclose(x[order], ref_x, atol=1e-14)
    assert np.allclose(w[order], ref_w, atol=1e-14)


@given(st.integers(1, 40), st.integers(0, 79))
def test_polynomial_exactness(n, k):
    if k > 2 * n - 1:
        return
    x, w = gauss_legendre(n)
    exact = 0.0 if k % 2 else 2.0 / (k + 1)
    assert abs(np.sum(w * x**k) - exact) <= 1e-13


def test_gauss_legendre_rejects_bad_size():
    for bad in (0, -3, 2.5):
        with pytest.raises(ValueError):
            gauss_legendre(bad)


def test_returned_rule_is_a_copy():
    x, _ = gauss_legendre(4)
    x[:] = 7
    assert gauss_legendre(4)[0][0] != 7


def test_panel_rule_endpoint_singularity():
    # sqrt-type endpoint behavior is handled by the clustering map
    x, w = panel_rule([0.0, 0.5, 1.0], 32)
    assert abs(np.sum(w * np.sqrt(x)) - 2 / 3) <= 1e-12
    x, w = panel_rule([0.0, 1.0], 16, cluster=False)
    assert abs(np.sum(w * x**3) - 0.25) <= 1e-15


@pytest.mark.parametrize("transform", ["rational", "exponential"])
def test_half_line_rule(transform):
    r, w = half_line_rule([1.0, 2.5], 96, 1.0, transform)
    assert np.all(np.isfinite(r)) and np.all(r >= 0)
    assert np.sum(w * np.exp(-r)) == pytest.approx(1.0, abs=1e-13)
    assert np.sum(w * r**4 * np.exp(-2 * r)) == pytest.approx(0.75, abs=1e-12)
    with pytest.raises(ValueError):
        half_line_rule([], 8, 1.0, "tan")


def test_spec_validation():
    QuadratureSpec()
    for kwargs in ({"base_order": 1}, {"rel_tol": 0.0}, {"max_refinements": 0}, {"radial_transform": "log"}):
        with pytest.raises(ValueError):
            QuadratureSpec(**kwargs)


def test_entropy_value_validation():
    EntropyValue(1.0, 2.0, "closed_form", 0.0)
    with pytest.raises(ValueError):
        EntropyValue(1.0, 2.0, "guess", 0.0)
    with pytest.raises(ValueError):
        EntropyValue(1.0, 2.0, "monte_carlo", math.inf)
    with pytest.raises(ValueError):
        EntropyValue(1.0, 2.0, "monte_carlo", -1e-3)


def test_refine_converges_and_reports_last_difference():
    calls = []

    def f(order):
        calls.append(order)
        return 1.0 + 1.0 / order**4

    value, err = refine(f, QuadratureSpec(base_order=8, rel_tol=1e-6))
    assert calls[:2] == [8, 16]
    assert err == pytest.approx(abs(1 / calls[-1] ** 4 - 1 / calls[-2] ** 4))
    assert err <= 1e-6 * value + 1e-12


def test_refine_raises_on_nonconvergence():
    with pytest.raises(NonConvergenceError):
        refine(lambda o: float(o), QuadratureSpec(base_order=4, max_refinements=3))
    with pytest.raises(NonConvergenceError):
        refine(lambda o: math.inf, QuadratureSpec(base_order=4))


def test_xlogx_zero_convention():
    assert xlogx(np.array([0.0, 1.0, math.e])).tolist() == [0.0, 0.0, math.e]


def test_entropy_on_grid_uniform():
    # uniform density 1/2 on [-1, 1]: every Renyi entropy is ln 2
    x, w = gauss_legendre(8)
    rho = np.full_like(x, 0.5)
    for lam in (0.3, 1.0, 1 + 1e-9, 2.0, 7.0):
        assert entropy_on_grid(rho, w, lam) == pytest.approx(math.log(2), abs=1e-14)


def test_entropy_on_grid_near_one_is_smooth():
    x, w = panel_rule([0.0, 1.0], 64)
    rho = 2 * x  # triangular density on [0, 1]: Shannon 1/2 - ln 2
    s = entropy_on_grid(rho, w, 1.0)
    assert s == pytest.approx(0.5 - math.log(2), abs=1e-12)
    for eps in (1e-6, 1e-9, 1e-12):
        assert abs(entropy_on_grid(rho, w, 1 + eps) - s) <= 10 * eps
        assert abs(entropy_on_grid(rho, w, 1 - eps) - s) <= 10 * eps
    # closed form: ln int (2x)^lam dx / (1 - lam) = (lam ln 2 - ln(lam + 1)) / (1 - lam)
    assert entropy_on_grid(rho, w, 3.0) == pytest.approx((3 * math.log(2) - math.log(4)) / -2, abs=1e-12)


def test_entropy_on_grid_wide_density():
    # int rho^lam is 1e-12 here; the expm1 form alone would lose digits
    x, w = gauss_legendre(4)
    width = 1e6
    rho = np.full_like(x, 1 / width)
    for lam in (3.0, 0.5, 1 + 1e-7):
        assert entropy_on_grid(rho, w * width / 2, lam) == pytest.approx(math.log(width), rel=1e-14)
