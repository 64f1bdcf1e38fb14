import math

import numpy as np
import pytest

from bcml.quadrature import (
    gauss_laguerre,
    gauss_laguerre_eigvec_weights,
    gauss_legendre,
    legendre_panel,
)


@pytest.mark.parametrize("n", [4, 16, 64])
def test_laguerre_moments_are_factorials(n):
    x, w = gauss_laguerre(n)
    for k in range(0, min(2 * n - 1, 12), 3):
        assert np.sum(w * x ** k) == pytest.approx(math.factorial(k), rel=1e-12)


def test_laguerre_matches_numpy_reference():
    x, w = gauss_laguerre(64)
    xr, wr = np.polynomial.laguerre.laggauss(64)
    assert np.max(np.abs(x - xr)) < 1e-10
    assert np.max(np.abs((w - wr) / wr)) < 1e-10


def test_laguerre_weight_routes_agree_where_eigvec_is_healthy():
    # the closed-form weights must match the Golub-Welsch eigenvector route
    # down to its ~1e-30 noise floor, and stay meaningful far below it
    x, w = gauss_laguerre(200)
    w_eig = gauss_laguerre_eigvec_weights(200)
    mask = w_eig > 1e-8  # below this the eigenvector route loses digits itself
    assert mask.sum() > 30
    # smallest-node weights inherit ~1e-10 from eigenvalue-node error
    assert np.max(np.abs(w[mask] - w_eig[mask]) / w_eig[mask]) < 5e-9
    mid = np.searchsorted(x, 155.0)
    assert 1e-70 < w[mid] < 1e-60  # eigenvector route would report ~1e-34 noise


def test_laguerre_tail_weights_underflow_to_zero():
    x, w = gauss_laguerre(200)
    assert w[-1] == 0.0
    assert x[-1] > 700


def test_laguerre_large_n_moment():
    x, w = gauss_laguerre(200)
    assert np.sum(w) == pytest.approx(1.0, rel=1e-10)
    assert np.sum(w * x ** 5) == pytest.approx(120.0, rel=1e-10)


def test_laguerre_caches_and_readonly():
    x1, _ = gauss_laguerre(32)
    x2, _ = gauss_laguerre(32)
    assert x1 is x2
    with pytest.raises(ValueError):
        x1[0] = 0.0


def test_legendre_polynomial_exactness():
    x, w = gauss_legendre(8)
    assert np.sum(w) == pytest.approx(2.0, rel=1e-14)
    assert np.sum(w * x ** 14) == pytest.approx(2.0 / 15.0, rel=1e-12)


def test_legendre_panel_cosine():
    val = legendre_panel(lambda t: math.cos(t), 0.0, math.pi / 2, 20)
    assert val.real == pytest.approx(1.0, rel=1e-14)


def test_legendre_panel_complex_integrand():
    val = legendre_panel(lambda t: complex(math.cos(t), math.sin(t)), 0.0, math.pi, 24)
    assert val.real == pytest.approx(0.0, abs=1e-13)
    assert val.imag == pytest.approx(2.0, rel=1e-13)


@pytest.mark.parametrize("rule", [gauss_laguerre, gauss_legendre])
def test_positive_node_count_required(rule):
    with pytest.raises(ValueError):
        rule(0)
