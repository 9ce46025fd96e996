import math

import numpy as np
import pytest

from kappa_star.errors import ContractError
from kappa_star.numerics import Grid1D, derivative, fft_1d, fit_order, integrate, interpolate, interpolate_many

G = Grid1D(-12.0, 12.0, 513)
B = G.points


def test_grid_basics():
    assert G.h == pytest.approx(24 / 512)
    assert G.symmetric and B[G.center_index] == 0.0
    assert G.refined(2).n == 1025
    assert Grid1D.from_dict(G.as_dict()) == G


@pytest.mark.parametrize("n", [1, 0])
def test_grid_rejects_degenerate(n):
    with pytest.raises(ContractError):
        Grid1D(0.0, 1.0, n)


def test_integrate_zero_and_gaussian():
    assert integrate(np.zeros(513), G) == 0.0
    val = integrate(np.exp(-B**2 / 2), G)
    assert abs(val - math.sqrt(2 * math.pi)) / math.sqrt(2 * math.pi) <= 1e-12


def test_integrate_odd():
    assert abs(integrate(B * np.exp(-B**2), G)) <= 1e-14


def test_interpolate_polynomial_reproduction(rng):
    p = np.polynomial.Polynomial([0.5, -1.0, 0.25, 0.03, -0.002])
    for x in rng.uniform(-11.0, 11.0, 25):
        assert abs(interpolate(p(B), G, x, 6) - p(x)) <= 1e-13 * max(1.0, abs(p(x)))


def test_interpolate_nodal():
    y = np.cos(B) + 1j * B
    for j in (3, 100, 256, 509):
        assert interpolate(y, G, B[j], 6) == y[j]


def test_interpolate_outside_is_zero():
    assert interpolate(np.ones(513), G, 12.5, 6) == 0.0
    assert np.all(interpolate_many(np.ones(513), G, np.array([-13.0, 40.0]), 4) == 0.0)


def test_interpolate_gaussian_order6():
    # exp(-b^2) at 0.37 with the order-6 stencil; the tolerance is the documented one
    assert abs(interpolate(np.exp(-B**2), G, 0.37, 6) - math.exp(-0.37**2)) <= 1e-10


def test_interpolate_gaussian_order8():
    assert abs(interpolate(np.exp(-B**2), G, 0.37, 8) - math.exp(-0.37**2)) <= 1e-10


def test_interpolate_rejects_odd_order():
    with pytest.raises(ContractError):
        interpolate(np.ones(513), G, 0.1, 5)


def test_derivative():
    assert np.all(derivative(np.full(513, 3.0), G, 8) == 0.0)
    assert np.max(np.abs(derivative(np.sin(B), G, 8) - np.cos(B))) <= 1e-9


def test_derivative_linear(rng):
    f, g = rng.standard_normal(513), rng.standard_normal(513)
    lhs = derivative(2.5 * f - 1j * g, G, 6)
    rhs = 2.5 * derivative(f, G, 6) - 1j * derivative(g, G, 6)
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * np.max(np.abs(rhs))


def test_fft_delta_and_unitarity(rng):
    d = np.zeros(64)
    d[0] = 1.0
    assert np.allclose(np.abs(fft_1d(d)), 64**-0.5, atol=1e-15)
    x = rng.standard_normal(128) + 1j * rng.standard_normal(128)
    fx = fft_1d(x, "forward")
    assert np.max(np.abs(fft_1d(fx, "inverse") - x)) <= 1e-13
    assert abs(np.linalg.norm(fx) - np.linalg.norm(x)) <= 1e-13 * np.linalg.norm(x)


def test_fit_order_recovers_slope():
    hs = np.array([0.1, 0.05, 0.025])
    assert fit_order(hs, 3.0 * hs**4) == pytest.approx(4.0, abs=1e-12)
