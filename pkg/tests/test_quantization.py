import math

import numpy as np
import pytest

from kappa_star.errors import ContractError
from kappa_star.numerics import Grid1D
from kappa_star.quantization import (
    PhaseGrid,
    hs_norm_sq,
    kernel_rel_frobenius,
    kernel_sgrid,
    moyal_commutator_center,
    moyal_star,
    moyal_weyl_hs_check,
    op_compose,
    op_trace,
    psi_xi,
    psi_xi_isomorphism_check,
    rel_sup_array,
    square_block,
    symbol_trace,
    weyl_kernel,
)
from kappa_star.star import involution_right, star_right
from kappa_star.symbols import SGRID_REF, VGRID_REF, bump, make_bump_gaussian, mu_norm_sq, zero_symbol

TWO_PI = 2 * math.pi
SG = kernel_sgrid(VGRID_REF, SGRID_REF.lo, SGRID_REF.hi)
PHIS = ["right", "left", "symmetric", "agostini"]


@pytest.fixture(scope="module")
def mu_symbol():
    # a beta-moment keeps the |beta|^-1 weight integrable
    return make_bump_gaussian(0.9, 1.2, 0.7, 0.8 + 0.2j, 1)


@pytest.fixture(scope="module")
def mu_symbol2():
    return make_bump_gaussian(0.7, 2.0, 0.6, 1.0, 1, alpha0=0.3)


def test_zero_kernel():
    K = weyl_kernel(zero_symbol(), sgrid=SG)
    assert np.all(K.values == 0)
    assert hs_norm_sq(K) == 0.0 and op_trace(K) == 0


def test_bandwidth(mu_symbol):
    K = weyl_kernel(mu_symbol, sgrid=SG)
    assert K.band_ratio() <= 1e-12


def test_spot_value(mu_symbol):
    h = VGRID_REF.h
    sg = Grid1D(0.5 - 8 * h, 0.5 + 8 * h, 17)
    ug = Grid1D(0.7 - 16 * h, 0.7 + 16 * h, 33)
    K = weyl_kernel(mu_symbol, "plus", "right", sgrid=sg, ugrid=ug)
    b = math.exp(-0.5)
    exact = math.sqrt(TWO_PI) * (0.8 + 0.2j) * bump(0.2, 0.9) * b * math.exp(-((b - 1.2) ** 2) / (2 * 0.49))
    assert abs(K.values[8, 16] - exact) <= 1e-5 * abs(exact)


def test_kernel_value_on_vgrid(mu_symbol):
    # on the v-spaced s-grid the kernel only interpolates in beta
    K = weyl_kernel(mu_symbol, sgrid=SG)
    i = 40
    j = i + (K.ugrid.n - SG.n) // 2 + 3  # u - s = 3 h
    s = SG.points[i]
    b = math.exp(-s)
    exact = math.sqrt(TWO_PI) * (0.8 + 0.2j) * bump(3 * VGRID_REF.h, 0.9) * b * math.exp(-((b - 1.2) ** 2) / 0.98)
    assert abs(K.values[i, j] - exact) <= 1e-8 * abs(exact)


@pytest.mark.parametrize("phi", PHIS)
def test_hilbert_schmidt(phi, mu_symbol):
    target = TWO_PI * mu_norm_sq(mu_symbol, "plus")
    assert abs(hs_norm_sq(weyl_kernel(mu_symbol, "plus", phi, sgrid=SG)) - target) <= 1e-4 * target


def test_hs_sign_additivity():
    f = make_bump_gaussian(1.0, 1.5, 0.5, 1.0, 1) + make_bump_gaussian(1.0, -2.0, 0.6, 0.5, 1)
    both = TWO_PI * (mu_norm_sq(f, "plus") + mu_norm_sq(f, "minus"))
    hs = sum(hs_norm_sq(weyl_kernel(f, sgn, sgrid=SG)) for sgn in ("plus", "minus"))
    assert abs(hs - both) <= 1e-4 * both


@pytest.mark.parametrize("phi", PHIS)
def test_trace(phi, mu_symbol):
    t = symbol_trace(mu_symbol, "plus", sgrid=SG)
    assert abs(op_trace(weyl_kernel(mu_symbol, "plus", phi, sgrid=SG)) - t) <= 1e-4 * abs(t)


def test_trace_linear(mu_symbol, mu_symbol2):
    a = op_trace(weyl_kernel(mu_symbol * 2.0 + mu_symbol2, sgrid=SG))
    b = 2.0 * op_trace(weyl_kernel(mu_symbol, sgrid=SG)) + op_trace(weyl_kernel(mu_symbol2, sgrid=SG))
    assert abs(a - b) <= 1e-12 * abs(b)


def test_compose_rules(mu_symbol):
    K1 = weyl_kernel(mu_symbol, sgrid=SG)
    Z = weyl_kernel(zero_symbol(), sgrid=K1.ugrid)
    assert np.all(op_compose(K1, Z).values == 0)
    with pytest.raises(ContractError):
        op_compose(K1, K1)


def test_homomorphism(mu_symbol, mu_symbol2):
    K1 = weyl_kernel(mu_symbol, sgrid=SG)
    K2 = weyl_kernel(mu_symbol2, sgrid=K1.ugrid)
    C = op_compose(K1, K2)
    K12 = weyl_kernel(star_right(mu_symbol, mu_symbol2) * TWO_PI, sgrid=SG, ugrid=C.ugrid)
    assert kernel_rel_frobenius(C, K12) <= 1e-4


def test_involution_is_adjoint(pair):
    f = pair[0]
    K = weyl_kernel(f, sgrid=SG)
    Ks = square_block(weyl_kernel(involution_right(f), sgrid=SG))
    assert kernel_rel_frobenius(Ks, K.adjoint()) <= 1e-5


def test_positive_trace(family):
    for f in family[:3]:
        K = weyl_kernel(star_right(f, involution_right(f)), sgrid=SG)
        assert op_trace(K).real >= -1e-8


def test_trace_symmetry(mu_symbol, mu_symbol2):
    def tr(a, b):
        K1 = weyl_kernel(a, sgrid=SG)
        return op_trace(op_compose(K1, weyl_kernel(b, sgrid=K1.ugrid)))

    x, y = tr(mu_symbol, mu_symbol2), tr(mu_symbol2, mu_symbol)
    assert abs(x - y) <= 1e-5 * abs(x)


def test_injectivity_witness(mu_symbol, mu_symbol2):
    K1 = weyl_kernel(mu_symbol, sgrid=SG)
    d = K1 - weyl_kernel(mu_symbol2, sgrid=SG, ugrid=K1.ugrid)
    assert d.frobenius() >= (1 - 1e-3) * math.sqrt(TWO_PI * mu_norm_sq(mu_symbol - mu_symbol2))


# -- Moyal baseline --------------------------------------------------------------

GRID = PhaseGrid(8.0, 64)


def _gauss(grid, a0, b0, s):
    A, B = grid.mesh()
    return np.exp(-((A - a0) ** 2 + (B - b0) ** 2) / (2 * s * s))


def test_moyal_unit():
    g = _gauss(GRID, 0.2, -0.1, 0.9)
    c = slice(16, 48)
    assert rel_sup_array(moyal_star(np.ones_like(g), g, GRID)[c, c], g[c, c]) <= 1e-8


def test_moyal_commutator():
    assert abs(moyal_commutator_center(PhaseGrid(64.0, 64), 10.0) - 1j) <= 1e-4


def test_moyal_associativity():
    f, g, h = _gauss(GRID, 0.3, 0, 1.0), _gauss(GRID, -0.4, 0.2, 0.8), _gauss(GRID, 0, 0.5, 1.2)
    lhs = moyal_star(moyal_star(f, g, GRID), h, GRID)
    assert rel_sup_array(lhs, moyal_star(f, moyal_star(g, h, GRID), GRID)) <= 1e-6


def test_moyal_hs():
    assert moyal_weyl_hs_check(np.zeros((64, 64)), GRID) == (0.0, 0.0)
    f = _gauss(GRID, 0.3, -0.2, 1.0)
    fro, l2 = moyal_weyl_hs_check(f, GRID)
    assert abs(fro - l2) <= 1e-4 * l2
    fro3, l23 = moyal_weyl_hs_check(3.0 * f, GRID)
    assert fro3 == pytest.approx(9.0 * fro, rel=1e-14) and l23 == pytest.approx(9.0 * l2, rel=1e-14)


def test_psi_xi():
    f = _gauss(GRID, 0.3, -0.2, 1.0) * (1 + 0.5j)
    g = _gauss(GRID, -0.4, 0.1, 0.9)
    assert psi_xi_isomorphism_check(f, g, GRID, 0.0) <= 1e-12
    assert psi_xi_isomorphism_check(f, g, GRID, -0.5) <= 1e-5
    assert np.linalg.norm(psi_xi(f, GRID, -0.5)) == pytest.approx(np.linalg.norm(f), rel=1e-14)
