import numpy as np
import pytest

from kappa_star.errors import ContractError
from kappa_star.numerics import Grid1D
from kappa_star.phi import (
    AGOSTINI,
    BUILTIN_PHI,
    SYMMETRIC,
    PhiParametrization,
    get_phi,
    involution_phi,
    oracle_star_phi_point,
    star_phi,
    star_series,
    transport,
    transport_fft,
)
from kappa_star.star import conjugate, oracle_star_right_point, pointwise_product, rel_sup, star_kappa, star_left, star_right
from kappa_star.symbols import VGRID_REF, evaluate, make_bump_gaussian, mu_norm_sq, zero_symbol


def test_phi_values_and_singularities():
    a = np.array([-1.0, -1e-4, 0.0, 1e-4, 2.0])
    assert np.allclose(SYMMETRIC(a), np.where(a == 0, 1.0, (1 - np.exp(-a)) / np.where(a == 0, 1, a)), rtol=1e-12)
    assert np.allclose(AGOSTINI(a), np.where(a == 0, 1.0, (np.exp(a) - 1) / np.where(a == 0, 1, a)), rtol=1e-12)
    for p in BUILTIN_PHI.values():
        p.check_positive(VGRID_REF)
        assert np.allclose(p.eta(a) * p(a), 1.0)


def test_get_phi_rejects_unknown():
    with pytest.raises(ContractError):
        get_phi("nope")


def test_table_phi():
    g = Grid1D(-4.0, 4.0, 129)
    p = PhiParametrization.from_table(g, np.exp(-0.5 * g.points))
    assert p(0.3) == pytest.approx(np.exp(-0.15), rel=1e-10)
    with pytest.raises(ContractError):
        PhiParametrization.from_table(g, -np.ones(129))


def test_right_is_identity(gauss, gauss2):
    assert transport(gauss, "right") is gauss
    assert np.array_equal(star_phi(gauss, gauss2, "right").values, star_right(gauss, gauss2).values)
    o = oracle_star_phi_point(gauss, gauss2, "right", 0.3, 1.1)
    assert abs(o - oracle_star_right_point(gauss, gauss2, 0.3, 1.1)) <= 1e-8 * abs(o)


@pytest.mark.parametrize("name", ["left", "symmetric", "agostini"])
def test_transport_round_trip_and_isometry(name, family):
    for f in family[:3]:
        back = transport(transport(f, name, "to_right"), name, "from_right")
        assert rel_sup(back, f) <= 1e-8
    f = make_bump_gaussian(1.0, 2.5, 0.6, 1.0, 1)
    m0 = mu_norm_sq(f)
    assert abs(mu_norm_sq(transport(f, name, "to_right")) - m0) <= 1e-6 * m0


def test_transport_fft_agrees(gauss):
    a = transport(gauss, "symmetric")
    b = transport_fft(gauss, "symmetric")
    assert rel_sup(a, b) <= 1e-6


@pytest.mark.parametrize("name", ["left", "symmetric", "agostini"])
def test_transport_is_homomorphism(name, pair):
    f, g = pair
    lhs = transport(star_phi(f, g, name), name, "to_right")
    rhs = star_right(transport(f, name, "to_right"), transport(g, name, "to_right"))
    assert rel_sup(lhs, rhs) <= 1e-5


def test_left_phi_is_left_product(pair):
    f, g = pair
    assert rel_sup(star_phi(f, g, "left"), star_left(f, g)) <= 1e-6


def test_symmetric_involution_is_conjugation(family):
    for f in family:
        assert rel_sup(involution_phi(f, "symmetric"), conjugate(f)) <= 1e-6


def test_agostini_oracle(pair):
    f, g = pair
    sp = star_phi(f, g, "agostini")
    for a, b in [(0.3, 1.1), (-0.4, 0.6)]:
        o = oracle_star_phi_point(f, g, "agostini", a, b)
        assert abs(evaluate(sp, a, b) - o) <= 1e-5 * abs(o)
    assert oracle_star_phi_point(zero_symbol(), g, "agostini", 0.3, 1.1) == 0


def test_star_kappa_oracle(pair):
    # star_kappa(f, g, k) is star_right after rescaling v by 1/k
    f, g = pair
    k = 2.0
    fg = star_kappa(f, g, k)
    a, b = 0.3, 1.1
    o = oracle_star_right_point(f, g, a, b, kappa=k)
    assert abs(evaluate(fg, a, b) - o) <= 1e-6 * abs(o)


def test_commutative_limit(pair):
    f, g = pair
    ks = np.array([4.0, 8.0, 16.0, 32.0])
    pw = pointwise_product(f, g)
    errs = [np.max(np.abs(star_kappa(f, g, k).values - pw.values)) for k in ks]
    slope = -np.polyfit(np.log(ks), np.log(errs), 1)[0]
    assert abs(slope - 1.0) <= 0.2


def test_series(pair, family):
    f, g = pair
    assert rel_sup(star_series(f, g, 3.0, 0), pointwise_product(f, g)) <= 1e-14
    h = family[3]
    lhs = star_series(f * 2.0 + h, g, 8.0, 2)
    rhs = star_series(f, g, 8.0, 2) * 2.0 + star_series(h, g, 8.0, 2)
    assert rel_sup(lhs, rhs) <= 1e-12
    ks = np.array([4.0, 8.0, 16.0, 32.0])
    for N in (1, 2, 3):
        errs = [np.max(np.abs(star_kappa(f, g, k).values - star_series(f, g, k, N).values)) for k in ks]
        slope = -np.polyfit(np.log(ks), np.log(errs), 1)[0]
        assert abs(slope - (N + 1)) <= 0.3, (N, slope)
