import numpy as np
import pytest

from kappa_star.errors import SupportOverflowError
from kappa_star.symbols import BGRID_REF, VGRID_REF, evaluate, integral, make_bump_gaussian, zero_symbol
from kappa_star.star import (
    antipode,
    antipode_by_definition,
    coproduct_eval,
    coproduct_product_reduced,
    counit,
    involution_left,
    involution_right,
    oracle_star_right_point,
    rel_sup,
    star_integral,
    star_kappa,
    star_left,
    star_right,
    support_stray_mass,
    translate_imaginary,
)


def test_zero_products(gauss):
    z = zero_symbol()
    assert star_right(z, gauss).sup_norm() == 0.0
    assert star_left(gauss, z).sup_norm() == 0.0
    assert oracle_star_right_point(z, gauss, 0.3, 1.1) == 0


def test_support_is_additive():
    f = make_bump_gaussian(1.0, 0.2, 0.8)
    ff = star_right(f, f)
    assert ff.support == pytest.approx((-2.0, 2.0))
    assert support_stray_mass(ff, f.support) > 0
    assert support_stray_mass(ff, ff.support) <= 1e-10


def test_support_overflow():
    f = make_bump_gaussian(1.5, 0.0, 1.0, alpha0=0.0)
    g = f.with_values(f.values, (-2.5, 2.5))
    with pytest.raises(SupportOverflowError):
        star_right(g, g)


def test_bilinear(gauss, gauss2, family):
    h = family[1]
    lhs = star_right(gauss * 0.7j + h, gauss2)
    rhs = star_right(gauss, gauss2) * 0.7j + star_right(h, gauss2)
    assert rel_sup(lhs, rhs) <= 1e-12


def test_oracle_point(gauss, gauss2):
    fg = star_right(gauss, gauss2)
    o = oracle_star_right_point(gauss, gauss2, 0.3, 1.1)
    assert abs(evaluate(fg, 0.3, 1.1) - o) <= 1e-6 * abs(o)
    # a power of two scales every quadrature term without rounding
    assert oracle_star_right_point(gauss * 2.0, gauss2, 0.3, 1.1) == 2.0 * o
    c = 0.3 - 1.7j
    assert abs(oracle_star_right_point(gauss * c, gauss2, 0.3, 1.1) - c * o) <= 1e-15 * abs(c * o)


def test_kappa_one_is_right_product(gauss, gauss2):
    assert np.array_equal(star_kappa(gauss, gauss2, 1.0).values, star_right(gauss, gauss2).values)


def test_star_integral_matches_full_product(gauss, gauss2):
    for k in (1.0, 2.5):
        full = integral(star_kappa(gauss, gauss2, k))
        assert abs(star_integral(gauss, gauss2, k) - full) <= 1e-14 * abs(full)


def test_involution_support_and_integral(family):
    for f in family:
        fs = involution_right(f)
        assert fs.support == pytest.approx((-f.support[1], -f.support[0]))
        assert abs(integral(fs) - np.conj(integral(f))) <= 1e-8 * abs(integral(f))


def test_involution_is_involutive(family):
    for f in family:
        assert rel_sup(involution_right(involution_right(f)), f) <= 1e-8


def test_involution_is_involutive_doubled():
    from kappa_star.symbols import test_family

    for f in test_family(6, vgrid=VGRID_REF.refined(2), bgrid=BGRID_REF.refined(2)):
        assert rel_sup(involution_right(involution_right(f)), f) <= 1e-8


def test_involution_antihomomorphism(family):
    f, g = family[0], family[2]
    lhs = involution_right(star_right(f, g))
    rhs = star_right(involution_right(g), involution_right(f))
    assert rel_sup(lhs, rhs) <= 1e-6


def test_left_product(family):
    f, g, h = family[0], family[2], family[3]
    assert rel_sup(star_left(star_left(f, g), h), star_left(f, star_left(g, h))) <= 1e-6
    lhs = involution_left(star_left(f, g))
    assert rel_sup(lhs, star_left(involution_left(g), involution_left(f))) <= 1e-6


def test_translate_imaginary(gauss):
    assert np.array_equal(translate_imaginary(gauss, 0.0).values, gauss.values)
    back = translate_imaginary(translate_imaginary(gauss, 0.8), -0.8)
    assert np.max(np.abs(back.values - gauss.values)) <= 1e-15 * gauss.sup_norm()
    assert integral(translate_imaginary(gauss, 1.0)) == integral(gauss)


def test_antipode(family):
    for f in family:
        assert rel_sup(antipode(f), antipode_by_definition(f)) <= 1e-12
        assert abs(integral(antipode(f)) - integral(f)) <= 1e-8 * abs(integral(f))
        assert abs(counit(antipode(f)) - np.conj(counit(involution_right(f)))) <= 1e-8


def test_antipode_squared(family):
    for f in family:
        assert rel_sup(antipode(antipode(f)), f) <= 1e-8


def test_antipode_antihomomorphism(family):
    f, g = family[0], family[2]
    assert rel_sup(antipode(star_right(f, g)), star_right(antipode(g), antipode(f))) <= 1e-6


def test_coproduct_and_counit(gauss, gauss2):
    assert coproduct_eval(gauss, 0, 0, 0, 0) == counit(gauss)
    assert coproduct_eval(gauss, 0.2, -0.7, 0.4, 0.1) == coproduct_eval(gauss, -0.7, 0.2, 0.1, 0.4)
    assert counit(zero_symbol()) == 0
    fg = star_right(gauss, gauss2)
    assert abs(counit(fg) - counit(gauss) * counit(gauss2)) <= 1e-8
    for pt in [(0.2, -0.5, 0.7, 0.3), (0.1, 0.3, -0.4, 0.2)]:
        lhs = coproduct_eval(fg, *pt)
        assert abs(lhs - coproduct_product_reduced(gauss, gauss2, *pt)) <= 1e-7 * fg.sup_norm()


def test_positivity_and_non_trace(pair):
    f, g = pair
    assert integral(star_right(f, involution_right(f))).real > 0
    assert abs(integral(star_right(f, g)) - integral(star_right(g, f))) > 1e-3 * abs(integral(star_right(f, g)))
