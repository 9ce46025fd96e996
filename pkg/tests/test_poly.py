import time
from fractions import Fraction

import pytest

from kappa_star.errors import ContractError
from kappa_star.poincare import word
from kappa_star.poly import (
    GaussianRational,
    NCPolynomial,
    TensorPolynomial,
    format_poly,
    hopf_axiom_residual,
    monomials,
    parse_poly,
    poly_act,
    poly_antipode,
    poly_antipode_direct,
    poly_commutator,
    poly_coproduct,
    poly_counit,
    poly_involution,
    poly_star,
)

I = GaussianRational(0, 1)


def a(k=1):
    return NCPolynomial.alpha(k)


def b(k=1):
    return NCPolynomial.beta(k)


def mono(m, n, c=1, k=1):
    return NCPolynomial.monomial(m, n, c, k)


@pytest.mark.parametrize("kappa", [1, 2, Fraction(1, 3)])
def test_defining_relation(kappa):
    k = Fraction(kappa)
    assert poly_star(a(kappa), b(kappa)) == mono(1, 1, 1, kappa) + mono(0, 1, I / k, kappa)
    assert poly_star(b(kappa), a(kappa)) == mono(1, 1, 1, kappa)
    assert poly_commutator(a(kappa), b(kappa)) == mono(0, 1, I / k, kappa)
    assert poly_commutator(a(kappa), mono(0, 2, 1, kappa)) == mono(0, 2, 2 * I / k, kappa)


def test_unit():
    one = NCPolynomial.constant(1)
    for p in monomials(4):
        assert poly_star(one, p) == p and poly_star(p, one) == p


def test_kappa_mismatch():
    with pytest.raises(ContractError):
        poly_star(a(1), b(2))


def test_involution_examples():
    assert poly_involution(a()) == a() and poly_involution(b()) == b()
    assert poly_involution(mono(1, 1)) == mono(1, 1) + mono(0, 1, I)
    p = parse_poly("(1+2 i)*a^2*b^1 + (3/4)*b^3")
    assert poly_involution(poly_involution(p)) == p
    # antilinear
    assert poly_involution(p.scale(I)) == poly_involution(p).scale(-I)


def test_involution_antihomomorphism():
    ms = list(monomials(3))
    for p in ms:
        for q in ms:
            lhs = poly_involution(poly_star(p, q))
            assert lhs == poly_star(poly_involution(q), poly_involution(p))


def test_associativity_low_degree():
    ms = list(monomials(2))
    for p in ms:
        for q in ms:
            pq = poly_star(p, q)
            for r in ms:
                assert poly_star(pq, r) == poly_star(p, poly_star(q, r))


def test_coproduct_counit():
    one = NCPolynomial.constant(1)
    assert poly_coproduct(a()) == TensorPolynomial.from_legs([(1, a(), one), (1, one, a())])
    assert poly_coproduct(b()) == TensorPolynomial.from_legs([(1, b(), one), (1, one, b())])
    p = parse_poly("(2-1/3 i) + (1)*a^1*b^2")
    assert poly_counit(p) == GaussianRational(2, Fraction(-1, 3))
    for x in monomials(3):
        for y in monomials(3):
            assert poly_counit(poly_star(x, y)) == poly_counit(x) * poly_counit(y)


def test_antipode():
    assert poly_antipode(a()) == a().scale(-1)
    assert poly_antipode(b()) == b().scale(-1)
    ab = poly_star(a(), b())
    assert poly_antipode(ab) == poly_star(poly_antipode(b()), poly_antipode(a())) == mono(1, 1)
    for p in monomials(4):
        assert poly_antipode(p) == poly_antipode_direct(p)
        assert poly_antipode(poly_antipode(p)) == p


@pytest.mark.parametrize("p", ["(1)", "(1)*a^1", "(1)*b^1", "(1)*a^2*b^3", "(1/2+1 i)*a^1*b^4"])
def test_hopf_axiom(p):
    left, right = hopf_axiom_residual(parse_poly(p))
    assert left.is_zero() and right.is_zero()


def test_poincare_relations():
    ms = list(monomials(4, kappa=2))
    for p in ms:
        ne = poly_act(word("N E"), p) - poly_act(word("E N"), p)
        assert ne == poly_act(word("P"), p)
    p = parse_poly("(1)*a^2*b^1 + (-2)*a^1*b^3", kappa=1)
    assert poly_act(word("Eps"), p) == p.shift_alpha(I)


def test_boost_module_compatibility():
    ms = list(monomials(3))
    N, Eps = word("N"), word("Eps")
    for p in ms:
        for q in ms:
            lhs = poly_act(N, poly_star(p, q))
            assert lhs == poly_star(poly_act(N, p), q) + poly_star(poly_act(Eps, p), poly_act(N, q))


def test_parse_format_round_trip():
    assert format_poly(NCPolynomial({})) == "0"
    for text in ["0", "(1)*a^1", "(1/2-3 i)*a^2*b^1", "(-7/3)*b^5 + (0+2 i)*a^1"]:
        p = parse_poly(text)
        assert parse_poly(format_poly(p)) == p
    with pytest.raises(ContractError):
        parse_poly("a^^2")


def test_exact_suite_is_fast():
    t0 = time.perf_counter()
    for p in monomials(5):
        left, right = hopf_axiom_residual(p)
        assert left.is_zero() and right.is_zero()
    assert time.perf_counter() - t0 < 10.0
