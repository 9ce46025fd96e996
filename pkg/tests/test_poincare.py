import numpy as np
import pytest

from kappa_star import poincare as pc
from kappa_star.errors import ContractError
from kappa_star.harness import Context, validate_config
from kappa_star.numerics import Grid1D, derivative
from kappa_star.poincare import GeneratorWord, act, word
from kappa_star.symbols import evaluate_many, integral, zero_symbol


@pytest.fixture(scope="module")
def boost_pair():
    # wider grids so that beta-weighted terms of N stay inside the box
    ctx = Context(validate_config({}))
    p0, p1 = ctx.params("boost")[:2]
    return p0.build(ctx.v_boost, ctx.b_boost), p1.build(ctx.v_boost, ctx.b_boost)


def test_E_is_alpha_derivative(gauss):
    alphas = np.linspace(-2.0, 2.0, 401)
    b = 0.9
    vals = evaluate_many(gauss, alphas, np.full_like(alphas, b))
    dvals = -1j * derivative(vals, Grid1D(-2.0, 2.0, 401), 8)
    got = evaluate_many(act(word("E"), gauss), alphas, np.full_like(alphas, b))
    assert np.max(np.abs(got - dvals)[20:-20]) <= 1e-7 * np.max(np.abs(dvals))


def test_eps_preserves_integral(gauss):
    assert act(word("Eps"), gauss).values[gauss.vgrid.n // 2, 7] == gauss.values[gauss.vgrid.n // 2, 7]
    assert integral(act(word("Eps"), gauss)) == integral(gauss)


def test_zero_and_bad_inputs(gauss):
    z = zero_symbol()
    for x in pc.LETTERS[:4]:
        assert np.all(act(word(x), z).values == 0)
    with pytest.raises(ContractError):
        act(word("Q"), gauss)
    with pytest.raises(ContractError):
        act(word("E"), gauss, kappa=0.0)


@pytest.mark.parametrize("name", ["[P,E]", "[P,Eps]", "[E,Eps]"])
def test_relations_without_boost(name, family):
    for k in (1.0, 2.0):
        assert pc.relation_residual(name, family[0], k) <= 1e-10


@pytest.mark.parametrize("name", ["[N,E]", "[N,P]"])
def test_boost_relations(name, boost_pair):
    assert pc.relation_residual(name, boost_pair[0], 2.0) <= 1e-6


def test_module_compat(family):
    assert pc.module_compat_residual("Eps", family[0], family[2], 1.0, 1.0) <= 1e-8
    assert pc.module_compat_residual("E", family[0], family[2], 2.0, 1.0) <= 1e-6


@pytest.mark.parametrize("x", ["E", "Eps"])
def test_involution_compat(x, boost_pair):
    assert pc.involution_compat_residual(x, boost_pair[0], 1.0, 1.0) <= 1e-7


def test_integral_invariance(family):
    f = family[1]
    assert pc.integral_invariance_residual("P", f, 1.0, 1.0) <= 1e-9
    assert pc.integral_invariance_residual("Eps", f, 1.0, 1.0) <= 1e-12


def test_twisted_trace(family):
    f, g = family[0], family[2]
    assert pc.twisted_trace_residual(f, f) <= 1e-7
    assert pc.twisted_trace_residual(f, g, 2.0) <= 1e-7
    assert pc.untwisted_trace_residual(f, g) >= 1e-3


@pytest.mark.parametrize("x", ["E", "Eps"])
def test_adjoint(x, boost_pair):
    assert pc.adjoint_residual(*boost_pair, GeneratorWord((x,), 1.0, 1.0), 1.0) <= 1e-7


def test_word_cancellation(gauss):
    w = GeneratorWord(("Eps", "EpsInv", "P", "EpsInv", "Eps"), 2.0, 1.0)
    assert w.cancelled().letters == ("P",)
    a, b = act(w, gauss), act(w.cancelled(), gauss)
    assert np.max(np.abs(a.values - b.values)) <= 1e-12 * b.sup_norm()


def test_words_act_rightmost_first(gauss):
    ab = act(word("E P"), gauss).values
    ref = act(word("E"), act(word("P"), gauss)).values
    assert np.array_equal(ab, ref)


def test_bare_boost_is_not_antisymmetric(boost_pair):
    # without the P term the boost fails the adjoint identity by O(1)
    r = pc.adjoint_residual(*boost_pair, word("N"), 1.0, n_shift=0.0)
    assert r >= 1e-3
