"""kappa-Poincare generators acting on band-limited symbols.

Everything acts on the Fourier side ``f~(v, beta)``:

    E      -> multiply by v
    P      -> -i d/dbeta
    Eps    -> multiply by e^{-v/kappa}        (imaginary translation by 1/kappa)
    EpsInv -> multiply by e^{+v/kappa}
    L_a    -> i d/dv                          (multiplication by alpha)
    L_b    -> multiply by beta

    N = -i L_a P - (i kappa/2)(1 - Eps^2) L_b + (i/(2 kappa)) L_b P^2.

A :class:`GeneratorWord` is an operator product: the rightmost letter acts
first, so ``GeneratorWord(("N", "E"))`` is ``N E`` and applies E, then N.

The involution parameter ``q`` enters twice, as in the q-deformed Hopf
involution ``N* = -N + (q/kappa) P``: the boost acts as
``N_q = N + (q/(2 kappa)) P``, which is antisymmetric for q = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError
from .numerics import Grid1D, derivative, integrate
from .star import involution_right, star_integral, star_kappa
from .symbols import SQRT2PI, BGRID_REF, BandLimitedSymbol, integral, l2_inner

LETTERS = ("E", "P", "Eps", "EpsInv", "N")
FD_ACCURACY = 8

# The boost differentiates the bump profile in v (L_alpha) and multiplies by
# powers of beta before any dilation, so suites that use N run on a finer
# grid. v-supports of the Poincare family stay below 0.9, so products fit in
# [-2, 2].
BOOST_VGRID = Grid1D(-2.0, 2.0, 1025)
BOOST_BGRID = Grid1D(-12.0, 12.0, 1025)


@dataclass(frozen=True)
class GeneratorWord:
    letters: tuple = ()
    coefficient: complex = 1.0
    q: float = 1.0

    def __post_init__(self):
        letters = tuple(self.letters)
        for x in letters:
            if x not in LETTERS:
                raise ContractError(f"unknown generator {x!r}; expected one of {LETTERS}")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "coefficient", complex(self.coefficient))

    def __str__(self) -> str:
        body = " ".join(self.letters) or "1"
        return body if self.coefficient == 1 else f"({self.coefficient:g}) {body}"

    def cancelled(self) -> "GeneratorWord":
        """Remove adjacent Eps EpsInv / EpsInv Eps pairs."""
        out: list[str] = []
        for x in self.letters:
            if out and {out[-1], x} == {"Eps", "EpsInv"}:
                out.pop()
            else:
                out.append(x)
        return GeneratorWord(tuple(out), self.coefficient, self.q)

    def counit(self) -> complex:
        """eps(E) = eps(P) = eps(N) = 0, eps(Eps) = eps(EpsInv) = 1."""
        if any(x in ("E", "P", "N") for x in self.letters):
            return 0j
        return self.coefficient


def word(spec: str, coefficient: complex = 1.0, q: float = 1.0) -> GeneratorWord:
    """Parse a space separated word such as ``"N Eps"``."""
    return GeneratorWord(tuple(spec.split()), coefficient, q)


# -- Fourier-side building blocks ------------------------------------------

def _P(vals, f: BandLimitedSymbol):
    return -1j * derivative(vals, f.bgrid, FD_ACCURACY, axis=1)


def _E(vals, f):
    return vals * f.v[:, None]


def _eps(vals, f, kappa, power=1.0):
    return vals * np.exp(-power * f.v / kappa)[:, None]


def _La(vals, f):
    return 1j * derivative(vals, f.vgrid, FD_ACCURACY, axis=0)


def _Lb(vals, f):
    return vals * f.beta[None, :]


def boost_values(vals, f: BandLimitedSymbol, kappa: float, shift: float = 0.0, ordering: str = "LPP"):
    """N acting on Fourier-side values, plus ``shift * P``.

    ``ordering="LPP"`` uses the term L_b P^2; ``"PLP"`` uses P L_b P, the
    ordering that makes the operator antisymmetric up to the P term.
    """
    p1 = _P(vals, f)
    out = -1j * _La(p1, f)
    lb = _Lb(vals, f)
    out = out - 0.5j * kappa * (lb - _eps(lb, f, kappa, 2.0))
    if ordering == "LPP":
        out = out + (0.5j / kappa) * _Lb(_P(p1, f), f)
    elif ordering == "PLP":
        out = out + (0.5j / kappa) * _P(_Lb(p1, f), f)
    else:
        raise ContractError("ordering must be 'LPP' or 'PLP'")
    if shift:
        out = out + shift * p1
    return out


def apply_letter(letter: str, vals, f: BandLimitedSymbol, kappa: float, q: float = 1.0,
                 ordering: str = "LPP", n_shift: float | None = None):
    if letter == "E":
        return _E(vals, f)
    if letter == "P":
        return _P(vals, f)
    if letter == "Eps":
        return _eps(vals, f, kappa, 1.0)
    if letter == "EpsInv":
        return _eps(vals, f, kappa, -1.0)
    if letter == "N":
        shift = q / (2.0 * kappa) if n_shift is None else n_shift
        return boost_values(vals, f, kappa, shift, ordering)
    raise ContractError(f"unknown generator {letter!r}")


def act(w: GeneratorWord, f: BandLimitedSymbol, kappa: float = 1.0, ordering: str = "LPP",
        check: bool = True, n_shift: float | None = None) -> BandLimitedSymbol:
    """Apply the operator product ``w`` to f, rightmost letter first.

    N acts as ``N + (q/(2 kappa)) P`` with ``q = w.q``; ``n_shift`` replaces
    that coefficient of P when given.
    """
    if not kappa > 0:
        raise ContractError("kappa must be positive")
    vals = np.asarray(f.values)
    for letter in reversed(w.letters):
        vals = apply_letter(letter, vals, f, kappa, w.q, ordering, n_shift)
        if check and letter == "N":
            f.with_values(vals).check_tails()
    return f.with_values(w.coefficient * vals)


def act_sum(words, f: BandLimitedSymbol, kappa: float = 1.0, ordering: str = "LPP",
            n_shift: float | None = None) -> BandLimitedSymbol:
    acc = None
    for w in words:
        t = act(w, f, kappa, ordering, n_shift=n_shift)
        acc = t if acc is None else acc + t
    return acc if acc is not None else f * 0.0


# -- Hopf structure on words ---------------------------------------------------

def _antipode_letter(x: str, q: float) -> list[GeneratorWord]:
    if x == "E":
        return [GeneratorWord(("E",), -1.0, q)]
    if x == "Eps":
        return [GeneratorWord(("EpsInv",), 1.0, q)]
    if x == "EpsInv":
        return [GeneratorWord(("Eps",), 1.0, q)]
    if x == "P":
        return [GeneratorWord(("EpsInv", "P"), -1.0, q)]
    if x == "N":
        return [GeneratorWord(("EpsInv", "N"), -1.0, q)]
    raise ContractError(x)


def _star_letter(x: str, q: float, kappa: float) -> list[GeneratorWord]:
    """E* = E, P* = P, Eps* = Eps, N* = -N + (q/kappa) P."""
    if x == "N":
        out = [GeneratorWord(("N",), -1.0, q)]
        if q:
            out.append(GeneratorWord(("P",), q / kappa, q))
        return out
    return [GeneratorWord((x,), 1.0, q)]


def _product(parts: list[list[GeneratorWord]], coefficient: complex, q: float) -> list[GeneratorWord]:
    words = [GeneratorWord((), coefficient, q)]
    for part in parts:
        words = [GeneratorWord(a.letters + b.letters, a.coefficient * b.coefficient, q)
                 for a in words for b in part]
    return words


def antipode_word(w: GeneratorWord) -> list[GeneratorWord]:
    """S is an antihomomorphism: S(h1 ... hn) = S(hn) ... S(h1)."""
    return _product([_antipode_letter(x, w.q) for x in reversed(w.letters)], w.coefficient, w.q)


def star_words(words: list[GeneratorWord], kappa: float = 1.0) -> list[GeneratorWord]:
    """Antilinear antihomomorphic involution applied to a sum of words."""
    out: list[GeneratorWord] = []
    for w in words:
        out += _product([_star_letter(x, w.q, kappa) for x in reversed(w.letters)],
                        np.conj(w.coefficient), w.q)
    return out


# -- residuals -----------------------------------------------------------------

def _rel(a: BandLimitedSymbol, b: BandLimitedSymbol, scale: float | None = None) -> float:
    d = float(np.max(np.abs(a.values - b.values)))
    s = scale if scale is not None else max(a.sup_norm(), b.sup_norm())
    return d / s if s > 0 else d


RELATIONS = ("[P,E]", "[P,Eps]", "[E,Eps]", "[N,E]", "[N,Eps]", "[N,P]")


def relation_residual(name: str, f: BandLimitedSymbol, kappa: float = 1.0, q: float = 0.0) -> float:
    """Relative sup residual of one bracket relation applied to f.

    ``q`` replaces N by N + qP (the automorphism Lambda_q), which must leave
    every residual unchanged.
    """
    def N(vals):
        return boost_values(vals, f, kappa, q)

    def P(vals):
        return _P(vals, f)

    def E(vals):
        return _E(vals, f)

    def Eps(vals):
        return _eps(vals, f, kappa)

    x = np.asarray(f.values)
    if name == "[P,E]":
        lhs = P(E(x)) - E(P(x))
        rhs = np.zeros_like(lhs)
        scale = np.max(np.abs(P(E(x))))
    elif name == "[P,Eps]":
        lhs = P(Eps(x)) - Eps(P(x))
        rhs = np.zeros_like(lhs)
        scale = np.max(np.abs(P(Eps(x))))
    elif name == "[E,Eps]":
        lhs = E(Eps(x)) - Eps(E(x))
        rhs = np.zeros_like(lhs)
        scale = np.max(np.abs(E(Eps(x))))
    elif name == "[N,E]":
        lhs = N(E(x)) - E(N(x))
        rhs = P(x)
        scale = None
    elif name == "[N,Eps]":
        lhs = N(Eps(x)) - Eps(N(x))
        rhs = -(1.0 / kappa) * Eps(P(x))
        scale = None
    elif name == "[N,P]":
        lhs = N(P(x)) - P(N(x))
        px = P(x)
        rhs = 0.5 * kappa * (x - Eps(Eps(x))) - (0.5 / kappa) * P(px)
        scale = None
    else:
        raise ContractError(f"unknown relation {name!r}; expected one of {RELATIONS}")
    if scale is None:
        scale = np.max(np.abs(rhs))
    d = float(np.max(np.abs(lhs - rhs)))
    return d / scale if scale > 0 else d


COMPAT_GENERATORS = ("E", "P", "Eps", "N")


def module_compat_residual(generator: str, f: BandLimitedSymbol, g: BandLimitedSymbol,
                           kappa: float = 1.0, q: float = 1.0) -> float:
    """h(f*g) against the coproduct expansion under star_kappa."""
    def A(letter, x):
        return act(GeneratorWord((letter,), 1.0, q), x, kappa)

    def m(a, b):
        return star_kappa(a, b, kappa)

    lhs = A(generator, m(f, g))
    if generator == "E":
        rhs = m(A("E", f), g) + m(f, A("E", g))
    elif generator == "P":
        rhs = m(A("P", f), g) + m(A("Eps", f), A("P", g))
    elif generator == "Eps":
        rhs = m(A("Eps", f), A("Eps", g))
    elif generator == "N":
        rhs = m(A("N", f), g) + m(A("Eps", f), A("N", g))
    else:
        raise ContractError(f"generator must be one of {COMPAT_GENERATORS}")
    return _rel(lhs, rhs)


def involution_compat_residual(generator: str, f: BandLimitedSymbol, kappa: float = 1.0,
                               q: float = 1.0) -> float:
    """(h f)* against (S h)* f*, with the q-involution on the algebra side."""
    h = GeneratorWord((generator,), 1.0, q)
    lhs = involution_right(act(h, f, kappa), kappa)
    rhs = act_sum(star_words(antipode_word(h), kappa), involution_right(f, kappa), kappa)
    return _rel(lhs, rhs)


def integral_scale(f: BandLimitedSymbol) -> float:
    """sqrt(2 pi) * int |f~(0, beta)| dbeta: the size against which integrals are judged."""
    return float(SQRT2PI * integrate(np.abs(f.values[f.vgrid.center_index]), f.bgrid))


def integral_invariance_residual(generator: str, f: BandLimitedSymbol, kappa: float = 1.0,
                                 q: float = 1.0) -> float:
    h = generator if isinstance(generator, GeneratorWord) else GeneratorWord((generator,), 1.0, q)
    lhs = integral(act(h, f, kappa))
    rhs = h.counit() * integral(f)
    scale = integral_scale(f)
    return abs(lhs - rhs) / scale if scale > 0 else abs(lhs - rhs)


def twisted_trace_residual(f: BandLimitedSymbol, g: BandLimitedSymbol, kappa: float = 1.0) -> float:
    """|int f*g - int (Eps g)*f| relative to |int f*g|."""
    lhs = star_integral(f, g, kappa)
    rhs = star_integral(act(GeneratorWord(("Eps",)), g, kappa), f, kappa)
    s = max(abs(lhs), abs(rhs))
    return abs(lhs - rhs) / s if s > 0 else abs(lhs - rhs)


def untwisted_trace_residual(f: BandLimitedSymbol, g: BandLimitedSymbol, kappa: float = 1.0) -> float:
    lhs = star_integral(f, g, kappa)
    rhs = star_integral(g, f, kappa)
    s = max(abs(lhs), abs(rhs))
    return abs(lhs - rhs) / s if s > 0 else abs(lhs - rhs)


def _adjoint_sides(f, g, h, kappa, n_shift):
    hf = act(h, f, kappa, ordering="PLP", n_shift=n_shift)
    hstar_g = act_sum(star_words([h], kappa), g, kappa, ordering="PLP", n_shift=n_shift)
    return hf, hstar_g


def adjoint_residual(f: BandLimitedSymbol, g: BandLimitedSymbol, h: GeneratorWord,
                     kappa: float = 1.0, n_shift: float | None = None) -> float:
    """Relative residual of int (h f)*g^* = int f*(h^* g)^*.

    N is written with the P L_b P ordering and shifted by (q/(2 kappa)) P as
    in :func:`act`; h^* uses N* = -N + (q/kappa) P. ``n_shift=0`` drops the
    shift and keeps the bare P L_b P boost.
    """
    hf, hstar_g = _adjoint_sides(f, g, h, kappa, n_shift)
    lhs = star_integral(hf, involution_right(g, kappa), kappa)
    rhs = star_integral(f, involution_right(hstar_g, kappa), kappa)
    s = max(abs(lhs), abs(rhs))
    return abs(lhs - rhs) / s if s > 0 else abs(lhs - rhs)


def adjoint_defect(f: BandLimitedSymbol, g: BandLimitedSymbol, h: GeneratorWord, kappa: float = 1.0,
                   n_shift: float | None = None):
    """Both sides of the adjoint identity as plain L^2 pairings
    ``(<h f, g>, <f, h^* g>)``, for diagnostics."""
    hf, hstar_g = _adjoint_sides(f, g, h, kappa, n_shift)
    return l2_inner(hf, g), l2_inner(f, hstar_g)


def shifted_invariance(f: BandLimitedSymbol, shift: tuple, agrid: Grid1D | None = None) -> tuple:
    """(int f(alpha + a, beta + b), int f) by direct alpha x beta quadrature.

    The shifted integral is taken on an alpha period grid and a beta grid
    moved by ``b``; both must agree up to the tail bound.
    """
    from .numerics import trapezoid_weights
    from .symbols import SQRT2PI, alpha_period_grid, beta_slice

    a, b = shift
    agrid = agrid or alpha_period_grid(f.vgrid)
    cols = beta_slice(f, f.beta + b)  # f~(v_i, beta_j + b)
    phase = np.exp(1j * np.outer(agrid.points + a, f.v)) * trapezoid_weights(f.vgrid)[None, :]
    vals = phase @ cols / SQRT2PI
    wa = np.full(agrid.n, agrid.h)
    wa[-1] = 0.0  # periodic rule: the last node repeats the first
    wb = np.full(f.bgrid.n, f.bgrid.h)
    wb[[0, -1]] *= 0.5
    return complex(wa @ vals @ wb), integral(f)


__all__ = [
    "GeneratorWord",
    "word",
    "act",
    "act_sum",
    "antipode_word",
    "star_words",
    "relation_residual",
    "module_compat_residual",
    "involution_compat_residual",
    "integral_invariance_residual",
    "twisted_trace_residual",
    "untwisted_trace_residual",
    "adjoint_residual",
    "adjoint_defect",
    "shifted_invariance",
    "BOOST_BGRID",
    "RELATIONS",
    "BOOST_VGRID",
]
