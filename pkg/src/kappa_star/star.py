"""Right- and left-invariant star products, involutions, imaginary
translations and the Hopf maps on band-limited symbols.

Products are evaluated in the v-domain as a twisted convolution,

    (f*g)~(w, beta) = (2 pi)^(-1/2) int du f~(u, beta) g~(w-u, e^{-u/kappa} beta),

which on a symmetric v-grid needs interpolation in beta only. The direct
form with the alpha-side factor is kept as a pointwise oracle.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .errors import SupportOverflowError
from .symbols import (
    SQRT2PI,
    BandLimitedSymbol,
    beta_slice,
    evaluate,
    evaluate_many,
)
from .numerics import trapezoid_weights


def nonzero_rows(f: BandLimitedSymbol) -> np.ndarray:
    return np.nonzero(np.any(f.values != 0, axis=1))[0].astype(np.int64)


def _sum_support(f: BandLimitedSymbol, g: BandLimitedSymbol) -> tuple:
    lo = f.support[0] + g.support[0]
    hi = f.support[1] + g.support[1]
    slack = 1e-9 * f.vgrid.h
    if lo < f.vgrid.lo - slack or hi > f.vgrid.hi + slack:
        raise SupportOverflowError(
            f"product support [{lo:.4g}, {hi:.4g}] leaves the v-grid "
            f"[{f.vgrid.lo:.4g}, {f.vgrid.hi:.4g}]; use a wider v-grid",
            axis="v",
        )
    return (lo, hi)


def _convolve(outer: BandLimitedSymbol, inner: BandLimitedSymbol, scale: float, order: int) -> np.ndarray:
    """``h/sqrt(2 pi) * sum_i outer~(u_i) inner~(w-u_i, e^{-scale u_i} beta)``."""
    vals = kernels.twisted_conv(
        outer.values,
        inner.values,
        nonzero_rows(outer),
        nonzero_rows(inner),
        outer.v,
        float(scale),
        outer.bgrid.lo,
        outer.bgrid.h,
        int(order),
    )
    return vals * (outer.vgrid.h / SQRT2PI)


def star_kappa(f: BandLimitedSymbol, g: BandLimitedSymbol, kappa: float = 1.0, order: int = 6) -> BandLimitedSymbol:
    """Right star product with the dilation ``e^{-u/kappa}``."""
    f.require_compatible(g)
    if not kappa > 0:
        raise ValueError("kappa must be positive")
    sup = _sum_support(f, g)
    return f.with_values(_convolve(f, g, 1.0 / kappa, order), sup)


def star_integral(f: BandLimitedSymbol, g: BandLimitedSymbol, kappa: float = 1.0, order: int = 6) -> complex:
    """``integral(star_kappa(f, g, kappa))`` from the w = 0 row alone.

    The plane integral only sees ``(f*g)~(0, beta)``, so the full
    convolution is not needed; the same interpolation rule is used.
    """
    from .numerics import integrate, interpolate_many

    f.require_compatible(g)
    c = f.vgrid.center_index
    row = np.zeros(f.bgrid.n, dtype=complex)
    gz = set(nonzero_rows(g).tolist())
    for i in nonzero_rows(f):
        j = 2 * c - int(i)
        if j not in gz:
            continue
        dil = np.exp(-f.v[i] / kappa) * f.beta
        row += f.values[i] * interpolate_many(g.values[j], f.bgrid, dil, order=order)
    row *= f.vgrid.h / SQRT2PI
    return complex(SQRT2PI * integrate(row, f.bgrid))


def star_right(f: BandLimitedSymbol, g: BandLimitedSymbol, order: int = 6) -> BandLimitedSymbol:
    return star_kappa(f, g, 1.0, order)


def star_left(f: BandLimitedSymbol, g: BandLimitedSymbol, order: int = 6) -> BandLimitedSymbol:
    """(f.g)~(w, beta) = (2 pi)^-1/2 int dv f~(w-v, e^{v} beta) g~(v, beta)."""
    f.require_compatible(g)
    sup = _sum_support(f, g)
    return f.with_values(_convolve(g, f, -1.0, order), sup)


def pointwise_product(f: BandLimitedSymbol, g: BandLimitedSymbol) -> BandLimitedSymbol:
    """Commutative product f(alpha,beta) g(alpha,beta): a plain v-convolution."""
    f.require_compatible(g)
    sup = _sum_support(f, g)
    return f.with_values(_convolve(f, g, 0.0, 6), sup)


def dilate(f: BandLimitedSymbol, factors, *, reverse: bool = False, conj: bool = False,
           support=None, order: int = 6, check: bool = True) -> BandLimitedSymbol:
    """Rows ``f~(+-v_i, factors[i] * beta)``; ``reverse`` reads row ``-v_i``.

    Factors below one stretch the beta profile. If the stretched profile no
    longer decays inside the grid the result would be silently truncated,
    so ``check`` raises :class:`ResolutionError` instead.
    """
    src = f.values[::-1] if reverse else f.values
    rows = np.nonzero(np.any(src != 0, axis=1))[0].astype(np.int64)
    factors = np.asarray(factors, dtype=float)
    vals = kernels.dilate_rows(src, rows, factors[rows], f.bgrid.lo, f.bgrid.h, int(order))
    if conj:
        vals = np.conj(vals)
    out = f.with_values(vals, f.support if support is None else support)
    if check:
        out.check_tails()
    return out


def _reflected(support: tuple) -> tuple:
    return (-support[1], -support[0])


def involution_right(f: BandLimitedSymbol, kappa: float = 1.0, order: int = 6) -> BandLimitedSymbol:
    """(f*)~(v, beta) = conj f~(-v, e^{-v/kappa} beta)."""
    return dilate(f, np.exp(-f.v / kappa), reverse=True, conj=True,
                  support=_reflected(f.support), order=order)


def involution_left(f: BandLimitedSymbol, order: int = 6) -> BandLimitedSymbol:
    """conj f~(-v, e^{v} beta)."""
    return dilate(f, np.exp(f.v), reverse=True, conj=True,
                  support=_reflected(f.support), order=order)


def antipode(f: BandLimitedSymbol, kappa: float = 1.0, order: int = 6) -> BandLimitedSymbol:
    """(Sf)(alpha, beta) = conj(f*)(-alpha, -beta); on the Fourier side
    f~(-v, -e^{-v/kappa} beta)."""
    return dilate(f, -np.exp(-f.v / kappa), reverse=True, conj=False,
                  support=_reflected(f.support), order=order)


def reflect(f: BandLimitedSymbol) -> BandLimitedSymbol:
    """f(-alpha, -beta): both axes are symmetric, so this reverses both."""
    return f.with_values(f.values[::-1, ::-1], _reflected(f.support))


def conjugate(f: BandLimitedSymbol) -> BandLimitedSymbol:
    """Complex conjugate of f(alpha, beta): conj f~(-v, beta)."""
    return f.with_values(np.conj(f.values[::-1]), _reflected(f.support))


def antipode_by_definition(f: BandLimitedSymbol, kappa: float = 1.0) -> BandLimitedSymbol:
    return reflect(conjugate(involution_right(f, kappa)))


def translate_imaginary(f: BandLimitedSymbol, gamma: float) -> BandLimitedSymbol:
    """T_gamma f = f(alpha + i gamma, beta): rows scaled by e^{-gamma v}."""
    return f.with_values(f.values * np.exp(-gamma * f.v)[:, None])


def counit(f: BandLimitedSymbol) -> complex:
    return evaluate(f, 0.0, 0.0)


def coproduct_eval(f: BandLimitedSymbol, a1: float, a2: float, b1: float, b2: float) -> complex:
    """(Delta f)(a1, b1; a2, b2) = f(a1 + a2, b1 + b2)."""
    return evaluate(f, a1 + a2, b1 + b2)


def coproduct_product_reduced(f, g, a1, a2, b1, b2, kappa: float = 1.0) -> complex:
    """(Delta f)*(Delta g) at one point in its reduced single-integral form

        (2 pi)^-1/2 int dv f~(v, b) g(a, e^{-v} b) e^{i a v},   a = a1+a2, b = b1+b2.
    """
    return oracle_star_right_point(f, g, a1 + a2, b1 + b2, kappa)


def oracle_star_right_point(f: BandLimitedSymbol, g: BandLimitedSymbol, alpha: float, beta: float,
                            kappa: float = 1.0) -> complex:
    """(f*g)(alpha, beta) by direct quadrature of

        (2 pi)^-1/2 int dv f~(v, beta) g(alpha, e^{-v/kappa} beta) e^{i alpha v},

    with g evaluated on the alpha side at every dilated beta.
    """
    f.require_compatible(g)
    rows = nonzero_rows(f)
    if rows.size == 0 or not np.any(g.values):
        return 0j
    v = f.v[rows]
    fcol = beta_slice(f, np.array([beta]))[rows, 0]
    gvals = evaluate_many(g, np.full(v.shape, alpha), np.exp(-v / kappa) * beta)
    w = trapezoid_weights(f.vgrid)[rows]
    return complex(np.sum(w * fcol * gvals * np.exp(1j * alpha * v)) / SQRT2PI)


def oracle_star_left_point(f: BandLimitedSymbol, g: BandLimitedSymbol, alpha: float, beta: float) -> complex:
    """(f.g)(alpha, beta) = (2 pi)^-1/2 int dv g~(v, beta) f(alpha, e^{v} beta) e^{i alpha v}."""
    f.require_compatible(g)
    rows = nonzero_rows(g)
    if rows.size == 0 or not np.any(f.values):
        return 0j
    v = g.v[rows]
    gcol = beta_slice(g, np.array([beta]))[rows, 0]
    fvals = evaluate_many(f, np.full(v.shape, alpha), np.exp(v) * beta)
    w = trapezoid_weights(g.vgrid)[rows]
    return complex(np.sum(w * gcol * fvals * np.exp(1j * alpha * v)) / SQRT2PI)


def rel_sup(a: BandLimitedSymbol, b: BandLimitedSymbol) -> float:
    """``|a - b|_sup / |b|_sup`` (absolute when ``b`` vanishes)."""
    d = float(np.max(np.abs(a.values - b.values)))
    s = b.sup_norm()
    return d / s if s > 0 else d


def support_stray_mass(f: BandLimitedSymbol, support: tuple) -> float:
    v = f.v
    slack = 1e-9 * f.vgrid.h
    out = (v < support[0] - slack) | (v > support[1] + slack)
    tot = float(np.sum(np.abs(f.values) ** 2))
    return float(np.sum(np.abs(f.values[out]) ** 2)) / tot if tot else 0.0
