"""The phi-parametrized products, the transport between them, the
kappa-scaled product and the 1/kappa series product.

For a positive weight phi with eta = 1/phi, the transport

    Psi_phi f~(v, beta) = f~(v, phi(v) beta)

intertwines ``*_phi`` with the right product: ``Psi(f *_phi g) = Psi f * Psi g``.
Its inverse replaces phi by eta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ContractError, ResolutionError
from .numerics import Grid1D, derivative, fft_1d, interpolate_many, trapezoid_weights
from .star import (
    dilate,
    involution_right,
    nonzero_rows,
    pointwise_product,
    star_kappa,
    star_right,
)
from .symbols import SQRT2PI, BandLimitedSymbol

_SMALL = 1e-3


def _phi_symmetric(a):
    a = np.asarray(a, dtype=float)
    small = np.abs(a) < _SMALL
    safe = np.where(small, 1.0, a)
    exact = -np.expm1(-safe) / safe
    taylor = 1.0 - a / 2.0 + a**2 / 6.0 - a**3 / 24.0 + a**4 / 120.0
    return np.where(small, taylor, exact)


def _phi_agostini(a):
    a = np.asarray(a, dtype=float)
    small = np.abs(a) < _SMALL
    safe = np.where(small, 1.0, a)
    exact = np.expm1(safe) / safe
    taylor = 1.0 + a / 2.0 + a**2 / 6.0 + a**3 / 24.0 + a**4 / 120.0
    return np.where(small, taylor, exact)


@dataclass(frozen=True)
class PhiParametrization:
    """A positive weight ``phi`` and its reciprocal ``eta``."""

    name: str
    phi: Callable
    eta: Callable

    def __call__(self, a):
        return self.phi(a)

    def omega(self, a, b):
        """eta(a) phi(b) e^{b-a}."""
        return self.eta(a) * self.phi(b) * np.exp(np.asarray(b) - np.asarray(a))

    def check_positive(self, grid: Grid1D) -> None:
        vals = np.asarray(self.phi(grid.points))
        if not np.all(vals > 0) or not np.all(np.isfinite(vals)):
            raise ContractError(f"phi '{self.name}' is not positive on [{grid.lo}, {grid.hi}]")

    @classmethod
    def from_table(cls, grid: Grid1D, samples, name: str = "table") -> "PhiParametrization":
        """A weight given by samples on a v-grid, interpolated at order 6."""
        samples = np.asarray(samples, dtype=float)
        if samples.shape != (grid.n,) or np.any(samples <= 0):
            raise ContractError("phi table must hold one positive sample per grid node")

        def phi(a, _s=samples):
            a_arr = np.atleast_1d(np.asarray(a, dtype=float))
            out = np.real(interpolate_many(_s, grid, a_arr.ravel(), order=6)).reshape(a_arr.shape)
            return out if np.ndim(a) else float(out[0])

        return cls(name, phi, lambda a: 1.0 / phi(a))


RIGHT = PhiParametrization("right", lambda a: np.ones_like(np.asarray(a, dtype=float)),
                           lambda a: np.ones_like(np.asarray(a, dtype=float)))
LEFT = PhiParametrization("left", lambda a: np.exp(-np.asarray(a, dtype=float)),
                          lambda a: np.exp(np.asarray(a, dtype=float)))
SYMMETRIC = PhiParametrization("symmetric", _phi_symmetric, lambda a: 1.0 / _phi_symmetric(a))
AGOSTINI = PhiParametrization("agostini", _phi_agostini, lambda a: 1.0 / _phi_agostini(a))

BUILTIN_PHI = {p.name: p for p in (RIGHT, LEFT, SYMMETRIC, AGOSTINI)}


def get_phi(name_or_phi) -> PhiParametrization:
    if isinstance(name_or_phi, PhiParametrization):
        return name_or_phi
    try:
        return BUILTIN_PHI[name_or_phi]
    except KeyError:
        raise ContractError(
            f"unknown phi {name_or_phi!r}; builtins are {sorted(BUILTIN_PHI)}"
        ) from None


def _factors(f: BandLimitedSymbol, phi: PhiParametrization, direction: str) -> np.ndarray:
    phi.check_positive(f.vgrid)
    if direction == "to_right":
        return np.asarray(phi.phi(f.v), dtype=float)
    if direction == "from_right":
        return np.asarray(phi.eta(f.v), dtype=float)
    raise ContractError(f"direction must be 'to_right' or 'from_right', got {direction!r}")


def transport(f: BandLimitedSymbol, phi, direction: str = "to_right", order: int = 6) -> BandLimitedSymbol:
    """Psi_phi (``to_right``) or its inverse (``from_right``), row by row."""
    phi = get_phi(phi)
    fac = _factors(f, phi, direction)
    if phi.name == "right":
        return f
    return dilate(f, fac, order=order)


def transport_fft(f: BandLimitedSymbol, phi, direction: str = "to_right", pad: int = 4,
                  order: int = 6) -> BandLimitedSymbol:
    """Transport computed literally as F^-1 U F along beta.

    Each v-row is zero-padded to a power of two (the last beta node, which
    the tail bound makes negligible, is dropped first), transformed, the
    frequency axis is dilated with its Jacobian, and the row is transformed
    back. Slower and less accurate than :func:`transport`; it exists as an
    independent cross-check of the dilation identity.
    """
    phi = get_phi(phi)
    fac = _factors(f, phi, direction)
    nb = f.bgrid.n - 1
    if nb & (nb - 1):
        raise ResolutionError("transport_fft needs bgrid.n - 1 to be a power of two", axis="beta")
    m = nb * pad
    h = f.bgrid.h
    rows = nonzero_rows(f)
    out = np.zeros_like(f.values)
    # frequencies in increasing order; zero frequency at index m // 2
    k = np.arange(m) - m // 2
    db = 2.0 * math.pi / (m * h)
    bgrid_freq = Grid1D(k[0] * db, k[-1] * db, m)
    x0 = f.bgrid.lo
    buf = np.zeros((len(rows), m), dtype=complex)
    buf[:, :nb] = f.values[rows, :nb]
    spec = np.fft.fftshift(fft_1d(buf, "forward"), axes=-1)
    # fft assumes samples start at x = 0; undo the offset x0 as a phase
    spec = spec * np.exp(-1j * k * db * x0)[None, :]
    for r, i in enumerate(rows):
        eta = 1.0 / fac[i]
        vals = interpolate_many(spec[r], bgrid_freq, eta * k * db, order=order) * eta
        vals = vals * np.exp(1j * k * db * x0)
        back = fft_1d(np.fft.ifftshift(vals), "inverse")
        out[i, :nb] = back[:nb]
    return f.with_values(out)


def star_phi(f: BandLimitedSymbol, g: BandLimitedSymbol, phi, order: int = 6) -> BandLimitedSymbol:
    phi = get_phi(phi)
    if phi.name == "right":
        return star_right(f, g, order)
    prod = star_right(transport(f, phi, "to_right", order), transport(g, phi, "to_right", order), order)
    return transport(prod, phi, "from_right", order)


def involution_phi(f: BandLimitedSymbol, phi, order: int = 6) -> BandLimitedSymbol:
    phi = get_phi(phi)
    if phi.name == "right":
        return involution_right(f, order=order)
    inv = involution_right(transport(f, phi, "to_right", order), order=order)
    return transport(inv, phi, "from_right", order)


def oracle_star_phi_point(f: BandLimitedSymbol, g: BandLimitedSymbol, phi, alpha: float, beta: float) -> complex:
    """(f *_phi g)(alpha, beta) as the double sum over v-nodes (a, b)

        (2 pi)^-1 sum_{a,b} f~(b, omega(a,b) e^{a-b} beta) g~(a-b, omega(a,a-b) beta) e^{i alpha a}.
    """
    phi = get_phi(phi)
    f.require_compatible(g)
    fr = nonzero_rows(f)
    gr = nonzero_rows(g)
    if fr.size == 0 or gr.size == 0:
        return 0j
    v = f.v
    c0 = f.vgrid.center_index
    w = trapezoid_weights(f.vgrid)
    total = 0j
    for ia in range(f.vgrid.n):
        a = v[ia]
        ib = fr
        imb = ia - ib + c0  # index of a - b
        ok = (imb >= 0) & (imb < f.vgrid.n)
        ib, imb = ib[ok], imb[ok]
        ok = np.isin(imb, gr)
        ib, imb = ib[ok], imb[ok]
        if ib.size == 0:
            continue
        b = v[ib]
        fb = np.asarray(phi.omega(a, b) * np.exp(a - b) * beta, dtype=float)
        gb = np.asarray(phi.omega(a, a - b) * beta, dtype=float)
        fvals = _row_values(f, ib, fb)
        gvals = _row_values(g, imb, gb)
        total += w[ia] * np.exp(1j * alpha * a) * np.sum(w[ib] * fvals * gvals)
    return complex(total / (2.0 * math.pi))


def _row_values(f: BandLimitedSymbol, rows, betas) -> np.ndarray:
    """f~(v_rows[k], betas[k]) by beta interpolation."""
    from .numerics import lagrange_stencil

    start, wts, _ = lagrange_stencil(f.bgrid, betas, 6)
    idx = start[:, None] + np.arange(7)[None, :]
    return np.sum(f.values[rows[:, None], idx] * wts, axis=1)


def series_terms(f: BandLimitedSymbol, g: BandLimitedSymbol, order: int, accuracy: int = 8):
    """Pairs (d_alpha^n f, (beta d_beta)^n g) for n = 0..order."""
    f.require_compatible(g)
    df = f.values
    dg = g.values
    out = []
    beta = g.beta[None, :]
    for n in range(order + 1):
        if n:
            df = df * (1j * f.v)[:, None]
            dg = beta * derivative(dg, g.bgrid, accuracy, axis=1)
        out.append((f.with_values(df), g.with_values(dg)))
    return out


def star_series(f: BandLimitedSymbol, g: BandLimitedSymbol, kappa: float, order: int,
                accuracy: int = 8) -> BandLimitedSymbol:
    """sum_{n<=order} (i/kappa)^n / n! * d_alpha^n f * (beta d_beta)^n g (pointwise products)."""
    if not kappa > 0:
        raise ContractError("kappa must be positive")
    if int(order) != order or order < 0:
        raise ContractError("order must be a nonnegative integer")
    acc = None
    for n, (fn, gn) in enumerate(series_terms(f, g, int(order), accuracy)):
        term = pointwise_product(fn, gn) * ((1j / kappa) ** n / math.factorial(n))
        acc = term if acc is None else acc + term
    return acc


__all__ = [
    "PhiParametrization",
    "RIGHT",
    "LEFT",
    "SYMMETRIC",
    "AGOSTINI",
    "BUILTIN_PHI",
    "get_phi",
    "transport",
    "transport_fft",
    "star_phi",
    "involution_phi",
    "oracle_star_phi_point",
    "star_kappa",
    "star_series",
]
