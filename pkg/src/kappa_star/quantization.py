"""Discretized quantization maps, their Hilbert-Schmidt and trace
identities, and the Moyal/Weyl baseline on plain 2-D grids.

The operator attached to a symbol acts on functions of s by the kernel

    K(s, u) = sqrt(2 pi) f~(u - s, +-phi(u - s) e^{-s}).

Composition of these kernels reproduces the product in the normalisation
without the 1/(2 pi) prefactor: ``K_f o K_g = K_{2 pi f*g}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import ContractError, ResolutionError
from .numerics import Grid1D, integrate, lagrange_stencil, trapezoid_weights
from .phi import get_phi
from .symbols import SGRID_REF, SQRT2PI, BandLimitedSymbol, _sign_value

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, eq=False)
class OperatorKernel:
    """K(s_i, u_j) on ``sgrid x ugrid`` for one representation sign."""

    sgrid: Grid1D
    ugrid: Grid1D
    values: np.ndarray
    sign: str = "plus"
    phi: str = "right"
    bandwidth: float = field(default=float("inf"))

    def __post_init__(self):
        vals = np.array(self.values, dtype=complex, copy=True)
        if vals.shape != (self.sgrid.n, self.ugrid.n):
            raise ContractError("kernel values do not match the grids")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "sign", "plus" if _sign_value(self.sign) > 0 else "minus")

    def frobenius(self) -> float:
        return math.sqrt(hs_norm_sq(self))

    def __sub__(self, other: "OperatorKernel") -> "OperatorKernel":
        _require_same(self, other)
        return OperatorKernel(self.sgrid, self.ugrid, self.values - other.values, self.sign, self.phi)

    def __mul__(self, c) -> "OperatorKernel":
        return OperatorKernel(self.sgrid, self.ugrid, complex(c) * self.values, self.sign, self.phi, self.bandwidth)

    __rmul__ = __mul__

    def adjoint(self) -> "OperatorKernel":
        """Conjugate transpose restricted to the square block sgrid x sgrid."""
        sq = square_block(self)
        return OperatorKernel(self.sgrid, self.sgrid, np.conj(sq.values.T), self.sign, self.phi)

    def band_ratio(self) -> float:
        """Largest entry with |u - s| beyond the bandwidth, relative to the max."""
        dist = np.abs(self.ugrid.points[None, :] - self.sgrid.points[:, None])
        peak = np.max(np.abs(self.values))
        if peak == 0 or not np.isfinite(self.bandwidth):
            return 0.0
        out = np.abs(self.values[dist > self.bandwidth + 1e-12])
        return float(out.max() / peak) if out.size else 0.0


def _require_same(a: OperatorKernel, b: OperatorKernel) -> None:
    if a.sgrid != b.sgrid or a.ugrid != b.ugrid or a.sign != b.sign:
        raise ContractError("kernels live on different grids or signs")


def default_ugrid(f: BandLimitedSymbol, sgrid: Grid1D) -> Grid1D:
    half = max(abs(f.support[0]), abs(f.support[1]))
    return sgrid.extended(half, half)


def interpolate_2d(f: BandLimitedSymbol, v, beta, order: int = 6) -> np.ndarray:
    """f~(v, beta) at scattered points: order-``order`` stencils in both axes."""
    v = np.asarray(v, dtype=float)
    beta = np.asarray(beta, dtype=float)
    shape = np.broadcast_shapes(v.shape, beta.shape)
    v = np.broadcast_to(v, shape).ravel()
    beta = np.broadcast_to(beta, shape).ravel()
    sv, wv, _ = lagrange_stencil(f.vgrid, v, order)
    sb, wb, _ = lagrange_stencil(f.bgrid, beta, order)
    out = np.zeros(v.shape, dtype=complex)
    ar = np.arange(order + 1)
    for a in range(order + 1):
        rows = f.values[sv + a]  # (m, nb)
        vals = np.take_along_axis(rows, sb[:, None] + ar[None, :], axis=1)
        out += wv[:, a] * np.sum(vals * wb, axis=1)
    return out.reshape(shape)


def kernel_sgrid(vgrid: Grid1D, lo: float = SGRID_REF.lo, hi: float = SGRID_REF.hi) -> Grid1D:
    """s-grid starting at ``lo`` with the v-spacing, reaching at least ``hi``.

    With this spacing every u - s is a v-node, so kernels need beta
    interpolation only.
    """
    n = int(math.ceil((hi - lo) / vgrid.h - 1e-9)) + 1
    return Grid1D(lo, lo + (n - 1) * vgrid.h, n)


def _on_vgrid(a: np.ndarray, f: BandLimitedSymbol):
    t = (a - f.vgrid.lo) / f.vgrid.h
    idx = np.rint(t).astype(np.int64)
    if np.all(np.abs(t - idx) < 1e-7):
        return idx
    return None


def weyl_kernel(f: BandLimitedSymbol, sign: str = "plus", phi="right", sgrid: Grid1D | None = None,
                ugrid: Grid1D | None = None, order: int = 6) -> OperatorKernel:
    """Matrix of sqrt(2 pi) f~(u - s, +-phi(u - s) e^{-s}).

    The default s-grid shares the v-spacing (see :func:`kernel_sgrid`). For
    other grids u - s falls between v-nodes and f~ is interpolated in both
    arguments, which is markedly less accurate for narrow bumps.
    """
    p = get_phi(phi)
    sgn = _sign_value(sign)
    sgrid = sgrid or kernel_sgrid(f.vgrid)
    ugrid = ugrid or default_ugrid(f, sgrid)
    s = sgrid.points[:, None]
    u = ugrid.points[None, :]
    a = u - s
    lo, hi = f.support
    band = (a >= lo - 1e-9) & (a <= hi + 1e-9)
    vals = np.zeros((sgrid.n, ugrid.n), dtype=complex)
    if np.any(band) and np.any(f.values):
        aa = a[band]
        bb = sgn * np.asarray(p.phi(aa), dtype=float) * np.exp(-np.broadcast_to(s, a.shape)[band])
        rows = _on_vgrid(aa, f)
        if rows is not None:
            st, w, _ = lagrange_stencil(f.bgrid, bb, order)
            idx = st[:, None] + np.arange(order + 1)[None, :]
            vals[band] = SQRT2PI * np.sum(f.values[rows[:, None], idx] * w, axis=1)
        else:
            vals[band] = SQRT2PI * interpolate_2d(f, aa, bb, order)
    half = max(abs(lo), abs(hi))
    return OperatorKernel(sgrid, ugrid, vals, "plus" if sgn > 0 else "minus", p.name, half)


def hs_norm_sq(K: OperatorKernel) -> float:
    dens = np.abs(K.values) ** 2
    return float(integrate(integrate(dens, K.ugrid, axis=1), K.sgrid))


def square_block(K: OperatorKernel) -> OperatorKernel:
    """Columns of K at the u-nodes that coincide with sgrid."""
    off = (K.sgrid.lo - K.ugrid.lo) / K.ugrid.h
    k = int(round(off))
    if abs(off - k) > 1e-9 or abs(K.sgrid.h - K.ugrid.h) > 1e-12 * K.sgrid.h:
        raise ContractError("sgrid is not a sub-grid of ugrid")
    return OperatorKernel(K.sgrid, K.sgrid, K.values[:, k : k + K.sgrid.n], K.sign, K.phi)


def op_trace(K: OperatorKernel) -> complex:
    """int K(s, s) ds."""
    diag = np.diagonal(square_block(K).values)
    return complex(integrate(diag, K.sgrid))


def op_compose(K1: OperatorKernel, K2: OperatorKernel) -> OperatorKernel:
    """(K1 K2)(s, u) = int dr K1(s, r) K2(r, u), trapezoid over the shared r-grid.

    K2 must be sampled with rows on K1's column grid.
    """
    if K1.ugrid != K2.sgrid:
        raise ContractError("op_compose needs K2.sgrid == K1.ugrid")
    if K1.sign != K2.sign:
        raise ContractError("op_compose needs kernels of the same sign")
    w = trapezoid_weights(K1.ugrid)
    vals = (K1.values * w[None, :]) @ K2.values
    return OperatorKernel(K1.sgrid, K2.ugrid, vals, K1.sign, K1.phi, K1.bandwidth + K2.bandwidth)


def kernel_rel_frobenius(a: OperatorKernel, b: OperatorKernel) -> float:
    _require_same(a, b)
    nb = hs_norm_sq(b)
    d = hs_norm_sq(a - b)
    return math.sqrt(d / nb) if nb > 0 else math.sqrt(d)


def symbol_trace(f: BandLimitedSymbol, sign: str = "plus", sgrid: Grid1D | None = None,
                 agrid: Grid1D | None = None) -> complex:
    """int ds int dalpha f(alpha, +-e^{-s}), with the alpha integral done on
    the alpha side over one period of the sampled inversion."""
    from .symbols import alpha_period_grid, beta_slice

    sgn = _sign_value(sign)
    sgrid = sgrid or kernel_sgrid(f.vgrid)
    agrid = agrid or alpha_period_grid(f.vgrid)
    cols = beta_slice(f, sgn * np.exp(-sgrid.points))  # (nv, ns)
    w = trapezoid_weights(f.vgrid)
    phase = np.exp(1j * np.outer(agrid.points, f.v)) * w[None, :] / SQRT2PI
    fa = phase @ cols  # f(alpha_k, beta(s_m))
    return complex(integrate(integrate(fa, agrid, axis=0), sgrid))


# -- Moyal / Weyl baseline ---------------------------------------------------

@dataclass(frozen=True)
class PhaseGrid:
    """Square power-of-two lattice for plain functions of (alpha, beta)."""

    L: float
    n: int

    def __post_init__(self):
        if self.n & (self.n - 1) or self.n < 8:
            raise ContractError("phase-space grid needs a power-of-two n >= 8")

    @property
    def h(self) -> float:
        return 2.0 * self.L / self.n

    @property
    def points(self) -> np.ndarray:
        return -self.L + np.arange(self.n) * self.h

    @property
    def freqs(self) -> np.ndarray:
        """Angular frequencies, increasing, zero at index n // 2."""
        return (np.arange(self.n) - self.n // 2) * (2.0 * math.pi / (self.n * self.h))

    def mesh(self):
        return np.meshgrid(self.points, self.points, indexing="ij")


def _fourier2(F: np.ndarray, grid: PhaseGrid) -> np.ndarray:
    """(2 pi)^-1 int dalpha dbeta F e^{-i(a alpha + b beta)} on the frequency lattice."""
    x = grid.points
    k = grid.freqs
    spec = np.fft.fftshift(np.fft.fft2(F))
    ph = np.exp(-1j * k * x[0])
    return spec * np.outer(ph, ph) * grid.h**2 / TWO_PI


def _inverse_fourier2(S: np.ndarray, grid: PhaseGrid) -> np.ndarray:
    x = grid.points
    k = grid.freqs
    ph = np.exp(1j * k * x[0])
    S = S * np.outer(ph, ph)
    dk = 2.0 * math.pi / (grid.n * grid.h)
    return np.fft.ifft2(np.fft.ifftshift(S)) * grid.n**2 * dk**2 / TWO_PI


def twisted_product(FS, GS, grid: PhaseGrid, xi: float = 0.0) -> np.ndarray:
    """Twisted convolution of two frequency-side arrays,

        (F o G)(a, b) = int da' db' F(a', b') G(a - a', b - b') e^{i theta},
        theta = (a b' - a' b)/2 - xi (a' (b - b') + (a - a') b'),

    by direct double sum. ``xi = 0`` is the Weyl twist.
    """
    k = grid.freqs
    c = grid.n // 2
    dk = k[1] - k[0]
    if xi == 0.0:
        out = kernels.twisted_phase_sum(FS, GS, k, k, c, c)
    else:
        # absorb the xi-dependent piece into the factors: it splits as
        # e^{-i xi (a'b - 2 a'b' + a b')} = product of pieces in single pairs
        out = _xi_twisted(FS, GS, k, c, xi)
    return out * dk * dk


def _xi_twisted(FS, GS, k, c, xi):
    n = len(k)
    out = np.zeros((n, n), dtype=complex)
    FS = np.asarray(FS, dtype=complex)
    GS = np.asarray(GS, dtype=complex)
    for r in range(n):
        for s in range(n):
            f = FS[r, s]
            if f == 0:
                continue
            p_lo, p_hi = max(0, r - c), min(n - 1, r - c + n - 1)
            q_lo, q_hi = max(0, s - c), min(n - 1, s - c + n - 1)
            a = k[p_lo : p_hi + 1][:, None]
            b = k[q_lo : q_hi + 1][None, :]
            a1, b1 = k[r], k[s]
            theta = 0.5 * (a * b1 - a1 * b) - xi * (a1 * (b - b1) + (a - a1) * b1)
            g = GS[p_lo - r + c : p_hi - r + c + 1, q_lo - s + c : q_hi - s + c + 1]
            out[p_lo : p_hi + 1, q_lo : q_hi + 1] += f * g * np.exp(1j * theta)
    return out


def moyal_star(f: np.ndarray, g: np.ndarray, grid: PhaseGrid, xi: float = 0.0) -> np.ndarray:
    """Weyl product with unit normalisation: 1 *_0 g = g and
    alpha *_0 beta - beta *_0 alpha = i."""
    FS = _fourier2(np.asarray(f, dtype=complex), grid)
    GS = _fourier2(np.asarray(g, dtype=complex), grid)
    return _inverse_fourier2(twisted_product(FS, GS, grid, xi), grid) / TWO_PI


def psi_xi(f: np.ndarray, grid: PhaseGrid, xi: float) -> np.ndarray:
    """Reparametrisation of the Heisenberg group realised on the Fourier side
    by the unimodular multiplier e^{i xi a b}."""
    k = grid.freqs
    S = _fourier2(np.asarray(f, dtype=complex), grid) * np.exp(1j * xi * np.outer(k, k))
    return _inverse_fourier2(S, grid)


def psi_xi_isomorphism_check(f: np.ndarray, g: np.ndarray, grid: PhaseGrid, xi: float) -> float:
    """Relative sup residual of Psi(f *_xi g) against Psi f *_0 Psi g.

    The left side uses the product with the xi-shifted twist, the right side
    the Weyl product; Psi is the Fourier multiplier e^{i xi a b}.
    """
    lhs = psi_xi(moyal_star(f, g, grid, xi), grid, xi)
    rhs = moyal_star(psi_xi(f, grid, xi), psi_xi(g, grid, xi), grid)
    scale = np.max(np.abs(rhs))
    return float(np.max(np.abs(lhs - rhs)) / scale) if scale else float(np.max(np.abs(lhs)))


def weyl_kernel_moyal(f: np.ndarray, grid: PhaseGrid) -> tuple[np.ndarray, np.ndarray]:
    """Kernel K(x, y) = int dalpha f(alpha, (x+y)/2) e^{-i alpha (x-y)}.

    x and y run over every other beta node so that (x+y)/2 is again a node.
    Returns the kernel and the x-grid spacing.
    """
    f = np.asarray(f, dtype=complex)
    n = grid.n
    x_idx = np.arange(0, n, 2)
    xs = grid.points[x_idx]
    al = grid.points
    mid = (x_idx[:, None] + x_idx[None, :]) // 2
    diff = xs[:, None] - xs[None, :]
    K = np.zeros((len(xs), len(xs)), dtype=complex)
    h = grid.h
    for a_i in range(n):
        K += f[a_i][mid] * np.exp(-1j * al[a_i] * diff) * h
    return K, 2.0 * h


def moyal_weyl_hs_check(f: np.ndarray, grid: PhaseGrid) -> tuple[float, float]:
    """(Frobenius^2 of the Weyl kernel, 2 pi ||f||_2^2)."""
    K, hx = weyl_kernel_moyal(f, grid)
    fro = float(np.sum(np.abs(K) ** 2) * hx * hx)
    l2 = float(np.sum(np.abs(f) ** 2) * grid.h**2)
    return fro, TWO_PI * l2


def moyal_commutator_center(grid: PhaseGrid, width: float = 10.0) -> complex:
    """[alpha m, beta m] under the Weyl product at the origin, m a Gaussian
    mollifier of the given width. The leading term is i m(0)^2 = i; the
    next order is about 1/(2 width^4)."""
    A, B = grid.mesh()
    m = np.exp(-(A**2 + B**2) / (2.0 * width * width))
    com = moyal_star(A * m, B * m, grid) - moyal_star(B * m, A * m, grid)
    c = grid.n // 2
    return complex(com[c, c])


def rel_sup_array(a, b) -> float:
    s = np.max(np.abs(b))
    d = np.max(np.abs(np.asarray(a) - np.asarray(b)))
    return float(d / s) if s else float(d)
