"""Uniform grids, trapezoid quadrature, local Lagrange interpolation,
finite differences and unitary FFTs.

Every routine is a pure function of its inputs. Array routines act along an
explicit ``axis`` so the same code serves the v, beta and s axes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ContractError

INTERP_ORDERS = (4, 6, 8)
FD_ACCURACIES = (4, 6, 8)


@dataclass(frozen=True)
class Grid1D:
    """``n`` equispaced points from ``lo`` to ``hi`` inclusive."""

    lo: float
    hi: float
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 9:
            raise ContractError(f"grid needs an integer n >= 9, got {self.n}")
        if not self.hi > self.lo:
            raise ContractError(f"grid needs hi > lo, got [{self.lo}, {self.hi}]")
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))
        object.__setattr__(self, "n", int(self.n))

    @property
    def h(self) -> float:
        return (self.hi - self.lo) / (self.n - 1)

    @property
    def points(self) -> np.ndarray:
        return self.lo + np.arange(self.n) * self.h

    @property
    def symmetric(self) -> bool:
        return self.n % 2 == 1 and abs(self.lo + self.hi) <= 1e-12 * (self.hi - self.lo)

    @property
    def center_index(self) -> int:
        if not self.symmetric:
            raise ContractError("grid is not symmetric about 0 with an odd point count")
        return (self.n - 1) // 2

    def refined(self, factor: int = 2) -> "Grid1D":
        """Same interval with ``factor`` times as many intervals."""
        return Grid1D(self.lo, self.hi, (self.n - 1) * factor + 1)

    def extended(self, lo_pad: float, hi_pad: float) -> "Grid1D":
        """Grid with the same spacing covering at least ``[lo-lo_pad, hi+hi_pad]``."""
        h = self.h
        k_lo = int(np.ceil(lo_pad / h - 1e-9)) if lo_pad > 0 else 0
        k_hi = int(np.ceil(hi_pad / h - 1e-9)) if hi_pad > 0 else 0
        return Grid1D(self.lo - k_lo * h, self.hi + k_hi * h, self.n + k_lo + k_hi)

    def as_dict(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "n": self.n}

    @classmethod
    def from_dict(cls, d: dict) -> "Grid1D":
        return cls(d["lo"], d["hi"], d["n"])


def trapezoid_weights(grid: Grid1D) -> np.ndarray:
    w = np.full(grid.n, grid.h)
    w[0] = w[-1] = 0.5 * grid.h
    return w


def integrate(samples, grid: Grid1D, axis: int = -1):
    """Composite trapezoid rule along ``axis``."""
    samples = np.asarray(samples)
    if samples.shape[axis] != grid.n:
        raise ContractError(
            f"samples have length {samples.shape[axis]} along axis {axis}, grid has {grid.n}"
        )
    w = trapezoid_weights(grid)
    return np.tensordot(np.moveaxis(samples, axis, -1), w, axes=([-1], [0]))


def lagrange_stencil(grid: Grid1D, x, order: int = 6):
    """Stencil start indices and weights for interpolating at points ``x``.

    Returns ``(start, weights, inside)`` where ``weights`` has shape
    ``x.shape + (order+1,)``. Points outside ``[lo, hi]`` get zero weights so
    the interpolant is zero-extended.
    """
    if order not in INTERP_ORDERS:
        raise ContractError(f"interpolation order must be one of {INTERP_ORDERS}, got {order}")
    x = np.asarray(x, dtype=float)
    h = grid.h
    t = (x - grid.lo) / h
    tol = 1e-9
    inside = (t >= -tol) & (t <= grid.n - 1 + tol)
    nearest = np.rint(t).astype(np.int64)
    start = np.clip(nearest - order // 2, 0, grid.n - 1 - order)
    tau = t - start
    nodes = np.arange(order + 1, dtype=float)
    weights = np.empty(x.shape + (order + 1,))
    for k in range(order + 1):
        w = np.ones_like(tau)
        for m in range(order + 1):
            if m != k:
                w = w * (tau - m) / (k - m)
        weights[..., k] = w
    del nodes
    weights[~inside] = 0.0
    start = np.where(inside, start, 0)
    return start, weights, inside


def interpolate_many(values, grid: Grid1D, x, order: int = 6, axis: int = -1):
    """Interpolate ``values`` (sampled on ``grid`` along ``axis``) at points ``x``.

    The output replaces ``axis`` by the shape of ``x``.
    """
    values = np.moveaxis(np.asarray(values), axis, -1)
    if values.shape[-1] != grid.n:
        raise ContractError("values do not match the grid length")
    x = np.asarray(x, dtype=float)
    start, weights, _ = lagrange_stencil(grid, x.ravel(), order)
    idx = start[:, None] + np.arange(order + 1)[None, :]
    gathered = values[..., idx]
    out = np.einsum("...ms,ms->...m", gathered, weights)
    out = out.reshape(values.shape[:-1] + x.shape)
    if x.ndim == 1:
        return np.moveaxis(out, -1, axis) if axis != -1 else out
    return out


def interpolate(samples, grid: Grid1D, x: float, order: int = 6) -> complex:
    """Local Lagrange interpolant on the centred ``order+1`` point stencil.

    Zero outside ``[grid.lo, grid.hi]``.
    """
    samples = np.asarray(samples)
    if samples.shape != (grid.n,):
        raise ContractError(f"expected {grid.n} samples, got shape {samples.shape}")
    start, weights, inside = lagrange_stencil(grid, np.array([x]), order)
    if not inside[0]:
        return 0.0 * samples[0]
    s = start[0]
    return np.dot(samples[s : s + order + 1], weights[0])


@lru_cache(maxsize=None)
def fd_weights(offsets: tuple, deriv: int = 1) -> np.ndarray:
    """Finite-difference weights on integer ``offsets`` (unit spacing), Fornberg's recursion."""
    x = np.asarray(offsets, dtype=float)
    n = len(x)
    c = np.zeros((n, deriv + 1))
    c1 = 1.0
    c4 = x[0]
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, deriv)
        c2 = 1.0
        c5 = c4
        c4 = x[i]
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, deriv].copy()


def derivative(samples, grid: Grid1D, accuracy: int = 8, axis: int = -1):
    """First derivative along ``axis``: central differences of the given accuracy,
    one-sided stencils of the same accuracy in the ``accuracy/2`` boundary points."""
    if accuracy not in FD_ACCURACIES:
        raise ContractError(f"accuracy must be one of {FD_ACCURACIES}, got {accuracy}")
    y = np.moveaxis(np.asarray(samples), axis, -1)
    n = y.shape[-1]
    if n != grid.n:
        raise ContractError("samples do not match the grid length")
    half = accuracy // 2
    out = np.zeros(y.shape, dtype=np.result_type(y.dtype, float))
    # stencils are written as differences so that constants give exactly zero
    central = fd_weights(tuple(range(-half, half + 1)))
    for k in range(1, half + 1):
        ck = 0.5 * (central[half + k] - central[half - k])
        out[..., half : n - half] += ck * (y[..., half + k : n - half + k] - y[..., half - k : n - half - k])
    for i in range(half):
        left = fd_weights(tuple(range(-i, accuracy + 1 - i)))
        block = y[..., : accuracy + 1]
        out[..., i] = np.tensordot(block - block[..., i : i + 1], left, axes=([-1], [0]))
        right = fd_weights(tuple(range(-(accuracy - i), i + 1)))
        block = y[..., n - 1 - accuracy :]
        out[..., n - 1 - i] = np.tensordot(block - block[..., accuracy - i : accuracy - i + 1], right, axes=([-1], [0]))
    out /= grid.h
    return np.moveaxis(out, -1, axis)


def fft_1d(samples, direction: str = "forward", axis: int = -1):
    """Unitary DFT along ``axis``; the length must be a power of two."""
    samples = np.asarray(samples)
    n = samples.shape[axis]
    if n < 1 or n & (n - 1):
        raise ContractError(f"fft_1d needs a power-of-two length, got {n}")
    if direction == "forward":
        return np.fft.fft(samples, axis=axis, norm="ortho")
    if direction == "inverse":
        return np.fft.ifft(samples, axis=axis, norm="ortho")
    raise ContractError(f"direction must be 'forward' or 'inverse', got {direction!r}")


def fit_order(hs, errors) -> float:
    """Least-squares slope of log(error) against log(h)."""
    hs = np.log(np.asarray(hs, dtype=float))
    es = np.log(np.asarray(errors, dtype=float))
    slope, _ = np.polyfit(hs, es, 1)
    return float(slope)
