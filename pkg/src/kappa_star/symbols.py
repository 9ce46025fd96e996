"""Band-limited symbols stored through their partial Fourier transform.

A symbol ``f(alpha, beta)`` is kept as ``ft[i, j] = f~(v_i, beta_j)`` with

    f~(v, beta) = (2 pi)^(-1/2) * integral dalpha f(alpha, beta) exp(-i v alpha),

so compact alpha-support is a hard zero pattern in the rows of ``ft``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError, ResolutionError
from .numerics import Grid1D, integrate, interpolate_many, trapezoid_weights

SQRT2PI = math.sqrt(2.0 * math.pi)
TAIL_TOL = 1e-12

VGRID_REF = Grid1D(-4.0, 4.0, 129)
BGRID_REF = Grid1D(-12.0, 12.0, 513)
SGRID_REF = Grid1D(-math.log(12.0), 12.0, 257)


@dataclass(frozen=True, eq=False)
class BandLimitedSymbol:
    """Immutable symbol on a ``vgrid x bgrid`` lattice with alpha-support ``support``."""

    vgrid: Grid1D
    bgrid: Grid1D
    values: np.ndarray
    support: tuple = field(default=(0.0, 0.0))

    def __post_init__(self):
        if not self.vgrid.symmetric or not self.bgrid.symmetric:
            raise ContractError("vgrid and bgrid must be symmetric about 0 with odd n")
        vals = np.array(self.values, dtype=complex, copy=True)
        if vals.shape != (self.vgrid.n, self.bgrid.n):
            raise ContractError(
                f"values shape {vals.shape} does not match grids ({self.vgrid.n}, {self.bgrid.n})"
            )
        lo, hi = (float(self.support[0]), float(self.support[1]))
        if lo > hi:
            raise ContractError(f"empty support interval [{lo}, {hi}]")
        v = self.vgrid.points
        slack = 1e-9 * self.vgrid.h
        vals[(v < lo - slack) | (v > hi + slack), :] = 0.0
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "support", (lo, hi))

    # -- convenience -----------------------------------------------------
    @property
    def shape(self):
        return self.values.shape

    @property
    def v(self) -> np.ndarray:
        return self.vgrid.points

    @property
    def beta(self) -> np.ndarray:
        return self.bgrid.points

    def with_values(self, values, support=None) -> "BandLimitedSymbol":
        return BandLimitedSymbol(self.vgrid, self.bgrid, values, self.support if support is None else support)

    def compatible(self, other: "BandLimitedSymbol") -> bool:
        return self.vgrid == other.vgrid and self.bgrid == other.bgrid

    def require_compatible(self, other: "BandLimitedSymbol") -> None:
        if not self.compatible(other):
            raise ContractError("symbols live on different grids")

    def __add__(self, other):
        self.require_compatible(other)
        sup = (min(self.support[0], other.support[0]), max(self.support[1], other.support[1]))
        return self.with_values(self.values + other.values, sup)

    def __sub__(self, other):
        return self + (-1.0) * other

    def __mul__(self, c):
        return self.with_values(complex(c) * self.values)

    __rmul__ = __mul__

    def __neg__(self):
        return (-1.0) * self

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0

    def tail_ratio(self) -> float:
        """Largest outer-column magnitude relative to the global maximum."""
        peak = self.sup_norm()
        if peak == 0.0:
            return 0.0
        edge = max(np.max(np.abs(self.values[:, 0])), np.max(np.abs(self.values[:, -1])))
        return float(edge / peak)

    def check_tails(self, tol: float = TAIL_TOL) -> "BandLimitedSymbol":
        r = self.tail_ratio()
        if r > tol:
            raise ResolutionError(
                f"beta tail mass {r:.3e} exceeds {tol:.1e}; widen the beta grid", axis="beta"
            )
        return self

    def padded(self, vgrid: Grid1D) -> "BandLimitedSymbol":
        """Re-embed on a wider v-grid with the same spacing (zero rows added)."""
        if abs(vgrid.h - self.vgrid.h) > 1e-12 * self.vgrid.h or vgrid.n < self.vgrid.n:
            raise ContractError("padding grid must share the spacing and be at least as wide")
        extra = (vgrid.n - self.vgrid.n) // 2
        vals = np.zeros((vgrid.n, self.bgrid.n), dtype=complex)
        vals[extra : extra + self.vgrid.n] = self.values
        return BandLimitedSymbol(vgrid, self.bgrid, vals, self.support)


def zero_symbol(vgrid: Grid1D = VGRID_REF, bgrid: Grid1D = BGRID_REF) -> BandLimitedSymbol:
    return BandLimitedSymbol(vgrid, bgrid, np.zeros((vgrid.n, bgrid.n)), (0.0, 0.0))


def bump(v, V: float) -> np.ndarray:
    """exp(1 - 1/(1-(v/V)^2)) on |v| < V, zero elsewhere; equals 1 at v = 0."""
    v = np.asarray(v, dtype=float)
    x = v / V
    out = np.zeros_like(x)
    inside = np.abs(x) < 1.0
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - x[inside] ** 2))
    return out


def make_bump_gaussian(
    V: float,
    center_b: float,
    sigma: float,
    amp: complex = 1.0,
    bmoment: int = 0,
    vgrid: Grid1D = VGRID_REF,
    bgrid: Grid1D = BGRID_REF,
    alpha0: float = 0.0,
    check: bool = True,
) -> BandLimitedSymbol:
    """``amp * bump_V(v) * beta^bmoment * exp(-(beta-c)^2/(2 sigma^2))``.

    ``alpha0`` multiplies the rows by ``exp(-i v alpha0)``, which translates
    the symbol to ``f(alpha - alpha0, beta)`` and breaks the v-parity of the
    plain family.
    """
    if V <= 0 or sigma <= 0:
        raise ContractError("V and sigma must be positive")
    if int(bmoment) != bmoment or bmoment < 0:
        raise ContractError("bmoment must be a nonnegative integer")
    if V > min(-vgrid.lo, vgrid.hi) + 1e-12:
        raise ResolutionError(f"bump half-width {V} exceeds the v-grid", axis="v")
    v = vgrid.points
    b = bgrid.points
    row = bump(v, V) * np.exp(-1j * v * alpha0)
    col = b ** int(bmoment) * np.exp(-((b - center_b) ** 2) / (2.0 * sigma**2))
    f = BandLimitedSymbol(vgrid, bgrid, complex(amp) * np.outer(row, col), (-V, V))
    if check and amp != 0:
        f.check_tails()
    return f


def beta_slice(f: BandLimitedSymbol, beta, order: int = 6) -> np.ndarray:
    """Values ``f~(v_i, beta_m)``, shape ``(nv,) + beta.shape``."""
    return interpolate_many(f.values, f.bgrid, beta, order=order, axis=-1)


def evaluate_many(f: BandLimitedSymbol, alpha, beta, order: int = 6) -> np.ndarray:
    """``f(alpha_k, beta_k)`` for paired arrays of points."""
    alpha = np.atleast_1d(np.asarray(alpha, dtype=float))
    beta = np.broadcast_to(np.atleast_1d(np.asarray(beta, dtype=float)), alpha.shape)
    cols = beta_slice(f, beta.ravel(), order)  # (nv, m)
    w = trapezoid_weights(f.vgrid)
    phase = np.exp(1j * np.outer(f.v, alpha.ravel()))
    out = np.einsum("i,im,im->m", w, cols, phase) / SQRT2PI
    return out.reshape(alpha.shape)


def evaluate(f: BandLimitedSymbol, alpha: float, beta: float, order: int = 6) -> complex:
    """Fourier inversion in v with beta interpolation; zero outside the beta grid."""
    return complex(evaluate_many(f, [alpha], [beta], order)[0])


def to_alpha_grid(f: BandLimitedSymbol, agrid: Grid1D) -> np.ndarray:
    """``f(alpha_k, beta_j)`` on ``agrid x bgrid`` (beta on its own nodes)."""
    w = trapezoid_weights(f.vgrid)
    phase = np.exp(1j * np.outer(agrid.points, f.v)) * w[None, :]
    return phase @ f.values / SQRT2PI


def value_at_v0(f: BandLimitedSymbol) -> np.ndarray:
    """The column ``f~(0, beta_j)``; v = 0 is a node of every symmetric grid."""
    return f.values[f.vgrid.center_index]


def integral(f: BandLimitedSymbol) -> complex:
    """Plane integral of f, i.e. sqrt(2 pi) * integral dbeta f~(0, beta)."""
    return complex(SQRT2PI * integrate(value_at_v0(f), f.bgrid))


def _mu_integral(f: BandLimitedSymbol, sign: str, sgrid: Grid1D) -> float:
    sgn = _sign_value(sign)
    betas = sgn * np.exp(-sgrid.points)
    cols = beta_slice(f, betas)  # (nv, ns)
    dens = np.abs(cols) ** 2
    return float(integrate(integrate(dens, f.vgrid, axis=0), sgrid))


def _sign_value(sign) -> float:
    if sign in ("plus", "+", 1, +1.0):
        return 1.0
    if sign in ("minus", "-", -1, -1.0):
        return -1.0
    raise ContractError(f"sign must be 'plus' or 'minus', got {sign!r}")


def mu_norm_sq(
    f: BandLimitedSymbol, sign: str = "plus", sgrid: Grid1D = SGRID_REF, rtol: float = 1e-6
) -> float:
    """Squared norm in L^2(|beta|^-1 dalpha dbeta) over one sign half-line.

    Computed as ``int ds int dv |f~(v, +-e^-s)|^2``. The s-range is then
    extended by two units on both sides; a relative change above ``rtol``
    means mass sits near beta = 0 that the grid does not capture.
    """
    val = _mu_integral(f, sign, sgrid)
    wider = sgrid.extended(2.0, 2.0)
    val2 = _mu_integral(f, sign, wider)
    # mass below the tail tolerance of the whole symbol is not resolved either way
    floor = TAIL_TOL * float(integrate(integrate(np.abs(f.values) ** 2, f.vgrid, axis=0), f.bgrid))
    scale = max(abs(val2), floor, 1e-300)
    if abs(val2 - val) > rtol * scale:
        raise ResolutionError(
            f"mu-norm changes by {abs(val2 - val) / scale:.2e} when the s-range grows; "
            "mass near beta=0 is unresolved",
            axis="s",
        )
    return val


def l2_inner(f: BandLimitedSymbol, g: BandLimitedSymbol) -> complex:
    """``int f conj(g) dalpha dbeta`` evaluated as ``int f~ conj(g~) dv dbeta``."""
    f.require_compatible(g)
    dens = f.values * np.conj(g.values)
    return complex(integrate(integrate(dens, f.vgrid, axis=0), f.bgrid))


def l2_inner_alpha(f: BandLimitedSymbol, g: BandLimitedSymbol, agrid: Grid1D) -> complex:
    """Same functional integrated in (alpha, beta) after inversion onto ``agrid``."""
    f.require_compatible(g)
    fa = to_alpha_grid(f, agrid)
    ga = to_alpha_grid(g, agrid)
    return complex(integrate(integrate(fa * np.conj(ga), agrid, axis=0), f.bgrid))


def alpha_period_grid(vgrid: Grid1D, n: int | None = None) -> Grid1D:
    """One period ``[-pi/h, pi/h]`` of the sampled inversion, on which
    discrete Plancherel is exact (endpoints share a value, so trapezoid
    equals the periodic rectangle rule)."""
    half = math.pi / vgrid.h
    n = n or (vgrid.n - 1) * 2 + 1
    return Grid1D(-half, half, n)


# -- canonical test family --------------------------------------------------

@dataclass(frozen=True)
class FamilyParams:
    V: float
    center_b: float
    sigma: float
    amp: complex
    bmoment: int
    alpha0: float

    def as_dict(self) -> dict:
        return {
            "V": self.V,
            "center_b": self.center_b,
            "sigma": self.sigma,
            "amp": [self.amp.real, self.amp.imag],
            "bmoment": self.bmoment,
            "alpha0": self.alpha0,
        }

    def build(self, vgrid: Grid1D = VGRID_REF, bgrid: Grid1D = BGRID_REF) -> BandLimitedSymbol:
        return make_bump_gaussian(
            self.V, self.center_b, self.sigma, self.amp, self.bmoment, vgrid, bgrid, self.alpha0
        )


def stretched_tail_ratio(f: BandLimitedSymbol, stretch: float = 1.0) -> float:
    """Tail ratio of ``f~(v, e^{-stretch |v|} beta)``.

    Involutions, antipodes and the phi-transports read rows at
    ``e^{+-v} beta``; a symbol passes this check at ``stretch = 1`` exactly
    when the beta profiles they produce still fit inside the grid.
    """
    from . import kernels

    rows = np.nonzero(np.any(f.values != 0, axis=1))[0].astype(np.int64)
    fac = np.exp(-stretch * np.abs(f.v[rows]))
    vals = kernels.dilate_rows(f.values, rows, fac, f.bgrid.lo, f.bgrid.h, 6)
    return f.with_values(vals).tail_ratio()


def family_params(
    count: int,
    V_range=(0.5, 1.5),
    sigma_range=(0.5, 1.5),
    center_range=(-3.0, 3.0),
    seed: int = 1234,
    bmoments=(0, 1),
    alpha0_range=(-1.0, 1.0),
    vgrid: Grid1D = VGRID_REF,
    bgrid: Grid1D = BGRID_REF,
    stretch: float = 1.0,
    amp_range=(0.5, 1.5),
) -> list[FamilyParams]:
    """Deterministic draws from the canonical bump-Gaussian family.

    A draw is kept only if the symbol and its ``e^{stretch |v|}``-stretched
    version both satisfy the beta tail bound on ``bgrid``; everything the
    suites build from a member (involutions, transports, products) then
    stays resolved.
    """
    rng = np.random.default_rng(seed)
    out: list[FamilyParams] = []
    draws = 0
    while len(out) < count:
        draws += 1
        if draws > 2000 * max(count, 1):
            raise ResolutionError("family ranges admit no member resolved by the beta grid", "beta")
        V = rng.uniform(*V_range)
        sigma = rng.uniform(*sigma_range)
        c = rng.uniform(*center_range)
        phase = rng.uniform(0.0, 2.0 * math.pi)
        amp = complex(rng.uniform(*amp_range) * np.exp(1j * phase))
        m = int(bmoments[rng.integers(len(bmoments))])
        a0 = rng.uniform(*alpha0_range)
        p = FamilyParams(float(V), float(c), float(sigma), amp, m, float(a0))
        try:
            f = p.build(vgrid, bgrid)
        except ResolutionError:
            continue
        if stretch > 0 and stretched_tail_ratio(f, stretch) > TAIL_TOL:
            continue
        out.append(p)
    return out


def test_family(count: int = 4, seed: int = 1234, vgrid: Grid1D = VGRID_REF, bgrid: Grid1D = BGRID_REF, **kw):
    """Built members of :func:`family_params` on the given grids."""
    return [p.build(vgrid, bgrid) for p in family_params(count, seed=seed, vgrid=vgrid, bgrid=bgrid, **kw)]


test_family.__test__ = False
