"""kappa-star: star products, quantization maps and kappa-Poincare actions
on band-limited symbols of 2-D kappa-Minkowski space.

The numerical objects live in :mod:`kappa_star.symbols` (sampled partial
Fourier transforms) and are multiplied by :mod:`kappa_star.star`; the exact
polynomial subalgebra is :mod:`kappa_star.poly`. ``kappa_star.harness``
drives the identity suites and ``kappa-star`` is the command line.
"""

from .errors import ContractError, KappaStarError, ResolutionError, SupportOverflowError, UsageError
from .kernels import BACKEND
from .numerics import Grid1D
from .phi import get_phi, involution_phi, star_phi, star_series, transport
from .quantization import OperatorKernel, hs_norm_sq, op_compose, op_trace, weyl_kernel
from .star import (
    antipode,
    counit,
    involution_left,
    involution_right,
    star_integral,
    star_kappa,
    star_left,
    star_right,
    translate_imaginary,
)
from .symbols import BandLimitedSymbol, evaluate, integral, make_bump_gaussian, mu_norm_sq, test_family

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BandLimitedSymbol",
    "ContractError",
    "Grid1D",
    "KappaStarError",
    "OperatorKernel",
    "ResolutionError",
    "SupportOverflowError",
    "UsageError",
    "antipode",
    "counit",
    "evaluate",
    "get_phi",
    "hs_norm_sq",
    "integral",
    "involution_left",
    "involution_phi",
    "involution_right",
    "make_bump_gaussian",
    "mu_norm_sq",
    "op_compose",
    "op_trace",
    "star_integral",
    "star_kappa",
    "star_left",
    "star_phi",
    "star_right",
    "star_series",
    "test_family",
    "translate_imaginary",
    "transport",
    "weyl_kernel",
]
