"""Exact polynomial subalgebra in alpha, beta with Gaussian-rational coefficients.

On polynomials the series product

    p * q = sum_n (i/kappa)^n / n!  d_alpha^n p . (beta d_beta)^n q

terminates at the alpha-degree of p, so the product, the involution, the
Hopf maps and the kappa-Poincare action can all be evaluated with zero
rounding. Values compare equal exactly; residual functions return
polynomials that must be identically zero.

Text format: a sum of terms ``(p/q+r/s i)*a^m*b^n``; the zero polynomial
prints as ``0``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ContractError
from .poincare import GeneratorWord


class GaussianRational:
    """x + i y with x, y rational."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            re, im = re.re, re.im + Fraction(im)
        elif isinstance(re, complex):
            raise ContractError("use exact parts, not a float complex")
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        # internal constructor: both parts are already Fractions
        out = object.__new__(cls)
        out.re = re
        out.im = im
        return out

    @staticmethod
    def coerce(x) -> "GaussianRational":
        return x if isinstance(x, GaussianRational) else GaussianRational(x)

    def __add__(self, o):
        o = GaussianRational.coerce(o)
        return GaussianRational._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-GaussianRational.coerce(o))

    def __rsub__(self, o):
        return GaussianRational.coerce(o) - self

    def __mul__(self, o):
        o = GaussianRational.coerce(o)
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return GaussianRational._raw(a * c, b)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = GaussianRational.coerce(o)
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero")
        return self * GaussianRational(o.re / d, -o.im / d)

    def __rtruediv__(self, o):
        return GaussianRational.coerce(o) / self

    def __pow__(self, k: int):
        out = GaussianRational(1)
        for _ in range(int(k)):
            out = out * self
        return out

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __eq__(self, o):
        try:
            o = GaussianRational.coerce(o)
        except (TypeError, ValueError, ContractError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        sign = "-" if self.im < 0 else "+"
        im = abs(self.im)
        return f"({self.re.numerator}/{self.re.denominator}{sign}{im.numerator}/{im.denominator} i)"


I = GaussianRational(0, 1)
ONE = GaussianRational(1)
ZERO = GaussianRational(0)


def _kappa(k) -> Fraction:
    k = Fraction(k)
    if k <= 0:
        raise ContractError("kappa must be a positive rational")
    return k


def _clean(coeffs: Mapping) -> dict:
    return {k: GaussianRational.coerce(v) for k, v in coeffs.items() if GaussianRational.coerce(v)}


class _PolyBase:
    arity = 2

    def __init__(self, coefficients: Mapping | None = None, kappa=1):
        coeffs = {}
        for key, val in (coefficients or {}).items():
            key = tuple(int(x) for x in key)
            if len(key) != self.arity or min(key) < 0:
                raise ContractError(f"exponent key {key} must be {self.arity} nonnegative integers")
            coeffs[key] = coeffs.get(key, ZERO) + GaussianRational.coerce(val)
        self.coefficients = _clean(coeffs)
        self.kappa = _kappa(kappa)

    def _new(self, coeffs):
        # trusted path: keys are canonical and values GaussianRational
        out = object.__new__(type(self))
        out.coefficients = {k: v for k, v in coeffs.items() if v}
        out.kappa = self.kappa
        return out

    def _check(self, o):
        if not isinstance(o, type(self)):
            raise ContractError(f"expected {type(self).__name__}")
        if o.kappa != self.kappa:
            raise ContractError(f"kappa mismatch: {self.kappa} vs {o.kappa}")

    def __add__(self, o):
        self._check(o)
        out = dict(self.coefficients)
        for k, v in o.coefficients.items():
            out[k] = out.get(k, ZERO) + v
        return self._new(out)

    def __neg__(self):
        return self._new({k: -v for k, v in self.coefficients.items()})

    def __sub__(self, o):
        return self + (-o)

    def scale(self, c):
        c = GaussianRational.coerce(c)
        return self._new({k: c * v for k, v in self.coefficients.items()})

    def __eq__(self, o):
        return type(o) is type(self) and o.kappa == self.kappa and o.coefficients == self.coefficients

    def __hash__(self):
        return hash((frozenset(self.coefficients.items()), self.kappa))

    def is_zero(self) -> bool:
        return not self.coefficients

    def __bool__(self):
        return not self.is_zero()


class NCPolynomial(_PolyBase):
    """sum c_{mn} alpha^m beta^n; products default to the star product."""

    arity = 2

    @classmethod
    def constant(cls, c, kappa=1):
        return cls({(0, 0): c}, kappa)

    @classmethod
    def alpha(cls, kappa=1):
        return cls({(1, 0): 1}, kappa)

    @classmethod
    def beta(cls, kappa=1):
        return cls({(0, 1): 1}, kappa)

    @classmethod
    def monomial(cls, m: int, n: int, c=1, kappa=1):
        return cls({(m, n): c}, kappa)

    def degree(self) -> int:
        return max((m + n for m, n in self.coefficients), default=-1)

    def alpha_degree(self) -> int:
        return max((m for m, _ in self.coefficients), default=-1)

    def __mul__(self, o):
        return poly_star(self, o)

    def commutative_product(self, o):
        self._check(o)
        out: dict = {}
        for (m1, n1), c1 in self.coefficients.items():
            for (m2, n2), c2 in o.coefficients.items():
                k = (m1 + m2, n1 + n2)
                out[k] = out.get(k, ZERO) + c1 * c2
        return self._new(out)

    def d_alpha(self, times: int = 1):
        out = self
        for _ in range(times):
            out = out._new({(m - 1, n): c * m for (m, n), c in out.coefficients.items() if m})
        return out

    def d_beta(self, times: int = 1):
        out = self
        for _ in range(times):
            out = out._new({(m, n - 1): c * n for (m, n), c in out.coefficients.items() if n})
        return out

    def euler_beta(self, times: int = 1):
        """(beta d_beta)^times, diagonal on monomials."""
        return self._new({(m, n): c * (n**times) for (m, n), c in self.coefficients.items()})

    def times_alpha(self):
        return self._new({(m + 1, n): c for (m, n), c in self.coefficients.items()})

    def times_beta(self):
        return self._new({(m, n + 1): c for (m, n), c in self.coefficients.items()})

    def conjugate(self):
        """Complex conjugate of the function: conjugate coefficients."""
        return self._new({k: c.conjugate() for k, c in self.coefficients.items()})

    def reflected(self):
        """p(-alpha, -beta)."""
        return self._new({(m, n): c if (m + n) % 2 == 0 else -c for (m, n), c in self.coefficients.items()})

    def shift_alpha(self, s):
        """p(alpha + s, beta) for exact s, by binomial expansion."""
        s = GaussianRational.coerce(s)
        out: dict = {}
        for (m, n), c in self.coefficients.items():
            for j in range(m + 1):
                k = (j, n)
                out[k] = out.get(k, ZERO) + c * math.comb(m, j) * s ** (m - j)
        return self._new(out)

    def counit(self) -> GaussianRational:
        return self.coefficients.get((0, 0), ZERO)

    def evaluate(self, alpha: complex, beta: complex) -> complex:
        return sum(complex(c) * alpha**m * beta**n for (m, n), c in self.coefficients.items())

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"NCPolynomial({format_poly(self)!r}, kappa={self.kappa})"


class TensorPolynomial(_PolyBase):
    """sum c alpha1^m1 beta1^n1 (x) alpha2^m2 beta2^n2, keyed by (m1, n1, m2, n2)."""

    arity = 4

    def legs(self):
        """Iterate (coefficient, left monomial, right monomial)."""
        for (m1, n1, m2, n2), c in sorted(self.coefficients.items(), key=lambda kv: kv[0]):
            yield (c, NCPolynomial.monomial(m1, n1, 1, self.kappa), NCPolynomial.monomial(m2, n2, 1, self.kappa))

    @classmethod
    def from_legs(cls, triples: Iterable, kappa=1):
        out: dict = {}
        for c, left, right in triples:
            for (m1, n1), c1 in left.coefficients.items():
                for (m2, n2), c2 in right.coefficients.items():
                    k = (m1, n1, m2, n2)
                    out[k] = out.get(k, ZERO) + GaussianRational.coerce(c) * c1 * c2
        return cls(out, kappa)

    def map_legs(self, left=None, right=None) -> "TensorPolynomial":
        """(left (x) right) applied leg-wise; None means identity."""
        triples = []
        for c, a, b in self.legs():
            triples.append((c, left(a) if left else a, right(b) if right else b))
        return TensorPolynomial.from_legs(triples, self.kappa)

    def multiply(self) -> NCPolynomial:
        """m_*: star product of the two legs."""
        acc = NCPolynomial({}, self.kappa)
        for c, a, b in self.legs():
            acc = acc + poly_star(a, b).scale(c)
        return acc


# -- algebra ---------------------------------------------------------------

def poly_star(p: NCPolynomial, q: NCPolynomial) -> NCPolynomial:
    """sum_n (i/kappa)^n/n! d_alpha^n p . (beta d_beta)^n q, terminating."""
    p._check(q)
    acc = NCPolynomial({}, p.kappa)
    step = I / GaussianRational(p.kappa)
    dp = p
    for n in range(p.alpha_degree() + 1):
        coef = step**n / GaussianRational(math.factorial(n))
        acc = acc + dp.commutative_product(q.euler_beta(n)).scale(coef)
        dp = dp.d_alpha()
    return acc


def poly_commutator(p: NCPolynomial, q: NCPolynomial) -> NCPolynomial:
    return poly_star(p, q) - poly_star(q, p)


def poly_involution(p: NCPolynomial) -> NCPolynomial:
    """p* = sum_n (i/kappa)^n/n! d_alpha^n (beta d_beta)^n conj(p)."""
    c = p.conjugate()
    acc = NCPolynomial({}, p.kappa)
    step = I / GaussianRational(p.kappa)
    for n in range(p.alpha_degree() + 1):
        coef = step**n / GaussianRational(math.factorial(n))
        acc = acc + c.euler_beta(n).d_alpha(n).scale(coef)
    return acc


def poly_coproduct(p: NCPolynomial) -> TensorPolynomial:
    """p(alpha1 + alpha2, beta1 + beta2), binomially expanded."""
    out: dict = {}
    for (m, n), c in p.coefficients.items():
        for i in range(m + 1):
            for j in range(n + 1):
                k = (i, j, m - i, n - j)
                out[k] = out.get(k, ZERO) + c * (math.comb(m, i) * math.comb(n, j))
    return TensorPolynomial(out, p.kappa)


def poly_counit(p: NCPolynomial) -> GaussianRational:
    return p.counit()


def _star_power(x: NCPolynomial, k: int) -> NCPolynomial:
    out = NCPolynomial.constant(1, x.kappa)
    for _ in range(k):
        out = poly_star(out, x)
    return out


def poly_antipode(p: NCPolynomial) -> NCPolynomial:
    """Antihomomorphic extension of S(alpha) = -alpha, S(beta) = -beta.

    beta^n * alpha^m equals the commutative monomial alpha^m beta^n (beta
    star-multiplies pointwise from the left), so
    S(alpha^m beta^n) = (-alpha)^{*m} * (-beta)^{*n}.
    """
    acc = NCPolynomial({}, p.kappa)
    a = NCPolynomial.alpha(p.kappa).scale(-1)
    b = NCPolynomial.beta(p.kappa).scale(-1)
    for (m, n), c in p.coefficients.items():
        acc = acc + poly_star(_star_power(a, m), _star_power(b, n)).scale(c)
    return acc


def poly_antipode_direct(p: NCPolynomial) -> NCPolynomial:
    """(Sp)(alpha, beta) = conj(p*)(-alpha, -beta)."""
    return poly_involution(p).conjugate().reflected()


def hopf_axiom_residual(p: NCPolynomial) -> tuple:
    """(m(S (x) 1) Delta p - eps(p) 1, m(1 (x) S) Delta p - eps(p) 1)."""
    d = poly_coproduct(p)
    unit = NCPolynomial.constant(p.counit(), p.kappa)
    left = d.map_legs(left=poly_antipode).multiply() - unit
    right = d.map_legs(right=poly_antipode).multiply() - unit
    return left, right


# -- kappa-Poincare action -----------------------------------------------------

def _letter(letter: str, p: NCPolynomial, q) -> NCPolynomial:
    k = GaussianRational(p.kappa)
    if letter == "E":
        return p.d_alpha().scale(-I)
    if letter == "P":
        return p.d_beta().scale(-I)
    if letter == "Eps":
        return p.shift_alpha(I / k)
    if letter == "EpsInv":
        return p.shift_alpha(-I / k)
    if letter == "N":
        # -i L_a P - (i kappa/2)(1 - Eps^2) L_b + (i/(2 kappa)) L_b P^2 + (q/(2 kappa)) P
        P = lambda x: x.d_beta().scale(-I)  # noqa: E731
        t1 = P(p).times_alpha().scale(-I)
        lb = p.times_beta()
        t2 = (lb - lb.shift_alpha(I / k).shift_alpha(I / k)).scale(-I * k / 2)
        t3 = P(P(p)).times_beta().scale(I / (k * 2))
        out = t1 + t2 + t3
        if q:
            out = out + P(p).scale(GaussianRational(Fraction(q)) / (k * 2))
        return out
    raise ContractError(f"unknown generator {letter!r}")


def poly_act(word: GeneratorWord, p: NCPolynomial) -> NCPolynomial:
    """Exact action of an operator product, rightmost letter first."""
    out = p
    for letter in reversed(word.letters):
        out = _letter(letter, out, word.q)
    c = word.coefficient
    return out.scale(GaussianRational(Fraction(c.real), Fraction(c.imag)))


# -- text format ---------------------------------------------------------------

def format_poly(p: NCPolynomial) -> str:
    if p.is_zero():
        return "0"
    return " + ".join(f"{c}*a^{m}*b^{n}" for (m, n), c in sorted(p.coefficients.items()))


_RAT = r"[+-]?\d+(?:/\d+)?"
_TERM = re.compile(
    rf"^\(\s*(?P<re>{_RAT})\s*(?:(?P<sg>[+-])\s*(?P<im>\d+(?:/\d+)?)\s*i)?\s*\)"
    r"(?:\s*\*\s*a\^(?P<m>\d+))?(?:\s*\*\s*b\^(?P<n>\d+))?$"
)


def parse_poly(text: str, kappa=1) -> NCPolynomial:
    """Inverse of :func:`format_poly`; also accepts omitted ``a^m``/``b^n``
    factors and a missing imaginary part."""
    text = text.strip()
    if text in ("", "0"):
        return NCPolynomial({}, kappa)
    coeffs: dict = {}
    depth = 0
    start = 0
    terms = []
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "+" and depth == 0:
            terms.append(text[start:i])
            start = i + 1
    terms.append(text[start:])
    for raw in terms:
        t = raw.strip()
        mt = _TERM.match(t)
        if not mt:
            raise ContractError(f"cannot parse polynomial term {t!r}")
        re_part = Fraction(mt["re"])
        im_part = Fraction(mt["im"]) if mt["im"] else Fraction(0)
        if mt["sg"] == "-":
            im_part = -im_part
        key = (int(mt["m"] or 0), int(mt["n"] or 0))
        coeffs[key] = coeffs.get(key, ZERO) + GaussianRational(re_part, im_part)
    return NCPolynomial(coeffs, kappa)


def monomials(max_degree: int, kappa=1):
    """All alpha^m beta^n with m + n <= max_degree."""
    return [NCPolynomial.monomial(m, d - m, 1, kappa) for d in range(max_degree + 1) for m in range(d + 1)]


__all__ = [
    "GaussianRational",
    "NCPolynomial",
    "TensorPolynomial",
    "poly_star",
    "poly_commutator",
    "poly_involution",
    "poly_coproduct",
    "poly_counit",
    "poly_antipode",
    "poly_antipode_direct",
    "hopf_axiom_residual",
    "poly_act",
    "format_poly",
    "parse_poly",
    "monomials",
]
