"""Exact arithmetic in the real cyclotomic field Q(theta), theta = 2cos(pi/N).

Every root coordinate and matrix entry of the geometric representation lives in
this field. Elements are residues modulo the minimal polynomial of theta, kept in
sympy's ``ANP`` dense representation; signs are decided exactly by a zero test
followed by rational interval bisection around theta.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, List, Optional, Tuple, Union

import structlog
from sympy import Poly, QQ, Rational, Symbol, cyclotomic_poly
from sympy.polys.polyclasses import ANP

from ..core.exceptions import FieldTooLargeError, PreconditionError

logger = structlog.get_logger(__name__)

_Y = Symbol("y")
_X = Symbol("x")

Scalar = Union[int, Fraction]


def _to_fraction(value: object) -> Fraction:
    """Convert a sympy/QQ rational to a Fraction."""
    if hasattr(value, "p"):
        numerator, denominator = value.p, value.q  # type: ignore[attr-defined]
    else:
        numerator, denominator = value.numerator, value.denominator  # type: ignore[attr-defined]
    return Fraction(int(numerator), int(denominator))


@lru_cache(maxsize=None)
def dickson(j: int) -> Poly:
    """D_j(y) with D_j(x + 1/x) = x^j + x^-j."""
    if j == 0:
        return Poly(2, _Y, domain=QQ)
    previous, current = Poly(2, _Y, domain=QQ), Poly(_Y, _Y, domain=QQ)
    for _ in range(j - 1):
        previous, current = current, Poly(_Y, _Y, domain=QQ) * current - previous
    return current


@lru_cache(maxsize=None)
def minpoly_of_cos(m: int) -> Poly:
    """Minimal polynomial of 2cos(pi/m) over the rationals, in the variable y."""
    if m < 1:
        raise PreconditionError(f"label must be positive, got {m}")
    if m == 1:
        return Poly(_Y + 2, _Y, domain=QQ)
    cyclotomic = Poly(cyclotomic_poly(2 * m, _X), _X, domain=QQ)
    # palindromic of degree 2d: fold with x^d (x^j + x^-j) -> D_j(y)
    low_to_high = list(reversed(cyclotomic.all_coeffs()))
    half = (len(low_to_high) - 1) // 2
    folded = Poly(low_to_high[half], _Y, domain=QQ)
    for j in range(1, half + 1):
        folded = folded + dickson(j) * Poly(low_to_high[half + j], _Y, domain=QQ)
    return folded.monic()


def _interval_horner(
    coeffs: List[Fraction], lo: Fraction, hi: Fraction
) -> Tuple[Fraction, Fraction]:
    """Enclosure of a polynomial (high-to-low coefficients) over [lo, hi]."""
    a = b = coeffs[0]
    for c in coeffs[1:]:
        products = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(products) + c, max(products) + c
    return a, b


def _evaluate(coeffs: List[Fraction], point: Fraction) -> Fraction:
    value = Fraction(0)
    for c in coeffs:
        value = value * point + c
    return value


class ExactField:
    """The field Q(2cos(pi/N)) together with an isolating interval for its generator."""

    def __init__(self, n: int, minpoly: Poly) -> None:
        self.N = n
        self.minpoly = minpoly
        self.degree = minpoly.degree()
        self._mod = [QQ.from_sympy(c) for c in minpoly.all_coeffs()]
        self._mod_fractions = [_to_fraction(c) for c in minpoly.all_coeffs()]
        self._interval = self._isolate()
        self.zero = self.rational(0)
        self.one = self.rational(1)
        self.theta = self._from_poly(Poly(_Y, _Y, domain=QQ))

    def __repr__(self) -> str:
        return f"ExactField(N={self.N}, minpoly={self.minpoly.as_expr()})"

    @property
    def isolating_interval(self) -> Tuple[Fraction, Fraction]:
        return self._interval

    def _isolate(self) -> Tuple[Fraction, Fraction]:
        if self.degree == 1:
            root = -self._mod_fractions[1] / self._mod_fractions[0]
            return root, root
        # 2cos(pi/N) is the largest real root of the folded polynomial
        intervals = self.minpoly.intervals()
        lo, hi = max(((_to_fraction(a), _to_fraction(b)) for (a, b), _ in intervals),
                     key=lambda pair: pair[1])
        while hi - lo > Fraction(1, 2 ** 64):
            lo, hi = self._bisect(lo, hi)
        return lo, hi

    def _bisect(self, lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
        mid = (lo + hi) / 2
        at_lo = _evaluate(self._mod_fractions, lo)
        at_mid = _evaluate(self._mod_fractions, mid)
        if (at_lo < 0) == (at_mid < 0):
            return mid, hi
        return lo, mid

    # -- construction -------------------------------------------------

    def _wrap(self, rep: List[object]) -> "FieldElement":
        while rep and not rep[0]:
            rep = rep[1:]
        return FieldElement(self, ANP(rep, self._mod, QQ))

    def _from_poly(self, poly: Poly) -> "FieldElement":
        reduced = poly.rem(self.minpoly)
        return self._wrap([QQ.from_sympy(c) for c in reduced.all_coeffs()])

    def rational(self, value: Scalar) -> "FieldElement":
        q = Fraction(value)
        return self._wrap([QQ(q.numerator, q.denominator)] if q else [])

    def element(self, coeffs: Iterable[Scalar]) -> "FieldElement":
        """Element sum(c_i theta^i) from low-to-high rational coefficients."""
        high_to_low = [Rational(q.numerator, q.denominator) for q in map(Fraction, coeffs)]
        high_to_low.reverse()
        return self._from_poly(Poly.from_list(high_to_low or [0], _Y, domain=QQ))

    def try_embed_cos(self, m: int) -> Optional["FieldElement"]:
        """2cos(pi/m) if it lies in this field by the divisibility rule, else None."""
        if m == 2:
            return self.zero
        # rational values exist in every field
        if m == 1:
            return self.rational(-2)
        if m == 3:
            return self.one
        if m < 1 or self.N % m:
            return None
        return self._from_poly(dickson(self.N // m))

    def embed_cos(self, m: int) -> "FieldElement":
        """2cos(pi/m) expressed in theta through D_{N/m}(theta)."""
        value = self.try_embed_cos(m)
        if value is None:
            raise PreconditionError(
                f"2cos(pi/{m}) is not available in the field for N={self.N}",
                details={"m": m, "N": self.N},
            )
        return value

    # -- decisions ----------------------------------------------------

    def sign(self, element: "FieldElement") -> int:
        """Exact sign under the real embedding theta = 2cos(pi/N)."""
        if element.is_zero:
            return 0
        coeffs = [_to_fraction(c) for c in element._rep.to_list()]
        lo, hi = self._interval
        if lo == hi:
            value = _evaluate(coeffs, lo)
            return (value > 0) - (value < 0)
        while True:
            low, high = _interval_horner(coeffs, lo, hi)
            if low > 0:
                return 1
            if high < 0:
                return -1
            lo, hi = self._bisect(lo, hi)
            # narrower enclosures are kept for later calls
            if hi - lo < self._interval[1] - self._interval[0]:
                self._interval = (lo, hi)

    def to_float(self, element: "FieldElement") -> float:
        lo, hi = self._interval
        coeffs = [_to_fraction(c) for c in element._rep.to_list()]
        return float(_evaluate(coeffs, (lo + hi) / 2)) if coeffs else 0.0


class FieldElement:
    """Reduced residue sum(c_i theta^i); a pure, hashable value."""

    __slots__ = ("field", "_rep")

    def __init__(self, field: ExactField, rep: ANP) -> None:
        self.field = field
        self._rep = rep

    def _coerce(self, other: object) -> Optional["FieldElement"]:
        if isinstance(other, FieldElement):
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return None

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        """Low-to-high coefficients padded to the field degree."""
        values = [_to_fraction(c) for c in reversed(self._rep.to_list())]
        values.extend([Fraction(0)] * (self.field.degree - len(values)))
        return tuple(values)

    @property
    def is_zero(self) -> bool:
        return not self._rep.to_list()

    def __add__(self, other: object) -> "FieldElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self._rep + o._rep)

    __radd__ = __add__

    def __sub__(self, other: object) -> "FieldElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self._rep - o._rep)

    def __rsub__(self, other: object) -> "FieldElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, o._rep - self._rep)

    def __mul__(self, other: object) -> "FieldElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self._rep * o._rep)

    __rmul__ = __mul__

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, -self._rep)

    def inverse(self) -> "FieldElement":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero field element")
        return FieldElement(self.field, self.field.one._rep / self._rep)

    def __truediv__(self, other: object) -> "FieldElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> "FieldElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int) -> "FieldElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = self.field.one, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._rep.to_list() == o._rep.to_list()

    def __hash__(self) -> int:
        return hash(tuple(self._rep.to_list()))

    def sign(self) -> int:
        return self.field.sign(self)

    def __lt__(self, other: object) -> bool:
        return (self - other).sign() < 0  # type: ignore[operator]

    def __le__(self, other: object) -> bool:
        return (self - other).sign() <= 0  # type: ignore[operator]

    def __gt__(self, other: object) -> bool:
        return (self - other).sign() > 0  # type: ignore[operator]

    def __ge__(self, other: object) -> bool:
        return (self - other).sign() >= 0  # type: ignore[operator]

    def __float__(self) -> float:
        return self.field.to_float(self)

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if i == 0 else f"{c}*t^{i}" if i > 1 else f"{c}*t")
        return " + ".join(terms) if terms else "0"


@lru_cache(maxsize=None)
def _field_for(n: int) -> ExactField:
    return ExactField(n, minpoly_of_cos(n))


def build_field(labels: Iterable[int], max_n: int = 1_000_000) -> ExactField:
    """Field for the finite bond labels of a graph.

    Label 2 contributes nothing (cos(pi/2) = 0), so N = lcm of the labels other than 2.
    """
    values = set(labels)
    for m in values:
        if m < 2:
            raise PreconditionError(f"bond label must be at least 2, got {m}")
    n = reduce(math.lcm, (m for m in values if m != 2), 1)
    if n > max_n:
        raise FieldTooLargeError(
            f"field too large: N = {n} exceeds bound {max_n}",
            details={"N": n, "bound": max_n},
        )
    field = _field_for(n)
    logger.debug("field built", N=n, degree=field.degree)
    return field
