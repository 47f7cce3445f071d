"""Exact rational arithmetic, univariate polynomials and piecewise polynomials.

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator). Floats are refused everywhere in this module so nothing
approximate can leak into an exact computation.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

from .errors import InputError

Rational = Fraction
RationalLike = Union[int, Fraction, str]

__all__ = [
    "Rational",
    "as_rational",
    "format_rational",
    "parse_rational",
    "Poly",
    "PiecewisePoly",
    "poly_eval",
    "poly_integrate",
    "piecewise_integrate",
    "poly_gcd",
    "squarefree_check",
]


def as_rational(x: RationalLike) -> Fraction:
    """Coerce ``x`` to a Fraction. Floats are rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    raise InputError(f"not an exact rational: {x!r}")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``. Decimal points are not accepted."""
    s = text.strip()
    if not s or "." in s or "e" in s.lower():
        raise InputError(f"not an exact rational literal: {text!r}")
    try:
        value = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not an exact rational literal: {text!r}") from exc
    return value


def format_rational(x: Fraction) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class Poly:
    """Immutable univariate polynomial over Q, constant term first.

    The zero polynomial has an empty coefficient tuple. Supports ring
    arithmetic with other polys and with ints/Fractions.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c: RationalLike) -> Poly:
        return cls([c])

    @classmethod
    def linear(cls, c0: RationalLike, c1: RationalLike) -> Poly:
        """``c0 + c1*t``."""
        return cls([c0, c1])

    @classmethod
    def from_roots(cls, roots: Iterable[RationalLike], lead: RationalLike = 1) -> Poly:
        p = cls.constant(lead)
        for r in roots:
            p = p * cls([-as_rational(r), 1])
        return p

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def leading(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def __call__(self, t: RationalLike) -> Fraction:
        return poly_eval(self, t)

    def derivative(self) -> Poly:
        return Poly(i * c for i, c in enumerate(self._coeffs) if i > 0)

    def antiderivative(self) -> Poly:
        """Antiderivative with zero constant term."""
        return Poly([0, *(c / (i + 1) for i, c in enumerate(self._coeffs))])

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        lead = self.leading()
        return Poly(c / lead for c in self._coeffs)

    @staticmethod
    def _coerce(other) -> Poly | None:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self._coeffs), len(o._coeffs))
        a = self._coeffs + (Fraction(0),) * (n - len(self._coeffs))
        b = o._coeffs + (Fraction(0),) * (n - len(o._coeffs))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(-c for c in self._coeffs)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self._coeffs) + len(o._coeffs) - 1)
        for i, x in enumerate(self._coeffs):
            if x == 0:
                continue
            for j, y in enumerate(o._coeffs):
                out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise InputError("negative power of a polynomial")
        out = Poly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._coeffs)
        q = [Fraction(0)] * max(len(rem) - len(other._coeffs) + 1, 0)
        lead = other.leading()
        dq = other.degree
        while len(rem) - 1 >= dq and rem:
            shift = len(rem) - 1 - dq
            factor = rem[-1] / lead
            q[shift] = factor
            for j, c in enumerate(other._coeffs):
                rem[shift + j] -= factor * c
            rem.pop()  # leading term cancels exactly
            while rem and rem[-1] == 0:
                rem.pop()
        return Poly(q), Poly(rem)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._coeffs == o._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"Poly([{', '.join(format_rational(c) for c in self._coeffs)}])"

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self._coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> Poly:
        return cls(parse_rational(str(c)) for c in data)


def poly_eval(p: Poly, t: RationalLike) -> Fraction:
    """Horner evaluation, exact."""
    t = as_rational(t)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * t + c
    return acc


def poly_integrate(p: Poly, a: RationalLike, b: RationalLike) -> Fraction:
    """Exact definite integral of ``p`` over ``[a, b]``; requires ``a <= b``."""
    a, b = as_rational(a), as_rational(b)
    if a > b:
        raise InputError(f"integration bounds out of order: {a} > {b}")
    anti = p.antiderivative()
    return poly_eval(anti, b) - poly_eval(anti, a)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm over Q (zero if both are zero)."""
    while not q.is_zero():
        p, q = q, divmod(p, q)[1]
    return p.monic()


def squarefree_check(p: Poly) -> bool:
    """True iff ``gcd(p, p')`` is a nonzero constant."""
    if p.is_zero():
        raise InputError("squarefree_check of the zero polynomial")
    return poly_gcd(p, p.derivative()).degree == 0


class PiecewisePoly:
    """Continuous piecewise polynomial on closed intervals.

    ``pieces[i]`` is valid on ``[breakpoints[i], breakpoints[i + 1]]``;
    adjacent pieces must agree at their shared breakpoint.
    """

    __slots__ = ("_breakpoints", "_pieces")

    def __init__(self, breakpoints: Sequence[RationalLike], pieces: Sequence[Poly]):
        bps = tuple(as_rational(b) for b in breakpoints)
        pcs = tuple(pieces)
        if not bps:
            raise InputError("a piecewise polynomial needs at least one breakpoint")
        if len(pcs) != len(bps) - 1:
            raise InputError(
                f"{len(pcs)} pieces for {len(bps)} breakpoints (expected {len(bps) - 1})"
            )
        for lo, hi in zip(bps, bps[1:]):
            if not lo < hi:
                raise InputError(f"breakpoints not strictly increasing at {lo}, {hi}")
        for i in range(1, len(pcs)):
            left, right = pcs[i - 1](bps[i]), pcs[i](bps[i])
            if left != right:
                raise InputError(
                    f"pieces {i - 1} and {i} disagree at t = {format_rational(bps[i])}: "
                    f"{format_rational(left)} != {format_rational(right)}"
                )
        self._breakpoints = bps
        self._pieces = pcs

    @property
    def breakpoints(self) -> tuple[Fraction, ...]:
        return self._breakpoints

    @property
    def pieces(self) -> tuple[Poly, ...]:
        return self._pieces

    @property
    def domain(self) -> tuple[Fraction, Fraction]:
        return self._breakpoints[0], self._breakpoints[-1]

    def intervals(self):
        """Yield ``(lo, hi, piece)`` triples."""
        return zip(self._breakpoints, self._breakpoints[1:], self._pieces)

    def __call__(self, t: RationalLike) -> Fraction:
        t = as_rational(t)
        lo, hi = self.domain
        if not lo <= t <= hi:
            raise InputError(f"t = {format_rational(t)} outside [{lo}, {hi}]")
        if not self._pieces:
            return Fraction(0)
        for a, b, p in self.intervals():
            if t <= b:
                return p(t)
        raise AssertionError("unreachable")

    def scale(self, factor: RationalLike) -> PiecewisePoly:
        f = as_rational(factor)
        return PiecewisePoly(self._breakpoints, [p * f for p in self._pieces])

    def __eq__(self, other) -> bool:
        if not isinstance(other, PiecewisePoly):
            return NotImplemented
        return self._breakpoints == other._breakpoints and self._pieces == other._pieces

    def __hash__(self) -> int:
        return hash((self._breakpoints, self._pieces))

    def __repr__(self) -> str:
        bps = ", ".join(format_rational(b) for b in self._breakpoints)
        return f"PiecewisePoly([{bps}], {list(self._pieces)!r})"

    def to_json(self) -> dict:
        return {
            "breakpoints": [format_rational(b) for b in self._breakpoints],
            "pieces": [p.to_json() for p in self._pieces],
        }


def piecewise_integrate(pp: PiecewisePoly) -> Fraction:
    """Exact integral of ``pp`` over its whole domain."""
    return sum((poly_integrate(p, a, b) for a, b, p in pp.intervals()), Fraction(0))
