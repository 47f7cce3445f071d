"""Rank-2 intersection theory of a blowup ``X = Bl_C Y``.

``Y`` is a Picard-rank-1 Fano threefold with ample generator ``A``, and
``C`` a smooth curve of genus ``g``. Divisor classes live in the basis
``{pi^*A, E}`` and curve classes in ``{pi^*L, f}``, where ``L`` is a line in
``Y`` missing ``C`` and ``f`` a fibre of ``E -> C``.

Coefficients may be Fractions or :class:`~fanobeta.arith.Poly` objects; the
latter lets the triple product of a divisor path be expanded symbolically
in ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .arith import RationalLike, as_rational, format_rational
from .errors import InputError

__all__ = [
    "BlowupGeometry",
    "DivisorClass",
    "CurveClass",
    "TripleForm",
    "PRESETS",
    "preset",
    "triple_form",
    "triple_product",
    "curve_pairing",
    "anticanonical",
]


@dataclass(frozen=True)
class BlowupGeometry:
    """Numeric data of the blowup: ``d = A^3``, ``-K_Y = r*A``, ``c = A.C``, genus ``g``."""

    d: Fraction
    r: Fraction
    c: Fraction
    g: int

    def __post_init__(self) -> None:
        for name in ("d", "r", "c"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if isinstance(self.g, bool) or not isinstance(self.g, int):
            g = as_rational(self.g)
            if g.denominator != 1:
                raise InputError(f"genus must be an integer, got {format_rational(g)}")
            object.__setattr__(self, "g", int(g))
        if self.d <= 0:
            raise InputError(f"d = A^3 must be positive, got {format_rational(self.d)}")
        if self.r <= 0:
            raise InputError(f"Fano index r must be positive, got {format_rational(self.r)}")
        if self.c < 0:
            raise InputError(f"curve degree c must be >= 0, got {format_rational(self.c)}")
        if self.g < 0:
            raise InputError(f"genus must be >= 0, got {self.g}")

    def normal_degree(self) -> Fraction:
        """``deg N_{C/Y} = -K_Y.C + 2g - 2`` by adjunction."""
        return self.r * self.c + 2 * self.g - 2

    def to_json(self) -> dict[str, Any]:
        return {
            "d": format_rational(self.d),
            "r": format_rational(self.r),
            "c": format_rational(self.c),
            "g": self.g,
        }


# quadric threefold in P^4 blown up along an elliptic quartic curve
PRESETS: dict[str, BlowupGeometry] = {
    "mori-mukai-2.23": BlowupGeometry(Fraction(2), Fraction(3), Fraction(4), 1),
}


def preset(name: str) -> BlowupGeometry:
    try:
        return PRESETS[name]
    except KeyError:
        known = ", ".join(sorted(PRESETS))
        raise InputError(f"unknown geometry preset {name!r} (known: {known})") from None


@dataclass(frozen=True)
class DivisorClass:
    """``a * pi^*A + b * E``."""

    a: Any
    b: Any

    def __add__(self, other: DivisorClass) -> DivisorClass:
        return DivisorClass(self.a + other.a, self.b + other.b)

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        return DivisorClass(self.a - other.a, self.b - other.b)

    def __neg__(self) -> DivisorClass:
        return DivisorClass(-self.a, -self.b)

    def scale(self, k) -> DivisorClass:
        return DivisorClass(k * self.a, k * self.b)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    @classmethod
    def of(cls, a: RationalLike, b: RationalLike) -> DivisorClass:
        return cls(as_rational(a), as_rational(b))

    def to_json(self) -> dict[str, str]:
        return {"a": format_rational(self.a), "b": format_rational(self.b)}


@dataclass(frozen=True)
class CurveClass:
    """``l * pi^*L + f * f``."""

    l: Any  # noqa: E741
    f: Any

    @classmethod
    def of(cls, l: RationalLike, f: RationalLike) -> CurveClass:  # noqa: E741
        return cls(as_rational(l), as_rational(f))

    def to_json(self) -> dict[str, str]:
        return {"l": format_rational(self.l), "f": format_rational(self.f)}


PULLBACK_A = DivisorClass(Fraction(1), Fraction(0))
EXCEPTIONAL = DivisorClass(Fraction(0), Fraction(1))
LINE = CurveClass(Fraction(1), Fraction(0))
FIBRE = CurveClass(Fraction(0), Fraction(1))


@dataclass(frozen=True)
class TripleForm:
    """Triple intersections ``(pi^*A)^3``, ``(pi^*A)^2.E``, ``pi^*A.E^2``, ``E^3``."""

    p3: Fraction
    p2e: Fraction
    pe2: Fraction
    e3: Fraction


def triple_form(geom: BlowupGeometry) -> TripleForm:
    """Intersection table of the blowup along a curve.

    ``(pi^*A)^2.E = 0``, ``pi^*A.E^2 = -A.C`` and ``E^3 = -deg N_{C/Y}``.
    """
    deg_n = geom.normal_degree()
    if all(x.denominator == 1 for x in (geom.d, geom.r, geom.c)) and deg_n.denominator != 1:
        raise InputError(f"normal bundle degree {format_rational(deg_n)} is not an integer")
    return TripleForm(geom.d, Fraction(0), -geom.c, -deg_n)


def triple_product(T: TripleForm, D1: DivisorClass, D2: DivisorClass, D3: DivisorClass):
    """Trilinear expansion of ``D1.D2.D3``, grouped by the number of E factors."""
    a1, b1 = D1.a, D1.b
    a2, b2 = D2.a, D2.b
    a3, b3 = D3.a, D3.b
    return (
        T.p3 * (a1 * a2 * a3)
        + T.p2e * (b1 * a2 * a3 + a1 * b2 * a3 + a1 * a2 * b3)
        + T.pe2 * (a1 * b2 * b3 + b1 * a2 * b3 + b1 * b2 * a3)
        + T.e3 * (b1 * b2 * b3)
    )


def curve_pairing(D: DivisorClass, C: CurveClass):
    """``pi^*A.pi^*L = 1``, ``E.f = -1``, mixed terms vanish."""
    return D.a * C.l - D.b * C.f


def anticanonical(geom: BlowupGeometry) -> DivisorClass:
    """``-K_X = r * pi^*A - E``."""
    return DivisorClass(geom.r, Fraction(-1))
