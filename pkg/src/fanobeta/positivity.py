"""Nefness, rank-2 Zariski decomposition and the volume along ``-K_X - tD``.

Nefness is only ever tested against an explicit list of curve classes
(:class:`ConeSpec`); whether that list generates the Mori cone is an
assumption carried into every report, never checked here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import PiecewisePoly, Poly, as_rational, format_rational
from .errors import InputError, RegimeError
from .geometry import (
    FIBRE,
    LINE,
    BlowupGeometry,
    CurveClass,
    DivisorClass,
    anticanonical,
    curve_pairing,
    triple_form,
    triple_product,
)

__all__ = [
    "UNBOUNDED",
    "DivisorPath",
    "ConeSpec",
    "ZariskiPair",
    "DEFAULT_CONE",
    "is_nef",
    "nef_threshold",
    "zariski_decompose",
    "pseudoeffective_threshold",
    "volume_path",
]

UNBOUNDED = math.inf


@dataclass(frozen=True)
class DivisorPath:
    """``path(t) = start - t * direction``."""

    start: DivisorClass
    direction: DivisorClass

    @classmethod
    def from_anticanonical(cls, geom: BlowupGeometry, direction: DivisorClass) -> DivisorPath:
        return cls(anticanonical(geom), direction)

    def at(self, t) -> DivisorClass:
        t = as_rational(t)
        return self.start - self.direction.scale(t)

    def symbolic(self) -> DivisorClass:
        """The path with coefficients as linear polynomials in ``t``."""
        return DivisorClass(
            Poly.linear(self.start.a, -self.direction.a),
            Poly.linear(self.start.b, -self.direction.b),
        )


@dataclass(frozen=True)
class ConeSpec:
    curves: tuple[CurveClass, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "curves", tuple(self.curves))
        if not self.curves:
            raise InputError("cone specification needs at least one curve")

    @classmethod
    def of(cls, pairs: Sequence[tuple]) -> ConeSpec:
        return cls(tuple(CurveClass.of(l, f) for l, f in pairs))

    def to_json(self) -> list[dict[str, str]]:
        return [c.to_json() for c in self.curves]


DEFAULT_CONE = ConeSpec((FIBRE, LINE))


@dataclass(frozen=True)
class ZariskiPair:
    positive: DivisorClass
    negative: DivisorClass


def is_nef(D: DivisorClass, cone: ConeSpec = DEFAULT_CONE) -> bool:
    return all(curve_pairing(D, C) >= 0 for C in cone.curves)


def nef_threshold(path: DivisorPath, cone: ConeSpec = DEFAULT_CONE):
    """Largest ``t >= 0`` with ``path(t)`` nef, or :data:`UNBOUNDED`.

    Along the path each pairing is ``s - t*k``; only curves with ``k > 0``
    ever go negative, and they do so at ``s/k``.
    """
    if not is_nef(path.start, cone):
        raise InputError("start of the divisor path is not nef")
    best = UNBOUNDED
    for C in cone.curves:
        s = curve_pairing(path.start, C)
        k = curve_pairing(path.direction, C)
        if k > 0:
            best = min(best, s / k)
    return best


def zariski_decompose(D: DivisorClass, cone: ConeSpec = DEFAULT_CONE) -> ZariskiPair:
    """Split ``D = P + N`` with ``N`` a nonnegative multiple of ``E``.

    Only the shape ``P = a*pi^*A``, ``N = b*E`` is supported beyond the nef
    range; anything else raises :class:`RegimeError`.
    """
    if D.a < 0:
        raise RegimeError(
            "path left the supported regime (negative part would not be supported on E)"
        )
    zero = DivisorClass(Fraction(0), Fraction(0))
    if is_nef(D, cone):
        return ZariskiPair(D, zero)
    positive = DivisorClass(D.a, Fraction(0))
    negative = DivisorClass(Fraction(0), D.b)
    if D.b <= 0 or not is_nef(positive, cone):
        raise RegimeError(
            "path left the supported regime (negative part would not be supported on E)"
        )
    return ZariskiPair(positive, negative)


def pseudoeffective_threshold(path: DivisorPath):
    """Zero of the positive part's ``pi^*A`` coefficient; :data:`UNBOUNDED` if none."""
    if path.direction.a <= 0:
        return UNBOUNDED
    return path.start.a / path.direction.a


def volume_path(
    path: DivisorPath, geom: BlowupGeometry, cone: ConeSpec = DEFAULT_CONE
) -> PiecewisePoly:
    """Exact ``vol(path(t))`` on ``[0, tau]`` as a piecewise polynomial.

    On the nef segment the volume is ``path(t)^3``; past the nef threshold it
    is ``P(t)^3`` for the Zariski positive part ``P(t) = a(t) * pi^*A``.
    """
    T = triple_form(geom)
    t_nef = nef_threshold(path, cone)
    v0 = triple_product(T, path.start, path.start, path.start)
    if v0 <= 0:
        raise InputError(f"start of the path has non-positive volume {format_rational(v0)}")
    tau = pseudoeffective_threshold(path)
    if tau is UNBOUNDED:
        raise RegimeError(
            "divisor path never reaches the pseudoeffective boundary "
            "(S integral unbounded)"
        )

    D = path.symbolic()
    breakpoints = [Fraction(0)]
    pieces: list[Poly] = []
    nef_end = min(t_nef, tau)
    if nef_end > 0:
        breakpoints.append(nef_end)
        pieces.append(triple_product(T, D, D, D))
    if t_nef < tau:
        # regime checks are linear in t, so endpoints plus an interior point suffice
        b_start = path.at(t_nef).b
        if b_start < 0 or path.at(tau).b <= 0:
            raise RegimeError(
                "path left the supported regime (negative part would not be supported on E)"
            )
        zariski_decompose(path.at((t_nef + tau) / 2), cone)
        zariski_decompose(path.at(tau), cone)
        P = DivisorClass(D.a, Poly())
        breakpoints.append(tau)
        pieces.append(triple_product(T, P, P, P))
    try:
        return PiecewisePoly(breakpoints, pieces)
    except InputError as exc:
        raise RegimeError(f"volume is discontinuous along the path: {exc}") from exc
