"""beta-invariants of divisors over ``X`` and the stability verdict built on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import PiecewisePoly, RationalLike, as_rational, format_rational, piecewise_integrate
from .errors import InputError
from .geometry import BlowupGeometry, DivisorClass, anticanonical, triple_form, triple_product
from .positivity import (
    DEFAULT_CONE,
    UNBOUNDED,
    ConeSpec,
    DivisorPath,
    nef_threshold,
    pseudoeffective_threshold,
    volume_path,
)

__all__ = ["StabilityVerdict", "BetaReport", "s_value", "beta", "verdict_chain"]

NO = "no"
UNKNOWN = "unknown"

NOTE_FUJITA_LI = "valuative criterion (Fujita, Li): beta(F) < 0 for a divisor F over X => X is K-unstable"
NOTE_YTD = "Yau-Tian-Donaldson: K-unstable Fano manifold => no Kahler-Einstein metric"
NOTE_KRS = (
    "finite automorphism group => no nonzero holomorphic vector field, "
    "so a Kahler-Ricci soliton would be Kahler-Einstein"
)


@dataclass(frozen=True)
class StabilityVerdict:
    divisoriallyUnstable: bool = False
    kUnstable: bool = False
    admitsKE: str = UNKNOWN
    admitsKRS: str = UNKNOWN
    notes: tuple[str, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "divisoriallyUnstable": self.divisoriallyUnstable,
            "kUnstable": self.kUnstable,
            "admitsKE": self.admitsKE,
            "admitsKRS": self.admitsKRS,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class BetaReport:
    geometry: BlowupGeometry
    divisor: DivisorClass
    logDiscrepancy: Fraction
    anticanonicalVolume: Fraction
    nefThreshold: Fraction
    pseudoeffectiveThreshold: Fraction
    volumePieces: PiecewisePoly
    sValue: Fraction
    beta: Fraction
    coneAssumption: ConeSpec
    verdict: StabilityVerdict

    def to_json(self) -> dict:
        nef = self.nefThreshold
        return {
            "geometry": self.geometry.to_json(),
            "divisor": self.divisor.to_json(),
            "logDiscrepancy": format_rational(self.logDiscrepancy),
            "anticanonicalVolume": format_rational(self.anticanonicalVolume),
            "nefThreshold": "unbounded" if nef == UNBOUNDED else format_rational(nef),
            "pseudoeffectiveThreshold": format_rational(self.pseudoeffectiveThreshold),
            "volumePieces": self.volumePieces.to_json(),
            "sValue": format_rational(self.sValue),
            "beta": format_rational(self.beta),
            "coneAssumption": {
                "curves": self.coneAssumption.to_json(),
                "note": "nefness tested only against these curves; "
                "assumed to generate the Mori cone",
            },
            "verdict": self.verdict.to_json(),
        }


def s_value(vol: PiecewisePoly, V: RationalLike) -> Fraction:
    """Expected vanishing order ``(1/V) * integral of vol``."""
    V = as_rational(V)
    if V <= 0:
        raise InputError(f"anticanonical volume must be positive, got {format_rational(V)}")
    return piecewise_integrate(vol) / V


def _verdict(betas: Iterable[Fraction], aut_finite: bool) -> StabilityVerdict:
    betas = list(betas)
    if not betas:
        return StabilityVerdict()
    unstable = any(b < 0 for b in betas)
    if not unstable:
        # no converse implication is available
        return StabilityVerdict()
    notes = [NOTE_FUJITA_LI, NOTE_YTD]
    krs = UNKNOWN
    if aut_finite:
        krs = NO
        notes.append(NOTE_KRS)
    return StabilityVerdict(True, True, NO, krs, tuple(notes))


def verdict_chain(betas: Sequence[BetaReport], autFinite: bool) -> StabilityVerdict:
    """Combine beta reports with automorphism finiteness into a verdict."""
    return _verdict((r.beta for r in betas), autFinite)


def beta(
    geom: BlowupGeometry,
    path: DivisorPath | DivisorClass,
    A: RationalLike = 1,
    cone: ConeSpec = DEFAULT_CONE,
    aut_finite: bool = False,
) -> BetaReport:
    """Full beta computation for the divisor ``path.direction``.

    ``path`` may also be given as just the direction; the start is then
    ``-K_X``. ``A`` is the log discrepancy, 1 for prime divisors on ``X``.
    """
    if isinstance(path, DivisorClass):
        path = DivisorPath.from_anticanonical(geom, path)
    A = as_rational(A)
    if A <= 0:
        raise InputError(f"log discrepancy must be positive, got {format_rational(A)}")
    K = anticanonical(geom)
    T = triple_form(geom)
    V = triple_product(T, K, K, K)
    if V <= 0:
        raise InputError(f"anticanonical volume must be positive, got {format_rational(V)}")
    vol = volume_path(path, geom, cone)
    S = s_value(vol, V)
    b = A - S
    return BetaReport(
        geometry=geom,
        divisor=path.direction,
        logDiscrepancy=A,
        anticanonicalVolume=V,
        nefThreshold=nef_threshold(path, cone),
        pseudoeffectiveThreshold=pseudoeffective_threshold(path),
        volumePieces=vol,
        sValue=S,
        beta=b,
        coneAssumption=cone,
        verdict=_verdict([b], aut_finite),
    )
