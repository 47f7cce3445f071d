from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import GRID, H_TILDE, grid_reports, simpson
from fanobeta.arith import PiecewisePoly, Poly, piecewise_integrate
from fanobeta.errors import InputError, RegimeError
from fanobeta.geometry import BlowupGeometry, DivisorClass, preset
from fanobeta.positivity import DEFAULT_CONE, DivisorPath
from fanobeta.stability import NO, UNKNOWN, StabilityVerdict, beta, s_value, verdict_chain

G = preset("mori-mukai-2.23")
REPORT = beta(G, H_TILDE, 1)


@pytest.mark.parametrize(
    "vol, V, expected",
    [
        (PiecewisePoly([0, 1, 3], [Poly([30, -6, -6, -2]), Poly([54, -54, 18, -2])]), 30, Fraction(13, 12)),
        # 30 (1 - t/3)^3 integrates to 30 * 3/4
        (PiecewisePoly([0, 3], [Poly([1, Fraction(-1, 3)]) ** 3 * 30]), 30, Fraction(3, 4)),
        (PiecewisePoly([2], []), 30, 0),
    ],
)
def test_s_value(vol, V, expected):
    assert s_value(vol, V) == expected


def test_s_value_rejects_nonpositive_volume():
    with pytest.raises(InputError):
        s_value(PiecewisePoly([0, 1], [Poly([1])]), 0)


def test_beta_report_fields():
    r = REPORT
    assert r.beta == Fraction(-1, 12)
    assert r.sValue == Fraction(13, 12)
    assert r.anticanonicalVolume == 30
    assert r.nefThreshold == 1
    assert r.pseudoeffectiveThreshold == 3
    assert r.volumePieces.breakpoints == (0, 1, 3)
    assert r.coneAssumption is DEFAULT_CONE
    assert r.divisor == H_TILDE
    j = r.to_json()
    assert j["beta"] == "-1/12"
    assert j["volumePieces"]["pieces"] == [["30", "-6", "-6", "-2"], ["54", "-54", "18", "-2"]]
    assert "Mori cone" in j["coneAssumption"]["note"]


def test_beta_accepts_path_or_direction():
    path = DivisorPath.from_anticanonical(G, H_TILDE)
    assert beta(G, path).beta == REPORT.beta


def test_beta_rejects_zero_direction_and_bad_discrepancy():
    with pytest.raises(RegimeError):
        beta(G, DivisorClass.of(0, 0))
    with pytest.raises(InputError):
        beta(G, H_TILDE, 0)


def test_negative_beta_verdict():
    v = verdict_chain([REPORT], True)
    assert v.divisoriallyUnstable and v.kUnstable
    assert v.admitsKE == NO
    assert v.admitsKRS == NO
    assert len(v.notes) == 3


def test_krs_unknown_without_finite_automorphisms():
    v = verdict_chain([REPORT], False)
    assert v.admitsKE == NO
    assert v.admitsKRS == UNKNOWN
    assert len(v.notes) == 2


def test_empty_chain_decides_nothing():
    assert verdict_chain([], True) == StabilityVerdict()
    v = StabilityVerdict().to_json()
    assert v == {
        "divisoriallyUnstable": False,
        "kUnstable": False,
        "admitsKE": UNKNOWN,
        "admitsKRS": UNKNOWN,
        "notes": [],
    }


def test_nonnegative_beta_is_not_promoted_to_stability():
    # big enough A pushes beta above zero; the verdict must stay undecided
    r = beta(G, H_TILDE, 2)
    assert r.beta == Fraction(11, 12)
    assert r.verdict == StabilityVerdict()
    assert verdict_chain([r, REPORT], True).admitsKE == NO


def test_rescaled_direction():
    # doubling the direction halves the parameter range, so S and A both halve
    r = beta(G, H_TILDE.scale(2), Fraction(1, 2))
    assert r.sValue == REPORT.sValue / 2
    assert r.beta == REPORT.beta / 2
    assert r.pseudoeffectiveThreshold == Fraction(3, 2)


REPORTS = grid_reports()


def test_grid_is_mostly_supported():
    # sanity on the oracle input itself: a real sample, with both outcomes present
    assert len(REPORTS) > len(GRID) // 2
    assert len(REPORTS) < len(GRID)


@pytest.mark.parametrize("geom, report", REPORTS, ids=[str(g.to_json()) for g, _ in REPORTS])
def test_s_value_matches_simpson(geom, report):
    numeric = simpson(report.volumePieces) / float(report.anticanonicalVolume)
    assert abs(float(report.sValue) - numeric) < 1e-9


@pytest.mark.parametrize("geom, report", REPORTS[::7])
def test_report_self_consistent(geom, report):
    vol = report.volumePieces
    assert vol(0) == report.anticanonicalVolume
    assert vol.domain == (0, report.pseudoeffectiveThreshold)
    assert report.sValue == piecewise_integrate(vol) / report.anticanonicalVolume
    assert report.beta == report.logDiscrepancy - report.sValue
    assert report.sValue > 0
    samples = [vol(report.pseudoeffectiveThreshold * Fraction(k, 32)) for k in range(33)]
    if all(a >= b for a, b in zip(samples, samples[1:])):
        assert report.sValue < report.pseudoeffectiveThreshold


def test_unrealizable_data_are_computed_formally():
    # a quartic curve on the index-3, degree-1 data: the cube rises above V, no check is made
    r = beta(BlowupGeometry(1, 3, 4, 0), H_TILDE)
    assert r.anticanonicalVolume == 1
    assert r.volumePieces(1) == 8
    assert r.sValue == Fraction(47, 4)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(REPORTS), st.fractions(min_value=Fraction(1, 9), max_value=5, max_denominator=9))
def test_beta_affine_in_discrepancy(pair, A):
    geom, report = pair
    r = beta(geom, H_TILDE, A)
    assert r.sValue == report.sValue
    assert r.beta == A - report.sValue
    assert r.verdict.kUnstable is (r.beta < 0)
