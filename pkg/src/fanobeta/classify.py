"""Deformation-invariant matching against a table of Fano threefold families.

A smooth degeneration keeps ``b2``, ``b3`` and ``(-K)^3``; if the only family
carrying that triple admits no Kahler-Ricci soliton, a smooth limit of the
flow is impossible.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Iterable, Mapping, TextIO

from .arith import RationalLike, as_rational, format_rational, parse_rational
from .errors import InputError, TableParseError
from .stability import NO, StabilityVerdict

__all__ = [
    "FamilyRecord",
    "HEADER",
    "load_table",
    "load_seed_table",
    "serialize_table",
    "match_invariants",
    "smooth_limit_report",
]

HEADER = ("id", "b2", "b3", "degree")


@dataclass(frozen=True)
class FamilyRecord:
    id: str
    b2: int
    b3: int
    degree: Fraction


def _nonneg_int(text: str, what: str, line: int) -> int:
    try:
        value = int(text.strip())
    except ValueError:
        raise TableParseError(f"{what} is not an integer: {text!r}", line) from None
    if value < 0:
        raise TableParseError(f"{what} must be nonnegative, got {value}", line)
    return value


def load_table(source: TextIO | str) -> list[FamilyRecord]:
    """Parse a CSV with header ``id,b2,b3,degree``.

    Accepts a text stream or a string; LF and CRLF line endings both work.
    """
    text = source if isinstance(source, str) else source.read()
    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        header = next(reader)
    except StopIteration:
        raise TableParseError("empty table (missing header)", 1) from None
    if tuple(h.strip() for h in header) != HEADER:
        raise TableParseError(f"expected header {','.join(HEADER)}, got {','.join(header)}", 1)
    records: list[FamilyRecord] = []
    seen: set[str] = set()
    for row in reader:
        line = reader.line_num
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(HEADER):
            raise TableParseError(f"expected {len(HEADER)} fields, got {len(row)}", line)
        fid = row[0].strip()
        if not fid:
            raise TableParseError("empty family id", line)
        if fid in seen:
            raise InputError(f"line {line}: duplicate family id {fid!r}")
        try:
            degree = parse_rational(row[3])
        except InputError as exc:
            raise TableParseError(str(exc), line) from None
        records.append(
            FamilyRecord(fid, _nonneg_int(row[1], "b2", line), _nonneg_int(row[2], "b3", line), degree)
        )
        seen.add(fid)
    return records


def load_seed_table() -> list[FamilyRecord]:
    """The shipped table; it only holds families whose invariants are attested."""
    text = resources.files("fanobeta.data").joinpath("seed_table.csv").read_text(encoding="utf-8")
    return load_table(text)


def serialize_table(records: Iterable[FamilyRecord]) -> str:
    out = [",".join(HEADER)]
    for r in records:
        out.append(f"{r.id},{r.b2},{r.b3},{format_rational(r.degree)}")
    return "\n".join(out) + "\n"


def match_invariants(
    table: Iterable[FamilyRecord], b2: int, b3: int, degree: RationalLike
) -> list[str]:
    """Ids whose ``(b2, b3, degree)`` equal the query, in table order."""
    degree = as_rational(degree)
    return [r.id for r in table if r.b2 == b2 and r.b3 == b3 and r.degree == degree]


def smooth_limit_report(
    matches: list[str], verdict: StabilityVerdict | Mapping[str, StabilityVerdict]
) -> str:
    """Render the smooth-limit contradiction, or say why it is unavailable.

    ``verdict`` is either one verdict applying to every matched family or a
    mapping from family id to verdict.
    """
    if not matches:
        return "inconclusive (no family matched)"

    def lookup(fid: str) -> StabilityVerdict | None:
        if isinstance(verdict, StabilityVerdict):
            return verdict
        return verdict.get(fid)

    missing = [fid for fid in matches if lookup(fid) is None]
    if missing:
        return f"inconclusive (no verdict supplied for {', '.join(missing)})"
    open_ids = [fid for fid in matches if lookup(fid).admitsKRS != NO]
    if open_ids:
        return (
            "inconclusive (Kahler-Ricci soliton not excluded for "
            f"{', '.join(open_ids)})"
        )
    fams = ", ".join(matches)
    return (
        f"a smooth limit would keep (b2, b3, (-K)^3) and so lie in family {fams}; "
        "a smooth flow limit carries a Kahler-Ricci soliton, yet no member of "
        "that family admits one; contradiction, so the limit must be singular "
        "(the Kahler-Ricci flow has a type II singularity)"
    )
