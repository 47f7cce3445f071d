"""Command-line front end.

Subcommands ``beta``, ``volume``, ``aut`` and ``classify`` print one JSON
document to stdout. Rationals are always exact ``"p/q"`` strings and keys
come out in a fixed order, so identical inputs give identical bytes.

Exit codes: 0 success, 2 input error, 3 regime error, 4 table parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import linalg
from .arith import as_rational, format_rational, parse_rational
from .autforms import (
    PENCIL_PRESETS,
    PencilConfig,
    QForm,
    case_normal_form,
    diagonal_pair_stabilizer,
    hyperplane_basis,
    ker_h_group,
    lie_stabilizer_dim,
    pencil_char_poly,
    restrict_form,
    simdiag_check,
    trace_normalize,
)
from .classify import load_seed_table, load_table, match_invariants, smooth_limit_report
from .errors import InputError, RegimeError, TableParseError, UnsupportedShapeError
from .geometry import PRESETS, BlowupGeometry, DivisorClass, anticanonical, preset, triple_form, triple_product
from .positivity import (
    DEFAULT_CONE,
    UNBOUNDED,
    ConeSpec,
    DivisorPath,
    nef_threshold,
    pseudoeffective_threshold,
    volume_path,
)
from .stability import beta, verdict_chain

EXIT_OK, EXIT_INPUT, EXIT_REGIME, EXIT_PARSE = 0, 2, 3, 4

DEFAULT_PRESET = "mori-mukai-2.23"
DEFAULT_PENCIL = "sample-case-1"


@dataclass
class RunConfig:
    geometry: BlowupGeometry
    geometry_name: str | None
    divisorDirection: DivisorClass
    logDiscrepancy: Fraction
    cone: ConeSpec
    pencil: PencilConfig | None = None
    pencil_name: str | None = None
    tablePath: Path | None = None
    query: tuple[int, int, Fraction] | None = None
    csv: str | None = None
    sampleStep: Fraction = Fraction(1, 8)


# --- parsing helpers --------------------------------------------------------


def _pair(text: str) -> tuple[Fraction, Fraction]:
    parts = [p for p in text.split(",")]
    if len(parts) != 2:
        raise InputError(f"expected a pair 'a,b', got {text!r}")
    return parse_rational(parts[0]), parse_rational(parts[1])


def _cone(value: Any) -> ConeSpec:
    if isinstance(value, str):
        pairs = [_pair(chunk) for chunk in value.split(";") if chunk.strip()]
    else:
        pairs = [tuple(as_rational(str(x)) for x in item) for item in value]
    return ConeSpec.of(pairs)


def _qform(rows: Any) -> QForm:
    return QForm([[as_rational(str(x)) for x in row] for row in rows])


def _pencil(value: Any) -> tuple[PencilConfig, str | None]:
    if isinstance(value, str):
        try:
            return PENCIL_PRESETS[value], value
        except KeyError:
            known = ", ".join(sorted(PENCIL_PRESETS))
            raise InputError(f"unknown pencil preset {value!r} (known: {known})") from None
    if not isinstance(value, dict) or set(value) != {"FQ", "FH", "FQp"}:
        raise InputError("pencil must be a preset name or an object with FQ, FH, FQp")
    return (
        PencilConfig(
            _qform(value["FQ"]),
            tuple(as_rational(str(x)) for x in value["FH"]),
            _qform(value["FQp"]),
        ),
        None,
    )


def _geometry(preset_name: str | None, explicit: dict[str, Any]) -> tuple[BlowupGeometry, str | None]:
    if preset_name is not None and explicit:
        raise InputError("give either a geometry preset or explicit d, r, c, g, not both")
    if explicit:
        missing = [k for k in ("d", "r", "c", "g") if k not in explicit]
        if missing:
            raise InputError(f"explicit geometry is missing {', '.join(missing)}")
        g = as_rational(str(explicit["g"]))
        return (
            BlowupGeometry(
                as_rational(str(explicit["d"])),
                as_rational(str(explicit["r"])),
                as_rational(str(explicit["c"])),
                g,
            ),
            None,
        )
    name = preset_name or DEFAULT_PRESET
    return preset(name), name


def _load_config_file(path: str) -> dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InputError("config file must hold a JSON object")
    return data


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge the optional config file with command-line flags (flags win)."""
    file_cfg = _load_config_file(args.config) if getattr(args, "config", None) else {}

    preset_name: str | None = None
    explicit: dict[str, Any] = {}
    geo = file_cfg.get("geometry")
    if isinstance(geo, str):
        preset_name = geo
    elif isinstance(geo, dict):
        explicit = dict(geo)
    elif geo is not None:
        raise InputError("config 'geometry' must be a preset name or an object")
    flag_explicit = {k: getattr(args, k) for k in ("d", "r", "c", "g") if getattr(args, k, None) is not None}
    if getattr(args, "preset", None) is not None and flag_explicit:
        raise InputError("give either --preset or explicit --d/--r/--c/--g, not both")
    if getattr(args, "preset", None) is not None:
        preset_name, explicit = args.preset, {}
    elif flag_explicit:
        preset_name = None
        explicit = {**explicit, **flag_explicit}
    geometry, geometry_name = _geometry(preset_name, explicit)

    direction = file_cfg.get("divisorDirection", ["1", "-1"])
    if getattr(args, "direction", None) is not None:
        direction = _pair(args.direction)
    elif isinstance(direction, str):
        direction = _pair(direction)
    a, b = (as_rational(str(x)) for x in direction)

    A = as_rational(str(file_cfg.get("logDiscrepancy", "1")))
    if getattr(args, "A", None) is not None:
        A = parse_rational(args.A)

    cone = DEFAULT_CONE
    if "cone" in file_cfg:
        cone = _cone(file_cfg["cone"])
    if getattr(args, "cone", None) is not None:
        cone = _cone(args.cone)

    pencil_value = file_cfg.get("pencil")
    if getattr(args, "pencil", None) is not None:
        pencil_value = args.pencil
    pencil, pencil_name = (None, None)
    if pencil_value is not None:
        pencil, pencil_name = _pencil(pencil_value)

    table = file_cfg.get("tablePath")
    if getattr(args, "table", None) is not None:
        table = args.table

    query = None
    q = getattr(args, "query", None) or file_cfg.get("query")
    if q is not None:
        parts = q.split(",") if isinstance(q, str) else [str(x) for x in q]
        if len(parts) != 3:
            raise InputError(f"query must be 'b2,b3,degree', got {q!r}")
        try:
            query = (int(parts[0]), int(parts[1]), parse_rational(parts[2]))
        except ValueError:
            raise InputError(f"query must be 'b2,b3,degree', got {q!r}") from None

    outputs = file_cfg.get("outputs", {})
    csv_target = outputs.get("csv")
    if csv_target is True:
        csv_target = "-"
    if getattr(args, "csv", None) is not None:
        csv_target = args.csv
    step = as_rational(str(outputs.get("sampleStep", "1/8")))
    if getattr(args, "sample_step", None) is not None:
        step = parse_rational(args.sample_step)
    if step <= 0:
        raise InputError("sample step must be positive")

    return RunConfig(
        geometry=geometry,
        geometry_name=geometry_name,
        divisorDirection=DivisorClass(a, b),
        logDiscrepancy=A,
        cone=cone,
        pencil=pencil,
        pencil_name=pencil_name,
        tablePath=Path(table) if table else None,
        query=query,
        csv=csv_target,
        sampleStep=step,
    )


# --- runners ----------------------------------------------------------------


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _threshold(x) -> str:
    return "unbounded" if x == UNBOUNDED else format_rational(x)


def sample_volume_csv(vol, step: Fraction) -> str:
    """Rows ``t, vol`` at ``0, step, 2 step, ...`` up to the end of the domain."""
    lo, hi = vol.domain
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "vol", "t_approx", "vol_approx"])
    k = 0
    while lo + k * step <= hi:
        t = lo + k * step
        v = vol(t)
        w.writerow([format_rational(t), format_rational(v), repr(float(t)), repr(float(v))])
        k += 1
    return buf.getvalue()


def _emit_csv(cfg: RunConfig, vol, out) -> bool:
    """Write the CSV sampling; True if it replaced the JSON on stdout."""
    if cfg.csv is None:
        return False
    text = sample_volume_csv(vol, cfg.sampleStep)
    if cfg.csv == "-":
        out.write(text)
        return True
    Path(cfg.csv).write_text(text, encoding="utf-8")
    return False


def _aut_finite_for(cfg: RunConfig) -> bool:
    pencil = cfg.pencil or PENCIL_PRESETS[DEFAULT_PENCIL]
    return lie_stabilizer_dim(pencil) == 0


def run_beta(cfg: RunConfig, out=sys.stdout) -> int:
    aut_finite = _aut_finite_for(cfg) if cfg.pencil is not None else False
    report = beta(cfg.geometry, cfg.divisorDirection, cfg.logDiscrepancy, cfg.cone, aut_finite)
    if _emit_csv(cfg, report.volumePieces, out):
        return EXIT_OK
    doc = {"command": "beta", "preset": cfg.geometry_name, **report.to_json()}
    out.write(_dump(doc))
    return EXIT_OK


def run_volume(cfg: RunConfig, out=sys.stdout) -> int:
    path = DivisorPath.from_anticanonical(cfg.geometry, cfg.divisorDirection)
    vol = volume_path(path, cfg.geometry, cfg.cone)
    if _emit_csv(cfg, vol, out):
        return EXIT_OK
    doc = {
        "command": "volume",
        "preset": cfg.geometry_name,
        "geometry": cfg.geometry.to_json(),
        "divisor": cfg.divisorDirection.to_json(),
        "nefThreshold": _threshold(nef_threshold(path, cfg.cone)),
        "pseudoeffectiveThreshold": _threshold(pseudoeffective_threshold(path)),
        "volumePieces": vol.to_json(),
    }
    out.write(_dump(doc))
    return EXIT_OK


def _restricted_pencil(pencil: PencilConfig, notes: list[str]) -> tuple[QForm, QForm]:
    W = hyperplane_basis(pencil.FH)
    q1, q2 = restrict_form(pencil.FQ, W), restrict_form(pencil.FQp, W)
    if q1.det() != 0:
        return q1, q2
    if q2.det() != 0:
        notes.append("Q|H is degenerate; pencil taken in the basis (Q'|H, Q|H)")
        return q2, q1
    for k in range(1, q1.size + 2):
        cand = QForm(linalg.matadd(q1.matrix, q2.matrix, k))
        if cand.det() != 0:
            notes.append(f"pencil taken in the basis (Q|H + {k} Q'|H, Q'|H)")
            return cand, q2
    raise UnsupportedShapeError("restricted pencil is identically degenerate")


def aut_report(pencil: PencilConfig, pencil_name: str | None = None) -> dict[str, Any]:
    notes: list[str] = []
    n = pencil.size
    lie_dim = lie_stabilizer_dim(pencil)

    W = hyperplane_basis(pencil.FH)
    qh = restrict_form(pencil.FQ, W)
    if qh.det() != 0:
        case = 1
    else:
        # corank-1 hyperplane section whose vertex must avoid C
        vertex_space = linalg.kernel_basis(qh.matrix)
        if len(vertex_space) != 1:
            raise UnsupportedShapeError("hyperplane section has corank > 1")
        v = linalg.matmul(W, linalg.transpose((tuple(vertex_space[0]),)))
        vv = [row[0] for row in v]
        qp_v = sum((vv[i] * pencil.FQp.matrix[i][j] * vv[j] for i in range(n) for j in range(n)), Fraction(0))
        if qp_v == 0:
            raise UnsupportedShapeError("singular point of H lies on C")
        case = 2

    nonzero = [i for i, x in enumerate(pencil.FH) if x != 0]
    direct = False
    if len(nonzero) == 1:
        try:
            kgroup = ker_h_group(pencil.FQ, nonzero[0])
            direct = True
        except UnsupportedShapeError:
            pass
    if not direct:
        normal = case_normal_form(case, n)
        kgroup = ker_h_group(normal, 0)
        notes.append(f"Ker_H computed on the case {case} normal form (coordinate change over C)")

    q1, q2 = _restricted_pencil(pencil, notes)
    simdiag = simdiag_check(q1, q2)
    stabilizer = None
    if not simdiag:
        notes.append("restricted pencil has a repeated eigenvalue; stabilizer enumeration skipped")
    elif q1.is_diagonal() and q2.is_diagonal():
        B = QForm.diagonal([q2.matrix[i][i] / q1.matrix[i][i] for i in range(q1.size)])
        stabilizer = diagonal_pair_stabilizer(trace_normalize(B))
    else:
        notes.append("restricted pencil is not diagonal in the supplied coordinates; "
                     "stabilizer enumeration skipped")

    return {
        "command": "aut",
        "pencilPreset": pencil_name,
        "pencil": pencil.to_json(),
        "lie_dim": lie_dim,
        "case": case,
        "kerH_order": kgroup.order,
        "kerH_coordinates": "supplied" if direct else "normal form",
        "kerH": kgroup.to_json(),
        "simdiag": simdiag,
        "charPoly": pencil_char_poly(q1, q2).to_json(),
        "stabilizer_order": stabilizer.order if stabilizer else None,
        "stabilizer": stabilizer.to_json() if stabilizer else None,
        "finite": lie_dim == 0,
        "notes": notes,
    }


def run_aut(cfg: RunConfig, out=sys.stdout) -> int:
    if cfg.pencil is None:
        raise InputError("aut needs a pencil (--pencil PRESET or 'pencil' in the config)")
    out.write(_dump(aut_report(cfg.pencil, cfg.pencil_name)))
    return EXIT_OK


def run_classify(cfg: RunConfig, out=sys.stdout) -> int:
    if cfg.tablePath is None:
        table = load_seed_table()
        source = "seed"
    else:
        try:
            text = cfg.tablePath.read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read table {cfg.tablePath}: {exc.strerror}") from None
        table = load_table(text)
        source = str(cfg.tablePath)

    geom = cfg.geometry
    if cfg.query is None:
        K = anticanonical(geom)
        T = triple_form(geom)
        # blowup of a b3 = 0 threefold along a genus-g curve: b2 = 2, b3 = 2g
        query = (2, 2 * geom.g, triple_product(T, K, K, K))
    else:
        query = cfg.query
    matches = match_invariants(table, *query)

    pencil = cfg.pencil or PENCIL_PRESETS[DEFAULT_PENCIL]
    aut_finite = lie_stabilizer_dim(pencil) == 0
    report = beta(geom, cfg.divisorDirection, cfg.logDiscrepancy, cfg.cone, aut_finite)
    verdict = verdict_chain([report], aut_finite)
    doc = {
        "command": "classify",
        "table": source,
        "query": {"b2": query[0], "b3": query[1], "degree": format_rational(query[2])},
        "matches": matches,
        "evidence": {
            "preset": cfg.geometry_name,
            "geometry": geom.to_json(),
            "beta": format_rational(report.beta),
            "pencilPreset": cfg.pencil_name or (None if cfg.pencil else DEFAULT_PENCIL),
            "autFinite": aut_finite,
        },
        "verdict": verdict.to_json(),
        "conclusion": smooth_limit_report(matches, verdict),
    }
    out.write(_dump(doc))
    return EXIT_OK


# --- argument parsing -------------------------------------------------------


def _add_geometry_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file; flags override its values")
    p.add_argument("--preset", choices=sorted(PRESETS), help="named geometry")
    p.add_argument("--d", help="A^3 of the ambient threefold")
    p.add_argument("--r", help="Fano index of the ambient threefold")
    p.add_argument("--c", help="degree A.C of the blown-up curve")
    p.add_argument("--g", help="genus of the blown-up curve")
    p.add_argument("--direction", help="divisor a,b = a*pi^*A + b*E (default 1,-1)")
    p.add_argument("--A", help="log discrepancy of the divisor (default 1)")
    p.add_argument("--cone", help="curve classes 'l,f;l,f;...' (default 0,1;1,0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fanobeta", description="Exact beta-invariant and automorphism computations."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("beta", "beta invariant report"),
        ("volume", "volume function pieces only"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_geometry_args(p)
        p.add_argument("--csv", nargs="?", const="-", metavar="PATH",
                       help="sample the volume as CSV (stdout if no PATH)")
        p.add_argument("--sample-step", dest="sample_step", help="CSV step (default 1/8)")
        if name == "beta":
            p.add_argument("--pencil", help="pencil preset used for automorphism finiteness")

    p = sub.add_parser("aut", help="automorphism finiteness report")
    p.add_argument("--config", help="JSON config file; flags override its values")
    p.add_argument("--pencil", help=f"pencil preset ({', '.join(sorted(PENCIL_PRESETS))})")

    p = sub.add_parser("classify", help="invariant matching and smooth-limit report")
    _add_geometry_args(p)
    p.add_argument("--table", help="CSV table id,b2,b3,degree (default: shipped seed table)")
    p.add_argument("--query", help="b2,b3,degree (default: invariants of the geometry)")
    p.add_argument("--pencil", help="pencil preset used for automorphism finiteness")
    return parser


RUNNERS = {"beta": run_beta, "volume": run_volume, "aut": run_aut, "classify": run_classify}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        return RUNNERS[args.command](cfg, out)
    except TableParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RegimeError as exc:
        print(f"regime error: {exc}", file=sys.stderr)
        return EXIT_REGIME


def main_entry() -> None:
    sys.exit(main())
