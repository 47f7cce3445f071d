"""Exact beta-invariants and automorphism checks for blowups of Fano threefolds."""

from .arith import PiecewisePoly, Poly, format_rational, parse_rational
from .autforms import (
    PencilConfig,
    QForm,
    diagonal_pair_stabilizer,
    ker_h_group,
    lie_stabilizer_dim,
    simdiag_check,
    trace_normalize,
)
from .classify import load_seed_table, load_table, match_invariants, smooth_limit_report
from .errors import InputError, RegimeError, TableParseError
from .geometry import BlowupGeometry, CurveClass, DivisorClass, anticanonical, preset, triple_form, triple_product
from .positivity import ConeSpec, DivisorPath, is_nef, nef_threshold, volume_path, zariski_decompose
from .stability import BetaReport, StabilityVerdict, beta, s_value, verdict_chain

__version__ = "0.1.0"
