"""Exact arithmetic kernel: rationals, sparse Laurent polynomials, truncated series."""

from .mpoly import (
    ONE,
    ZERO,
    MPoly,
    Rational,
    coeff_extract,
    mpoly_arith,
    partial_derivative,
    series_exp,
    series_inverse as poly_inverse,
    series_log as poly_log,
    weighted_truncate,
)
from .series import (
    TruncationError,
    TruncSeries,
    series_compose,
    series_inverse,
    series_log,
    series_mul,
    series_plus_part,
    series_residue,
    series_reversion,
)
from .text import format_poly, parse_poly, poly_from_json, poly_to_json
from .variables import (
    DKP_GRADING,
    FROB_GRADING,
    TSECOND_GRADING,
    Family,
    Grading,
    VarId,
    f,
    fd,
    lam,
    p,
    q,
    t,
    tp,
    w,
    x,
    y,
    z,
    zeta,
)

__all__ = [
    "ONE", "ZERO", "MPoly", "Rational", "coeff_extract", "mpoly_arith",
    "partial_derivative", "series_exp", "poly_inverse", "poly_log", "weighted_truncate",
    "TruncationError", "TruncSeries", "series_compose", "series_inverse", "series_log",
    "series_mul", "series_plus_part", "series_residue", "series_reversion",
    "format_poly", "parse_poly", "poly_from_json", "poly_to_json",
    "DKP_GRADING", "FROB_GRADING", "TSECOND_GRADING", "Family", "Grading", "VarId",
    "f", "fd", "lam", "p", "q", "t", "tp", "w", "x", "y", "z", "zeta",
]
