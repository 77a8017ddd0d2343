"""Exact Schur-multiplicity series of two-variable rational symmetric
functions, with the trace algebras of two generic 4x4 matrices worked out in
full: stored closed forms, an independent solver, elementary-fraction
structure, and degree-14 asymptotics."""

from .mpoly import BigRat, MPoly, NotDivisible, RatFun
from .symfunc import (
    MultTable,
    Partition2,
    SeriesExtractor,
    TruncSeries,
    inverse_M,
    mult_series_truncated,
    schur,
    schur_decompose,
    series_expand,
)
from .partialfrac import (
    FactorBasis,
    PartialFractionForm,
    partial_fractions,
    residue_coefficient,
)
from .multsolver import (
    SolverError,
    SymmetricQuotient,
    solve_details,
    solve_multiplicity_series,
    verify_roundtrip,
)
from .exprparse import ParseError, ast_to_text, parse_expr, to_mpoly, to_ratfun
from .trace44 import (
    AlgebraKind,
    asymptotic,
    asymptotic_convergence_report,
    asymptotic_region,
    fraction_table,
    hilbert_series,
    leading_part,
    multiplicity,
    multiplicity_grid,
    multiplicity_series,
)

__all__ = [
    "AlgebraKind",
    "BigRat",
    "FactorBasis",
    "MPoly",
    "MultTable",
    "NotDivisible",
    "ParseError",
    "PartialFractionForm",
    "Partition2",
    "RatFun",
    "SeriesExtractor",
    "SolverError",
    "SymmetricQuotient",
    "TruncSeries",
    "ast_to_text",
    "asymptotic",
    "asymptotic_convergence_report",
    "asymptotic_region",
    "fraction_table",
    "hilbert_series",
    "inverse_M",
    "leading_part",
    "mult_series_truncated",
    "multiplicity",
    "multiplicity_grid",
    "multiplicity_series",
    "parse_expr",
    "partial_fractions",
    "residue_coefficient",
    "schur",
    "schur_decompose",
    "series_expand",
    "solve_details",
    "solve_multiplicity_series",
    "to_mpoly",
    "to_ratfun",
    "verify_roundtrip",
]
