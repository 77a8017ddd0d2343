"""Trace algebras of two generic 4x4 matrices: exact series data and results.

C denotes the pure trace algebra (simultaneous-conjugation invariants of two
generic 4x4 matrices) and T the mixed trace algebra.  This module stores
their known bigraded Hilbert series and the closed-form rational
multiplicity series, and derives everything the package reports about them:

* Hilbert series P/Q, with every displayed form of P and Q stored and
  checked equal when the data loads (guarding against transcription slips);
* closed-form multiplicity series as tables of elementary-fraction
  coefficients in v, assembled into rational functions of (t, v), plus an
  independent recomputation through the unknown-coefficient solver;
* single multiplicities m(l1, l2) as exact nonnegative integers, for
  partitions small and large;
* the full two-level elementary-fraction decomposition over the fixed factor
  lists in v and t, and its leading part: the subsum whose denominator
  exponents reach the maximal total 16, which governs the degree-14 growth
  of the multiplicities;
* asymptotic evaluation of the multiplicities with the three-regime case
  split on (l1, l2), and exact-vs-asymptotic convergence reports.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .exprparse import to_mpoly, to_ratfun
from .mpoly import MPoly, NotDivisible, RatFun, mpoly_to_text
from .multsolver import SymmetricQuotient, solve_details
from .partialfrac import BasisError, FactorBasis, partial_fractions
from .symfunc import MultTable, Partition2, SeriesExtractor, series_expand
from . import unipoly


class AlgebraKind(str, Enum):
    PURE = "pure"
    MIXED = "mixed"


def _kind(kind):
    if isinstance(kind, AlgebraKind):
        return kind
    return AlgebraKind(str(kind))


# ---------------------------------------------------------------------------
# Stored data.  All strings below are exact transcriptions of the published
# closed forms; they are parsed, never rekeyed by hand, and redundant forms
# are cross-checked at load time.
# ---------------------------------------------------------------------------

_HILBERT_NUM = {
    AlgebraKind.PURE: (
        "(1-x*y+(x*y)^2)*(1-(x+y)*(x*y)+(x+y)*(x*y)^2+(x+y)^2*(x*y)^2"
        "+(x+y)*(x*y)^3-(x+y)*(x*y)^4+(x*y)^6)",
        "(1-x*y+(x*y)^2)*((1+(x*y)^3)^2-(x+y)*(x*y)*(1-x*y)^2*(1+x*y)"
        "+(x^2+y^2)*(x*y)^2)",
    ),
    AlgebraKind.MIXED: ("1+(x*y)^2+(x*y)^3+(x*y)^5+(x+y)*(x*y)^2",),
}

_HILBERT_DEN = {
    AlgebraKind.PURE: (
        "(1-x)*(1-x^2)*(1-x^3)*(1-x^4)*(1-y)*(1-y^2)*(1-y^3)*(1-y^4)"
        "*(1-x*y)^2*(1-x^2*y)^2*(1-x*y^2)^2*(1-x^3*y)*(1-x*y^3)*(1-x^2*y^2)",
        "(1-x*y)^3*(1+x*y)*(1-x)^4*(1+x)^2*(1+x+x^2)*(1+x^2)*(1-x^2*y)^2"
        "*(1-x^3*y)*(1-y)^4*(1+y)^2*(1+y+y^2)*(1+y^2)*(1-x*y^2)^2*(1-x*y^3)",
    ),
    AlgebraKind.MIXED: (
        "(1-x)^2*(1-x^2)*(1-x^3)*(1-y)^2*(1-y^2)*(1-y^3)"
        "*(1-x*y)^2*(1-x^2*y)^2*(1-x*y^2)^2*(1-x^3*y)*(1-x*y^3)*(1-x^2*y^2)",
        "(1-x*y)^3*(1+x*y)*(1-x)^4*(1+x)*(1+x+x^2)*(1-x^2*y)^2*(1-x^3*y)"
        "*(1-y)^4*(1+y)*(1+y+y^2)*(1-x*y^2)^2*(1-x*y^3)",
    ),
}

# Witness of the shape z(xy) * (p(x,xy) + p(y,xy)) / (q(x,xy) q(y,xy)); the
# v slot of p and q stands for the product xy.
_WITNESS = {
    AlgebraKind.PURE: {
        "p": "(1-v+v^2)*((1+v^3)^2/2-x*(v*(1-v)^2*(1+v))+x^2*v^2)",
        "q": "(1-x)^4*(1+x)^2*(1+x+x^2)*(1+x^2)*(1-v*x)^2*(1-v*x^2)",
        "z": "1/((1-v)^3*(1+v))",
    },
    AlgebraKind.MIXED: {
        "p": "(1+v^2+v^3+v^5)/2+x*v^2",
        "q": "(1-x)^4*(1+x)*(1+x+x^2)*(1-v*x)^2*(1-v*x^2)",
        "z": "1/((1-v)^3*(1+v))",
    },
}

# Elementary-fraction coefficient tables of the multiplicity series.  Keys
# are (t-factor, power); values list the numerator coefficients by t-power.
_COEFF_TABLE = {
    AlgebraKind.PURE: {
        ("1-t", 4): (
            "((1-v+v^2)*(1-v+v^2+4*v^3+v^4-v^5+v^6))"
            "/(24*(1-v)^12*(1+v)^5*(1+v+v^2)^2*(1+v^2))",
        ),
        ("1-t", 3): (
            "((1+v+v^2)*(1-v+v^2)*(3-4*v-v^2+4*v^3-3*v^4-20*v^5-12*v^6"
            "-12*v^7+7*v^8+12*v^9+v^10-4*v^11+5*v^12))"
            "/(24*(1-v)^13*(1+v)^6*(1+v+v^2)^4*(1+v^2)^2)",
        ),
        ("1-t", 2): (
            "((1-v+v^2)*(59-97*v-26*v^2+223*v^3+675*v^4+840*v^5+2501*v^6"
            "+4049*v^7+6799*v^8+7754*v^9+6367*v^10+3473*v^11+2189*v^12"
            "+768*v^13+747*v^14+271*v^15-26*v^16-97*v^17+107*v^18))"
            "/(288*(1-v)^14*(1+v)^7*(1+v+v^2)^4*(1+v^2)^3)",
        ),
        ("1-t", 1): (
            "((1-v+v^2)*(34-86*v-62*v^2+106*v^3+459*v^4-624*v^5-1887*v^6"
            "-6630*v^7-12804*v^8-24712*v^9-40531*v^10-57622*v^11-62642*v^12"
            "-57622*v^13-40531*v^14-24712*v^15-12804*v^16-6630*v^17"
            "-1887*v^18-624*v^19+459*v^20+106*v^21-62*v^22-86*v^23+34*v^24))"
            "/(144*(1-v)^15*(1+v)^8*(1+v+v^2)^5*(1+v^2)^4)",
        ),
        ("1+t", 2): ("(1+v^4)/(32*(1-v)^6*(1+v)^7*(1+v^2)^3)",),
        ("1+t", 1): (
            "(2-2*v-4*v^3+v^4-4*v^5-2*v^6-4*v^7+v^8-4*v^9-2*v^11+2*v^12)"
            "/(16*(1-v)^7*(1+v)^8*(1+v+v^2)*(1+v^2)^4*(1-v+v^2))",
        ),
        ("1+t+t^2", 1): (
            "(1+2*v)/(9*(1-v)^4*(1+v)*(1+v+v^2)^5*(1-v+v^2))",
            "1/(9*(1-v)^3*(1+v+v^2)^5*(1-v+v^2))",
        ),
        ("1+t^2", 1): (
            "1/(8*(1-v)^4*(1+v)^3*(1+v^2)^4)",
            "0",
        ),
        ("1-v*t", 2): (
            "(-(v^11))/((1-v)^14*(1+v)^7*(1+v+v^2)^2*(1+v^2)^3*(1+v+v^2+v^3+v^4))",
        ),
        ("1-v*t", 1): (
            "(-(v^11)*(11+14*v+31*v^2+40*v^3+60*v^4+60*v^5+72*v^6+60*v^7"
            "+60*v^8+40*v^9+31*v^10+14*v^11+11*v^12))"
            "/((1-v)^15*(1+v)^8*(1+v+v^2)^3*(1+v^2)^4*(1+v+v^2+v^3+v^4)^2"
            "*(1-v+v^2))",
        ),
        ("1-v*t^2", 1): (
            "(v^5*(1+v+8*v^2+10*v^3+14*v^4+17*v^5+26*v^6+17*v^7+14*v^8"
            "+10*v^9+8*v^10+v^11+v^12))"
            "/((1-v)^15*(1+v)^3*(1+v+v^2)^5*(1+v+v^2+v^3+v^4)^2)",
            "(2*v^6*(1-v+v^2)*(1+2*v^2+2*v^3+2*v^4+v^6))"
            "/((1-v)^15*(1+v+v^2)^5*(1+v+v^2+v^3+v^4)^2)",
        ),
    },
    AlgebraKind.MIXED: {
        ("1-t", 4): (
            "(1-v+3*v^2-v^3+v^4)/(6*(1-v)^12*(1+v)^3*(1+v+v^2)^2)",
        ),
        ("1-t", 3): (
            "(3-8*v+4*v^2-9*v^3-8*v^4-5*v^5+12*v^6-8*v^7+7*v^8)"
            "/(12*(1-v)^13*(1+v)^4*(1+v+v^2)^3)",
        ),
        ("1-t", 2): (
            "(17-55*v+124*v^2+304*v^3+540*v^4+777*v^5+1332*v^6+687*v^7"
            "+468*v^8+280*v^9+124*v^10-73*v^11+47*v^12)"
            "/(72*(1-v)^14*(1+v)^5*(1+v+v^2)^4)",
        ),
        ("1-t", 1): (
            "(25-134*v+165*v^2+123*v^3-1758*v^4-6240*v^5-9439*v^6-16537*v^7"
            "-20250*v^8-16537*v^9-9439*v^10-6240*v^11-1758*v^12+123*v^13"
            "+165*v^14-134*v^15+25*v^16)"
            "/(144*(1-v)^15*(1+v)^6*(1+v+v^2)^5)",
        ),
        ("1+t", 1): (
            "(1-v+v^2-v^3+v^4)"
            "/(16*(1-v)^5*(1+v)^6*(1+v+v^2)*(1+v^2)^2*(1-v+v^2))",
        ),
        ("1+t+t^2", 1): (
            "(1+2*v)/(9*(1-v)^4*(1+v)*(1+v+v^2)^5*(1-v+v^2))",
            "1/(9*(1-v)^3*(1+v+v^2)^5*(1-v+v^2))",
        ),
        ("1-v*t", 2): (
            "(-(v^8))/((1-v)^14*(1+v)^5*(1+v+v^2)^2*(1+v^2)*(1+v+v^2+v^3+v^4))",
        ),
        ("1-v*t", 1): (
            "(-(v^8)*(3+3*v+4*v^2+4*v^3+4*v^4+3*v^5+3*v^6)"
            "*(3+v+5*v^2+3*v^3+5*v^4+v^5+3*v^6))"
            "/((1-v)^15*(1+v)^6*(1+v+v^2)^3*(1+v^2)^2*(1+v+v^2+v^3+v^4)^2"
            "*(1-v+v^2))",
        ),
        ("1-v*t^2", 1): (
            "(2*v^4*(2+2*v+3*v^2+3*v^3+4*v^4+v^5+v^6)"
            "*(1+v+4*v^2+3*v^3+3*v^4+2*v^5+2*v^6))"
            "/((1-v)^15*(1+v)*(1+v+v^2)^5*(1+v+v^2+v^3+v^4)^2)",
            "(v^4*(1+5*v+12*v^2+18*v^3+34*v^4+37*v^5+42*v^6+37*v^7+34*v^8"
            "+18*v^9+12*v^10+5*v^11+v^12))"
            "/((1-v)^15*(1+v+v^2)^5*(1+v+v^2+v^3+v^4)^2)",
        ),
    },
}

# Denominator factors of the multiplicity series, with their maximal powers.
_T_BASIS_POWERS = {
    AlgebraKind.PURE: (
        ("1-t", 4),
        ("1+t", 2),
        ("1+t+t^2", 1),
        ("1+t^2", 1),
        ("1-v*t", 2),
        ("1-v*t^2", 1),
    ),
    AlgebraKind.MIXED: (
        ("1-t", 4),
        ("1+t", 1),
        ("1+t+t^2", 1),
        ("1-v*t", 2),
        ("1-v*t^2", 1),
    ),
}

# Factor lists of the two-level elementary-fraction decomposition.
V_FACTOR_STRINGS = ("1-v", "1+v", "1-v+v^2", "1+v+v^2", "1+v^2", "1+v+v^2+v^3+v^4")
T_FACTOR_STRINGS = ("1-t", "1+t", "1+t+t^2", "1+t^2", "1-v*t", "1-v*t^2")

# Leading part of the decomposition of the pure multiplicity series: the
# seven fractions whose denominator exponents add to 16.  Mixed = 16 * pure.
_PURE_LEADING = (
    ("1-v", 12, "1-t", 4, "1/(2^8*3^2)"),
    ("1-v", 13, "1-t", 3, "-1/(2^8*3^3)"),
    ("1-v", 14, "1-t", 2, "127/(2^10*3^4)"),
    ("1-v", 15, "1-t", 1, "-305/(2^9*3^5)"),
    ("1-v", 14, "1-v*t", 2, "-1/(2^10*3^2*5)"),
    ("1-v", 15, "1-v*t", 1, "-7/(2^9*3*5^2)"),
    ("1-v", 15, "1-v*t^2", 1, "2^4*(1+t)/(3^5*5^2)"),
)

MAX_DENOMINATOR_WEIGHT = 16

# Asymptotic leading terms: with p = l1 - l2 and q = l2, the multiplicity of
# the pure algebra grows like m1 (always), plus m2 once 3*l2 >= l1, plus m3
# once 2*l2 >= l1; the mixed multiplicity is 16 times the pure one to the
# same order.  All constants are exact.
_M1_TERMS = (
    (3, 11, Fraction(1, 2**8 * 3**2 * math.factorial(11) * math.factorial(3))),
    (2, 12, Fraction(-1, 2**8 * 3**3 * math.factorial(12) * math.factorial(2))),
    (1, 13, Fraction(127, 2**10 * 3**4 * math.factorial(13))),
    (0, 14, Fraction(-305, 2**9 * 3**5 * math.factorial(14))),
)
_M2_CONST = Fraction(1, 2**10 * 3**5 * 5**2 * math.factorial(14))
_M3_LIN = Fraction(-1, 2**10 * 3**2 * 5 * math.factorial(13))
_M3_QUAD = Fraction(-7, 2**9 * 3 * 5**2 * math.factorial(14))
MIXED_TO_PURE_RATIO = 16


# ---------------------------------------------------------------------------
# Loaders
# ---------------------------------------------------------------------------


class DataIntegrityError(RuntimeError):
    """Stored closed forms disagree with each other or with a recomputation."""


@lru_cache(maxsize=None)
def _hilbert_parts(kind):
    kind = _kind(kind)
    nums = [to_mpoly(s) for s in _HILBERT_NUM[kind]]
    dens = [to_mpoly(s) for s in _HILBERT_DEN[kind]]
    for other in nums[1:]:
        if other != nums[0]:
            raise DataIntegrityError(f"{kind.value}: numerator forms disagree")
    for other in dens[1:]:
        if other != dens[0]:
            raise DataIntegrityError(f"{kind.value}: denominator forms disagree")
    return nums[0], dens[0]


@lru_cache(maxsize=None)
def hilbert_series(kind):
    """Bigraded Hilbert series as a reduced rational function of (x, y)."""
    num, den = _hilbert_parts(_kind(kind))
    return RatFun(num, den)


def hilbert_display(kind, form="factored"):
    """Display strings for the Hilbert series (factored keeps the stored
    product form; expanded prints the expanded polynomials)."""
    kind = _kind(kind)
    if form == "factored":
        return _HILBERT_NUM[kind][-1], _HILBERT_DEN[kind][-1]
    if form == "expanded":
        num, den = _hilbert_parts(kind)
        return mpoly_to_text(num), mpoly_to_text(den)
    raise ValueError(f"unknown form {form!r}")


@lru_cache(maxsize=None)
def quotient_witness(kind):
    """Witness of the rational-multiplicity shape, checked against the
    Hilbert series exactly."""
    kind = _kind(kind)
    data = _WITNESS[kind]
    shape = SymmetricQuotient(
        to_ratfun(data["p"]).as_mpoly(),
        to_mpoly(data["q"]),
        to_ratfun(data["z"]),
    )
    if not shape.matches(hilbert_series(kind)):
        raise DataIntegrityError(f"{kind.value}: shape witness does not match the Hilbert series")
    return shape


@lru_cache(maxsize=None)
def _factor(text):
    return to_mpoly(text)


def _factor_key(poly):
    return mpoly_to_text(poly)


def canonical_factor_key(text):
    """Canonical key of a denominator factor given in any equivalent form."""
    return _factor_key(_factor(text))


@lru_cache(maxsize=None)
def t_factor_basis(kind):
    """Denominator factor basis of the multiplicity series, in t over Q(v)."""
    return FactorBasis(
        "t", tuple((_factor(s), m) for s, m in _T_BASIS_POWERS[_kind(kind)])
    )


@dataclass(frozen=True)
class CoefficientTable:
    """Closed-form elementary-fraction coefficients of a multiplicity series.

    ``slots`` maps (t-factor key, power) to the tuple of numerator
    coefficients by t-power, each a rational function of v.
    """

    kind: AlgebraKind
    slots: dict

    def slot(self, factor_key, power):
        return self.slots[(factor_key, power)]

    def coefficient(self, factor_key, power, t_power=0):
        return self.slots[(factor_key, power)][t_power]

    def assemble(self):
        """Exact sum of all fractions as one rational function of (t, v)."""
        den_v = MPoly.const(1)
        for coeffs in self.slots.values():
            for c in coeffs:
                if not c.is_zero:
                    den_v = _lcm_v(den_v, c.den)
        basis = t_factor_basis(self.kind)
        powers = {_factor_key(f): m for f, m in basis.factors}
        factors = {_factor_key(f): f for f, m in basis.factors}
        t = MPoly.var("t")
        num = MPoly.const(0)
        for (fkey, power), coeffs in self.slots.items():
            cof = MPoly.const(1)
            for key2, f2 in factors.items():
                cof = cof * f2 ** (powers[key2] - power if key2 == fkey else powers[key2])
            for b, c in enumerate(coeffs):
                if c.is_zero:
                    continue
                num = num + c.num * den_v.exact_div(c.den) * cof * t**b
        den = basis.product() * den_v
        return _reduce_known(num, den, list(factors.values()) + _v_factors())


@lru_cache(maxsize=None)
def _v_factors():
    return [_factor(s) for s in V_FACTOR_STRINGS]


def _lcm_v(a, b):
    from .mpoly import mpoly_gcd

    if a.is_const:
        return b if not b.is_const else MPoly.const(1)
    if b.is_const:
        return a
    g = mpoly_gcd(a, b)
    return a.exact_div(g) * b


def _reduce_known(num, den, factors):
    """Reduce num/den given that den factors over the supplied list."""
    for f in factors:
        while True:
            try:
                den2 = den.exact_div(f)
            except NotDivisible:
                break
            try:
                num2 = num.exact_div(f)
            except NotDivisible:
                break
            num, den = num2, den2
    return RatFun(num, den, reduce=False)


@lru_cache(maxsize=None)
def stored_coefficient_table(kind):
    kind = _kind(kind)
    slots = {}
    for (fkey, power), exprs in _COEFF_TABLE[kind].items():
        key = (canonical_factor_key(fkey), power)
        slots[key] = tuple(to_ratfun(s).reduced() for s in exprs)
    return CoefficientTable(kind, slots)


@lru_cache(maxsize=None)
def solved_details(kind):
    """Multiplicity series recomputed from the Hilbert series by the solver."""
    return solve_details(quotient_witness(_kind(kind)))


@lru_cache(maxsize=None)
def multiplicity_series(kind, source="stored"):
    """The multiplicity series of the Hilbert series of C or T.

    ``source='stored'`` assembles the closed-form coefficient table;
    ``source='solved'`` recomputes it from the Hilbert series and insists the
    two agree exactly.
    """
    kind = _kind(kind)
    if source == "stored":
        return stored_coefficient_table(kind).assemble()
    if source == "solved":
        solved = solved_details(kind).series
        if solved != multiplicity_series(kind, "stored"):
            raise DataIntegrityError(
                f"{kind.value}: solver output disagrees with the stored closed form"
            )
        return solved
    raise ValueError(f"unknown source {source!r}")


# ---------------------------------------------------------------------------
# Multiplicities
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _extractor(kind):
    return SeriesExtractor(multiplicity_series(_kind(kind)))


def _as_nonneg_int(value, lam, kind):
    f = Fraction(value)
    if f.denominator != 1 or f < 0:
        raise DataIntegrityError(
            f"multiplicity at {lam} of {kind} is not a nonnegative integer: {f}"
        )
    return int(f)


def multiplicity(kind, lam):
    """Exact multiplicity m(l1, l2), a nonnegative integer."""
    kind = _kind(kind)
    if not isinstance(lam, Partition2):
        lam = Partition2(*lam)
    value = _extractor(kind).coefficient(lam.p, lam.lam2)
    return _as_nonneg_int(value, lam.as_tuple(), kind.value)


def multiplicity_grid(kind, max_degree):
    """MultTable of every multiplicity with l1 + l2 <= max_degree."""
    kind = _kind(kind)
    series = series_expand(multiplicity_series(kind), max_degree)
    entries = {}
    for p in range(max_degree + 1):
        for q in range((max_degree - p) // 2 + 1):
            c = series.coeffs.get((p, q), 0)
            if c:
                entries[(p + q, q)] = _as_nonneg_int(c, (p + q, q), kind.value)
    return MultTable(max_degree, entries)


# ---------------------------------------------------------------------------
# Two-level elementary-fraction decomposition and its leading part
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FractionTable:
    """Linear combination of fractions numerator / (pi(v)^k * rho(t, v)^l).

    ``entries`` maps (pi key, k, rho key, l) to a numerator polynomial with
    deg_v below deg(pi) and deg_t below deg_t(rho); a missing key means 0.
    """

    entries: dict

    def weight(self):
        """Largest denominator exponent total k + l."""
        return max((k + l for (_, k, _, l) in self.entries), default=0)

    def subset(self, weight):
        return FractionTable(
            {key: num for key, num in self.entries.items() if key[1] + key[3] == weight}
        )

    def scaled(self, c):
        return FractionTable({key: num * c for key, num in self.entries.items()})

    def recombine(self):
        """Exact sum of all fractions (left unreduced)."""
        vmax = {}
        tmax = {}
        for (pi, k, rho, l) in self.entries:
            vmax[pi] = max(vmax.get(pi, 0), k)
            tmax[rho] = max(tmax.get(rho, 0), l)
        den = MPoly.const(1)
        for pi, k in vmax.items():
            den = den * _factor(pi) ** k
        for rho, l in tmax.items():
            den = den * _factor(rho) ** l
        num = MPoly.const(0)
        for (pi, k, rho, l), part in self.entries.items():
            cof = MPoly.const(1)
            for pi2, k2 in vmax.items():
                cof = cof * _factor(pi2) ** (k2 - k if pi2 == pi else k2)
            for rho2, l2 in tmax.items():
                cof = cof * _factor(rho2) ** (l2 - l if rho2 == rho else l2)
            num = num + part * cof
        return RatFun(num, den, reduce=False)

    def __eq__(self, other):
        if not isinstance(other, FractionTable):
            return NotImplemented
        return self.entries == other.entries


@lru_cache(maxsize=None)
def fraction_table(kind):
    """Full decomposition of the multiplicity series over the fixed factor
    lists: v-factors 1-v, 1+v, 1-v+v^2, 1+v+v^2, 1+v^2, 1+v+v^2+v^3+v^4 and
    t-factors 1-t, 1+t, 1+t+t^2, 1+t^2, 1-vt, 1-vt^2."""
    kind = _kind(kind)
    table = stored_coefficient_table(kind)
    v_factors = _v_factors()
    entries = {}
    for (fkey, power), coeffs in table.slots.items():
        for b, c in enumerate(coeffs):
            if c.is_zero:
                continue
            factors = _v_factorization(c.den)
            basis = FactorBasis("v", tuple((f, m) for f, m in factors))
            form = partial_fractions(c, basis)
            if not form.polynomial_part.is_zero:
                raise BasisError(
                    f"{kind.value}: coefficient at ({fkey}, {power}) has a "
                    "polynomial part outside the fraction lists"
                )
            for term in form.terms:
                pkey = _factor_key(term.factor)
                numer = term.num * (1 / term.den.const_value())
                piece = numer * MPoly.var("t") ** b
                full_key = (pkey, term.power, fkey, power)
                cur = entries.get(full_key)
                entries[full_key] = piece if cur is None else cur + piece
    for (pi, k, rho, l), num in entries.items():
        if num.degree("v") >= _factor(pi).degree("v"):
            raise DataIntegrityError("numerator v-degree bound violated")
        if num.degree("t") >= _factor(rho).degree("t"):
            raise DataIntegrityError("numerator t-degree bound violated")
    return FractionTable(entries)


def _v_factorization(den):
    """Factor a v-polynomial over the fixed list; error if anything is left."""
    out = []
    rest = den
    for f in _v_factors():
        m = 0
        while True:
            try:
                rest = rest.exact_div(f)
            except NotDivisible:
                break
            m += 1
        if m:
            out.append((f, m))
    if not rest.is_const:
        raise BasisError(f"denominator factor outside the fixed list: {rest}")
    return out


@lru_cache(maxsize=None)
def leading_part(kind):
    """Subsum of the decomposition with denominator exponent total 16."""
    kind = _kind(kind)
    table = fraction_table(kind)
    if table.weight() != MAX_DENOMINATOR_WEIGHT:
        raise DataIntegrityError(
            f"{kind.value}: maximal denominator weight is {table.weight()}, "
            f"expected {MAX_DENOMINATOR_WEIGHT}"
        )
    return table.subset(MAX_DENOMINATOR_WEIGHT)


@lru_cache(maxsize=None)
def leading_part_display(kind):
    """The stored leading-part fractions (pure), or 16 times them (mixed)."""
    kind = _kind(kind)
    entries = {}
    for pi, k, rho, l, expr in _PURE_LEADING:
        num = to_ratfun(expr).as_mpoly()
        if kind is AlgebraKind.MIXED:
            num = num * MIXED_TO_PURE_RATIO
        key = (_factor_key(_factor(pi)), k, _factor_key(_factor(rho)), l)
        entries[key] = num
    return FractionTable(entries)


# ---------------------------------------------------------------------------
# Asymptotics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AsymptoticValue:
    """Evaluated leading terms; m2 and m3 are None outside their regions."""

    region: str
    m1: Fraction
    m2: Fraction
    m3: Fraction
    total: Fraction


def asymptotic_region(lam):
    """The regime of the case split: R1 for l1 > 3 l2, R2 for
    3 l2 >= l1 > 2 l2, R3 for 2 l2 >= l1."""
    if not isinstance(lam, Partition2):
        lam = Partition2(*lam)
    if lam.lam1 > 3 * lam.lam2:
        return "R1"
    if lam.lam1 > 2 * lam.lam2:
        return "R2"
    return "R3"


def asymptotic(kind, lam):
    """Leading asymptotic value of the multiplicity at a partition."""
    kind = _kind(kind)
    if not isinstance(lam, Partition2):
        lam = Partition2(*lam)
    p, q = lam.p, lam.lam2
    region = asymptotic_region(lam)
    m1 = sum((c * p**a * q**b for a, b, c in _M1_TERMS), Fraction(0))
    m2 = m3 = None
    total = m1
    if region in ("R2", "R3"):
        w = 3 * lam.lam2 - lam.lam1
        m2 = _M2_CONST * w**14
        total += m2
    if region == "R3":
        w = 2 * lam.lam2 - lam.lam1
        m3 = _M3_LIN * p * w**13 + _M3_QUAD * w**14
        total += m3
    if kind is AlgebraKind.MIXED:
        scale = MIXED_TO_PURE_RATIO
        m1 *= scale
        m2 = None if m2 is None else m2 * scale
        m3 = None if m3 is None else m3 * scale
        total *= scale
    return AsymptoticValue(region, m1, m2, m3, total)


@dataclass(frozen=True)
class ConvergenceRow:
    scale: int
    lam: tuple
    exact: int
    asymptotic: Fraction
    ratio: Fraction  # None when the asymptotic value vanishes


@lru_cache(maxsize=None)
def asymptotic_convergence_report(kind, direction, scales):
    """Exact vs. asymptotic multiplicities along a ray of partitions.

    ``direction`` is a gcd-reduced pair (a, b) with a >= b >= 0; the rows
    evaluate the partition (s*a, s*b) for each scale s.  Exact values use the
    two-stage univariate extraction, so scales in the hundreds stay cheap.
    """
    kind = _kind(kind)
    a, b = direction
    if a < b or b < 0 or a <= 0:
        raise ValueError("direction must satisfy a >= b >= 0 with a > 0")
    if math.gcd(a, b) != 1:
        raise ValueError("direction must be gcd-reduced")
    scales = tuple(scales)
    wanted = [(s * (a - b), s * b) for s in scales]
    values = _extractor(kind).coefficients(wanted)
    rows = []
    for s in scales:
        lam = Partition2(s * a, s * b)
        exact = _as_nonneg_int(values[(s * (a - b), s * b)], lam.as_tuple(), kind.value)
        asym = asymptotic(kind, lam).total
        ratio = None if asym == 0 else Fraction(exact) / asym
        rows.append(ConvergenceRow(s, lam.as_tuple(), exact, asym, ratio))
    return tuple(rows)


# ---------------------------------------------------------------------------
# Exports
# ---------------------------------------------------------------------------


def grid_csv(table):
    """CSV text (lambda1, lambda2, m) of a multiplicity table."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["lambda1", "lambda2", "m"])
    for l1, l2 in table.partitions():
        writer.writerow([l1, l2, table.entries[(l1, l2)]])
    return buf.getvalue()


def fraction_to_decimal(value, digits=6):
    """Decimal display string of an exact fraction (display only)."""
    if value is None:
        return ""
    f = Fraction(value)
    sign = "-" if f < 0 else ""
    f = abs(f)
    scaled = f * 10**digits
    whole = scaled.numerator // scaled.denominator
    if 2 * (scaled.numerator % scaled.denominator) >= scaled.denominator:
        whole += 1
    text = str(whole).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}" if digits else f"{sign}{text}"


def report_csv(rows, digits=6):
    """CSV text (scale, exact, asymptotic, ratio) of a convergence report.

    Exact and asymptotic columns stay exact; the ratio column is a rounded
    decimal for display only.
    """
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["scale", "exact", "asymptotic", "ratio"])
    for row in rows:
        writer.writerow(
            [
                row.scale,
                row.exact,
                str(row.asymptotic),
                fraction_to_decimal(row.ratio, digits),
            ]
        )
    return buf.getvalue()
