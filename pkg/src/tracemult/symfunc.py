"""Symmetric functions in two variables and their multiplicity series.

A symmetric power series f(x, y) decomposes uniquely as a sum of Schur
polynomials S_(l1,l2)(x, y) = (xy)^l2 * (x^p + x^(p-1)y + ... + y^p) with
p = l1 - l2.  The multiplicity series collects the coefficients of that
decomposition as sum m(l1, l2) t^(l1-l2) v^l2; this module provides

* truncated power-series expansion of rational functions,
* the brute-force Schur-decomposition oracle on truncated series,
* the map from a rational multiplicity series back to the symmetric
  function, f = (x M(x, xy) - y M(y, xy)) / (x - y), and
* scalable extraction of a single t^p v^q series coefficient of a rational
  function by two univariate expansions (first in t with polynomial
  coefficients in v, then in v), which reaches partition sizes in the
  thousands where a bivariate expansion would not.

Everything is exact; truncations certify exactly the stated degree range and
never guess a coefficient beyond it.  The standard (t, u) form of the
multiplicity series is the substitution v <- t*u of the (t, v) form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _igcd

from . import unipoly
from .mpoly import BigRat, MPoly, RatFun, rat_from_str, rat_to_str


@dataclass(frozen=True, order=True)
class Partition2:
    """Partition with at most two parts: lam1 >= lam2 >= 0."""

    lam1: int
    lam2: int

    def __post_init__(self):
        if not (isinstance(self.lam1, int) and isinstance(self.lam2, int)):
            raise TypeError("partition parts must be integers")
        if self.lam1 < self.lam2 or self.lam2 < 0:
            raise ValueError(f"not a partition: ({self.lam1}, {self.lam2})")

    @property
    def p(self):
        """Arm length lam1 - lam2."""
        return self.lam1 - self.lam2

    @property
    def size(self):
        return self.lam1 + self.lam2

    def as_tuple(self):
        return (self.lam1, self.lam2)


def schur(lam):
    """Schur polynomial S_lam(x, y) = (xy)^lam2 (x^p + ... + y^p)."""
    if not isinstance(lam, Partition2):
        lam = Partition2(*lam)
    terms = {}
    for i in range(lam.p + 1):
        terms[(lam.lam2 + lam.p - i, lam.lam2 + i)] = 1
    return MPoly(("x", "y"), terms)


@dataclass(frozen=True)
class TruncSeries:
    """Exact power-series coefficients up to a total-degree bound.

    ``coeffs`` holds every nonzero coefficient with exponent sum at most
    ``max_total_degree``; absent keys inside that range are zero, and asking
    beyond the range is an error rather than a silent zero.
    """

    vars: tuple
    max_total_degree: int
    coeffs: dict

    def coeff(self, *exponents):
        if sum(exponents) > self.max_total_degree:
            raise ValueError(
                f"exponent {exponents} lies beyond the truncation degree "
                f"{self.max_total_degree}"
            )
        return self.coeffs.get(tuple(exponents), 0)

    def is_symmetric(self):
        for (a, b), c in self.coeffs.items():
            if self.coeffs.get((b, a), 0) != c:
                return False
        return True

    def __add__(self, other):
        if not isinstance(other, TruncSeries) or other.vars != self.vars:
            return NotImplemented
        n = min(self.max_total_degree, other.max_total_degree)
        out = {}
        for e in set(self.coeffs) | set(other.coeffs):
            if sum(e) > n:
                continue
            c = self.coeffs.get(e, 0) + other.coeffs.get(e, 0)
            if c:
                out[e] = c
        return TruncSeries(self.vars, n, out)

    def __rmul__(self, scalar):
        out = {}
        for e, c in self.coeffs.items():
            s = c * scalar
            if s:
                out[e] = s
        return TruncSeries(self.vars, self.max_total_degree, out)


def series_expand(f, n):
    """Taylor coefficients of a rational function at the origin, total degree <= n.

    The expansion runs the convolution recurrence against the denominator
    (whose constant term must be nonzero); no factorization is involved.
    """
    if isinstance(f, MPoly):
        f = RatFun.from_mpoly(f)
    variables = tuple(sorted(set(f.num.vars) | set(f.den.vars)))
    if len(variables) > 2:
        raise ValueError("series expansion supports at most two variables")
    if len(variables) == 0:
        variables = ("x", "y")
    if len(variables) == 1:
        variables = (variables[0],)
    nv = len(variables)
    zero = (0,) * nv
    den = f.den._embed(variables) if f.den.vars != variables else f.den.terms
    num = f.num._embed(variables) if f.num.vars != variables else f.num.terms
    d0 = den.get(zero, 0)
    if d0 == 0:
        raise ValueError("denominator has zero constant term: no expansion at the origin")
    den_rest = [(e, c) for e, c in den.items() if e != zero and sum(e) <= n]
    coeffs = {}
    inv = Fraction(1, 1) / d0
    if nv == 1:
        order = [(k,) for k in range(n + 1)]
    else:
        order = [
            (a, d - a)
            for d in range(n + 1)
            for a in range(d + 1)
        ]
    for e in order:
        acc = num.get(e, 0)
        for de, dc in den_rest:
            if nv == 1:
                if de[0] > e[0]:
                    continue
                prev = coeffs.get((e[0] - de[0],), 0)
            else:
                if de[0] > e[0] or de[1] > e[1]:
                    continue
                prev = coeffs.get((e[0] - de[0], e[1] - de[1]), 0)
            if prev:
                acc -= dc * prev
        if acc:
            val = acc * inv
            if isinstance(val, Fraction) and val.denominator == 1:
                val = val.numerator
            coeffs[e] = val
    return TruncSeries(variables, n, coeffs)


@dataclass(frozen=True)
class MultTable:
    """Finite table of Schur multiplicities m(l1, l2)."""

    max_total_degree: int
    entries: dict

    def multiplicity(self, lam):
        if not isinstance(lam, Partition2):
            lam = Partition2(*lam)
        if lam.size > self.max_total_degree:
            raise ValueError(f"partition {lam.as_tuple()} beyond table range")
        return self.entries.get(lam.as_tuple(), 0)

    def partitions(self):
        return sorted(self.entries, key=lambda e: (e[0] + e[1], e[1]))

    def to_json(self):
        entries = [
            {"lambda": [l1, l2], "m": rat_to_str(self.entries[(l1, l2)])}
            for (l1, l2) in sorted(self.entries, key=lambda e: (e[0] + e[1], e[1]))
        ]
        return json.dumps({"maxTotalDegree": self.max_total_degree, "entries": entries})

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        entries = {}
        for item in data["entries"]:
            l1, l2 = item["lambda"]
            value = rat_from_str(item["m"])
            if value.denominator == 1:
                value = value.numerator
            entries[(l1, l2)] = value
        return cls(data["maxTotalDegree"], entries)


def schur_decompose(series):
    """Brute-force Schur decomposition of a symmetric truncated series.

    m(l1, l2) = c(l1, l2) - c(l1 + 1, l2 - 1), complete for l1 + l2 at most
    one below the truncation degree; the top diagonal is dropped because the
    corrector coefficient can exceed the truncation.
    """
    if not series.is_symmetric():
        raise ValueError("series is not symmetric in its two variables")
    n = series.max_total_degree
    entries = {}
    for l1l2 in range(n):
        for l2 in range(l1l2 // 2 + 1):
            l1 = l1l2 - l2
            if l1 < l2:
                continue
            m = series.coeffs.get((l1, l2), 0)
            if l2 >= 1:
                m -= series.coeffs.get((l1 + 1, l2 - 1), 0)
            if m:
                entries[(l1, l2)] = m
    return MultTable(n - 1, entries)


def mult_series_truncated(f, n):
    """Truncated multiplicity series of a symmetric rational function.

    The result is a series in (t, v) whose coefficient of t^p v^q is
    m(p + q, q); it is complete for p + 2q < n, the range the degree-n
    expansion certifies.
    """
    table = schur_decompose(series_expand(f, n))
    coeffs = {}
    for (l1, l2), m in table.entries.items():
        coeffs[(l1 - l2, l2)] = m
    return TruncSeries(("t", "v"), n - 1, coeffs)


def inverse_M(m_series):
    """Symmetric function with the given rational multiplicity series.

    Computes (x M(x, xy) - y M(y, xy)) / (x - y).  The numerator must be
    divisible by x - y; if not, the input was not a multiplicity series of a
    symmetric function and an error is raised.  The result is in general left
    unreduced (callers compare with the cross-multiplication equality).
    """
    if isinstance(m_series, MPoly):
        m_series = RatFun.from_mpoly(m_series)
    bad = set(m_series.num.vars) | set(m_series.den.vars)
    if not bad <= {"t", "v"}:
        raise ValueError("multiplicity series must be a rational function of t and v")
    x = MPoly.var("x")
    y = MPoly.var("y")
    xy = x * y
    a = _subst_tv(m_series, x, xy)
    b = _subst_tv(m_series, y, xy)
    num = x * a.num * b.den - y * b.num * a.den
    den = a.den * b.den
    quot = _exact_div_x_minus_y(num)
    return RatFun(quot, den, reduce=False)


def _subst_tv(m, t_value, v_value):
    num = m.num.subst("t", t_value).subst("v", v_value)
    den = m.den.subst("t", t_value).subst("v", v_value)
    if isinstance(num, RatFun) or isinstance(den, RatFun):
        raise AssertionError("monomial substitution produced a quotient")
    return RatFun(num, den, reduce=False)


def _exact_div_x_minus_y(poly):
    """Divide a polynomial in (x, y) by x - y via the diagonal recurrence."""
    if poly.is_zero:
        return poly
    variables = tuple(sorted(set(poly.vars) | {"x", "y"}))
    if variables != ("x", "y"):
        raise ValueError("dividend must be a polynomial in x and y")
    terms = poly._embed(("x", "y")) if poly.vars != ("x", "y") else poly.terms
    # q[a][b] from n[a+1][b] + q[a+1][b-1]; row at a depends on row a+1
    amax = max(e[0] for e in terms)
    rows = {}
    for (a, b), c in terms.items():
        rows.setdefault(a, {})[b] = c
    quot = {}
    prev = {}
    for a in range(amax - 1, -1, -1):
        src = rows.get(a + 1, {})
        cur = {}
        for b in set(src) | {b + 1 for b in prev}:
            c = src.get(b, 0) + prev.get(b - 1, 0)
            if c:
                cur[b] = c
        for b, c in cur.items():
            quot[(a, b)] = c
        prev = cur
    # leftover relations at a = 0 must close exactly
    bottom = rows.get(0, {})
    for b in set(bottom) | {b + 1 for b in prev}:
        if bottom.get(b, 0) != -prev.get(b - 1, 0):
            raise ValueError("numerator is not divisible by x - y: invalid multiplicity series")
    return MPoly(("x", "y"), quot)


def as_tu_form(m_series):
    """Rewrite a (t, v) multiplicity series in the (t, u) variables, v = t*u."""
    t = MPoly.var("t")
    u = MPoly.var("u")
    out = m_series.subst("v", t * u)
    if isinstance(out, MPoly):
        out = RatFun.from_mpoly(out)
    return out


# -- scalable coefficient extraction ------------------------------------------------


class SeriesExtractor:
    """Coefficient extraction for a rational function of (t, v).

    Expands first in t, carrying the coefficients as v-truncated integer
    polynomial slices, then resolves the remaining v-denominator by one
    series division.  Building an extractor is cheap; extraction cost is
    O(p * q * size of denominator support).
    """

    def __init__(self, f):
        if isinstance(f, MPoly):
            f = RatFun.from_mpoly(f)
        variables = set(f.num.vars) | set(f.den.vars)
        if not variables <= {"t", "v"}:
            raise ValueError("extractor expects a rational function of t and v")
        num, den = f.num, f.den
        # clear rational coefficients
        scale_n = num.content() or Fraction(1)
        scale_d = den.content() or Fraction(1)
        self.scale = scale_n / scale_d
        num = num.primitive_part()
        den = den.primitive_part()
        den_cols = _tv_columns(den)
        num_cols = _tv_columns(num)
        cont = []
        for col in den_cols:
            cont = unipoly.gcd(cont, col)
        self.cont = cont
        prim = [unipoly.divexact(col, cont) for col in den_cols]
        if unipoly.degree(prim[0]) != 0:
            raise ValueError(
                "t-constant coefficient of the denominator is not constant "
                "after content splitting; two-stage extraction does not apply"
            )
        self.p0 = prim[0][0]
        if self.cont and self.cont[0] == 0:
            raise ValueError("denominator vanishes at the origin")
        self.prim_terms = [
            (j, e, c)
            for j, col in enumerate(prim)
            if j > 0
            for e, c in enumerate(col)
            if c
        ]
        self.tdeg = len(prim) - 1
        self.num_cols = num_cols

    def coefficients(self, wanted):
        """Exact values of [t^p v^q] for every (p, q) pair in ``wanted``."""
        if not wanted:
            return {}
        pmax = max(p for p, _ in wanted)
        qmax = max(q for _, q in wanted)
        cap = qmax + 1
        by_p = {}
        for p, q in wanted:
            by_p.setdefault(p, []).append(q)
        window = []
        out = {}
        for p in range(pmax + 1):
            acc = [0] * cap
            if p < len(self.num_cols):
                col = self.num_cols[p]
                for e in range(min(len(col), cap)):
                    acc[e] = col[e]
            for j, e, c in self.prim_terms:
                if j > p or e >= cap:
                    continue
                src = window[-j]
                limit = min(len(src), cap - e)
                for i in range(limit):
                    si = src[i]
                    if si:
                        acc[e + i] -= c * si
            if self.p0 != 1:
                if self.p0 == -1:
                    acc = [-c for c in acc]
                else:
                    acc = [Fraction(c, self.p0) for c in acc]
            window.append(acc)
            if len(window) > self.tdeg:
                window.pop(0)
            if p in by_p:
                series = _series_divide(acc, self.cont, max(by_p[p]) + 1)
                for q in by_p[p]:
                    out[(p, q)] = series[q] * self.scale
        return out

    def coefficient(self, p, q):
        return self.coefficients([(p, q)])[(p, q)]


def _tv_columns(poly):
    """Polynomial in (t, v) -> list over t-exponent of dense v-int-lists."""
    tdeg = poly.degree("t")
    cols = [[] for _ in range(tdeg + 1)]
    ti = poly.vars.index("t") if "t" in poly.vars else None
    vi = poly.vars.index("v") if "v" in poly.vars else None
    for e, c in poly.terms.items():
        tj = e[ti] if ti is not None else 0
        ve = e[vi] if vi is not None else 0
        col = cols[tj]
        if len(col) <= ve:
            col.extend([0] * (ve + 1 - len(col)))
        col[ve] = c
    return [unipoly.trim(col) for col in cols]


def _series_divide(num, den, n):
    """First n coefficients of the power series num(v) / den(v)."""
    d0 = den[0]
    out = []
    for k in range(n):
        acc = num[k] if k < len(num) else 0
        for j in range(1, min(k, len(den) - 1) + 1):
            dj = den[j]
            if dj:
                acc -= dj * out[k - j]
        if d0 == 1:
            out.append(acc)
        elif d0 == -1:
            out.append(-acc)
        else:
            out.append(Fraction(acc, d0) if isinstance(acc, int) else acc / d0)
    return out
