"""Fraction-free linear solving over a univariate polynomial ring.

The systems produced by partial fraction decomposition and by the
multiplicity-series solver have entries that are integer polynomials in one
variable (rational constants are degree-0 entries after row clearing).
Elimination is Bareiss one-step fraction-free: every division is exact, so
intermediate entries stay integer polynomials of controlled size.

Pivoting is deterministic: at each column the pivot row is the one whose
entry has the lowest degree, ties broken by row order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _igcd

from . import unipoly


class InconsistentSystem(ValueError):
    """The system has no solution."""


class UnderdeterminedSystem(ValueError):
    """The system does not determine every unknown."""

    def __init__(self, nullity, free_columns):
        self.nullity = nullity
        self.free_columns = tuple(free_columns)
        super().__init__(
            f"system is underdetermined: nullity {nullity}, free columns {list(free_columns)}"
        )


@dataclass(frozen=True)
class PolyFractionValue:
    """A reduced quotient of integer polynomials (value of one unknown)."""

    num: tuple
    den: tuple

    def as_fraction(self):
        """Constant value as a Fraction (requires degree-0 num and den)."""
        if len(self.num) > 1 or len(self.den) > 1:
            raise ValueError("value is not constant")
        n = self.num[0] if self.num else 0
        return Fraction(n, self.den[0])


def clear_row(row):
    """Scale a row of int/Fraction polynomial entries to integer entries."""
    den_lcm = 1
    for poly in row:
        for c in poly:
            if isinstance(c, Fraction):
                den_lcm = den_lcm * c.denominator // _igcd(den_lcm, c.denominator)
    if den_lcm == 1:
        return [[int(c) for c in poly] for poly in row]
    return [[int(c * den_lcm) for c in poly] for poly in row]


def _reduce_pair(num, den):
    if not num:
        return (), (1,)
    g = unipoly.gcd(num, den)
    if unipoly.degree(g) > 0 or (g and g[0] != 1):
        num = unipoly.divexact(num, g)
        den = unipoly.divexact(den, g)
    # integer content
    cn = unipoly.content(num)
    cd = unipoly.content(den)
    c = _igcd(cn, cd)
    if c > 1:
        num = [x // c for x in num]
        den = [x // c for x in den]
    if den[-1] < 0:
        num = unipoly.neg(num)
        den = unipoly.neg(den)
    return tuple(num), tuple(den)


def solve(rows, n_unknowns):
    """Solve an overdetermined linear system with polynomial entries.

    ``rows`` is a list of lists of dense coefficient lists; each row has
    ``n_unknowns + 1`` entries, the last one the right-hand side.  Returns a
    list of PolyFractionValue, one per unknown.  Raises InconsistentSystem or
    UnderdeterminedSystem when elimination says so; consistency of every row
    (including redundant ones) is checked.
    """
    m = [[list(e) for e in clear_row(row)] for row in rows]
    m = [row for row in m if any(row)]
    ncols = n_unknowns + 1
    for row in m:
        if len(row) != ncols:
            raise ValueError("row width does not match unknown count")
    rank = 0
    prev = [1]
    pivot_cols = []
    for col in range(n_unknowns):
        best = -1
        best_deg = None
        for i in range(rank, len(m)):
            e = m[i][col]
            if e:
                d = unipoly.degree(e)
                if best_deg is None or d < best_deg:
                    best, best_deg = i, d
        if best < 0:
            continue
        if best != rank:
            m[rank], m[best] = m[best], m[rank]
        piv = m[rank][col]
        for i in range(rank + 1, len(m)):
            head = m[i][col]
            for j in range(col, ncols):
                val = unipoly.sub(
                    unipoly.mul(piv, m[i][j]), unipoly.mul(head, m[rank][j])
                )
                m[i][j] = unipoly.divexact(val, prev) if prev != [1] else val
            m[i][col] = []
        prev = piv
        pivot_cols.append(col)
        rank += 1
    for i in range(rank, len(m)):
        if any(m[i][c] for c in range(n_unknowns)):
            raise AssertionError("elimination left a stray nonzero entry")
        if m[i][n_unknowns]:
            raise InconsistentSystem(f"residual equation {i} is unsatisfiable")
    if rank < n_unknowns:
        free = [c for c in range(n_unknowns) if c not in pivot_cols]
        raise UnderdeterminedSystem(n_unknowns - rank, free)
    values = [None] * n_unknowns
    for i in range(rank - 1, -1, -1):
        col = pivot_cols[i]
        # solve pivot * x_col = rhs - sum_j m[i][j] * x_j
        num = list(m[i][n_unknowns])
        den = [1]
        for j in range(col + 1, n_unknowns):
            a = m[i][j]
            if not a or values[j].num == ():
                continue
            vn, vd = list(values[j].num), list(values[j].den)
            num = unipoly.sub(unipoly.mul(num, vd), unipoly.mul(unipoly.mul(a, vn), den))
            den = unipoly.mul(den, vd)
        den = unipoly.mul(den, m[i][col])
        values[col] = PolyFractionValue(*_reduce_pair(num, den))
    return values
