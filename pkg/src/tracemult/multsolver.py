"""Exact solver for rational multiplicity series of symmetric functions.

A two-variable symmetric function has a rational multiplicity series exactly
when it can be written as

    f(x, y) = z(xy) * (p(x, xy) + p(y, xy)) / (q(x, xy) * q(y, xy)),

with p, q polynomials in the first slot whose coefficients are rational in
the second, and z a rational function of the product alone (multiplying f by
z(xy) multiplies the multiplicity series by z(v)).  The series then equals
z(v) * h(t, v) / q(t, v) with deg_t h <= max(deg_x p, deg_x q - 2).

The solver finds h by the method of unknown coefficients: substitute the
series into the inversion identity f = (x M(x,xy) - y M(y,xy)) / (x - y),
replace y by v/x (which turns the identity into one between Laurent
polynomials in x over the rational functions of v), clear denominators,
match x-coefficients, and solve the resulting linear system by fraction-free
elimination.  Consistency of every matched coefficient is checked, so a
successful solve is a proof of the identity, not a heuristic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linsolve, unipoly
from .mpoly import MPoly, RatFun
from .symfunc import inverse_M, series_expand


class SolverError(ValueError):
    pass


class NotSolvableShape(SolverError):
    """The matched linear system is inconsistent: the input data does not
    describe a symmetric function with a rational multiplicity series of the
    declared degree."""


class UnderdeterminedSolve(SolverError):
    def __init__(self, nullity, free_columns):
        self.nullity = nullity
        self.free_columns = free_columns
        super().__init__(f"solve is underdetermined (nullity {nullity})")


@dataclass(frozen=True)
class SymmetricQuotient:
    """Witness of the factored shape above.

    ``p_poly`` and ``q_poly`` are polynomials in x and v, where the v slot
    stands for the product xy; ``z_factor`` is a rational function of v
    alone.  Coefficients may be rational numbers; rational-in-v coefficient
    denominators should be folded into ``z_factor``.
    """

    p_poly: MPoly
    q_poly: MPoly
    z_factor: RatFun = None

    def __post_init__(self):
        if not set(self.p_poly.vars) <= {"x", "v"}:
            raise ValueError("p must be a polynomial in x and v")
        if not set(self.q_poly.vars) <= {"x", "v"}:
            raise ValueError("q must be a polynomial in x and v")
        if self.q_poly.is_zero:
            raise ValueError("q must be nonzero")
        if self.z_factor is None:
            object.__setattr__(self, "z_factor", RatFun.const(1))
        zvars = set(self.z_factor.num.vars) | set(self.z_factor.den.vars)
        if not zvars <= {"v"}:
            raise ValueError("z factor must be a rational function of v alone")

    def symmetric_function(self):
        """The symmetric function f(x, y) this witness describes."""
        x = MPoly.var("x")
        y = MPoly.var("y")
        xy = x * y
        px = _sub_v(self.p_poly, xy)
        py = _sub_v(self.p_poly.subst("x", y), xy)
        qx = _sub_v(self.q_poly, xy)
        qy = _sub_v(self.q_poly.subst("x", y), xy)
        z = self.z_factor.subst("v", xy)
        if isinstance(z, MPoly):
            z = RatFun.from_mpoly(z)
        num = (px + py) * z.num
        den = qx * qy * z.den
        return RatFun(num, den, reduce=False)

    def matches(self, f, degree=None):
        """Check that this witness reproduces ``f``.

        With ``degree=None`` the check is the exact cross-multiplication
        identity; otherwise the two sides are compared as series up to the
        given total degree.
        """
        own = self.symmetric_function()
        if degree is None:
            return own == f
        mine = series_expand(own, degree)
        theirs = series_expand(f, degree)
        return mine.coeffs == theirs.coeffs


def _sub_v(poly, value):
    out = poly.subst("v", value)
    if isinstance(out, RatFun):
        raise AssertionError("polynomial substitution produced a quotient")
    return out


@dataclass(frozen=True)
class SolveDetails:
    """Numerator coefficients (by t-power) over q(t, v), plus the z factor."""

    h_coeffs: tuple
    q_tv: MPoly
    z_factor: RatFun
    series: RatFun

    @property
    def numerator_t_degree(self):
        deg = -1
        for j, c in enumerate(self.h_coeffs):
            if not c.is_zero:
                deg = j
        return deg


def solve_details(shape, max_degree=None):
    """Run the unknown-coefficient solve and keep the structured pieces."""
    p = shape.p_poly
    q = shape.q_poly
    if q.coeff(_exp_for(q, x=0, v=0)) == 0:
        # constant term in both x and v must be nonzero for a series at 0
        raise SolverError("q has zero constant term")
    deg_p = p.degree("x")
    deg_q = q.degree("x")
    bound = max(deg_p, deg_q - 2)
    if max_degree is not None:
        bound = max_degree
    if bound < 0:
        bound = 0
    p_cols = _x_columns(p)  # list over x-exponent of v-polys (Fraction ok)
    q_cols = _x_columns(q)
    n_unknowns = bound + 1
    # Laurent-in-x identity, coefficients are v-polynomials:
    #   (p(x,v) + p(v/x,v)) * (x - v/x)
    #     = x*h(x,v)*q(v/x,v) - (v/x)*h(v/x,v)*q(x,v)
    # Column j collects the coefficient polynomial of unknown h_j.
    lhs = {}

    def lhs_add(k, poly):
        if poly:
            cur = lhs.get(k)
            lhs[k] = unipoly.add(cur, poly) if cur else list(poly)

    for a, pa in enumerate(p_cols):
        if not pa:
            continue
        # p_a x^a (x - v/x) = p_a x^(a+1) - p_a v x^(a-1)
        lhs_add(a + 1, pa)
        lhs_add(a - 1, unipoly.neg(unipoly.shift(pa, 1)))
        # p_a v^a x^-a (x - v/x) = p_a v^a x^(1-a) - p_a v^(a+1) x^(-a-1)
        lhs_add(1 - a, unipoly.shift(pa, a))
        lhs_add(-a - 1, unipoly.neg(unipoly.shift(pa, a + 1)))
    cols = {}

    def col_add(k, j, poly):
        if poly:
            cur = cols.setdefault(k, {}).get(j)
            cols[k][j] = unipoly.add(cur, poly) if cur else list(poly)

    for j in range(n_unknowns):
        for i, qi in enumerate(q_cols):
            if not qi:
                continue
            # x * h_j x^j * q_i v^i x^-i
            col_add(1 + j - i, j, unipoly.shift(qi, i))
            # - (v/x) * h_j v^j x^-j * q_i x^i
            col_add(i - j - 1, j, unipoly.neg(unipoly.shift(qi, j + 1)))
    ks = sorted(set(lhs) | set(cols))
    rows = []
    for k in ks:
        row = [cols.get(k, {}).get(j, []) for j in range(n_unknowns)]
        row.append(lhs.get(k, []))
        rows.append(row)
    try:
        values = linsolve.solve(rows, n_unknowns)
    except linsolve.InconsistentSystem as exc:
        raise NotSolvableShape(
            "matched coefficients are inconsistent: the input is not of the "
            f"rational-multiplicity shape at numerator degree {bound} ({exc})"
        ) from None
    except linsolve.UnderdeterminedSystem as exc:
        raise UnderdeterminedSolve(exc.nullity, exc.free_columns) from None
    h_coeffs = tuple(
        RatFun(_v_poly(val.num), _v_poly(val.den)) for val in values
    )
    q_tv = _q_in_tv(q)
    series = _assemble(h_coeffs, q_tv, shape.z_factor)
    return SolveDetails(h_coeffs, q_tv, shape.z_factor, series)


def solve_multiplicity_series(shape, max_degree=None):
    """Exact rational multiplicity series of the witnessed symmetric function."""
    return solve_details(shape, max_degree=max_degree).series


def _exp_for(poly, **assign):
    exps = []
    for name in poly.vars:
        exps.append(assign.get(name, 0))
    return tuple(exps)


def _x_columns(poly):
    """Polynomial in (x, v) -> list over x-exponent of dense v-lists."""
    cols = [[] for _ in range(poly.degree("x") + 1)] if not poly.is_zero else []
    xi = poly.vars.index("x") if "x" in poly.vars else None
    vi = poly.vars.index("v") if "v" in poly.vars else None
    for e, c in poly.terms.items():
        a = e[xi] if xi is not None else 0
        b = e[vi] if vi is not None else 0
        col = cols[a]
        if len(col) <= b:
            col.extend([0] * (b + 1 - len(col)))
        col[b] = c
    return [unipoly.trim(col) for col in cols]


def _v_poly(coeffs):
    return MPoly(("v",), {(i,): c for i, c in enumerate(coeffs) if c})


def _q_in_tv(q):
    return q.rename({"x": "t"})


def _assemble(h_coeffs, q_tv, z_factor):
    """Combine z(v) * (sum h_j(v) t^j) / q(t, v) into one rational function."""
    den_lcm = MPoly.const(1)
    for c in h_coeffs:
        if c.is_zero:
            continue
        den_lcm = _lcm_v(den_lcm, c.den)
    t = MPoly.var("t")
    num = MPoly.const(0)
    for j, c in enumerate(h_coeffs):
        if c.is_zero:
            continue
        num = num + c.num * den_lcm.exact_div(c.den) * t**j
    num = num * z_factor.num
    den = q_tv * den_lcm * z_factor.den
    return RatFun(num, den)


def _lcm_v(a, b):
    from .mpoly import mpoly_gcd

    if a.is_const:
        return b if not b.is_const else MPoly.const(1)
    if b.is_const:
        return a
    g = mpoly_gcd(a, b)
    return a.exact_div(g) * b


@dataclass(frozen=True)
class RoundTripReport:
    ok: bool
    first_mismatch: tuple = None
    detail: str = ""

    def to_dict(self):
        out = {"ok": self.ok, "detail": self.detail}
        if self.first_mismatch is not None:
            a, b, got, want = self.first_mismatch
            out["first_mismatch"] = {
                "exponent": [a, b],
                "reconstructed": str(got),
                "target": str(want),
            }
        return out


def verify_roundtrip(f, m_series, probe_degree=12):
    """Check inverse_M(m_series) == f exactly.

    On failure the report carries the first differing series coefficient (in
    degree order) as a diagnostic.
    """
    g = inverse_M(m_series)
    if g == f:
        return RoundTripReport(True, detail="exact rational-function equality")
    sa = series_expand(g, probe_degree)
    sb = series_expand(f, probe_degree)
    for d in range(probe_degree + 1):
        for a in range(d + 1):
            e = (a, d - a)
            got = sa.coeffs.get(e, 0)
            want = sb.coeffs.get(e, 0)
            if got != want:
                return RoundTripReport(
                    False,
                    first_mismatch=(e[0], e[1], got, want),
                    detail="series coefficients differ",
                )
    return RoundTripReport(
        False, detail=f"series agree to degree {probe_degree} but functions differ"
    )
