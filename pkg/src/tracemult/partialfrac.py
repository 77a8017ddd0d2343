"""Partial fraction decomposition over a rational-function coefficient field.

A decomposition is taken with respect to one main variable; coefficients of
the numerators live in the field of rational functions of the remaining
variable (plain rationals when there is none).  Factor bases are supplied by
the caller and must be pairwise coprime over that field; no factorization is
performed here.

The coefficients are found by clearing denominators and solving the linear
system that matches main-variable coefficients, which keeps everything inside
exact polynomial arithmetic.  The top-order residue formula
f(1/xi) / g(1/xi) for a factor (1 - xi*w)^k is provided separately as an
independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linsolve, unipoly
from .mpoly import MPoly, RatFun, gcd_over_field


class BasisError(ValueError):
    """The factor basis does not fit the fraction being decomposed."""


@dataclass(frozen=True)
class FactorBasis:
    """Pairwise-coprime factors with multiplicities, in one main variable."""

    main_var: str
    factors: tuple

    def __init__(self, main_var, factors):
        factors = tuple((f, int(m)) for f, m in factors)
        for f, m in factors:
            if m < 1:
                raise ValueError("factor multiplicities must be positive")
            if f.degree(main_var) < 1:
                raise ValueError(f"factor {f} does not involve {main_var}")
        for i in range(len(factors)):
            for j in range(i + 1, len(factors)):
                g = gcd_over_field(factors[i][0], factors[j][0], main_var)
                if g.degree(main_var) > 0:
                    raise BasisError(
                        f"factors {factors[i][0]} and {factors[j][0]} are not coprime"
                    )
        object.__setattr__(self, "main_var", main_var)
        object.__setattr__(self, "factors", factors)

    def product(self):
        out = MPoly.const(1)
        for f, m in self.factors:
            out = out * f**m
        return out


@dataclass(frozen=True)
class PFTerm:
    """One elementary fraction numerator / factor^power.

    The numerator is num/den with num polynomial in the main variable and
    den free of it, and deg_main(num) < deg_main(factor).
    """

    num: MPoly
    den: MPoly
    factor: MPoly
    power: int

    def coefficient(self, i, main_var):
        """Main-variable coefficient i of the numerator, as a RatFun."""
        parts = self.num.unicoeffs(main_var)
        if i >= len(parts):
            return RatFun.const(0)
        return RatFun(parts[i], self.den)

    def value(self):
        return RatFun(self.num, self.den * self.factor**self.power, reduce=False)


@dataclass(frozen=True)
class PartialFractionForm:
    main_var: str
    terms: tuple
    polynomial_part: RatFun

    def recombine(self):
        """Exact sum of all terms plus the polynomial part."""
        acc = self.polynomial_part
        for term in self.terms:
            acc = acc + term.value()
        return acc

    def term_for(self, factor, power):
        for term in self.terms:
            if term.factor == factor and term.power == power:
                return term
        return None


def _split_main_content(poly, main):
    """Write poly = content * primitive with content free of the main var."""
    coeffs = poly.unicoeffs(main)
    content = MPoly.const(0)
    for c in coeffs:
        from .mpoly import mpoly_gcd

        content = mpoly_gcd(content, c) if not content.is_zero else c.primitive_part()
        if content.is_const:
            break
    if content.is_zero or content.is_const:
        return MPoly.const(1), poly
    return content, poly.exact_div(content)


def partial_fractions(f, basis):
    """Decompose a rational function over a factor basis.

    The denominator of ``f`` must divide the product of basis factors (up to
    a factor free of the main variable, which is folded into the numerators).
    The recombined form reproduces ``f`` exactly.
    """
    main = basis.main_var
    num = f.num
    den = f.den
    content, den_prim = _split_main_content(den, main)
    product = basis.product()
    try:
        extra = product.exact_div(den_prim)
    except unipoly.NotDivisible:
        raise BasisError("basis does not cover the denominator") from None
    # f = num*extra / (content * product)
    eff_num = num * extra
    deg_num = eff_num.degree(main)
    deg_den = product.degree(main)
    poly_deg = deg_num - deg_den  # degree of the polynomial part, if any
    unknown_cols = []  # (factor_index, power, coeff_index) per unknown
    col_polys = []  # cofactor polynomial multiplying each unknown block
    for fi, (fac, mult) in enumerate(basis.factors):
        dfac = fac.degree(main)
        for power in range(1, mult + 1):
            cof = MPoly.const(1)
            for fj, (fac2, mult2) in enumerate(basis.factors):
                cof = cof * fac2 ** (mult2 - power if fj == fi else mult2)
            for ci in range(dfac):
                unknown_cols.append((fi, power, ci))
                col_polys.append((cof, ci))
    n_frac = len(unknown_cols)
    n_poly = max(poly_deg + 1, 0)
    aux_vars = [vname for vname in set(num.vars) | set(den.vars) | set(product.vars) if vname != main]
    if len(aux_vars) > 1:
        raise ValueError("more than one coefficient-field variable")
    tvar = MPoly.var(main)

    def main_rows(poly):
        return poly.unicoeffs(main)

    n_rows = max(deg_num, deg_den + n_poly - 1 if n_poly else 0, product.degree(main)) + 1
    # Column vectors of main-variable coefficients, each an aux-only MPoly.
    # The aux-only denominator content is folded into the unknowns (solve for
    # content * n, divide afterwards), keeping matrix entries low-degree.
    columns = []
    for (cof, ci) in col_polys:
        columns.append(main_rows(cof * tvar**ci))
    for pi in range(n_poly):
        columns.append(main_rows(product * tvar**pi))
    rhs = main_rows(eff_num)
    rows = []
    for r in range(n_rows):
        row = []
        for col in columns:
            entry = col[r] if r < len(col) else MPoly.const(0)
            row.append(_aux_list(entry, aux_vars))
        rv = rhs[r] if r < len(rhs) else MPoly.const(0)
        row.append(_aux_list(rv, aux_vars))
        rows.append(row)
    try:
        values = linsolve.solve(rows, n_frac + n_poly)
    except linsolve.InconsistentSystem as exc:
        raise BasisError(f"decomposition system inconsistent: {exc}") from None
    aux = aux_vars[0] if aux_vars else None
    if not content.is_const or content.const_value() != 1:
        content_list = _aux_list(content, aux_vars)
        values = [
            linsolve.PolyFractionValue(
                *linsolve._reduce_pair(
                    list(val.num), unipoly.mul(list(val.den), content_list)
                )
            )
            for val in values
        ]
    terms = []
    by_slot = {}
    for (fi, power, ci), val in zip(unknown_cols, values[:n_frac]):
        by_slot.setdefault((fi, power), {})[ci] = val
    for (fi, power), coeffs in sorted(by_slot.items()):
        fac = basis.factors[fi][0]
        num_poly, den_poly = _combine_coeffs(coeffs, main, aux)
        if num_poly.is_zero:
            continue
        terms.append(PFTerm(num_poly, den_poly, fac, power))
    poly_part = RatFun.const(0)
    if n_poly:
        coeffs = {pi: values[n_frac + pi] for pi in range(n_poly)}
        pn, pd = _combine_coeffs(coeffs, main, aux)
        poly_part = RatFun(pn, pd)
    return PartialFractionForm(main, tuple(terms), poly_part)


def _aux_list(poly, aux_vars):
    """Aux-only MPoly -> dense coefficient list."""
    if poly.is_zero:
        return []
    if not poly.vars:
        return [poly.terms[()]]
    if list(poly.vars) != aux_vars and tuple(poly.vars) != tuple(aux_vars):
        raise ValueError(f"entry involves unexpected variables {poly.vars}")
    d = max(e[0] for e in poly.terms)
    out = [0] * (d + 1)
    for e, c in poly.terms.items():
        out[e[0]] = c
    return out


def _combine_coeffs(coeffs, main, aux):
    """Combine per-power PolyFractionValues into (num MPoly, den MPoly)."""
    den_lcm = [1]
    for val in coeffs.values():
        den_lcm = unipoly.lcm(den_lcm, list(val.den))
    num = MPoly.const(0)
    tvar = MPoly.var(main)
    for ci, val in coeffs.items():
        if not val.num:
            continue
        mult = unipoly.divexact(den_lcm, list(val.den))
        piece = unipoly.mul(list(val.num), mult)
        num = num + _list_to_mpoly(piece, aux) * tvar**ci
    den = _list_to_mpoly(den_lcm, aux)
    return num, den


def _list_to_mpoly(coeffs, aux):
    if aux is None:
        return MPoly.const(coeffs[0] if coeffs else 0)
    return MPoly((aux,), {(i,): c for i, c in enumerate(coeffs) if c})


def residue_coefficient(f, g, main_var, xi, k):
    """Top-order coefficient of f(w) / ((1 - xi*w)^k * g(w)).

    Returns f(1/xi) / g(1/xi) evaluated in the coefficient field; raises
    ZeroDivisionError when g(1/xi) = 0, which breaks the hypothesis of the
    elementary-fraction formula.
    """
    if k < 1:
        raise ValueError("pole order must be positive")
    xi = _as_field(xi)
    if xi.is_zero:
        raise ZeroDivisionError("xi must be invertible")
    inv = RatFun.const(1) / xi
    fv = _eval_field(f, main_var, inv)
    gv = _eval_field(g, main_var, inv)
    if gv.is_zero:
        raise ZeroDivisionError("g(1/xi) = 0: elementary-fraction formula does not apply")
    return (fv / gv).reduced()


def _as_field(value):
    if isinstance(value, RatFun):
        return value
    if isinstance(value, MPoly):
        return RatFun.from_mpoly(value)
    return RatFun.const(value)


def _eval_field(poly, main_var, value):
    out = poly.subst(main_var, value)
    if isinstance(out, MPoly):
        out = RatFun.from_mpoly(out)
    return out
