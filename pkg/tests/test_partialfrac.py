from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tracemult.mpoly import MPoly, RatFun
from tracemult.partialfrac import (
    BasisError,
    FactorBasis,
    partial_fractions,
    residue_coefficient,
)

t = MPoly.var("t")
v = MPoly.var("v")
w = MPoly.var("w")


def coeff_of(form, factor, power, i=0):
    term = form.term_for(factor, power)
    if term is None:
        return RatFun.const(0)
    return term.coefficient(i, form.main_var)


class TestPartialFractions:
    def test_two_simple_poles(self):
        f = RatFun(MPoly.const(1), (1 - t) * (1 + t))
        form = partial_fractions(f, FactorBasis("t", [(1 - t, 1), (1 + t, 1)]))
        assert coeff_of(form, 1 - t, 1) == Fraction(1, 2)
        assert coeff_of(form, 1 + t, 1) == Fraction(1, 2)
        assert form.recombine() == f

    def test_identity_case(self):
        f = RatFun(MPoly.const(1), (1 - t) ** 2)
        form = partial_fractions(f, FactorBasis("t", [(1 - t, 2)]))
        assert len(form.terms) == 1
        assert form.terms[0].power == 2
        assert form.polynomial_part.is_zero
        assert form.recombine() == f

    def test_rational_coefficient_field(self):
        f = RatFun(1 + v * t, (1 - t) ** 2 * (1 - v * t))
        basis = FactorBasis("t", [(1 - t, 2), (1 - v * t, 1)])
        form = partial_fractions(f, basis)
        assert form.recombine() == f
        top = coeff_of(form, 1 - t, 2)
        assert top == RatFun(1 + v, 1 - v)

    def test_polynomial_part(self):
        f = RatFun(t**3 + 1, 1 - t)
        form = partial_fractions(f, FactorBasis("t", [(1 - t, 1)]))
        assert form.polynomial_part == RatFun.from_mpoly(-1 - t - t**2)
        assert form.recombine() == f

    def test_uncovered_denominator_rejected(self):
        f = RatFun(MPoly.const(1), (1 - t) * (1 + t + t**2))
        with pytest.raises(BasisError):
            partial_fractions(f, FactorBasis("t", [(1 - t, 1)]))

    def test_non_coprime_basis_rejected(self):
        with pytest.raises(BasisError):
            FactorBasis("t", [(1 - t**2, 1), (1 + t, 1)])

    @given(
        st.lists(
            st.integers(min_value=-5, max_value=5), min_size=0, max_size=6
        )
    )
    def test_recombination_is_exact(self, num_coeffs):
        num = MPoly(("t",), {(i,): c for i, c in enumerate(num_coeffs) if c})
        den = (1 - t) ** 2 * (1 + t) * (1 - v * t)
        basis = FactorBasis(
            "t", [(1 - t, 2), (1 + t, 1), (1 - v * t, 1)]
        )
        f = RatFun(num, den, reduce=False)
        form = partial_fractions(f, basis)
        assert form.recombine() == f


class TestResidueCoefficient:
    def test_simple_pole(self):
        assert residue_coefficient(MPoly.const(1), MPoly.const(1), "w", 1, 1) == 1

    def test_double_pole(self):
        r = residue_coefficient(MPoly.const(1), 1 + w, "w", 1, 2)
        assert r == Fraction(1, 2)

    def test_agrees_with_full_decomposition(self):
        f = RatFun(MPoly.const(1), (1 - w) ** 2 * (1 + w))
        form = partial_fractions(f, FactorBasis("w", [(1 - w, 2), (1 + w, 1)]))
        top = coeff_of(form, 1 - w, 2)
        assert top == residue_coefficient(MPoly.const(1), 1 + w, "w", 1, 2)

    def test_rational_function_xi(self):
        r = residue_coefficient(MPoly.const(1), 1 + w, "w", RatFun.from_mpoly(v), 2)
        assert r == RatFun(v, 1 + v)

    def test_vanishing_g_rejected(self):
        with pytest.raises(ZeroDivisionError):
            residue_coefficient(MPoly.const(1), 1 - w, "w", 1, 2)

    @given(
        st.integers(min_value=1, max_value=3),
        st.lists(st.integers(min_value=-4, max_value=4), min_size=1, max_size=4),
    )
    def test_agrees_with_decomposition_on_random_g(self, k, g_coeffs):
        g = MPoly(("w",), {(i,): c for i, c in enumerate(g_coeffs) if c}) + 2
        if g.degree("w") < 1 or g.eval({"w": 1}) == 0:
            return
        f = MPoly.const(1) + w
        if f.eval({"w": 1}) == 0:
            return
        den = (1 - w) ** k * g
        basis = FactorBasis("w", [(1 - w, k), (g, 1)])
        form = partial_fractions(RatFun(f, den, reduce=False), basis)
        top = coeff_of(form, 1 - w, k)
        assert top == residue_coefficient(f, g, "w", 1, k)
