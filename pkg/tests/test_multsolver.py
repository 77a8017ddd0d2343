from fractions import Fraction

import pytest

from tracemult import linsolve
from tracemult.mpoly import MPoly, RatFun
from tracemult.multsolver import (
    NotSolvableShape,
    SymmetricQuotient,
    solve_details,
    solve_multiplicity_series,
    verify_roundtrip,
)
from tracemult.symfunc import mult_series_truncated, series_expand

x = MPoly.var("x")
y = MPoly.var("y")
t = MPoly.var("t")
v = MPoly.var("v")

half = MPoly.const(Fraction(1, 2))


class TestSolve:
    def test_sum_of_variables(self):
        assert solve_multiplicity_series(SymmetricQuotient(x, MPoly.const(1))) == t

    def test_geometric_product(self):
        shape = SymmetricQuotient(half, 1 - x)
        details = solve_details(shape)
        assert details.series == RatFun(MPoly.const(1), 1 - t)
        # numerator degree bound max(deg p, deg q - 2) = 0
        assert details.numerator_t_degree <= 0

    def test_product_slot(self):
        assert solve_multiplicity_series(SymmetricQuotient(half * v, MPoly.const(1))) == v

    def test_z_factor_scales_series(self):
        plain = SymmetricQuotient(half, 1 - x)
        scaled = SymmetricQuotient(half, 1 - x, RatFun(MPoly.const(1), 1 - v))
        assert solve_multiplicity_series(scaled) == solve_multiplicity_series(
            plain
        ) * RatFun(MPoly.const(1), 1 - v)

    def test_witness_invariance_under_common_factor(self):
        base = SymmetricQuotient(half, (1 - x) * (1 - v * x))
        extra = 2 + v  # nonzero polynomial in the product slot
        other = SymmetricQuotient(
            half * extra, (1 - x) * (1 - v * x),
            RatFun(MPoly.const(1), extra),
        )
        assert solve_multiplicity_series(base) == solve_multiplicity_series(other)

    def test_matches_oracle_on_nontrivial_shape(self):
        shape = SymmetricQuotient(x**2 * v + half, (1 - x) ** 2 * (1 - v * x))
        f = shape.symmetric_function()
        assert shape.matches(f)
        assert shape.matches(f, degree=8)
        series = series_expand(solve_multiplicity_series(shape), 13)
        oracle = mult_series_truncated(f, 14)
        for p in range(14):
            for q in range((13 - p) // 2 + 1):
                assert series.coeffs.get((p, q), 0) == oracle.coeffs.get((p, q), 0)

    def test_truncated_degree_is_inconsistent(self):
        with pytest.raises(NotSolvableShape):
            solve_multiplicity_series(
                SymmetricQuotient(x**3, MPoly.const(1)), max_degree=1
            )

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            SymmetricQuotient(MPoly.var("y"), MPoly.const(1))
        with pytest.raises(ValueError):
            SymmetricQuotient(x, MPoly.const(0))
        with pytest.raises(ValueError):
            SymmetricQuotient(x, MPoly.const(1), RatFun(t, 1 - t))


class TestLinSolve:
    def test_underdetermined_reported(self):
        with pytest.raises(linsolve.UnderdeterminedSystem) as info:
            linsolve.solve([[[1], [1], [1]]], 2)
        assert info.value.nullity == 1

    def test_inconsistent_reported(self):
        rows = [[[1], [2]], [[2], [5]]]
        with pytest.raises(linsolve.InconsistentSystem):
            linsolve.solve(rows, 1)

    def test_polynomial_entries(self):
        # (1 - v) * a = 1 - v^2  ->  a = 1 + v
        rows = [[[1, -1], [1, 0, -1]]]
        (a,) = linsolve.solve(rows, 1)
        assert list(a.num) == [1, 1] and list(a.den) == [1]

    def test_redundant_rows_checked(self):
        rows = [[[1], [3]], [[2], [6]], [[5], [15]]]
        (a,) = linsolve.solve(rows, 1)
        assert a.as_fraction() == 3


class TestRoundTripReport:
    def test_accepts_valid_pair(self):
        f = RatFun(MPoly.const(1), (1 - x) * (1 - y))
        rep = verify_roundtrip(f, RatFun(MPoly.const(1), 1 - t))
        assert rep.ok

    def test_perturbation_is_diagnosed(self):
        f = RatFun(MPoly.const(1), (1 - x) * (1 - y))
        rep = verify_roundtrip(f, RatFun(MPoly.const(1), 1 - t) + t)
        assert not rep.ok
        # the extra t adds the two-variable sum x + y: first mismatch in degree 1
        assert rep.first_mismatch[:2] in ((1, 0), (0, 1))
        assert rep.to_dict()["ok"] is False
