from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tracemult.mpoly import MPoly, RatFun
from tracemult.symfunc import (
    MultTable,
    Partition2,
    SeriesExtractor,
    as_tu_form,
    inverse_M,
    mult_series_truncated,
    schur,
    schur_decompose,
    series_expand,
)

x = MPoly.var("x")
y = MPoly.var("y")
t = MPoly.var("t")
v = MPoly.var("v")


class TestPartition:
    def test_validation(self):
        with pytest.raises(ValueError):
            Partition2(1, 2)
        with pytest.raises(ValueError):
            Partition2(3, -1)
        assert Partition2(4, 1).p == 3


class TestSchur:
    def test_hook(self):
        assert schur((2, 1)) == x**2 * y + x * y**2

    def test_row(self):
        assert schur((3, 0)) == x**3 + x**2 * y + x * y**2 + y**3

    def test_dimension_at_ones(self):
        for lam in [(0, 0), (3, 1), (5, 5), (7, 2)]:
            assert schur(lam).eval({"x": 1, "y": 1}) == lam[0] - lam[1] + 1


class TestSeriesExpand:
    def test_geometric(self):
        s = series_expand(RatFun(MPoly.const(1), 1 - x), 3)
        assert [s.coeff(k) for k in range(4)] == [1, 1, 1, 1]

    @pytest.mark.parametrize("xi,s_pow", [(1, 2), (3, 4), (Fraction(1, 2), 3)])
    def test_negative_binomial_rule(self, xi, s_pow):
        f = RatFun(MPoly.const(1), (1 - xi * v) ** s_pow)
        series = series_expand(f, 8)
        for q in range(9):
            assert series.coeff(q) == comb(q + s_pow - 1, s_pow - 1) * Fraction(xi) ** q

    def test_zero_constant_term_rejected(self):
        with pytest.raises(ValueError):
            series_expand(RatFun(MPoly.const(1), x), 3)

    def test_coefficients_beyond_truncation_rejected(self):
        s = series_expand(RatFun(MPoly.const(1), 1 - x), 3)
        with pytest.raises(ValueError):
            s.coeff(4)


class TestSchurDecompose:
    def test_square_of_sum(self):
        table = schur_decompose(series_expand(RatFun.from_mpoly((x + y) ** 2), 5))
        assert table.entries == {(2, 0): 1, (1, 1): 1}

    def test_round_trip_single_schur(self):
        table = schur_decompose(series_expand(RatFun.from_mpoly(schur((3, 1))), 9))
        assert table.entries == {(3, 1): 1}

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            schur_decompose(series_expand(RatFun.from_mpoly(x), 4))

    @given(
        st.fractions(min_value=-3, max_value=3, max_denominator=4),
        st.fractions(min_value=-3, max_value=3, max_denominator=4),
    )
    def test_linearity(self, a, b):
        f = RatFun(MPoly.const(1), (1 - x) * (1 - y))
        g = RatFun.from_mpoly((x + y) ** 2)
        n = 8
        combo = schur_decompose(series_expand(f * a + g * b, n))
        fa = schur_decompose(series_expand(f, n))
        gb = schur_decompose(series_expand(g, n))
        keys = set(fa.entries) | set(gb.entries) | set(combo.entries)
        for lam in keys:
            assert combo.entries.get(lam, 0) == a * fa.entries.get(
                lam, 0
            ) + b * gb.entries.get(lam, 0)

    def test_reexpansion_identity(self):
        f = RatFun(MPoly.const(1), (1 - x) * (1 - y) * (1 - x * y))
        n = 9
        table = schur_decompose(series_expand(f, n))
        total = MPoly.const(0)
        for lam, m in table.entries.items():
            total = total + m * schur(lam)
        redone = series_expand(RatFun.from_mpoly(total), n - 1)
        original = series_expand(f, n - 1)
        assert redone.coeffs == original.coeffs


CORPUS = [
    RatFun.const(1),
    RatFun.from_mpoly(t),
    RatFun.from_mpoly(t**2 * v),
    RatFun(MPoly.const(1), 1 - t),
    RatFun(MPoly.const(1), (1 - v) * (1 - t)),
    RatFun(1 + t * v, (1 - t) ** 2 * (1 - v * t)),
]


class TestMultiplicitySeries:
    def test_single_schur_function(self):
        for lam in [(2, 0), (3, 1), (4, 4)]:
            ms = mult_series_truncated(RatFun.from_mpoly(schur(lam)), 12)
            assert ms.coeffs == {(lam[0] - lam[1], lam[1]): 1}

    def test_full_row_series(self):
        ms = mult_series_truncated(RatFun(MPoly.const(1), (1 - x) * (1 - y)), 12)
        assert ms.coeffs == {(p, 0): 1 for p in range(12)}

    def test_inverse_of_one(self):
        assert inverse_M(RatFun.const(1)) == 1

    def test_inverse_of_monomial_is_schur(self):
        for p, q in [(0, 1), (2, 1), (3, 0), (2, 2)]:
            m = RatFun.from_mpoly(t**p * v**q)
            assert inverse_M(m) == RatFun.from_mpoly(schur((p + q, q)))

    @pytest.mark.parametrize("m", CORPUS)
    def test_round_trip_on_corpus(self, m):
        n = 10
        f = inverse_M(m)
        ms = mult_series_truncated(f, n)
        target = series_expand(m, n - 1)
        for (p, q), c in ms.coeffs.items():
            if p + 2 * q <= n - 1:
                assert target.coeffs.get((p, q), 0) == c
        for (p, q), c in target.coeffs.items():
            if p + 2 * q <= n - 1:
                assert ms.coeffs.get((p, q), 0) == c

    def test_injective_on_corpus(self):
        tables = []
        for m in CORPUS:
            ms = mult_series_truncated(inverse_M(m), 10)
            tables.append(tuple(sorted(ms.coeffs.items())))
        assert len(set(tables)) == len(tables)

    def test_tu_form(self):
        m = RatFun(MPoly.const(1), 1 - v)
        u = MPoly.var("u")
        assert as_tu_form(m) == RatFun(MPoly.const(1), 1 - t * u)


class TestSeriesExtractor:
    def test_matches_bivariate_expansion(self):
        f = RatFun(1 + t * v, (1 - t) ** 2 * (1 - v * t) * (1 - v) * 3)
        ex = SeriesExtractor(f)
        direct = series_expand(f, 14)
        for p in range(6):
            for q in range(5):
                assert ex.coefficient(p, q) == direct.coeff(p, q)

    def test_batch_extraction(self):
        f = RatFun(MPoly.const(1), (1 - t) * (1 - v))
        ex = SeriesExtractor(f)
        values = ex.coefficients([(0, 0), (5, 7), (3, 2)])
        assert set(values.values()) == {1}

    def test_origin_pole_rejected(self):
        with pytest.raises(ValueError):
            SeriesExtractor(RatFun(MPoly.const(1), v * (1 - t)))


class TestMultTableJson:
    def test_round_trip_and_order(self):
        table = MultTable(4, {(2, 0): 3, (1, 1): 2, (0, 0): 1, (2, 2): 5})
        text = table.to_json()
        assert MultTable.from_json(text) == table
        import json

        entries = json.loads(text)["entries"]
        assert [tuple(e["lambda"]) for e in entries] == [
            (0, 0),
            (2, 0),
            (1, 1),
            (2, 2),
        ]
        assert all(isinstance(e["m"], str) for e in entries)
