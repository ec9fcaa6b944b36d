from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import eval_poly, series_mul, substitute
from stcurve.deform import make_parametrization
from stcurve.errors import ValuationOfZero, ValuationUndetermined, WeightMismatch, ZeroPolynomial
from stcurve.poly import SparsePoly, TruncSeries, substitute_param

W = (4, 5, 7)
x, y, z, s = SparsePoly.gens(W)

coeffs = st.one_of(st.integers(-5, 5), st.fractions(min_value=-5, max_value=5, max_denominator=6))
exps = st.tuples(*(st.integers(0, 3) for _ in range(4)))
polys = st.dictionaries(exps, coeffs, max_size=5).map(lambda d: SparsePoly(d, W))
points = st.tuples(*(st.fractions(min_value=-3, max_value=3, max_denominator=4) for _ in range(4)))


class TestArithmetic:
    def test_square_example(self):
        assert (x ** 3 - y * z) ** 2 == x ** 6 - 2 * x ** 3 * y * z + y ** 2 * z ** 2

    def test_identities(self):
        f3 = z ** 2 - x * y ** 2
        assert f3 * 0 == SparsePoly.zero(W)
        assert f3 * 1 == f3
        assert not (f3 - f3)

    def test_no_zero_coefficients_stored(self):
        p = SparsePoly({(1, 0, 0, 0): 0, (0, 1, 0, 0): Fraction(2, 2)}, W)
        assert p.terms == {(0, 1, 0, 0): 1}
        assert isinstance(p.terms[(0, 1, 0, 0)], int)

    def test_weight_mismatch(self):
        with pytest.raises(WeightMismatch):
            x + SparsePoly.var("x", (5, 7, 13))

    @settings(max_examples=150, deadline=None)
    @given(polys, polys, polys, points)
    def test_evaluation_homomorphism(self, p, q, r, pt):
        ev = lambda u: eval_poly(u.terms, pt)  # noqa: E731
        assert ev(p + q) == ev(p) + ev(q)
        assert ev(p - q) == ev(p) - ev(q)
        assert ev(p * q) == ev(p) * ev(q)
        assert ev(p ** 3) == ev(p) ** 3
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r

    @settings(max_examples=60, deadline=None)
    @given(polys, st.integers(0, 6))
    def test_power_matches_repeated_product(self, p, k):
        r = SparsePoly.constant(1, W)
        for _ in range(k):
            r = r * p
        assert p ** k == r


class TestGrading:
    def test_order_and_homogeneity(self):
        f1 = x ** 3 - y * z
        assert f1.weighted_order() == 12 and f1.is_homogeneous()
        p = x + x ** 2
        assert p.weighted_order() == 4 and p.initial_part() == x
        assert (x ** 3 * s).weighted_degree() == 11

    def test_zero_polynomial(self):
        with pytest.raises(ZeroPolynomial):
            SparsePoly.zero(W).weighted_order()

    @settings(max_examples=100, deadline=None)
    @given(polys)
    def test_initial_part_is_lowest_part_on_monomial_curve(self, p):
        p = p.set_s(1)
        if not p:
            return
        ini = p.initial_part().evaluate_monomial_curve()
        if not ini:
            return
        full = p.evaluate_monomial_curve()
        low = min(full)
        assert low == p.weighted_order()
        assert {k: v for k, v in full.items() if k == low} == ini

    def test_rendering_order(self):
        p = y * z - x ** 3 + 2
        assert str(p) == "-x^3 + y*z + 2"
        assert str(Fraction(1, 2) * x - z) == "-z + 1/2*x"


class TestSeries:
    def test_cancellation(self):
        u = TruncSeries({(45, 0): 1, (46, 0): 1}, 60) - TruncSeries({(45, 0): 1}, 60)
        assert u.terms == {(46, 0): 1} and u.valuation() == 46

    def test_unit(self):
        u = TruncSeries({(7, 0): 1, (9, 0): 3}, 20)
        assert u * 1 == u
        assert u.valuation() == 7

    def test_valuation_errors(self):
        with pytest.raises(ValuationOfZero):
            TruncSeries({}, 10).valuation()
        u = TruncSeries({(4, 0): 1}, 10) * TruncSeries({(7, 0): 1}, 10)
        with pytest.raises(ValuationUndetermined):
            u.valuation()
        assert u.truncated and u.is_zero() is None

    def test_rendering(self):
        u = TruncSeries({(15, 1): -2, (16, 2): -1, (40, 0): 1}, 20)
        assert str(u) == "-2*s*t^15 - s^2*t^16 + O(t^20)"

    @settings(max_examples=100, deadline=None)
    @given(st.dictionaries(st.tuples(st.integers(0, 12), st.integers(0, 3)), st.integers(-4, 4), max_size=6),
           st.dictionaries(st.tuples(st.integers(0, 12), st.integers(0, 3)), st.integers(-4, 4), max_size=6),
           st.integers(1, 20))
    def test_product_matches_convolution(self, a, b, T):
        u, v = TruncSeries(a, T), TruncSeries(b, T)
        expected = series_mul({k: c for k, c in a.items() if k[0] < T},
                              {k: c for k, c in b.items() if k[0] < T}, T)
        assert (u * v).terms == expected


class TestSubstitution:
    def test_monomial_curve_kills_relations(self):
        P = make_parametrization(4, 5, 7)
        for f in (x ** 3 - y * z, y ** 3 - x ** 2 * z, z ** 2 - x * y ** 2):
            assert substitute_param(f, P, 20).is_zero()

    def test_deformed_f3(self):
        P = make_parametrization(4, 5, 7, {"y": [(6, 1)]})
        r = substitute_param(z ** 2 - x * y ** 2, P, 20)
        assert r.terms == {(15, 1): -2, (16, 2): -1}

    def test_weight_mismatch(self):
        with pytest.raises(WeightMismatch):
            substitute_param(x, make_parametrization(5, 7, 13), 10)

    @settings(max_examples=60, deadline=None)
    @given(polys, polys, st.integers(6, 10), st.integers(1, 3))
    def test_matches_oracle_and_is_multiplicative(self, p, q, p_exp, c):
        tails = {"y": [(p_exp, c)], "z": [(9, 1)]}
        P = make_parametrization(4, 5, 7, tails)
        T = 30
        got = substitute_param(p, P, T)
        ref = substitute(p.terms, W, [[], [(p_exp, c)], [(9, 1)]], T)
        assert got.terms == ref
        assert (substitute_param(p, P, T) * substitute_param(q, P, T)).terms == substitute_param(p * q, P, T).terms

    @settings(max_examples=60, deadline=None)
    @given(polys)
    def test_graded_substitution(self, p):
        P = make_parametrization(4, 5, 7, {"x": [(5, 2)], "y": [(8, -1)]})
        for d in {p.degree_of(e) for e in p.terms}:
            part = SparsePoly({e: c for e, c in p.terms.items() if p.degree_of(e) == d}, W)
            r = substitute_param(part, P, 40)
            assert all(et - es == d for et, es in r.terms)
