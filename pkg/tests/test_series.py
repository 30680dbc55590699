from fractions import Fraction

import pytest

from rwcalc.poly import Bidegree
from rwcalc.series import HilbertSeries, FactoredSeries, product


def mono(s, r, q, c=1):
    return HilbertSeries.monomial(s, Fraction(r), Fraction(q), c)


class TestAlgebra:
    def test_pair_expansion(self):
        p = HilbertSeries.pair(Bidegree(0, 1))
        assert str(p) == "1 + s*u"

    def test_product_collects(self):
        p = HilbertSeries.pair(Bidegree(0, 1)) * HilbertSeries.pair(Bidegree(0, -1))
        # 1 + s/u + s u + s^2
        assert len(p.num) == 4

    def test_equality_cross_multiplied(self):
        # 1/(1 - tu) == (1 + tu)/(1 - t^2 u^2)
        lhs = HilbertSeries(HilbertSeries.one().num,
                            ((Fraction(1), Fraction(1)),))
        num = HilbertSeries.one() + mono(0, 1, 1)
        rhs = HilbertSeries(num.num, ((Fraction(2), Fraction(2)),))
        assert lhs.equals(rhs)
        assert not lhs.equals(HilbertSeries.one())

    def test_specialize(self):
        p = HilbertSeries.pair(Bidegree(0, 1))
        got = p.specialize_s_to_minus_t()
        assert str(got) == "1 - t*u"

    def test_coefficients(self):
        s = HilbertSeries(HilbertSeries.one().num, ((Fraction(1), Fraction(1)),))
        coeffs = s.coefficients(Fraction(2))
        assert coeffs[(0, Fraction(0), Fraction(0))] == 1
        assert coeffs[(0, Fraction(2), Fraction(2))] == 1

    def test_scale(self):
        s = HilbertSeries.one().scale(1, Fraction(-1), Fraction(0))
        assert str(s) == "s*t^-1"


class TestFactored:
    def test_negative_exponent_as_denominator(self):
        f = FactoredSeries(((Fraction(1), Fraction(1), -1),))
        s = f.as_series()
        assert s.den == ((Fraction(1), Fraction(1)),)

    def test_print(self):
        f = FactoredSeries(((Fraction(1), Fraction(1), 1),
                            (Fraction(1), Fraction(-1), 1)),
                           mono=(0, Fraction(1), Fraction(0)))
        assert str(f) == "(1 - t*u)*(1 - t*u^-1)*t"

    def test_json(self):
        s = HilbertSeries.pair(Bidegree(0, 1))
        data = s.to_json()
        assert data["numerator-terms"][1]["s"] == 1
