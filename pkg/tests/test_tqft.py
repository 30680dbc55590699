from fractions import Fraction

import pytest

from rwcalc.poly import Bidegree, Variable, poly, vdiff
from rwcalc.duality import TwistParams, DEFAULT_PARAMS
from rwcalc.series import HilbertSeries
from rwcalc.tqft import (
    circle, state_space, generating_function, specialize_s_to_minus_t,
    index_closed_form, frobenius, circle_class_word, grothendieck_product,
)
from rwcalc.rewrite import normalize


class TestCircle:
    def test_potential_shape(self):
        c = circle(1)
        a, d, x, y = c.extras
        assert c.w == (poly(a) - poly(d)) * (poly(x) - poly(y))

    def test_graded_homogeneous(self):
        c = circle(2, graded=True)
        assert c.w.bidegree() == Bidegree(2, 0)


class TestStateSpaces:
    def test_sphere_residual(self):
        ss = state_space(0, 1)
        assert [str(f) for f in ss.word.factors] == ["[y1 - x1, 0]"]
        assert ss.word.shift == 1
        assert ss.counts() == (1, 0, 2)

    def test_sphere_series(self):
        ss = state_space(0, 1, graded=True)
        assert str(ss.series()) == "t^-1 / ((1 - t*u^-1)*(1 - t*u))"

    def test_torus_pairs(self):
        ss = state_space(1, 1)
        assert len(ss.space.pairs) == 2
        assert ss.counts() == (2, 2, 2)

    def test_genus2_ungraded_counts(self):
        ss = state_space(2, 1)
        assert ss.counts() == (8, 8, 2)

    def test_torus_params_drop_out(self):
        alt = TwistParams.make(r_s="1/2", q_s=3, r_sh=1, q_sh=-2, r_nh=0,
                               q_nh=2)
        s1 = state_space(1, 1, graded=True)
        s2 = state_space(1, 1, graded=True, params=alt)
        assert s1.series().equals(s2.series())

    def test_pipeline_matches_closed_form(self):
        for g in (0, 1, 2):
            ss = state_space(g, 1, graded=True)
            assert ss.series().equals(generating_function(g, 1))

    def test_json_schema(self):
        data = state_space(1, 1, graded=True).to_json()
        assert {"word", "trace", "series", "parity",
                "paper-normalized-series"} <= set(data)


class TestGeneratingFunctions:
    def test_torus_closed_form(self):
        got = generating_function(1, 1)
        pair_up = HilbertSeries.pair(Bidegree(0, 1))
        pair_dn = HilbertSeries.pair(Bidegree(0, -1))
        want = HilbertSeries((pair_up * pair_dn).num,
                             ((Fraction(1), Fraction(-1)),
                              (Fraction(1), Fraction(1))))
        assert got.equals(want)

    def test_specialization_identity(self):
        for g in (0, 1, 2, 3):
            for n in (1, 2):
                gf = generating_function(g, n)
                closed = index_closed_form(g, n)
                assert specialize_s_to_minus_t(gf).equals(closed.as_series())

    def test_degreewise_finiteness(self):
        coeffs = generating_function(2, 1).coefficients(Fraction(3))
        by_tu = {}
        for (k, r, q), c in coeffs.items():
            by_tu.setdefault((r, q), []).append((k, c))
        assert all(len(v) < 20 for v in by_tu.values())

    def test_g2_specialized_print(self):
        closed = index_closed_form(2, 1)
        assert str(closed) == "(1 - t*u)*(1 - t*u^-1)*t"


class TestFrobeniusData:
    def test_eta_factors(self):
        fd = frobenius(1)
        f, = fd.eta.word.factors
        assert (str(f.p), str(f.q)) in (("-d1 + a1", "-y1 + x1"),
                                        ("a1 - d1", "x1 - y1"))

    def test_mu_factor_list(self):
        fd = frobenius(1)
        pats = [(str(f.p), str(f.q)) for f in fd.mu.word.factors]
        assert len(pats) == 5
        # the five factor groups of the pair-of-pants word
        assert pats[0][0] in ("a1'' - a1",) and "y1" in pats[0][1]
        assert pats[3][0] == "d1'' - d1'"

    def test_beta_factor_list(self):
        fd = frobenius(1)
        pats = [(str(f.p), str(f.q)) for f in fd.beta.word.factors]
        assert len(pats) == 4
        assert pats[-1] == ("y1' - x1'", "-d1' + d1")

    def test_graded_twists(self):
        fd = frobenius(1, graded=True)
        assert fd.mu.word.twist == Bidegree(0, -2)
        assert fd.eta.word.twist == Bidegree(0, 0)
        assert fd.beta.word.twist == Bidegree(-1, -2)


class TestFusion:
    def test_unitality(self):
        u = circle_class_word(1)
        res = grothendieck_product(u, u, 1)
        unit_form = normalize(u).word
        assert [str(f) for f in res.word.factors] == \
            [str(f) for f in unit_form.factors]
        assert res.word.shift % 2 == 0

    def test_double_shift_trivial(self):
        u = circle_class_word(1)
        res = grothendieck_product(u.shifted(1), u.shifted(1), 1)
        assert res.word.shift % 2 == 0

    def test_commutative_on_representatives(self):
        from rwcalc.tqft import _other_class_word
        u = circle_class_word(1)
        w2 = _other_class_word(1, False)
        key = lambda w: (sorted((str(f.p), str(f.q)) for f in w.factors),
                         w.shift % 2)
        for p, q in ((u, w2), (u.shifted(1), w2), (w2, u)):
            ab = grothendieck_product(p, q, 1)
            ba = grothendieck_product(q, p, 1)
            assert key(ab.word) == key(ba.word)

    def test_potential_guard(self):
        from rwcalc.matfac import koszul, WordError
        bad = koszul(poly(Variable("x1")), poly(Variable("y1")))
        with pytest.raises(WordError):
            grothendieck_product(bad, bad, 1)
