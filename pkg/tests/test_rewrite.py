import pytest

from rwcalc.poly import Variable, Polynomial, poly, vdiff, DEG_X, DEG_A, Bidegree
from rwcalc.matfac import koszul, koszul_multi, mat_eq, mat_mul
from rwcalc.rewrite import (
    eliminate_internal, row_combine, swap_factor, negate_word, negate_factor,
    collapse_zero_factor, normalize, FreeSummandLog, RewriteError,
)

x, y, xp, yp = Variable("x1"), Variable("y1"), Variable("x1", 1), Variable("y1", 1)
a, ap, b = Variable("a1"), Variable("a1", 1), Variable("b1")


def sphere_word(graded=False):
    gx = Variable("x1", grade=DEG_X if graded else None)
    gy = Variable("y1", grade=DEG_X if graded else None)
    ga = Variable("a1", grade=DEG_A if graded else None)
    gap = Variable("a1", 1, DEG_A if graded else None)
    cup = koszul(vdiff(gy, gx), vdiff(gap, ga), graded=graded)
    cap = koszul(vdiff(gap, ga), vdiff(gx, gy), graded=graded)
    shared = {ga, gap, gx, gy}
    return cup.tensor(cap, shared=shared).with_internal(shared)


class TestEliminate:
    def test_basic(self):
        w = sphere_word()
        out, gone, kept = eliminate_internal(w, 1)
        assert str(gone) == "a1'" and str(kept) == "a1"
        assert [str(f) for f in out.factors] == ["[y1 - x1, 0]"]
        assert out.shift == 1  # the move carries a parity shift

    def test_not_internal(self):
        w = sphere_word().replace_factors(
            sphere_word().factors, internal=frozenset())
        with pytest.raises(RewriteError):
            eliminate_internal(w, 1)

    def test_shape_mismatch(self):
        w = koszul(poly(x) * poly(y), poly(a)).with_internal([x, y, a])
        with pytest.raises(RewriteError):
            eliminate_internal(w, 0)

    def test_hypothesis_violation(self):
        # potential depends on the eliminated variable: refused
        w = koszul(vdiff(b, a), poly(x)).with_internal([b])
        with pytest.raises(RewriteError):
            eliminate_internal(w, 0)

    def test_sum_shape(self):
        # [b + a, p] eliminates b -> -a
        w = koszul(poly(b) + poly(a), vdiff(x, y)) \
            .tensor(koszul(vdiff(x, y), -poly(b) - poly(a)),
                    shared={a, b, x, y}).with_internal([b])
        out, gone, kept = eliminate_internal(w, 0)
        assert str(gone) == "b1"
        assert out.potential() == w.potential().substitute({b: -poly(a)})


class TestRowCombine:
    def test_involution(self):
        w = koszul(poly(x), poly(y)).tensor(koszul(poly(a), poly(b)))
        back = row_combine(row_combine(w, 0, 1, 1), 0, 1, -1)
        assert back == w

    def test_potential_preserved(self):
        w = koszul(poly(x), poly(y)).tensor(koszul(poly(a), poly(b)))
        assert row_combine(w, 0, 1, 1).potential() == w.potential()

    def test_conjugation_exact(self):
        # the closed-form triangular conjugation between the expansions
        w = koszul(poly(x) + poly(y), poly(a)).tensor(
            koszul(poly(b), vdiff(xp, x)), shared={x})
        for i, j, sign in ((0, 1, 1), (0, 1, -1), (1, 0, 1), (1, 0, -1)):
            before, after = w.expand(), row_combine(w, i, j, sign).expand()
            U = ((poly(1), poly(0)), (poly(0), poly(1)))
            if (i, j) == (0, 1):
                V = ((poly(1), poly(sign)), (poly(0), poly(1)))
            else:
                V = ((poly(1), poly(0)), (poly(sign), poly(1)))
            assert mat_eq(mat_mul(V, before.d0), mat_mul(after.d0, U))
            assert mat_eq(mat_mul(U, before.d1), mat_mul(after.d1, V))


class TestSwapNegate:
    def test_swap_twice_identity(self):
        w = koszul(poly(x), poly(y))
        assert swap_factor(swap_factor(w, 0), 0) == w

    def test_swap_zero_factor(self):
        w = koszul(Polynomial.zero(), Polynomial.zero())
        ws = swap_factor(w, 0)
        assert ws.shift == 1 and ws.factors[0].p.is_zero()

    def test_swap_twist_bookkeeping(self):
        ga = Variable("a1", grade=DEG_A)
        gx = Variable("x1", grade=DEG_X)
        w = koszul(poly(ga), poly(gx), graded=True)
        ws = swap_factor(w, 0)
        assert ws.twist == -w.factors[0].theta
        assert ws.factors[0].theta == -w.factors[0].theta

    def test_negate(self):
        w = koszul(poly(a), poly(x))
        wn = negate_word(w)
        assert wn.factors[0].p == -poly(a) and wn.factors[0].q == -poly(x)
        assert negate_word(wn) == w
        assert wn.potential() == w.potential()


class TestCollapse:
    def test_singleton(self):
        log = FreeSummandLog()
        w = koszul(Polynomial.zero(), Polynomial.zero())
        out = collapse_zero_factor(w, 0, log)
        assert len(out.factors) == 0 and len(log) == 1

    def test_graded_log_carries_theta(self):
        log = FreeSummandLog()
        w = koszul(Polynomial.zero(), Polynomial.zero(), graded=True,
                   theta=Bidegree(0, -1))
        collapse_zero_factor(w, 0, log)
        assert log.entries[0].theta == Bidegree(0, -1)

    def test_negative_control(self):
        w = koszul(poly(x), Polynomial.zero())
        with pytest.raises(RewriteError):
            collapse_zero_factor(w, 0, FreeSummandLog())


class TestNormalize:
    def test_sphere(self):
        res = normalize(sphere_word())
        assert [str(f) for f in res.word.factors] == ["[y1 - x1, 0]"]
        assert res.word.shift == 1
        assert [s.rule for s in res.trace] == ["eliminate"]

    def test_deterministic(self):
        r1, r2 = normalize(sphere_word()), normalize(sphere_word())
        assert [s.to_json() for s in r1.trace] == [s.to_json() for s in r2.trace]

    def test_graded_sphere_twist(self):
        w = sphere_word(graded=True).twisted(-1, 0)
        res = normalize(w)
        assert res.word.twist == Bidegree(-1, 0)
        assert res.word.factors[0].theta == Bidegree(0, 1)

    def test_trace_json_shape(self):
        res = normalize(sphere_word())
        step = res.trace_json()[0]
        assert set(step) == {"rule", "indices", "before-hash", "after-hash",
                             "detail"}

    def test_potential_preserved_through_trace(self):
        w = sphere_word()
        res = normalize(w)
        # elimination substitutes the (zero) potential; still zero
        assert res.word.potential().is_zero()
