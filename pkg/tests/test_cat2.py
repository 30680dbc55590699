import pytest

from rwcalc.poly import Variable, Polynomial, poly, vdiff, varlist, DEG_W
from rwcalc.cat2 import (
    ObjectC, OneMorphism, compose_1, identity_1, box_1, braiding,
    canonical_form, unit_2, unitor_lambda, unitor_rho, vertical, TwoMorphism,
)
from rwcalc.matfac import WordError
from rwcalc.rewrite import normalize


class TestObjectsAndUnits:
    def test_identity_shape(self):
        one = identity_1(ObjectC.make(1))
        assert str(one.w) == "a1*x1' - a1*x1"

    def test_identity_empty(self):
        one = identity_1(ObjectC.make(0))
        assert one.w.is_zero() and one.extras == ()

    def test_graded_identity_homogeneous(self):
        one = identity_1(ObjectC.make(2, graded=True), graded=True)
        assert one.w.bidegree() == DEG_W

    def test_monoidal_unit(self):
        x = ObjectC.make(1)
        assert x.box(ObjectC.make(0, name="z")).variables == x.variables

    def test_monoidal_disjointness(self):
        x = ObjectC.make(1)
        with pytest.raises(WordError):
            x.box(x)


class TestComposition:
    def test_intermediate_absorbed(self):
        x, xp, xpp = (ObjectC.make(1, c) for c in range(3))
        f = identity_1(x, xp, acopy=0)
        g = identity_1(xp, xpp, acopy=1)
        c = compose_1(g, f)
        assert set(xp.variables) <= set(c.extras)
        assert c.w == f.w + g.w

    def test_clash_renaming(self):
        x, xp = ObjectC.make(1), ObjectC.make(1, 1)
        f = identity_1(x, xp, acopy=0)
        g = identity_1(xp, ObjectC.make(1, 2), acopy=0)  # clashing extras a1
        c = compose_1(g, f)
        assert len(set(c.extras)) == len(c.extras)

    def test_strict_associativity_canonical(self):
        xs = [ObjectC.make(1, c) for c in range(4)]
        fs = [identity_1(xs[i], xs[i + 1], acopy=i) for i in range(3)]
        left = compose_1(fs[2], compose_1(fs[1], fs[0]))
        right = compose_1(compose_1(fs[2], fs[1]), fs[0])
        lc, rc = canonical_form(left), canonical_form(right)
        assert lc.w == rc.w and set(lc.extras) == set(rc.extras)

    def test_compose_with_empty(self):
        empty = OneMorphism((), (), (), Polynomial.zero())
        f = identity_1(ObjectC.make(1))
        # endo of the empty object composes with the trivial 1-morphism
        g = OneMorphism((), (), f.extras + f.src + f.tgt, f.w)
        assert compose_1(g, empty).w == g.w


class TestBraiding:
    def test_components(self):
        x, y = ObjectC.make(1), ObjectC(varlist("y", 1))
        xp, yp = ObjectC.make(1, 1), ObjectC(varlist("y", 1, 1))
        b = braiding(x, y, xp, yp)
        assert b.tgt == yp.variables + xp.variables
        assert b.w == parse_w(b)

    def test_braid_empty(self):
        x, xp = ObjectC.make(1), ObjectC.make(1, 1)
        b = braiding(ObjectC(()), x, ObjectC(()), xp)
        one = identity_1(x, xp, aname="d")
        assert b.w == one.w.substitute({one.extras[0]: poly(b.extras[0])})


def parse_w(b):
    from rwcalc.poly import dot
    c = b.extras[:1]
    d = b.extras[1:]
    return dot(d, [vdiff(b.tgt[0], b.src[1])]) + \
        dot(c, [vdiff(b.tgt[1], b.src[0])])


class TestTwoMorphisms:
    def test_unit_2_shape(self):
        f = identity_1(ObjectC.make(1))
        u = unit_2(f)
        assert u.word.factors[0].q == vdiff(u.cod.extras[0], f.extras[0])

    def test_potential_guard(self):
        f = identity_1(ObjectC.make(1))
        g = f.rename({f.extras[0]: f.extras[0].primed()})
        from rwcalc.matfac import koszul
        with pytest.raises(WordError):
            TwoMorphism(f, g, koszul(poly(Variable("x1")), poly(Variable("y1"))))

    def test_unitor_invertible(self):
        # lambda . lambda^-1 normalizes to the diagonal unit of the target
        f = identity_1(ObjectC.make(1))
        lam = unitor_lambda(f)
        lam_inv = unitor_lambda(f, inverse=True)
        loop = vertical(lam, lam_inv)
        res = normalize(loop.with_closed_internal())
        assert all(fct.p.is_zero() or fct.q.is_zero()
                   for fct in res.word.factors)
        # even overall: the loop is the diagonal unit of its boundary
        blocks = sum(1 for fct in res.word.factors if fct.q.is_zero())
        assert (blocks + res.word.shift) % 2 == 0

    def test_unitor_rho_invertible(self):
        f = identity_1(ObjectC.make(1))
        rho = unitor_rho(f)
        rho_inv = unitor_rho(f, inverse=True)
        loop = vertical(rho, rho_inv)
        res = normalize(loop.with_closed_internal())
        assert res.word.shift % 2 == 0
        assert all(f2.p.is_zero() or f2.q.is_zero()
                   for f2 in res.word.factors)

    def test_lambda_rho_coincide_on_unit(self):
        # on f = 1_x the two unitors have the same factor pattern
        f = identity_1(ObjectC.make(1))
        lam, rho = unitor_lambda(f), unitor_rho(f)
        assert len(lam.word.factors) == len(rho.word.factors)


class TestGradedClosure:
    def test_composition_stays_homogeneous(self):
        x, xp, xpp = (ObjectC.make(1, c, graded=True) for c in range(3))
        f = identity_1(x, xp, acopy=0, graded=True)
        g = identity_1(xp, xpp, acopy=1, graded=True)
        assert compose_1(g, f).w.bidegree() == DEG_W

    def test_aliases(self):
        from rwcalc import cat2
        o = cat2.obj(2)
        one = cat2.id(o)
        assert len(one.extras) == 2
        b = cat2.braid(cat2.obj(1), ObjectC(varlist("y", 1)))
        assert len(b.extras) == 2
