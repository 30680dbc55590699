"""The acceptance suite: one test per criterion, each printing a pass line
with its runtime.  All comparisons are exact; stated time budgets are
asserted."""

import random
import time
from fractions import Fraction

import pytest

from rwcalc.poly import Bidegree, Variable, Polynomial, poly, vdiff, DEG_X, DEG_A
from rwcalc.matfac import koszul, koszul_multi, mat_eq, mat_mul, KoszulWord
from rwcalc.rewrite import (
    normalize, eliminate_internal, swap_factor, row_combine, negate_factor,
)
from rwcalc.oracle import (
    certify_elimination, cohomology_of_zero, slice_cohomology,
)
from rwcalc.duality import (
    TwistParams, DEFAULT_PARAMS, verify_zorro, verify_serre_trivial, serre,
    serre_chain_form, _assemble_move,
)
from rwcalc.tqft import (
    state_space, generating_function, specialize_s_to_minus_t,
    index_closed_form, frobenius, verify_frobenius,
)

ALT_PARAMS = TwistParams.make(r_s="1/2", q_s=3, r_sh=1, q_sh=-2, r_nh=0,
                              q_nh=2)
THIRD_PARAMS = TwistParams.make(r_s=-2, q_s="1/3", r_sh=5, q_sh=7,
                                r_nh="1/2", q_nh=-4)


def report(name, elapsed, budget=None):
    line = f"[acceptance] {name}: PASS ({elapsed:.2f}s"
    if budget is not None:
        line += f" < {budget}s"
    print(line + ")")


def test_criterion_1_sphere():
    t0 = time.monotonic()
    ss = state_space(0, 1, graded=True)
    assert [(str(f.p), str(f.q)) for f in ss.word.factors] == \
        [("y1 - x1", "0")]
    # the global parity of the residual is tracked explicitly, never hidden
    assert ss.word.shift == 1 and ss.parity == 0
    assert str(ss.series()) == "t^-1 / ((1 - t*u^-1)*(1 - t*u))"
    assert ss.series().equals(generating_function(0, 1))
    elapsed = time.monotonic() - t0
    assert elapsed < 1.0
    report("1 sphere state space", elapsed, 1)


def test_criterion_2_torus():
    t0 = time.monotonic()
    for n in (1, 2):
        closed = generating_function(1, n)
        series = []
        for params in (DEFAULT_PARAMS, ALT_PARAMS, THIRD_PARAMS):
            ss = state_space(1, n, graded=True, params=params)
            assert ss.series().equals(closed)
            series.append(ss.series())
        assert series[0].equals(series[1]) and series[1].equals(series[2])
    elapsed = time.monotonic() - t0
    assert elapsed < 5.0
    report("2 torus state spaces", elapsed, 5)


def test_criterion_3_genus_2_3():
    t0 = time.monotonic()
    parities = {}
    for g in (2, 3):
        for n in (1, 2):
            for params in (DEFAULT_PARAMS, ALT_PARAMS):
                ss = state_space(g, n, graded=True, params=params)
                assert ss.series().equals(generating_function(g, n, params))
                parities[(g, n)] = ss.parity
    for n in (1, 2):
        assert parities[(2, n)] == parities[(3, n)]
    elapsed = time.monotonic() - t0
    assert elapsed < 60.0
    report("3 genus 2 and 3 state spaces", elapsed, 60)


def test_criterion_4_index_specialization():
    t0 = time.monotonic()
    for g in (0, 1, 2, 3):
        for n in (1, 2):
            for params in (DEFAULT_PARAMS, ALT_PARAMS):
                gf = generating_function(g, n, params)
                closed = index_closed_form(g, n, params)
                assert specialize_s_to_minus_t(gf).equals(closed.as_series())
    report("4 index specialization", time.monotonic() - t0)


def _paper_zorro_replay():
    """Replay the worked nine-factor snake reduction move for move,
    asserting the three-factor stage, the double swap, and the final
    identity word."""
    two, ident = _assemble_move("left-adjoint-of-ev~:coev-leg", 1, False,
                                DEFAULT_PARAMS)
    w = two.with_closed_internal()
    assert len(w.factors) == 9
    # six defect-type eliminations, collapsing every internal extra into
    # the surviving boundary extra
    for idx in (7, 5, 6, 5, 3, 3):
        w, gone, kept = eliminate_internal(w, idx)
    stage = sorted((str(f.p), str(f.q)) for f in w.factors)
    assert [p for p, _ in stage] == ["d1 - a1'"] * 3
    assert sorted(q for _, q in stage) == sorted(
        ["-y1 + x1", "x1' - x1", "-y1' + y1"])
    # the double swap that costs a trivial double shift
    w = swap_factor(w, 0)
    w = swap_factor(w, 2)
    assert w.shift % 2 == 0
    # the two bulk eliminations setting x and y to y'
    w, gone, _ = eliminate_internal(w, 0)
    assert str(gone) == "x1"
    w, gone, _ = eliminate_internal(w, 1)
    assert str(gone) == "y1"
    assert len(w.factors) == 1 and w.shift % 2 == 0
    f, = w.factors
    assert {str(f.p), str(f.q)} == {"d1 - a1'", "-y1' + x1'"}
    return True


def test_criterion_5_zorro():
    t0 = time.monotonic()
    for n in (1, 2):
        reports = verify_zorro(n)
        assert len(reports) == 8 and all(r.ok for r in reports)
    for params in (DEFAULT_PARAMS, ALT_PARAMS, THIRD_PARAMS):
        reports = verify_zorro(1, graded=True, params=params)
        assert all(r.ok and r.twist_sum.is_zero() for r in reports)
    assert _paper_zorro_replay()
    elapsed = time.monotonic() - t0
    assert elapsed < 10.0
    report("5 zorro moves", elapsed, 10)


def test_criterion_6_serre():
    t0 = time.monotonic()
    s = serre(1)
    groups, chain_ok = serre_chain_form(s, 1)
    assert chain_ok and len(groups) == 7
    rep = verify_serre_trivial(1)
    assert rep.ok
    assert len(rep.trivialisations) == 2
    first, second = rep.trivialisations
    assert second.shift == (first.shift + 1) % 2
    assert [str(f) for f in first.factors] == [str(f) for f in second.factors]
    report("6 serre triviality", time.monotonic() - t0)


def _random_poly(rng, variables, max_degree=3):
    out = Polynomial.zero()
    for _ in range(rng.randint(1, 3)):
        term = Polynomial.const(rng.randint(-3, 3))
        degree = rng.randint(0, max_degree)
        for _ in range(degree):
            term = term * poly(rng.choice(variables))
        out = out + term
    return out


def test_criterion_7_lemma_addition():
    t0 = time.monotonic()
    rng = random.Random(20260810)
    variables = [Variable(v) for v in ("x1", "y1", "a1", "b1")]
    checked = 0
    for _ in range(200):
        ps = [_random_poly(rng, variables) for _ in range(4)]
        w = koszul(ps[0], ps[1]).tensor(
            koszul(ps[2], ps[3]),
            shared=set(variables))
        before = w.expand()
        for (i, j, sign) in ((0, 1, 1), (0, 1, -1), (1, 0, 1), (1, 0, -1)):
            after = row_combine(w, i, j, sign).expand()
            U = ((poly(1), poly(0)), (poly(0), poly(1)))
            if (i, j) == (0, 1):
                V = ((poly(1), poly(sign)), (poly(0), poly(1)))
            else:
                V = ((poly(1), poly(0)), (poly(sign), poly(1)))
            assert mat_eq(mat_mul(V, before.d0), mat_mul(after.d0, U))
            assert mat_eq(mat_mul(U, before.d1), mat_mul(after.d1, V))
            checked += 1
    assert checked == 800
    elapsed = time.monotonic() - t0
    assert elapsed < 10.0
    report("7 lemma addition, 200 random pairs x 4 variants", elapsed, 10)


def test_criterion_8_lemma_elimination():
    t0 = time.monotonic()
    # the sphere instance
    x, y = Variable("x1"), Variable("y1")
    a, ap = Variable("a1"), Variable("a1", 1)
    sphere = koszul(vdiff(y, x), vdiff(ap, a)).tensor(
        koszul(vdiff(ap, a), vdiff(x, y)), shared={a, ap, x, y}
    ).with_internal([a, ap, x, y])
    res = normalize(sphere)
    cert = certify_elimination(sphere, res.word, ap, a, degree_bound=4)
    assert cert is not None and cert.verify()

    # the end-game eliminations of the snake reduction
    two, _ = _assemble_move("left-adjoint-of-ev~:coev-leg", 1, False,
                            DEFAULT_PARAMS)
    w = two.with_closed_internal()
    for idx in (7, 5, 6, 5, 3, 3):
        w, _, _ = eliminate_internal(w, idx)
    w = swap_factor(swap_factor(w, 0), 2)
    before1 = w
    after1, gone1, kept1 = eliminate_internal(w, 0)
    cert1 = certify_elimination(before1, after1, gone1, kept1, degree_bound=4)
    assert cert1 is not None and cert1.verify()
    before2 = after1
    after2, gone2, kept2 = eliminate_internal(before2, 1)
    cert2 = certify_elimination(before2, after2, gone2, kept2, degree_bound=4)
    assert cert2 is not None and cert2.verify()
    elapsed = time.monotonic() - t0
    assert elapsed < 30.0
    report("8 lemma elimination certificates", elapsed, 30)


def test_criterion_9_frobenius():
    t0 = time.monotonic()
    fd = frobenius(1)
    assert [(str(f.p), str(f.q)) for f in fd.eta.word.factors] == \
        [("-d1 + a1", "-y1 + x1")]
    assert [(str(f.p), str(f.q)) for f in fd.mu.word.factors] == [
        ("a1'' - a1", "-y1' + y1"),
        ("a1'' - a1'", "x1' - x1"),
        ("a1' - a1", "y1' - x1"),
        ("d1'' - d1'", "y1' - x1'"),
        ("-d1 + a1''", "-y1 + x1"),
    ]
    assert [(str(f.p), str(f.q)) for f in fd.beta.word.factors] == [
        ("d1 - a1", "-y1' + y1"),
        ("d1 - a1'", "x1' - x1"),
        ("a1' - a1", "y1' - x1"),
        ("y1' - x1'", "-d1' + d1"),
    ]
    rep = verify_frobenius(1)
    assert rep.unitality and rep.associativity
    assert rep.commutativity and rep.pairing
    report("9 frobenius axioms and factor lists", time.monotonic() - t0)


def test_criterion_10_oracle_cross_check():
    t0 = time.monotonic()
    gx = Variable("x1", grade=DEG_X)
    gy = Variable("y1", grade=DEG_X)
    ga = Variable("a1", grade=DEG_A)
    word = koszul(vdiff(gy, gx), Polynomial.zero(), graded=True)
    ambient = {ga, gx, gy}
    gvs = cohomology_of_zero(word, ambient=ambient)
    slices = slice_cohomology(word, ambient, 4)
    coeffs = gvs.raw_series().coefficients(Fraction(4))
    got = {(par, rq): dim for (par, rq), dim in slices.items() if dim}
    want = {}
    for (k, r, q), c in coeffs.items():
        want[(k % 2, (r, q))] = want.get((k % 2, (r, q)), 0) + c
    assert got == want
    report("10 cohomology vs degree slices", time.monotonic() - t0)
