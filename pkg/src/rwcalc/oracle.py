"""Independent certification of homotopy equivalences, and cohomology of
matrix factorisations of zero.

`certify_equivalence` solves bounded-degree linear systems for morphisms
and homotopies between two factorisations of the same potential; the
returned certificate re-verifies its four identities exactly.  Failure at a
bound is inconclusive, never a claim of inequivalence.

`certify_elimination` handles the variable-elimination move, where the
before-word contains one internal variable more than the after-word; the
certificate's maps are allowed to involve evaluation (b -> r) and the
difference quotient delta = (id - eval)/(b - r), both linear over the
external ring.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from .poly import Polynomial, Variable, Bidegree, divide_linear, poly
from .matfac import (
    KoszulWord, MatrixFactorisation, Matrix, mat_mul, mat_add, mat_scale,
    mat_eye, mat_eq,
)
from .series import HilbertSeries
from . import linalg
from .linalg import (
    monomials_upto, umat_ansatz, umat_known, umat_zero, umat_add,
    umat_sub, umat_mul_ku, umat_mul_uk, umat_equations, umat_evaluate,
)


class OracleError(ValueError):
    pass


def _zero_matrix(n, m):
    return tuple(tuple(Polynomial.zero() for _ in range(m)) for _ in range(n))


def _poly_sigma(p: Polynomial, b: Variable, r: Variable) -> Polynomial:
    return p.substitute({b: poly(r)})


def _poly_delta(p: Polynomial, b: Variable, r: Variable) -> Polynomial:
    return divide_linear(p - _poly_sigma(p, b, r), b, r)


def _mat_apply(m: Matrix, fn) -> Matrix:
    return tuple(tuple(fn(e) for e in row) for row in m)


@dataclass(frozen=True)
class MFMorphism:
    """Even morphism between factorisations, as (even->even, odd->odd)."""

    ee: Matrix
    oo: Matrix

    def is_chain_map(self, x: MatrixFactorisation, y: MatrixFactorisation) -> bool:
        return (mat_eq(mat_mul(y.d0, self.ee), mat_mul(self.oo, x.d0))
                and mat_eq(mat_mul(y.d1, self.oo), mat_mul(self.ee, x.d1)))


@dataclass(frozen=True)
class OddMap:
    """Odd endomorphism blocks (even->odd, odd->even)."""

    oe: Matrix
    eo: Matrix


@dataclass(frozen=True)
class HomotopyCertificate:
    """alpha: X->Y, beta: Y->X, with beta.alpha - 1 = dh + hd and
    alpha.beta - 1 = dk + kd, all verified exactly."""

    x: MatrixFactorisation
    y: MatrixFactorisation
    alpha: MFMorphism
    beta: MFMorphism
    h: OddMap
    k: OddMap

    def verify(self) -> bool:
        x, y = self.x, self.y
        a, b, h, k = self.alpha, self.beta, self.h, self.k
        if not a.is_chain_map(x, y) or not b.is_chain_map(y, x):
            return False
        lhs_e = mat_add(mat_mul(b.ee, a.ee), mat_scale(-1, mat_eye(x.even_rank)))
        rhs_e = mat_add(mat_mul(x.d1, h.oe), mat_mul(h.eo, x.d0))
        lhs_o = mat_add(mat_mul(b.oo, a.oo), mat_scale(-1, mat_eye(x.odd_rank)))
        rhs_o = mat_add(mat_mul(x.d0, h.eo), mat_mul(h.oe, x.d1))
        if not mat_eq(lhs_e, rhs_e) or not mat_eq(lhs_o, rhs_o):
            return False
        lhs_e = mat_add(mat_mul(a.ee, b.ee), mat_scale(-1, mat_eye(y.even_rank)))
        rhs_e = mat_add(mat_mul(y.d1, k.oe), mat_mul(k.eo, y.d0))
        lhs_o = mat_add(mat_mul(a.oo, b.oo), mat_scale(-1, mat_eye(y.odd_rank)))
        rhs_o = mat_add(mat_mul(y.d0, k.eo), mat_mul(k.oe, y.d1))
        return mat_eq(lhs_e, rhs_e) and mat_eq(lhs_o, rhs_o)

    def swapped(self) -> "HomotopyCertificate":
        return HomotopyCertificate(self.y, self.x, self.beta, self.alpha,
                                   self.k, self.h)

    def to_json(self) -> dict:
        def blocks(m):
            return [[e.to_json() for e in row] for row in m]
        return {
            "alpha": {"ee": blocks(self.alpha.ee), "oo": blocks(self.alpha.oo)},
            "beta": {"ee": blocks(self.beta.ee), "oo": blocks(self.beta.oo)},
            "h": {"oe": blocks(self.h.oe), "eo": blocks(self.h.eo)},
            "k": {"oe": blocks(self.k.oe), "eo": blocks(self.k.eo)},
        }


def _as_mf(x) -> MatrixFactorisation:
    return x.expand() if isinstance(x, KoszulWord) else x


def _candidate_alphas(basis: List[dict], limit: int = 24):
    """Deterministic stream of candidate solutions from a nullspace basis."""
    for v in basis[:limit]:
        yield v
    for v, w in itertools.combinations(basis[:8], 2):
        merged = dict(v)
        for key, val in w.items():
            merged[key] = merged.get(key, Fraction(0)) + val
        yield merged
    for v, w in itertools.combinations(basis[:6], 2):
        merged = dict(v)
        for key, val in w.items():
            merged[key] = merged.get(key, Fraction(0)) - val
        yield {key: val for key, val in merged.items() if val != 0}


def default_degree_bound() -> int:
    """The oracle's default ansatz bound; RWCALC_DEGREE_BOUND overrides."""
    import os
    return int(os.environ.get("RWCALC_DEGREE_BOUND", "4"))


def certify_equivalence(x, y, degree_bound: Optional[int] = None
                        ) -> Optional[HomotopyCertificate]:
    """Search for a homotopy equivalence between factorisations of the same
    potential over the same ring.  Bounds are tried incrementally; `None`
    means not found at the bound (inconclusive)."""
    if degree_bound is None:
        degree_bound = default_degree_bound()
    X, Y = _as_mf(x), _as_mf(y)
    if X.potential != Y.potential:
        raise OracleError("potential mismatch")
    if (X.even_rank, X.odd_rank) == (Y.even_rank, Y.odd_rank) \
            and mat_eq(X.d0, Y.d0) and mat_eq(X.d1, Y.d1):
        ident = MFMorphism(mat_eye(X.even_rank), mat_eye(X.odd_rank))
        zero_h = OddMap(_zero_matrix(X.odd_rank, X.even_rank),
                        _zero_matrix(X.even_rank, X.odd_rank))
        return HomotopyCertificate(X, Y, ident, ident, zero_h, zero_h)
    variables = set()
    for m in (X.d0, X.d1, Y.d0, Y.d1):
        for row in m:
            for e in row:
                variables |= e.variables()
    for bound in range(degree_bound + 1):
        cert = _certify_plain_at(X, Y, sorted(variables, key=lambda v: v.key), bound)
        if cert is not None:
            return cert
    return None


def _certify_plain_at(X, Y, variables, bound) -> Optional[HomotopyCertificate]:
    monos = monomials_upto(variables, bound)
    counter = itertools.count()

    def alloc():
        return next(counter)

    a_ee = umat_ansatz(Y.even_rank, X.even_rank, monos, alloc)
    a_oo = umat_ansatz(Y.odd_rank, X.odd_rank, monos, alloc)
    n_alpha = next(counter)
    eqs = []
    eqs += umat_equations(umat_sub(umat_mul_ku(Y.d0, a_ee), umat_mul_uk(a_oo, X.d0)))
    eqs += umat_equations(umat_sub(umat_mul_ku(Y.d1, a_oo), umat_mul_uk(a_ee, X.d1)))
    basis = linalg.nullspace(eqs, n_alpha)
    for cand in _candidate_alphas(basis):
        A = MFMorphism(umat_evaluate(a_ee, cand), umat_evaluate(a_oo, cand))
        if all(e.is_zero() for row in A.ee for e in row):
            continue
        got = _solve_beta_h(X, Y, A, monos)
        if got is None:
            continue
        B, H = got
        K = _solve_homotopy(Y, mat_mul(A.ee, B.ee), mat_mul(A.oo, B.oo), monos)
        if K is None:
            continue
        cert = HomotopyCertificate(X, Y, A, B, H, K)
        if not cert.verify():
            raise AssertionError("certificate failed exact re-verification")
        return cert
    return None


def _solve_beta_h(X, Y, A: MFMorphism, monos):
    counter = itertools.count()

    def alloc():
        return next(counter)

    b_ee = umat_ansatz(X.even_rank, Y.even_rank, monos, alloc)
    b_oo = umat_ansatz(X.odd_rank, Y.odd_rank, monos, alloc)
    h_oe = umat_ansatz(X.odd_rank, X.even_rank, monos, alloc)
    h_eo = umat_ansatz(X.even_rank, X.odd_rank, monos, alloc)
    eqs = []
    eqs += umat_equations(umat_sub(umat_mul_ku(X.d0, b_ee), umat_mul_uk(b_oo, Y.d0)))
    eqs += umat_equations(umat_sub(umat_mul_ku(X.d1, b_oo), umat_mul_uk(b_ee, Y.d1)))
    # beta.alpha - 1 = d h + h d
    lhs_e = umat_mul_uk(b_ee, A.ee)
    rhs_e = umat_add(umat_mul_ku(X.d1, h_oe), umat_mul_uk(h_eo, X.d0))
    eqs += umat_equations(umat_sub(lhs_e, rhs_e), target=mat_eye(X.even_rank))
    lhs_o = umat_mul_uk(b_oo, A.oo)
    rhs_o = umat_add(umat_mul_ku(X.d0, h_eo), umat_mul_uk(h_oe, X.d1))
    eqs += umat_equations(umat_sub(lhs_o, rhs_o), target=mat_eye(X.odd_rank))
    sol = linalg.solve(eqs)
    if sol is None:
        return None
    B = MFMorphism(umat_evaluate(b_ee, sol), umat_evaluate(b_oo, sol))
    H = OddMap(umat_evaluate(h_oe, sol), umat_evaluate(h_eo, sol))
    return B, H


def _solve_homotopy(Y, prod_ee: Matrix, prod_oo: Matrix, monos) -> Optional[OddMap]:
    """Solve prod - 1 = d k + k d for an odd k on Y."""
    counter = itertools.count()

    def alloc():
        return next(counter)

    k_oe = umat_ansatz(Y.odd_rank, Y.even_rank, monos, alloc)
    k_eo = umat_ansatz(Y.even_rank, Y.odd_rank, monos, alloc)
    eqs = []
    lhs_e = umat_known(mat_add(prod_ee, mat_scale(-1, mat_eye(Y.even_rank))))
    rhs_e = umat_add(umat_mul_ku(Y.d1, k_oe), umat_mul_uk(k_eo, Y.d0))
    eqs += umat_equations(umat_sub(lhs_e, rhs_e))
    lhs_o = umat_known(mat_add(prod_oo, mat_scale(-1, mat_eye(Y.odd_rank))))
    rhs_o = umat_add(umat_mul_ku(Y.d0, k_eo), umat_mul_uk(k_oe, Y.d1))
    eqs += umat_equations(umat_sub(lhs_o, rhs_o))
    sol = linalg.solve(eqs)
    if sol is None:
        return None
    return OddMap(umat_evaluate(k_oe, sol), umat_evaluate(k_eo, sol))


# ---------------------------------------------------------------------------
# elimination certificates (before-word has one internal variable extra)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EliminationCertificate:
    """Equivalence over the external ring between X (containing the internal
    variable b) and Y = the eliminated word.

    alpha(v) = A.eval(v) + B.eval(delta v), beta(w) = C.w,
    h = H0 + H1 delta + H2 eval + H3 eval.delta, k plain on Y, where
    eval: b -> r and delta f = (f - eval f)/(b - r).  `verify` re-checks
    the chain and homotopy identities exactly as polynomial matrices.
    """

    x: MatrixFactorisation
    y: MatrixFactorisation
    b: Variable
    r: Variable
    A: MFMorphism
    B: MFMorphism
    C: MFMorphism
    H: tuple  # (H0, H1, H2, H3) as OddMap
    K: OddMap

    def to_json(self) -> dict:
        def blocks(m):
            return [[e.to_json() for e in row] for row in m]
        return {
            "eliminated": str(self.b), "replacement": str(self.r),
            "alpha": {"ee": blocks(self.A.ee), "oo": blocks(self.A.oo),
                      "delta-ee": blocks(self.B.ee),
                      "delta-oo": blocks(self.B.oo)},
            "beta": {"ee": blocks(self.C.ee), "oo": blocks(self.C.oo)},
            "h": [{"oe": blocks(h.oe), "eo": blocks(h.eo)} for h in self.H],
            "k": {"oe": blocks(self.K.oe), "eo": blocks(self.K.eo)},
        }

    def verify(self) -> bool:
        X, Y, b, r = self.x, self.y, self.b, self.r
        sig = lambda m: _mat_apply(m, lambda e: _poly_sigma(e, b, r))
        dlt = lambda m: _mat_apply(m, lambda e: _poly_delta(e, b, r))
        A, B, C = self.A, self.B, self.C
        H0, H1, H2, H3 = self.H
        K = self.K
        eye_e, eye_o = mat_eye(X.even_rank), mat_eye(X.odd_rank)

        def zero(m):
            return all(e.is_zero() for row in m for e in row)

        # E1: alpha is a chain map
        checks = [
            mat_add(mat_mul(Y.d0, A.ee),
                    mat_scale(-1, mat_add(mat_mul(A.oo, sig(X.d0)),
                                          mat_mul(B.oo, sig(dlt(X.d0)))))),
            mat_add(mat_mul(Y.d1, A.oo),
                    mat_scale(-1, mat_add(mat_mul(A.ee, sig(X.d1)),
                                          mat_mul(B.ee, sig(dlt(X.d1)))))),
            mat_add(mat_mul(Y.d0, B.ee), mat_scale(-1, mat_mul(B.oo, sig(X.d0)))),
            mat_add(mat_mul(Y.d1, B.oo), mat_scale(-1, mat_mul(B.ee, sig(X.d1)))),
            # E2: beta is a chain map over the full ring
            mat_add(mat_mul(X.d0, C.ee), mat_scale(-1, mat_mul(C.oo, Y.d0))),
            mat_add(mat_mul(X.d1, C.oo), mat_scale(-1, mat_mul(C.ee, Y.d1))),
        ]
        if not all(zero(m) for m in checks):
            return False

        # E3: beta.alpha - 1 = d h + h d as operators; the operator identity
        # is equivalent to three matrix identities obtained by probing with
        # (b-r)^0, (b-r)^1, (b-r)^2.
        def e3(par):
            if par == 0:  # on the even part
                d_in, d_out = X.d0, X.d1  # d_in: e->o, d_out: o->e
                h_in, h_out = H_blocks("oe"), H_blocks("eo")
                Cm, Am, Bm = C.ee, A.ee, B.ee
                eye = eye_e
            else:
                d_in, d_out = X.d1, X.d0
                h_in, h_out = H_blocks("eo"), H_blocks("oe")
                Cm, Am, Bm = C.oo, A.oo, B.oo
                eye = eye_o
            H0b, H1b, H2b, H3b = h_in
            H0o, H1o, H2o, H3o = h_out
            r_m = mat_add(mat_add(mat_mul(d_out, H0b), mat_mul(H0o, d_in)),
                          mat_mul(H1o, dlt(d_in)))
            r_d = mat_add(mat_mul(d_out, H1b), mat_mul(H1o, sig(d_in)))
            r_s = mat_add(mat_add(mat_mul(d_out, H2b), mat_mul(H2o, sig(d_in))),
                          mat_mul(H3o, sig(dlt(d_in))))
            r_sd = mat_add(mat_mul(d_out, H3b), mat_mul(H3o, sig(d_in)))
            p = mat_add(mat_scale(-1, eye), mat_scale(-1, r_m))
            q = mat_add(mat_mul(Cm, sig(Am)), mat_scale(-1, r_s))
            rr = mat_scale(-1, r_d)
            s = mat_add(mat_mul(Cm, sig(Bm)), mat_scale(-1, r_sd))
            br = poly(b) - poly(r)
            return [mat_add(p, q),
                    mat_add(mat_scale(br, p), rr),
                    mat_add(mat_add(mat_scale(br, p), rr), s)]

        def H_blocks(kind):
            return tuple(getattr(h, kind) for h in (H0, H1, H2, H3))

        for par in (0, 1):
            if not all(zero(m) for m in e3(par)):
                return False

        # E4: alpha.beta - 1 = d k + k d on Y (b-free side)
        ab_ee = mat_add(mat_mul(A.ee, sig(C.ee)), mat_mul(B.ee, sig(dlt(C.ee))))
        ab_oo = mat_add(mat_mul(A.oo, sig(C.oo)), mat_mul(B.oo, sig(dlt(C.oo))))
        lhs_e = mat_add(ab_ee, mat_scale(-1, mat_eye(Y.even_rank)))
        rhs_e = mat_add(mat_mul(Y.d1, K.oe), mat_mul(K.eo, Y.d0))
        lhs_o = mat_add(ab_oo, mat_scale(-1, mat_eye(Y.odd_rank)))
        rhs_o = mat_add(mat_mul(Y.d0, K.eo), mat_mul(K.oe, Y.d1))
        return mat_eq(lhs_e, rhs_e) and mat_eq(lhs_o, rhs_o)


def certify_elimination(before: KoszulWord, after: KoszulWord, b: Variable,
                        r: Variable, degree_bound: Optional[int] = None
                        ) -> Optional[EliminationCertificate]:
    """Certificate for one elimination step (before has internal `b`,
    after = before with the [b - r]-factor removed and b -> r)."""
    if degree_bound is None:
        degree_bound = default_degree_bound()
    X = before.expand()
    Y = after.expand()
    variables = set()
    for m in (X.d0, X.d1, Y.d0, Y.d1):
        for row in m:
            for e in row:
                variables |= e.variables()
    variables.add(b)
    variables.add(r)
    ext = sorted((v for v in variables if v != b), key=lambda v: v.key)
    full = sorted(variables, key=lambda v: v.key)
    for bound in range(degree_bound + 1):
        cert = _certify_elim_at(X, Y, b, r, ext, full, bound)
        if cert is not None:
            return cert
    return None


def _sigma_fn(b: Variable, r: Variable):
    def fn(m):
        k = dict(m).get(b, 0)
        if k == 0:
            return [(m, Fraction(1))]
        rest = [(v, e) for v, e in m if v != b]
        out = dict(rest)
        out[r] = out.get(r, 0) + k
        mm = tuple(sorted(out.items(), key=lambda t: t[0].key))
        return [(mm, Fraction(1))]
    return fn


def _delta_fn(b: Variable, r: Variable):
    def fn(m):
        k = dict(m).get(b, 0)
        if k == 0:
            return []
        rest = [(v, e) for v, e in m if v != b]
        out = []
        for j in range(k):
            d = dict(rest)
            if j:
                d[b] = j
            d[r] = d.get(r, 0) + (k - 1 - j)
            if d.get(r, 0) == 0:
                d.pop(r, None)
            mm = tuple(sorted(d.items(), key=lambda t: t[0].key))
            out.append((mm, Fraction(1)))
        return out
    return fn


def _certify_elim_at(X, Y, b, r, ext_vars, full_vars, bound
                     ) -> Optional[EliminationCertificate]:
    ext_monos = monomials_upto(ext_vars, bound)
    full_monos = monomials_upto(full_vars, bound)
    sig = _sigma_fn(b, r)

    def sig_mat(m):
        return _mat_apply(m, lambda e: _poly_sigma(e, b, r))

    def dlt_mat(m):
        return _mat_apply(m, lambda e: _poly_delta(e, b, r))

    s_d0, s_d1 = sig_mat(X.d0), sig_mat(X.d1)
    sd_d0, sd_d1 = sig_mat(dlt_mat(X.d0)), sig_mat(dlt_mat(X.d1))

    counter = itertools.count()

    def alloc():
        return next(counter)

    a_ee = umat_ansatz(Y.even_rank, X.even_rank, ext_monos, alloc)
    a_oo = umat_ansatz(Y.odd_rank, X.odd_rank, ext_monos, alloc)
    b_ee = umat_ansatz(Y.even_rank, X.even_rank, ext_monos, alloc)
    b_oo = umat_ansatz(Y.odd_rank, X.odd_rank, ext_monos, alloc)
    n_phase1 = next(counter)
    eqs = []
    eqs += umat_equations(umat_sub(
        umat_mul_ku(Y.d0, a_ee),
        umat_add(umat_mul_uk(a_oo, s_d0), umat_mul_uk(b_oo, sd_d0))))
    eqs += umat_equations(umat_sub(
        umat_mul_ku(Y.d1, a_oo),
        umat_add(umat_mul_uk(a_ee, s_d1), umat_mul_uk(b_ee, sd_d1))))
    eqs += umat_equations(umat_sub(umat_mul_ku(Y.d0, b_ee),
                                   umat_mul_uk(b_oo, s_d0)))
    eqs += umat_equations(umat_sub(umat_mul_ku(Y.d1, b_oo),
                                   umat_mul_uk(b_ee, s_d1)))
    basis = linalg.nullspace(eqs, n_phase1)
    for cand in _candidate_alphas(basis):
        A = MFMorphism(umat_evaluate(a_ee, cand), umat_evaluate(a_oo, cand))
        Bm = MFMorphism(umat_evaluate(b_ee, cand), umat_evaluate(b_oo, cand))
        if all(e.is_zero() for row in A.ee for e in row):
            continue
        got = _solve_elim_beta_h(X, Y, b, r, A, Bm, full_monos)
        if got is None:
            continue
        C, H = got
        K = _solve_elim_k(X, Y, b, r, A, Bm, C, full_monos)
        if K is None:
            continue
        cert = EliminationCertificate(X, Y, b, r, A, Bm, C, H, K)
        if not cert.verify():
            raise AssertionError("elimination certificate failed re-verification")
        return cert
    return None


def _solve_elim_beta_h(X, Y, b, r, A, Bm, monos):
    sig_m = _sigma_fn(b, r)
    dlt_m = _delta_fn(b, r)

    def sig_mat(m):
        return _mat_apply(m, lambda e: _poly_sigma(e, b, r))

    def dlt_mat(m):
        return _mat_apply(m, lambda e: _poly_delta(e, b, r))

    counter = itertools.count()

    def alloc():
        return next(counter)

    c_ee = umat_ansatz(X.even_rank, Y.even_rank, monos, alloc)
    c_oo = umat_ansatz(X.odd_rank, Y.odd_rank, monos, alloc)
    hs = {}
    for name in ("H0", "H1", "H2", "H3"):
        hs[name] = (umat_ansatz(X.odd_rank, X.even_rank, monos, alloc),
                    umat_ansatz(X.even_rank, X.odd_rank, monos, alloc))
    eqs = []
    # E2: chain map over the full ring
    eqs += umat_equations(umat_sub(umat_mul_ku(X.d0, c_ee),
                                   umat_mul_uk(c_oo, Y.d0)))
    eqs += umat_equations(umat_sub(umat_mul_ku(X.d1, c_oo),
                                   umat_mul_uk(c_ee, Y.d1)))

    br = poly(b) - poly(r)
    for par in (0, 1):
        if par == 0:
            d_in, d_out = X.d0, X.d1
            c_blk, a_blk, b_blk = c_ee, A.ee, Bm.ee
            eye = mat_eye(X.even_rank)
            pick_in, pick_out = 0, 1  # (oe, eo) indices for in/out blocks
        else:
            d_in, d_out = X.d1, X.d0
            c_blk, a_blk, b_blk = c_oo, A.oo, Bm.oo
            eye = mat_eye(X.odd_rank)
            pick_in, pick_out = 1, 0
        blocks = {name: (hs[name][pick_in], hs[name][pick_out])
                  for name in hs}
        H0i, H0o = blocks["H0"]
        H1i, H1o = blocks["H1"]
        H2i, H2o = blocks["H2"]
        H3i, H3o = blocks["H3"]
        r_m = umat_add(umat_add(umat_mul_ku(d_out, H0i), umat_mul_uk(H0o, d_in)),
                       umat_mul_uk(H1o, dlt_mat(d_in)))
        r_d = umat_add(umat_mul_ku(d_out, H1i), umat_mul_uk(H1o, sig_mat(d_in)))
        r_s = umat_add(umat_add(umat_mul_ku(d_out, H2i),
                                umat_mul_uk(H2o, sig_mat(d_in))),
                       umat_mul_uk(H3o, sig_mat(dlt_mat(d_in))))
        r_sd = umat_add(umat_mul_ku(d_out, H3i), umat_mul_uk(H3o, sig_mat(d_in)))
        # L_M = -1, L_sigma = C.sig(A), L_delta = 0, L_sigdelta = C.sig(B)
        l_s = umat_mul_uk(c_blk, sig_mat(a_blk))
        l_sd = umat_mul_uk(c_blk, sig_mat(b_blk))
        p = umat_sub(umat_zero(len(eye), len(eye)), r_m)
        p = umat_sub(p, umat_known(eye))
        q = umat_sub(l_s, r_s)
        rr = umat_sub(umat_zero(len(eye), len(eye)), r_d)
        s = umat_sub(l_sd, r_sd)
        eqs += umat_equations(umat_add(p, q))
        scaled_p = [[e.mul_known(br) for e in row] for row in p]
        eqs += umat_equations(umat_add(scaled_p, rr))
        eqs += umat_equations(umat_add(umat_add(scaled_p, rr), s))
    sol = linalg.solve(eqs)
    if sol is None:
        return None
    C = MFMorphism(umat_evaluate(c_ee, sol), umat_evaluate(c_oo, sol))
    H = tuple(OddMap(umat_evaluate(hs[name][0], sol),
                     umat_evaluate(hs[name][1], sol))
              for name in ("H0", "H1", "H2", "H3"))
    return C, H


def _solve_elim_k(X, Y, b, r, A, Bm, C, monos):
    def sig(mx):
        return _mat_apply(mx, lambda e: _poly_sigma(e, b, r))

    def dlt(mx):
        return _mat_apply(mx, lambda e: _poly_delta(e, b, r))

    ab_ee = mat_add(mat_mul(A.ee, sig(C.ee)), mat_mul(Bm.ee, sig(dlt(C.ee))))
    ab_oo = mat_add(mat_mul(A.oo, sig(C.oo)), mat_mul(Bm.oo, sig(dlt(C.oo))))
    return _solve_homotopy(Y, ab_ee, ab_oo, monos)


# ---------------------------------------------------------------------------
# cohomology of matrix factorisations of zero
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GradedVectorSpace:
    """Cohomology of a normalized word of zero potential.

    pairs: thetas of collapsed/remaining [0,0] factors (None when ungraded);
    the block is a polynomial ring on `free_vars` placed in `parity` with
    bidegree offset `block_theta` on top of the word twist.
    """

    pairs: tuple
    parity: int
    free_vars: tuple
    twist: Optional[Bidegree]
    block_theta: Optional[Bidegree]

    @property
    def graded(self) -> bool:
        return self.twist is not None

    def counts(self):
        """(even generators, odd generators, number of free variables)."""
        total = 2 ** len(self.pairs)
        if total == 1:
            even_gens, odd_gens = 1, 0
        else:
            even_gens = odd_gens = total // 2
        if self.parity % 2:
            even_gens, odd_gens = odd_gens, even_gens
        return even_gens, odd_gens, len(self.free_vars)

    def series(self) -> HilbertSeries:
        """Paper-normalised series: pairs times t^twist over the free ring;
        the block's parity and theta offset are reported separately."""
        if not self.graded:
            raise OracleError("series requires graded mode")
        out = HilbertSeries.monomial(0, self.twist.r, self.twist.q)
        for th in self.pairs:
            out = out * HilbertSeries.pair(th)
        den = []
        for v in self.free_vars:
            if v.grade is None:
                raise OracleError(f"ungraded free variable {v}")
            den.append((v.grade.r, v.grade.q))
        return HilbertSeries(out.num, tuple(sorted(list(out.den) + den)))

    def raw_series(self) -> HilbertSeries:
        """Series with the block's parity and theta offset left in place."""
        base = self.series()
        return base.scale(self.parity % 2, self.block_theta.r, self.block_theta.q)


def cohomology_of_zero(w: KoszulWord, ambient=None,
                       extra_pairs: Sequence = ()) -> GradedVectorSpace:
    """Read off the cohomology of a normalized word of zero potential.

    Every factor must be [l, 0], [0, l] or [0, 0] with l a variable
    difference or a single variable; each [l, *] kills one free variable of
    the ambient ring, each [0,0] contributes a C + C[1] pair.
    `extra_pairs` takes the FreeSummandLog entries of a prior normalize run.
    """
    if not w.potential().is_zero():
        raise OracleError("nonzero potential")
    ambient = set(ambient if ambient is not None else w.variables())
    killed: list = []
    subs: dict = {}
    parity = w.shift % 2
    theta = Bidegree(0, 0) if w.graded else None
    pairs = [fs.theta if hasattr(fs, "theta") else fs for fs in extra_pairs]
    for f in w.factors:
        if not (f.p.is_zero() or f.q.is_zero()):
            raise OracleError(f"factor {f} is not in normal form")
        l = f.p if not f.p.is_zero() else f.q
        l = l.substitute(subs)
        if l.is_zero():
            # the relation became trivial in the quotient: a free pair
            pairs.append(f.theta)
            continue
        target = _kill_target(l)
        if target is None:
            raise OracleError(f"factor entry {l} is not a variable difference")
        if target in killed or target not in ambient:
            raise OracleError(f"variable {target} not free to quotient by")
        killed.append(target)
        # target = rest must hold in the quotient ring from here on
        rest = poly(target) - l if l.terms.get(((target, 1),)) == 1 \
            else poly(target) + l
        subs[target] = rest
        subs = {v: p.substitute({target: rest}) for v, p in subs.items()}
        subs[target] = rest
        if not f.q.is_zero():
            continue  # [0, l]: the block stays in the even slot
        parity += 1
        if w.graded:
            theta = theta + f.theta
    free = tuple(sorted((v for v in ambient if v not in killed),
                        key=lambda v: v.key))
    return GradedVectorSpace(tuple(pairs), parity % 2, free, w.twist, theta)


def _kill_target(l: Polynomial):
    """The variable a [l, 0]/[0, l] factor quotients away."""
    terms = list(l.terms.items())
    if len(terms) == 1:
        (m, c), = terms
        if len(m) == 1 and m[0][1] == 1 and abs(c) == 1:
            return m[0][0]
        return None
    if len(terms) == 2:
        vs = []
        for m, c in terms:
            if len(m) != 1 or m[0][1] != 1 or abs(c) != 1:
                return None
            vs.append((m[0][0], c))
        (v1, c1), (v2, c2) = vs
        if c1 + c2 != 0:
            return None
        # kill the larger-keyed variable into the smaller, deterministically
        return v1 if v1.key > v2.key else v2
    return None


# ---------------------------------------------------------------------------
# brute-force degree-slice cohomology (the independent cross-check)
# ---------------------------------------------------------------------------

def slice_cohomology(w: KoszulWord, ambient, max_degree: int) -> dict:
    """Kernel/image dimensions of the word's differential per degree slice.

    Requires every factor entry to be homogeneous of total degree 1 (true
    for the normalized words this cross-checks), so the differential maps a
    slice into the next one and cohomology splits slice by slice.  Returns
    {(parity, slice) -> dim}; slices are (r, q) bidegrees in graded mode and
    total degrees otherwise, reported up to `max_degree` in total degree.
    """
    if not w.potential().is_zero():
        raise OracleError("nonzero potential")
    for f in w.factors:
        for e in (f.p, f.q):
            if not e.is_zero() and e.total_degree() != 1:
                raise OracleError("slice check needs linear entries")
    ambient = sorted(set(ambient), key=lambda v: v.key)
    k = len(w.factors)
    basis_parity = [(bin(s).count("1") + w.shift) % 2 for s in range(1 << k)]
    basis_theta = []
    if w.graded:
        for s in range(1 << k):
            th = w.twist
            for i in range(k):
                if s & (1 << i):
                    th = th + w.factors[i].theta
            basis_theta.append(th)

    # basis to one degree beyond the report window, so images are not
    # truncated at the top slice
    monos = monomials_upto(ambient, max_degree + 1)

    def mono_deg(m):
        return sum(e for _, e in m)

    index = {}
    slots = []
    for s in range(1 << k):
        for m in monos:
            index[(s, m)] = len(slots)
            slots.append((s, m))

    from .poly import _mono_mul
    cols = {}
    for (s, m) in slots:
        col: dict = {}
        for i in range(k):
            bit = 1 << i
            sign = Fraction(-1) ** bin(s & (bit - 1)).count("1")
            f = w.factors[i]
            entry_targets = []
            if not (s & bit) and not f.p.is_zero():
                entry_targets.append((s | bit, f.p))
            if (s & bit) and not f.q.is_zero():
                entry_targets.append((s & ~bit, f.q))
            for t, entry in entry_targets:
                for mm, c in entry.terms.items():
                    key = (t, _mono_mul(m, mm))
                    if key in index:
                        col[index[key]] = col.get(index[key], Fraction(0)) + sign * c
        cols[index[(s, m)]] = {kk: v for kk, v in col.items() if v != 0}

    def slot_slice(slot):
        s, m = slot
        if w.graded:
            bd = basis_theta[s]
            for v, e in m:
                bd = bd + v.grade * e
            return (bd.r, bd.q)
        return mono_deg(m)

    groups: dict = {}
    for idx, slot in enumerate(slots):
        key = (basis_parity[slot[0]], slot_slice(slot), mono_deg(slot[1]))
        groups.setdefault(key[:2], []).append(idx)

    def rank_of(col_indices, row_filter):
        matrix_rows: dict = {}
        for jpos, j in enumerate(col_indices):
            for i, v in cols[j].items():
                if i in row_filter:
                    matrix_rows.setdefault(i, {})[jpos] = v
        pivots, _, _ = linalg.rref([(r, Fraction(0))
                                    for r in matrix_rows.values()])
        return len(pivots)

    def shift_slice(sl, step):
        if w.graded:
            return (sl[0] + step, sl[1])
        return sl + step

    out = {}
    for (par, sl), idxs in sorted(groups.items()):
        degs = {mono_deg(slots[i][1]) for i in idxs}
        if max(degs) > max_degree:
            continue  # boundary slice, image data incomplete
        tgt_rows = set(groups.get((1 - par, shift_slice(sl, 1)), []))
        rank_here = rank_of(idxs, tgt_rows)
        src_cols = groups.get((1 - par, shift_slice(sl, -1)), [])
        rank_in = rank_of(src_cols, set(idxs))
        out[(par, sl)] = len(idxs) - rank_here - rank_in
    return out
