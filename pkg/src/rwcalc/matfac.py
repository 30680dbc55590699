"""Matrix factorisations: dense finite-rank form and Koszul words.

A Koszul word is an ordered tensor of rank-1 factors [p, q] together with a
global parity shift and a bigrading twist; it is the working representation
of every 2-morphism in the calculus.  Dense expansion happens only inside
consistency checks and the homotopy oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .poly import (
    Bidegree, Polynomial, Variable, ZERO_DEG, DEG_D, poly, _as_poly,
)

Matrix = tuple  # tuple of tuples of Polynomial


def mat(rows) -> Matrix:
    return tuple(tuple(_as_poly(e) for e in row) for row in rows)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError("shape mismatch")
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = Polynomial.zero()
            for t in range(k):
                s = s + a[i][t] * b[t][j]
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, a: Matrix) -> Matrix:
    c = _as_poly(c)
    return tuple(tuple(c * x for x in row) for row in a)


def mat_eye(n: int, value=1) -> Matrix:
    return tuple(tuple(_as_poly(value if i == j else 0) for j in range(n))
                 for i in range(n))


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return len(a) == len(b) and all(ra == rb for ra, rb in zip(a, b))


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a differential / grading check."""

    ok: bool
    failures: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class MatrixFactorisation:
    """(X, d) with d^2 = potential * id, split into the two odd blocks.

    d0 maps the even part to the odd part, d1 the odd part back.  In graded
    mode `even_degrees`/`odd_degrees` give each basis element's bidegree and
    d must be homogeneous of bidegree (1,0).
    """

    potential: Polynomial
    d0: Matrix  # even -> odd, shape (odd_rank, even_rank)
    d1: Matrix  # odd -> even, shape (even_rank, odd_rank)
    even_degrees: Optional[tuple] = None
    odd_degrees: Optional[tuple] = None

    @property
    def even_rank(self) -> int:
        return len(self.d1)

    @property
    def odd_rank(self) -> int:
        return len(self.d0)

    def shift(self) -> "MatrixFactorisation":
        """[1]: swap the parts and negate the differential."""
        return MatrixFactorisation(
            self.potential,
            mat_scale(-1, self.d1), mat_scale(-1, self.d0),
            self.odd_degrees, self.even_degrees)

    def check(self) -> CheckReport:
        """Verify d^2 = potential * id entry-wise, plus gradings if present."""
        failures = []
        f = self.potential
        for name, prod, n in (
            ("odd*even", mat_mul(self.d1, self.d0), self.even_rank),
            ("even*odd", mat_mul(self.d0, self.d1), self.odd_rank),
        ):
            want = mat_eye(n, f)
            for i in range(n):
                for j in range(n):
                    if prod[i][j] != want[i][j]:
                        failures.append((name, i, j, str(prod[i][j])))
        if self.even_degrees is not None and self.odd_degrees is not None:
            for label, block, rows, cols in (
                ("d0", self.d0, self.odd_degrees, self.even_degrees),
                ("d1", self.d1, self.even_degrees, self.odd_degrees),
            ):
                for i in range(len(block)):
                    for j in range(len(block[i]) if block else 0):
                        e = block[i][j]
                        if e.is_zero():
                            continue
                        want = DEG_D + cols[j] - rows[i]
                        if not e.is_homogeneous(want):
                            failures.append((label + "-degree", i, j, str(e)))
        return CheckReport(not failures, tuple(failures))


@dataclass(frozen=True)
class KoszulFactor:
    """Rank-1 factor [p, q]; d = [[0, q], [p, 0]], a factorisation of p*q.

    `theta` is the bidegree raise of the factor's odd generator; in graded
    mode it is pinned by homogeneity: deg p = (1,0) - theta and
    deg q = (1,0) + theta.  It survives rewrites that zero out p or q.
    """

    p: Polynomial
    q: Polynomial
    theta: Optional[Bidegree] = None

    def potential(self) -> Polynomial:
        return self.p * self.q

    def negate(self) -> "KoszulFactor":
        return KoszulFactor(-self.p, -self.q, self.theta)

    def swapped(self) -> "KoszulFactor":
        return KoszulFactor(self.q, self.p,
                            None if self.theta is None else -self.theta)

    def check_grading(self) -> bool:
        if self.theta is None:
            return True
        return (self.p.is_homogeneous(DEG_D - self.theta)
                and self.q.is_homogeneous(DEG_D + self.theta))

    def __str__(self) -> str:
        s = f"[{self.p}, {self.q}]"
        if self.theta is not None and not self.theta.is_zero():
            s += f"<{self.theta}>"
        return s


def _infer_theta(p: Polynomial, q: Polynomial, graded: bool,
                 theta: Optional[Bidegree]) -> Optional[Bidegree]:
    if not graded:
        return None
    if theta is not None:
        return theta
    if not p.is_zero():
        d = p.bidegree()
        if d is None:
            raise ValueError(f"inhomogeneous factor entry {p}")
        return DEG_D - d
    if not q.is_zero():
        d = q.bidegree()
        if d is None:
            raise ValueError(f"inhomogeneous factor entry {q}")
        return d - DEG_D
    raise ValueError("theta required for a graded [0, 0] factor")


class WordError(ValueError):
    pass


@dataclass(frozen=True)
class KoszulWord:
    """Ordered tensor of Koszul factors with parity shift and twist.

    `internal` lists variables bound inside the word (eliminable); all other
    variables of the factors are external.  `twist` is None in ungraded mode.
    """

    factors: tuple
    shift: int = 0
    twist: Optional[Bidegree] = None
    internal: frozenset = frozenset()

    @property
    def graded(self) -> bool:
        return self.twist is not None

    def __len__(self) -> int:
        return len(self.factors)

    def potential(self) -> Polynomial:
        out = Polynomial.zero()
        for f in self.factors:
            out = out + f.potential()
        return out

    def variables(self) -> frozenset:
        vs: set = set()
        for f in self.factors:
            vs |= f.p.variables() | f.q.variables()
        return frozenset(vs)

    def external_variables(self) -> frozenset:
        return self.variables() - self.internal

    def with_internal(self, extra) -> "KoszulWord":
        return KoszulWord(self.factors, self.shift, self.twist,
                          self.internal | frozenset(extra))

    def replace_factors(self, factors, twist=None, shift=None,
                        internal=None) -> "KoszulWord":
        return KoszulWord(
            tuple(factors),
            self.shift if shift is None else shift % 2,
            self.twist if twist is None else twist,
            self.internal if internal is None else frozenset(internal))

    # -- constructors ---------------------------------------------------
    @staticmethod
    def empty(graded: bool = False) -> "KoszulWord":
        return KoszulWord((), 0, ZERO_DEG if graded else None)

    # -- word-level operations -------------------------------------------
    def tensor(self, other: "KoszulWord", shared=frozenset()) -> "KoszulWord":
        """Concatenate factor lists; shifts and twists add.

        Variables common to both words must be declared in `shared`;
        internal variables may not leak into the other word at all.
        """
        if self.graded != other.graded:
            raise WordError("mixed graded/ungraded tensor")
        clash = (self.variables() & other.variables()) - frozenset(shared)
        if clash:
            raise WordError(f"variable collision in tensor: {sorted(map(str, clash))}")
        if self.internal & other.variables() or other.internal & self.variables():
            raise WordError("internal variable appears in the other word")
        twist = (self.twist + other.twist) if self.graded else None
        return KoszulWord(self.factors + other.factors,
                          (self.shift + other.shift) % 2, twist,
                          self.internal | other.internal)

    def __matmul__(self, other: "KoszulWord") -> "KoszulWord":
        return self.tensor(other)

    def shifted(self, k: int = 1) -> "KoszulWord":
        return self.replace_factors(self.factors, shift=self.shift + k)

    def twisted(self, r, q) -> "KoszulWord":
        if not self.graded:
            raise WordError("twist requires graded mode")
        return self.replace_factors(self.factors, twist=self.twist + Bidegree(r, q))

    def rename(self, mapping) -> "KoszulWord":
        """Rename variables (a Variable -> Variable map)."""
        assignment = {v: poly(w) for v, w in mapping.items()}
        facs = [KoszulFactor(f.p.substitute(assignment),
                             f.q.substitute(assignment), f.theta)
                for f in self.factors]
        internal = frozenset(mapping.get(v, v) for v in self.internal)
        return self.replace_factors(facs, internal=internal)

    # -- expansion --------------------------------------------------------
    def expand(self) -> MatrixFactorisation:
        """Dense differential on the exterior algebra of the factors.

        Basis elements are subsets of factor indices, ordered within each
        parity class by their bitmask (colex); signs follow the
        left-to-right wedge convention.
        """
        k = len(self.factors)
        subsets = list(range(1 << k))
        even = [s for s in subsets if bin(s).count("1") % 2 == 0]
        odd = [s for s in subsets if bin(s).count("1") % 2 == 1]
        if self.shift % 2:
            even, odd = odd, even
        pos_e = {s: i for i, s in enumerate(even)}
        pos_o = {s: i for i, s in enumerate(odd)}

        # an odd global shift negates the differential
        global_sign = Fraction(-1) ** (self.shift % 2)

        def block(src, pos_dst, n_dst):
            rows = [[Polynomial.zero() for _ in src] for _ in range(n_dst)]
            for j, s in enumerate(src):
                for i in range(k):
                    bit = 1 << i
                    sign = global_sign * Fraction(-1) ** bin(s & (bit - 1)).count("1")
                    f = self.factors[i]
                    if not (s & bit):
                        if not f.p.is_zero():
                            t = s | bit
                            rows[pos_dst[t]][j] = rows[pos_dst[t]][j] + sign * f.p
                    else:
                        if not f.q.is_zero():
                            t = s & ~bit
                            rows[pos_dst[t]][j] = rows[pos_dst[t]][j] + sign * f.q
            return tuple(tuple(r) for r in rows)

        d0 = block(even, pos_o, len(odd))
        d1 = block(odd, pos_e, len(even))
        even_degs = odd_degs = None
        if self.graded:
            def degs(ss):
                out = []
                for s in ss:
                    d = self.twist
                    for i in range(k):
                        if s & (1 << i):
                            d = d + self.factors[i].theta
                    out.append(d)
                return tuple(out)
            even_degs, odd_degs = degs(even), degs(odd)
        return MatrixFactorisation(self.potential(), d0, d1, even_degs, odd_degs)

    def check(self) -> CheckReport:
        """d^2 = potential * id on the expansion, plus factor gradings."""
        failures = []
        for i, f in enumerate(self.factors):
            if not f.check_grading():
                failures.append(("factor-degree", i, str(f)))
        rep = self.expand().check()
        return CheckReport(rep.ok and not failures, rep.failures + tuple(failures))

    def __str__(self) -> str:
        body = " (x) ".join(str(f) for f in self.factors) if self.factors else "[]"
        if self.shift % 2:
            body += " [1]"
        if self.graded and not self.twist.is_zero():
            body += " {%s,%s}" % (self.twist.r, self.twist.q)
        return body

    def to_json(self) -> dict:
        out = {
            "factors": [{"p": f.p.to_json(), "q": f.q.to_json()} for f in self.factors],
            "shift": self.shift % 2,
            "internal": sorted(str(v) for v in self.internal),
            "external": sorted(str(v) for v in self.external_variables()),
        }
        if self.graded:
            out["twist"] = {"r": str(self.twist.r), "q": str(self.twist.q)}
            out["theta"] = [{"r": str(f.theta.r), "q": str(f.theta.q)}
                            for f in self.factors]
        return out


def word_from_json(data: dict, graded: bool = False) -> KoszulWord:
    """Rebuild a Koszul word from its JSON form."""
    from .poly import poly_from_json, parse_variable
    graded = graded or "twist" in data
    thetas = None
    if graded and "theta" in data:
        thetas = [Bidegree(t["r"], t["q"]) for t in data["theta"]]
    facs = []
    for i, f in enumerate(data["factors"]):
        p = poly_from_json(f["p"], graded=graded)
        q = poly_from_json(f["q"], graded=graded)
        th = thetas[i] if thetas else _infer_theta(p, q, graded, None)
        facs.append(KoszulFactor(p, q, th if graded else None))
    twist = ZERO_DEG
    if "twist" in data:
        twist = Bidegree(data["twist"]["r"], data["twist"]["q"])
    internal = frozenset(parse_variable(v, graded=graded)
                         for v in data.get("internal", []))
    return KoszulWord(tuple(facs), data.get("shift", 0) % 2,
                      twist if graded else None, internal)


def koszul(p, q, graded: bool = False, theta: Optional[Bidegree] = None) -> KoszulWord:
    """Single-factor word [p, q], a factorisation of p*q."""
    p, q = _as_poly(p), _as_poly(q)
    th = _infer_theta(p, q, graded, theta)
    return KoszulWord((KoszulFactor(p, q, th),), 0,
                      ZERO_DEG if graded else None)


def koszul_multi(ps: Sequence, qs: Sequence, graded: bool = False,
                 thetas: Optional[Sequence[Optional[Bidegree]]] = None) -> KoszulWord:
    """Word [p, q] = (x)_i [p_i, q_i]; potential sum_i p_i q_i."""
    if len(ps) != len(qs):
        raise WordError("p and q lists differ in length")
    if thetas is not None and len(thetas) != len(ps):
        raise WordError("theta list length mismatch")
    facs = []
    for i, (p, q) in enumerate(zip(ps, qs)):
        p, q = _as_poly(p), _as_poly(q)
        th = _infer_theta(p, q, graded, thetas[i] if thetas else None)
        facs.append(KoszulFactor(p, q, th))
    return KoszulWord(tuple(facs), 0, ZERO_DEG if graded else None)


def unit_mf(w: Polynomial, xs: Sequence[Variable], xps: Sequence[Variable],
            graded: bool = False) -> KoszulWord:
    """The unit word for potential w: q_i = xp_i - x_i, p_i the difference
    quotients; its potential is w(xp) - w(x).  Spectator variables of w
    simply ride along inside the p_i."""
    from .poly import divided_difference, vdiff
    ps, qs = [], []
    for i in range(len(xs)):
        ps.append(divided_difference(w, i, xs, xps))
        qs.append(vdiff(xps[i], xs[i]))
    thetas = None
    if graded:
        thetas = [xs[i].grade - DEG_D for i in range(len(xs))]
    return koszul_multi(ps, qs, graded=graded, thetas=thetas)


def check_mf(x) -> CheckReport:
    """Verify d^2 = potential * id (and gradings) for a word or expansion."""
    return x.check()
