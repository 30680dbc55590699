"""Exact multivariate polynomials over Q with optionally bigraded variables.

Everything downstream (Koszul words, rewriting, state spaces) is built on
this module.  Coefficients are `fractions.Fraction`, never floats; all
operations are pure and all values are immutable and hashable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

Rational = Union[int, Fraction, str]


def _frac(x: Rational) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


@dataclass(frozen=True, order=True)
class Bidegree:
    """A (R-charge, flavour-charge) pair, exact rationals."""

    r: Fraction
    q: Fraction

    def __init__(self, r: Rational, q: Rational):
        object.__setattr__(self, "r", _frac(r))
        object.__setattr__(self, "q", _frac(q))

    def __add__(self, other: "Bidegree") -> "Bidegree":
        return Bidegree(self.r + other.r, self.q + other.q)

    def __sub__(self, other: "Bidegree") -> "Bidegree":
        return Bidegree(self.r - other.r, self.q - other.q)

    def __neg__(self) -> "Bidegree":
        return Bidegree(-self.r, -self.q)

    def __mul__(self, k: Rational) -> "Bidegree":
        return Bidegree(self.r * _frac(k), self.q * _frac(k))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.r == 0 and self.q == 0

    def __str__(self) -> str:
        return f"({self.r},{self.q})"


ZERO_DEG = Bidegree(0, 0)
DEG_X = Bidegree(1, -1)  # bulk variables
DEG_A = Bidegree(1, 1)   # defect variables
DEG_W = Bidegree(2, 0)   # potentials
DEG_D = Bidegree(1, 0)   # differentials


@dataclass(frozen=True)
class Variable:
    """A named variable; `copy` counts primes (x, x', x'', ...).

    Two variables are interchangeable iff name, copy and grade all agree;
    fresh copies are made by bumping `copy`, never by string mangling.
    """

    name: str
    copy: int = 0
    grade: Optional[Bidegree] = None

    @property
    def key(self) -> tuple:
        return (self.name, self.copy)

    def primed(self, k: int = 1) -> "Variable":
        return Variable(self.name, self.copy + k, self.grade)

    def with_copy(self, c: int) -> "Variable":
        return Variable(self.name, c, self.grade)

    def __str__(self) -> str:
        if self.copy <= 3:
            return self.name + "'" * self.copy
        return f"{self.name}({self.copy})"

    __repr__ = __str__


def varlist(name: str, n: int, copy: int = 0, grade: Optional[Bidegree] = None) -> tuple:
    """The list (name1, ..., name_n), all at the same copy index."""
    return tuple(Variable(f"{name}{i}", copy, grade) for i in range(1, n + 1))


# A monomial is a sorted tuple of (Variable, positive exponent) pairs.
Monomial = tuple


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    d = {}
    for v, e in m1:
        d[v] = d.get(v, 0) + e
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items(), key=lambda t: t[0].key))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_sort_key(m: Monomial):
    # graded lexicographic on (name, copy)
    return (_mono_degree(m), tuple((v.key, e) for v, e in m))


class Polynomial:
    """Polynomial with Fraction coefficients in canonical form.

    Terms map monomials to nonzero coefficients; arithmetic re-canonicalises.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction] = ()):  # type: ignore[assignment]
        clean = {m: c for m, c in dict(terms).items() if c != 0}
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):  # immutable
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial({})

    @staticmethod
    def const(c: Rational) -> "Polynomial":
        c = _frac(c)
        return Polynomial({(): c} if c != 0 else {})

    @staticmethod
    def var(v: Variable) -> "Polynomial":
        return Polynomial({((v, 1),): Fraction(1)})

    # -- ring operations ----------------------------------------------
    def __add__(self, other) -> "Polynomial":
        other = _as_poly(other)
        d = dict(self.terms)
        for m, c in other.terms.items():
            d[m] = d.get(m, Fraction(0)) + c
        return Polynomial(d)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Polynomial":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = _as_poly(other)
        d: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                d[m] = d.get(m, Fraction(0)) + c1 * c2
        return Polynomial(d)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash(frozenset(self.terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def is_zero(self) -> bool:
        return not self.terms

    # -- structure ----------------------------------------------------
    def variables(self) -> frozenset:
        return frozenset(v for m in self.terms for v, _ in m)

    def total_degree(self) -> int:
        return max((_mono_degree(m) for m in self.terms), default=0)

    def coefficient(self, v: Variable, k: int) -> "Polynomial":
        """Coefficient of v**k, a polynomial in the remaining variables."""
        d: dict = {}
        for m, c in self.terms.items():
            e = dict(m).get(v, 0)
            if e == k:
                rest = tuple((w, f) for w, f in m if w != v)
                d[rest] = d.get(rest, Fraction(0)) + c
        return Polynomial(d)

    def degree_in(self, v: Variable) -> int:
        return max((dict(m).get(v, 0) for m in self.terms), default=0)

    def constant_coefficient(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def leading_coefficient(self) -> Fraction:
        """Coefficient of the largest monomial in graded-lex order."""
        if not self.terms:
            return Fraction(0)
        m = max(self.terms, key=_mono_sort_key)
        return self.terms[m]

    def substitute(self, assignment: Mapping[Variable, "Polynomial"]) -> "Polynomial":
        """Simultaneous substitution; values may be polynomials."""
        if not assignment:
            return self
        out = Polynomial.zero()
        cache: dict = {}
        for m, c in self.terms.items():
            term = Polynomial.const(c)
            for v, e in m:
                if v in assignment:
                    base = _as_poly(assignment[v])
                else:
                    base = Polynomial.var(v)
                pw = cache.get((v, e))
                if pw is None:
                    pw = base ** e
                    cache[(v, e)] = pw
                term = term * pw
            out = out + term
        return out

    def partial(self, v: Variable) -> "Polynomial":
        """Formal partial derivative."""
        d: dict = {}
        for m, c in self.terms.items():
            e = dict(m).get(v, 0)
            if e == 0:
                continue
            rest = [(w, f) for w, f in m if w != v]
            if e > 1:
                rest.append((v, e - 1))
            mm = tuple(sorted(rest, key=lambda t: t[0].key))
            d[mm] = d.get(mm, Fraction(0)) + c * e
        return Polynomial(d)

    # -- grading --------------------------------------------------------
    def bidegree(self) -> Optional[Bidegree]:
        """Common bidegree of all terms, or None if inhomogeneous.

        All variables must carry grades; the zero polynomial counts as
        homogeneous of degree (0,0).
        """
        deg: Optional[Bidegree] = None
        for m in self.terms:
            d = ZERO_DEG
            for v, e in m:
                if v.grade is None:
                    raise ValueError(f"ungraded variable {v} in graded computation")
                d = d + v.grade * e
            if deg is None:
                deg = d
            elif deg != d:
                return None
        return deg if deg is not None else ZERO_DEG

    def is_homogeneous(self, deg: Bidegree) -> bool:
        """True if every term has bidegree `deg` (vacuously for 0)."""
        if self.is_zero():
            return True
        return self.bidegree() == deg

    # -- output ---------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_mono_sort_key, reverse=True):
            c = self.terms[m]
            factors = []
            for v, e in m:
                factors.append(str(v) if e == 1 else f"{v}^{e}")
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(c))] + factors)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __repr__ = __str__

    def to_json(self) -> list:
        return [
            {"coeff": str(c), "exps": [[str(v), e] for v, e in m]}
            for m, c in sorted(self.terms.items(), key=lambda t: _mono_sort_key(t[0]))
        ]


def _as_poly(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, Variable):
        return Polynomial.var(x)
    if isinstance(x, (int, Fraction)):
        return Polynomial.const(x)
    raise TypeError(f"cannot coerce {x!r} to Polynomial")


def poly(x) -> Polynomial:
    """Coerce ints, Fractions and Variables to Polynomial."""
    return _as_poly(x)


def lin(*pairs) -> Polynomial:
    """Sum of c*v terms: lin((1, v), (-1, w)) = v - w."""
    out = Polynomial.zero()
    for c, v in pairs:
        out = out + Polynomial.const(c) * Polynomial.var(v)
    return out


def vdiff(v: Variable, w: Variable) -> Polynomial:
    """The difference v - w."""
    return Polynomial.var(v) - Polynomial.var(w)


def dot(avars: Sequence[Variable], diffs: Sequence[Polynomial]) -> Polynomial:
    """Pairing sum_i a_i * d_i."""
    if len(avars) != len(diffs):
        raise ValueError("length mismatch")
    out = Polynomial.zero()
    for a, d in zip(avars, diffs):
        out = out + Polynomial.var(a) * d
    return out


def divide_linear(p: Polynomial, u: Variable, v: Variable) -> Polynomial:
    """Exact quotient p / (u - v); raises if the remainder p|_{u=v} != 0.

    Uses u^k - v^k = (u - v) * sum_j u^j v^(k-1-j), so no general division
    is needed.
    """
    rem = p.substitute({u: Polynomial.var(v)})
    if not rem.is_zero():
        raise ArithmeticError(f"{p} is not divisible by {u} - {v}")
    out = Polynomial.zero()
    for k in range(1, p.degree_in(u) + 1):
        ck = p.coefficient(u, k)
        if ck.is_zero():
            continue
        geom = Polynomial.zero()
        for j in range(k):
            geom = geom + Polynomial.var(u) ** j * Polynomial.var(v) ** (k - 1 - j)
        out = out + ck * geom
    return out


def divided_difference(w: Polynomial, i: int, xs: Sequence[Variable],
                       xps: Sequence[Variable]) -> Polynomial:
    """The i-th difference quotient of w along xs -> xps (0-based i).

    Returns the exact quotient q with
    (xps[i] - xs[i]) * q = w(x_<i, xp_>=i) - w(x_<=i, xp_>i).
    """
    if len(xs) != len(xps):
        raise ValueError("length mismatch")
    hi = w.substitute({xs[j]: Polynomial.var(xps[j]) for j in range(i, len(xs))})
    lo = w.substitute({xs[j]: Polynomial.var(xps[j]) for j in range(i + 1, len(xs))})
    return divide_linear(hi - lo, xps[i], xs[i])


# ---------------------------------------------------------------------------
# textual syntax: a1*(x1' - x1) + 2*y2^3 ; primes bump the copy index
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)(?P<primes>'*)"
    r"(?:\((?P<copy>\d+)\))?|(?P<op>[-+*^()]))"
)


class PolyParseError(ValueError):
    pass


class _Parser:
    def __init__(self, text: str, grades: Optional[Mapping[str, Bidegree]] = None,
                 default_grade=None):
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                if text[pos:].strip():
                    raise PolyParseError(f"bad token at: {text[pos:]!r}")
                break
            self.tokens.append(m)
            pos = m.end()
        self.i = 0
        self.grades = grades or {}
        self.default_grade = default_grade

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self):
        t = self.peek()
        if t is None:
            raise PolyParseError("unexpected end of input")
        self.i += 1
        return t

    def parse(self) -> Polynomial:
        p = self.expr()
        if self.peek() is not None:
            raise PolyParseError(f"trailing input at token {self.i}")
        return p

    def expr(self) -> Polynomial:
        t = self.peek()
        neg = False
        if t is not None and t.group("op") in ("+", "-"):
            self.next()
            neg = t.group("op") == "-"
        p = self.term()
        if neg:
            p = -p
        while True:
            t = self.peek()
            if t is None or t.group("op") not in ("+", "-"):
                return p
            self.next()
            q = self.term()
            p = p - q if t.group("op") == "-" else p + q

    def term(self) -> Polynomial:
        p = self.power()
        while True:
            t = self.peek()
            if t is None:
                return p
            if t.group("op") == "*":
                self.next()
                p = p * self.power()
            elif t.group("num") or t.group("name") or t.group("op") == "(":
                # implicit multiplication: 2x, a(x - y)
                p = p * self.power()
            else:
                return p

    def power(self) -> Polynomial:
        p = self.atom()
        t = self.peek()
        if t is not None and t.group("op") == "^":
            self.next()
            e = self.next()
            if not e.group("num") or "/" in e.group("num"):
                raise PolyParseError("exponent must be a natural number")
            p = p ** int(e.group("num"))
        return p

    def atom(self) -> Polynomial:
        t = self.next()
        if t.group("num"):
            return Polynomial.const(Fraction(t.group("num")))
        if t.group("name"):
            name = t.group("name")
            copy = len(t.group("primes") or "")
            if t.group("copy"):
                copy += int(t.group("copy"))
            grade = self.grades.get(name)
            if grade is None and self.default_grade is not None:
                grade = self.default_grade(name)
            return Polynomial.var(Variable(name, copy, grade))
        if t.group("op") == "(":
            p = self.expr()
            t = self.next()
            if t.group("op") != ")":
                raise PolyParseError("expected ')'")
            return p
        if t.group("op") == "-":
            return -self.atom()
        raise PolyParseError(f"unexpected token {t.group(0)!r}")


def default_grade_rule(name: str) -> Bidegree:
    """x-/y-type names get (1,-1), everything else (1,1)."""
    return DEG_X if name[0] in "xyz" else DEG_A


def parse_poly(text: str, graded: bool = False,
               grades: Optional[Mapping[str, Bidegree]] = None) -> Polynomial:
    """Parse the textual polynomial syntax; primes are copy increments."""
    rule = default_grade_rule if graded else None
    return _Parser(text, grades=grades, default_grade=rule).parse()


def parse_variable(text: str, graded: bool = False) -> Variable:
    """Parse a single variable token like x1'' or a2(4)."""
    p = parse_poly(text, graded=graded)
    if len(p.terms) != 1:
        raise PolyParseError(f"not a variable: {text!r}")
    (m, c), = p.terms.items()
    if c != 1 or len(m) != 1 or m[0][1] != 1:
        raise PolyParseError(f"not a variable: {text!r}")
    return m[0][0]


def poly_from_json(data: Iterable[Mapping], graded: bool = False) -> Polynomial:
    d: dict = {}
    for item in data:
        mono = tuple(sorted(((parse_variable(name, graded=graded), e)
                             for name, e in item["exps"]),
                            key=lambda t: t[0].key))
        d[mono] = d.get(mono, Fraction(0)) + Fraction(item["coeff"])
    return Polynomial(d)


def bidegree_of(p: Polynomial) -> Optional[Bidegree]:
    """Common bidegree of all terms of p, or None when inhomogeneous."""
    return p.bidegree()
