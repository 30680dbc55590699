"""Exact generating functions in s (parity), t (R-charge), u (flavour).

A series is a Laurent polynomial numerator over a multiset of geometric
factors (1 - t^r u^q).  Exponents of t, u are exact rationals; s exponents
are integers.  Equality is decided by cross-multiplication, never by
floating-point or truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Tuple

from .poly import Bidegree

Term = Tuple[int, Fraction, Fraction]  # (s-exponent, t-exponent, u-exponent)


def _norm_num(num: Mapping[Term, int]) -> tuple:
    items = tuple(sorted((k, r, q, c) for (k, r, q), c in num.items() if c != 0))
    return items


@dataclass(frozen=True)
class HilbertSeries:
    """numerator / prod_{(r,q) in den} (1 - t^r u^q)."""

    num: tuple  # sorted ((s, r, q, coeff), ...)
    den: tuple  # sorted ((r, q), ...) with multiplicity

    @staticmethod
    def make(num: Mapping[Term, int], den: Iterable[Tuple[Fraction, Fraction]] = ()):
        return HilbertSeries(_norm_num(num), tuple(sorted(den)))

    @staticmethod
    def one() -> "HilbertSeries":
        return HilbertSeries.make({(0, Fraction(0), Fraction(0)): 1})

    @staticmethod
    def monomial(s: int, r, q, coeff: int = 1) -> "HilbertSeries":
        return HilbertSeries.make({(s, Fraction(r), Fraction(q)): coeff})

    @staticmethod
    def pair(theta: Bidegree) -> "HilbertSeries":
        """1 + s * t^r u^q, the series of C + C[1] twisted by theta."""
        return HilbertSeries.make({
            (0, Fraction(0), Fraction(0)): 1,
            (1, theta.r, theta.q): 1,
        })

    # -- numerator dictionaries ------------------------------------------
    def _numdict(self) -> dict:
        return {(k, r, q): c for (k, r, q, c) in self.num}

    @staticmethod
    def _mul_num(a: dict, b: dict) -> dict:
        out: dict = {}
        for (k1, r1, q1), c1 in a.items():
            for (k2, r2, q2), c2 in b.items():
                key = (k1 + k2, r1 + r2, q1 + q2)
                out[key] = out.get(key, 0) + c1 * c2
        return {k: c for k, c in out.items() if c != 0}

    def __mul__(self, other: "HilbertSeries") -> "HilbertSeries":
        return HilbertSeries(_norm_num(self._mul_num(self._numdict(),
                                                     other._numdict())),
                             tuple(sorted(self.den + other.den)))

    def __pow__(self, g: int) -> "HilbertSeries":
        if g < 0:
            raise ValueError("negative power; use explicit denominators")
        out = HilbertSeries.one()
        for _ in range(g):
            out = out * self
        return out

    def __add__(self, other: "HilbertSeries") -> "HilbertSeries":
        if self.den != other.den:
            raise ValueError("addition requires a common denominator")
        a, b = self._numdict(), other._numdict()
        for k, c in b.items():
            a[k] = a.get(k, 0) + c
        return HilbertSeries(_norm_num(a), self.den)

    def scale(self, s: int, r, q) -> "HilbertSeries":
        return self * HilbertSeries.monomial(s, r, q)

    # -- comparison --------------------------------------------------------
    def _cleared(self, extra_den: tuple) -> dict:
        """Numerator after multiplying through by prod(1 - t^r u^q) over
        `extra_den`."""
        out = self._numdict()
        for (r, q) in extra_den:
            factor = {(0, Fraction(0), Fraction(0)): 1, (0, r, q): -1}
            out = self._mul_num(out, factor)
        return out

    def equals(self, other: "HilbertSeries") -> bool:
        """Exact equality of rational functions."""
        d1, d2 = list(self.den), list(other.den)
        # drop common factors first
        common = []
        for f in list(d1):
            if f in d2:
                d1.remove(f)
                d2.remove(f)
                common.append(f)
        left = self._cleared(tuple(d2))
        right = other._cleared(tuple(d1))
        return left == right

    # -- substitutions -------------------------------------------------------
    def specialize_s_to_minus_t(self) -> "HilbertSeries":
        """s -> -t: fold parity into R-charge with alternating signs."""
        out: dict = {}
        for (k, r, q, c) in self.num:
            key = (0, r + k, q)
            out[key] = out.get(key, 0) + c * (-1) ** k
        return HilbertSeries(_norm_num(out), self.den)

    # -- expansion ------------------------------------------------------------
    def coefficients(self, max_r: Fraction) -> dict:
        """Expand the geometric factors and collect all terms with
        t-exponent <= max_r.  Requires every denominator factor to have
        r > 0 (true for the charges in use)."""
        max_r = Fraction(max_r)
        terms = self._numdict()
        for (r, q) in self.den:
            if r <= 0:
                raise ValueError("cannot expand a factor with non-positive r")
            new: dict = {}
            for (k0, r0, q0), c in terms.items():
                j = 0
                while r0 + j * r <= max_r:
                    key = (k0, r0 + j * r, q0 + j * q)
                    new[key] = new.get(key, 0) + c
                    j += 1
            terms = new
        return {k: c for k, c in terms.items() if c != 0 and k[1] <= max_r}

    # -- output -----------------------------------------------------------------
    @staticmethod
    def _monomial_str(k: int, r: Fraction, q: Fraction) -> str:
        parts = []
        if k:
            parts.append("s" if k == 1 else f"s^{k}")
        for sym, e in (("t", r), ("u", q)):
            if e:
                parts.append(sym if e == 1 else f"{sym}^{e}")
        return "*".join(parts) if parts else "1"

    def __str__(self) -> str:
        if not self.num:
            return "0"
        bits = []
        for (k, r, q, c) in self.num:
            m = self._monomial_str(k, r, q)
            if c == 1:
                bits.append(m)
            elif c == -1:
                bits.append(f"-{m}")
            else:
                bits.append(f"{c}*{m}")
        num = " + ".join(bits).replace("+ -", "- ")
        if not self.den:
            return num
        den = "*".join(f"(1 - {self._monomial_str(0, r, q)})" for (r, q) in self.den)
        if len(self.num) > 1:
            num = f"({num})"
        return f"{num} / ({den})" if len(self.den) > 1 else f"{num} / {den}"

    def to_json(self) -> dict:
        return {
            "numerator-terms": [
                {"s": k, "t": str(r), "u": str(q), "coeff": c}
                for (k, r, q, c) in self.num
            ],
            "denominator-factors": [{"t": str(r), "u": str(q)} for (r, q) in self.den],
        }


def product(factors: Iterable[HilbertSeries]) -> HilbertSeries:
    out = HilbertSeries.one()
    for f in factors:
        out = out * f
    return out


@dataclass(frozen=True)
class FactoredSeries:
    """prod (1 - t^r u^q)^e times a monomial; a printable closed form."""

    factors: tuple  # ((r, q, exponent), ...) with integer exponents
    mono: Term = (0, Fraction(0), Fraction(0))
    coeff: int = 1

    def as_series(self) -> HilbertSeries:
        num = {self.mono: self.coeff}
        den = []
        s = HilbertSeries.make(num)
        for (r, q, e) in self.factors:
            if e >= 0:
                f = HilbertSeries.make({(0, Fraction(0), Fraction(0)): 1,
                                        (0, r, q): -1})
                s = product([s] + [f] * e)
            else:
                den.extend([(r, q)] * (-e))
        return HilbertSeries(s.num, tuple(sorted(list(s.den) + den)))

    def __str__(self) -> str:
        bits = []
        k, r, q = self.mono
        head = HilbertSeries._monomial_str(k, r, q)
        if self.coeff != 1:
            head = f"{self.coeff}*{head}" if head != "1" else str(self.coeff)
        for (fr, fq, e) in self.factors:
            base = f"(1 - {HilbertSeries._monomial_str(0, fr, fq)})"
            if e == 1:
                bits.append(base)
            elif e != 0:
                bits.append(f"{base}^{e}")
        body = "*".join(bits) if bits else "1"
        if head != "1":
            body = f"{body}*{head}" if bits else head
        return body
