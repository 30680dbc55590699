"""Sparse exact linear algebra over Q and linear-unknown polynomials.

Used by the homotopy oracle: matrix entries are parametrised by monomials
with unknown rational coefficients, producing exact linear systems.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Tuple

from .poly import Polynomial, _as_poly

Row = Dict[int, Fraction]


def rref(equations: List[Tuple[Row, Fraction]]):
    """Reduced row echelon form of a sparse system.

    Returns (pivots, reduced_rows, consistent) where pivots maps a column to
    its row index in reduced_rows and each reduced row is (coeffs, rhs) with
    a unit pivot entry.
    """
    pivots: Dict[int, int] = {}
    rows: List[Tuple[Row, Fraction]] = []
    for coeffs, rhs in equations:
        coeffs = dict(coeffs)
        # reduce against existing pivots
        while True:
            hit = None
            for col in coeffs:
                if col in pivots:
                    hit = col
                    break
            if hit is None:
                break
            factor = coeffs[hit]
            prow, prhs = rows[pivots[hit]]
            for c, v in prow.items():
                coeffs[c] = coeffs.get(c, Fraction(0)) - factor * v
            coeffs = {c: v for c, v in coeffs.items() if v != 0}
            rhs = rhs - factor * prhs
        if not coeffs:
            if rhs != 0:
                return pivots, rows, False
            continue
        col = min(coeffs)
        inv = Fraction(1) / coeffs[col]
        coeffs = {c: v * inv for c, v in coeffs.items()}
        rhs = rhs * inv
        # eliminate the new pivot from earlier rows
        for idx, (r, rr) in enumerate(rows):
            if col in r:
                f = r[col]
                merged = dict(r)
                for c, v in coeffs.items():
                    merged[c] = merged.get(c, Fraction(0)) - f * v
                rows[idx] = ({c: v for c, v in merged.items() if v != 0}, rr - f * rhs)
        rows.append((coeffs, rhs))
        pivots[col] = len(rows) - 1
    return pivots, rows, True


def solve(equations: List[Tuple[Row, Fraction]]) -> Optional[Row]:
    """A particular solution (free unknowns set to 0), or None."""
    pivots, rows, ok = rref(equations)
    if not ok:
        return None
    out: Row = {}
    for col, idx in pivots.items():
        coeffs, rhs = rows[idx]
        # free unknowns are zero, so the pivot value is just rhs
        out[col] = rhs
    return {c: v for c, v in out.items() if v != 0}


def nullspace(equations: List[Tuple[Row, Fraction]], n_unknowns: int,
              max_vectors: int = 64) -> List[Row]:
    """Basis vectors of the homogeneous solution space (rhs ignored)."""
    hom = [(coeffs, Fraction(0)) for coeffs, _ in equations]
    pivots, rows, ok = rref(hom)
    if not ok:
        return []
    free = [c for c in range(n_unknowns) if c not in pivots]
    basis = []
    for f in free[:max_vectors]:
        vec: Row = {f: Fraction(1)}
        for col, idx in pivots.items():
            coeffs, _ = rows[idx]
            if f in coeffs:
                vec[col] = -coeffs[f]
        basis.append({c: v for c, v in vec.items() if v != 0})
    return basis


# ---------------------------------------------------------------------------
# polynomials with linear unknown coefficients
# ---------------------------------------------------------------------------

class UPoly:
    """Polynomial whose coefficients are affine expressions in unknowns.

    terms: monomial -> (constant, {unknown: coefficient}).  Products are
    only defined against known polynomials, keeping everything linear.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = terms or {}

    @staticmethod
    def known(p: Polynomial) -> "UPoly":
        return UPoly({m: (c, {}) for m, c in p.terms.items()})

    @staticmethod
    def ansatz(monomials, alloc) -> "UPoly":
        """Fresh unknown coefficient for every monomial; `alloc()` yields ids."""
        return UPoly({m: (Fraction(0), {alloc(): Fraction(1)}) for m in monomials})

    def __add__(self, other: "UPoly") -> "UPoly":
        out = dict(self.terms)
        for m, (c, lin) in other.terms.items():
            c0, lin0 = out.get(m, (Fraction(0), {}))
            merged = dict(lin0)
            for u, v in lin.items():
                merged[u] = merged.get(u, Fraction(0)) + v
            out[m] = (c0 + c, {u: v for u, v in merged.items() if v != 0})
        return UPoly({m: t for m, t in out.items() if t[0] != 0 or t[1]})

    def __neg__(self) -> "UPoly":
        return UPoly({m: (-c, {u: -v for u, v in lin.items()})
                      for m, (c, lin) in self.terms.items()})

    def __sub__(self, other: "UPoly") -> "UPoly":
        return self + (-other)

    def mul_known(self, p: Polynomial) -> "UPoly":
        from .poly import _mono_mul
        out: dict = {}
        for m1, c1 in p.terms.items():
            for m2, (c2, lin) in self.terms.items():
                m = _mono_mul(m1, m2)
                c0, lin0 = out.get(m, (Fraction(0), {}))
                merged = dict(lin0)
                for u, v in lin.items():
                    merged[u] = merged.get(u, Fraction(0)) + c1 * v
                out[m] = (c0 + c1 * c2,
                          {u: v for u, v in merged.items() if v != 0})
        return UPoly({m: t for m, t in out.items() if t[0] != 0 or t[1]})

    def map_monomials(self, fn) -> "UPoly":
        """Apply a linear monomial transform; fn(m) returns [(mono, coeff)]."""
        out: dict = {}
        for m, (c, lin) in self.terms.items():
            for mm, factor in fn(m):
                c0, lin0 = out.get(mm, (Fraction(0), {}))
                merged = dict(lin0)
                for u, v in lin.items():
                    merged[u] = merged.get(u, Fraction(0)) + factor * v
                out[mm] = (c0 + factor * c,
                           {u: v for u, v in merged.items() if v != 0})
        return UPoly({m: t for m, t in out.items() if t[0] != 0 or t[1]})

    def equations(self):
        """One linear equation per monomial: lin = -const."""
        for m, (c, lin) in self.terms.items():
            yield (lin, -c)

    def evaluate(self, values: Row) -> Polynomial:
        d = {}
        for m, (c, lin) in self.terms.items():
            total = c
            for u, v in lin.items():
                total += v * values.get(u, Fraction(0))
            if total != 0:
                d[m] = total
        return Polynomial(d)


def monomials_upto(variables, degree: int):
    """All monomials in `variables` of total degree <= degree."""
    vs = sorted(variables, key=lambda v: v.key)
    out = [()]
    for d in range(1, degree + 1):
        for combo in combinations_with_replacement(vs, d):
            counts: dict = {}
            for v in combo:
                counts[v] = counts.get(v, 0) + 1
            out.append(tuple(sorted(counts.items(), key=lambda t: t[0].key)))
    return out


# unknown-valued matrices -----------------------------------------------------

def umat_ansatz(nrows, ncols, monomials, alloc):
    return [[UPoly.ansatz(monomials, alloc) for _ in range(ncols)]
            for _ in range(nrows)]


def umat_zero(nrows, ncols):
    return [[UPoly() for _ in range(ncols)] for _ in range(nrows)]


def umat_known(m) -> list:
    return [[UPoly.known(e) for e in row] for row in m]


def umat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def umat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def umat_mul_ku(known, unknown):
    """known polynomial matrix times unknown matrix."""
    n, k = len(known), len(unknown)
    m = len(unknown[0]) if unknown else 0
    out = umat_zero(n, m)
    for i in range(n):
        for t in range(k):
            coeff = known[i][t]
            if coeff.is_zero():
                continue
            for j in range(m):
                out[i][j] = out[i][j] + unknown[t][j].mul_known(coeff)
    return out


def umat_mul_uk(unknown, known):
    n = len(unknown)
    k = len(known)
    m = len(known[0]) if known else 0
    out = umat_zero(n, m)
    for i in range(n):
        for t in range(k):
            for j in range(m):
                coeff = known[t][j]
                if coeff.is_zero():
                    continue
                out[i][j] = out[i][j] + unknown[i][t].mul_known(coeff)
    return out


def umat_map(umatrix, fn):
    return [[e.map_monomials(fn) for e in row] for row in umatrix]


def umat_equations(umatrix, target=None):
    """Equations stating umatrix == target (a known matrix or zero)."""
    eqs = []
    for i, row in enumerate(umatrix):
        for j, e in enumerate(row):
            diff = e
            if target is not None:
                diff = e - UPoly.known(_as_poly(target[i][j]))
            eqs.extend(diff.equations())
    return eqs


def umat_evaluate(umatrix, values: Row):
    return tuple(tuple(e.evaluate(values) for e in row) for row in umatrix)
