"""Objects, 1-morphisms and 2-morphisms of the defect 2-category.

Objects are ordered variable lists; a 1-morphism x -> y is a list of extra
variables and a potential W(extras, x, y); 2-morphisms are Koszul words
whose potential is the difference of the boundary potentials.  Composition
renames clashing variables to fresh copies, deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .poly import (
    Bidegree, Polynomial, Variable, poly, vdiff, varlist, dot,
    divided_difference, DEG_A, DEG_X, DEG_W, ZERO_DEG,
)
from .matfac import KoszulWord, koszul_multi, WordError


@dataclass(frozen=True)
class ObjectC:
    """An ordered list of bulk variables, all of one copy index."""

    variables: tuple

    @staticmethod
    def make(n: int, copy: int = 0, graded: bool = False, name: str = "x") -> "ObjectC":
        return ObjectC(varlist(name, n, copy, DEG_X if graded else None))

    @property
    def n(self) -> int:
        return len(self.variables)

    def primed(self, k: int = 1) -> "ObjectC":
        return ObjectC(tuple(v.primed(k) for v in self.variables))

    def box(self, other: "ObjectC") -> "ObjectC":
        clash = set(self.variables) & set(other.variables)
        if clash:
            raise WordError(f"monoidal product with shared variables {clash}")
        return ObjectC(self.variables + other.variables)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.variables)) + ")"


@dataclass(frozen=True)
class OneMorphism:
    """(extras; W): src -> tgt, with W over C[extras, src, tgt]."""

    src: tuple
    tgt: tuple
    extras: tuple
    w: Polynomial

    def __post_init__(self):
        allowed = set(self.src) | set(self.tgt) | set(self.extras)
        if not self.w.variables() <= allowed:
            raise WordError("potential uses undeclared variables")

    @property
    def all_vars(self) -> frozenset:
        return frozenset(self.src) | frozenset(self.tgt) | frozenset(self.extras)

    def rename(self, mapping: Mapping[Variable, Variable]) -> "OneMorphism":
        sub = {v: poly(w) for v, w in mapping.items()}
        pick = lambda vs: tuple(mapping.get(v, v) for v in vs)
        return OneMorphism(pick(self.src), pick(self.tgt), pick(self.extras),
                           self.w.substitute(sub))

    def check_graded(self) -> bool:
        return self.w.is_homogeneous(DEG_W)

    def __str__(self) -> str:
        ex = ",".join(map(str, self.extras))
        return f"({ex}; {self.w})"


def _fresh_copy_map(taken, vs) -> dict:
    """Rename each variable in vs whose (name, copy) is taken to the next
    free copy of its name."""
    used: dict = {}
    for v in taken:
        used.setdefault(v.name, set()).add(v.copy)
    out = {}
    for v in vs:
        if v.copy in used.get(v.name, set()):
            c = v.copy + 1
            while c in used.get(v.name, set()):
                c += 1
            out[v] = v.with_copy(c)
            used.setdefault(v.name, set()).add(c)
    return out


def compose_1(g: OneMorphism, f: OneMorphism) -> OneMorphism:
    """g after f; the intermediate object's variables become extras.

    g's variables are renamed away from f's where they clash; the
    intermediate identification substitutes g.src -> f.tgt.
    """
    if len(g.src) != len(f.tgt):
        raise WordError("object mismatch in composition")
    taken = set(f.all_vars)
    clash = [v for v in g.all_vars if v in taken and v not in g.src]
    ren = _fresh_copy_map(taken | g.all_vars, clash)
    g2 = g.rename(ren) if ren else g
    ident = {s: t for s, t in zip(g2.src, f.tgt)}
    g3 = g2.rename(ident)
    return OneMorphism(f.src, g3.tgt, f.extras + g3.extras + f.tgt,
                       f.w + g3.w)


def box_1(f: OneMorphism, g: OneMorphism) -> OneMorphism:
    """Monoidal product: disjoint variables, potentials add."""
    if f.all_vars & g.all_vars:
        raise WordError("monoidal product with shared variables")
    return OneMorphism(f.src + g.src, f.tgt + g.tgt, f.extras + g.extras,
                       f.w + g.w)


def identity_1(x: ObjectC, xp: Optional[ObjectC] = None, acopy: int = 0,
               aname: str = "a", graded: bool = False) -> OneMorphism:
    """1_x = (a; a.(x' - x)); extras carry bidegree (1,1) in graded mode."""
    xp = xp if xp is not None else x.primed()
    a = varlist(aname, x.n, acopy, DEG_A if graded else None)
    w = dot(a, [vdiff(vp, v) for vp, v in zip(xp.variables, x.variables)])
    return OneMorphism(x.variables, xp.variables, a, w)


def braiding(x: ObjectC, y: ObjectC, xp: ObjectC, yp: ObjectC,
             graded: bool = False) -> OneMorphism:
    """b_{x,y}: the unit pair on x (+) y read with target yp (+) xp."""
    grade = DEG_A if graded else None
    c = varlist("c", x.n, 0, grade)
    d = varlist("d", y.n, 0, grade)
    w = dot(d, [vdiff(vp, v) for vp, v in zip(yp.variables, y.variables)]) + \
        dot(c, [vdiff(vp, v) for vp, v in zip(xp.variables, x.variables)])
    return OneMorphism(x.variables + y.variables,
                       yp.variables + xp.variables, c + d, w)


def canonical_form(f: OneMorphism) -> OneMorphism:
    """Relabel copy indices per base name intrinsically: boundary variables
    first, then in order of first appearance in the potential's canonical
    term order, so differently-bracketed composites agree literally."""
    from .poly import _mono_sort_key
    order = list(f.src) + list(f.tgt)
    for m in sorted(f.w.terms, key=_mono_sort_key):
        for v, _ in m:
            order.append(v)
    order.extend(sorted(f.extras, key=lambda v: v.key))
    counters: dict = {}
    ren: dict = {}
    for v in order:
        if v in ren:
            continue
        k = counters.get(v.name, 0)
        ren[v] = v.with_copy(k)
        counters[v.name] = k + 1
    out = f.rename(ren)
    return OneMorphism(out.src, out.tgt,
                       tuple(sorted(out.extras, key=lambda v: v.key)), out.w)


# ---------------------------------------------------------------------------
# 2-morphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TwoMorphism:
    """A Koszul word between parallel 1-morphisms; the word's potential must
    equal cod.w - dom.w over the joint ring."""

    dom: OneMorphism
    cod: OneMorphism
    word: KoszulWord

    def __post_init__(self):
        if self.dom.src != self.cod.src or self.dom.tgt != self.cod.tgt:
            raise WordError("2-morphism between non-parallel 1-morphisms")
        if self.word.potential() != self.cod.w - self.dom.w:
            raise WordError(
                f"word potential {self.word.potential()} differs from "
                f"cod - dom = {self.cod.w - self.dom.w}")

    def boundary_vars(self) -> frozenset:
        return self.dom.all_vars | self.cod.all_vars

    def with_closed_internal(self) -> KoszulWord:
        """The word with everything outside the boundary marked internal."""
        internal = self.word.variables() - self.boundary_vars()
        return self.word.with_internal(internal)

    def rename(self, mapping: Mapping[Variable, Variable]) -> "TwoMorphism":
        return TwoMorphism(self.dom.rename(mapping), self.cod.rename(mapping),
                           self.word.rename(mapping))


def unit_2(f: OneMorphism, cod_extras: Optional[tuple] = None,
           graded: bool = False) -> TwoMorphism:
    """The unit 2-morphism on f, q_i = a'_i - a_i with boundary spectators."""
    if cod_extras is None:
        taken = set(f.all_vars)
        ren = _fresh_copy_map(taken | set(f.extras), list(f.extras))
        cod_extras = tuple(ren.get(v, v.primed()) for v in f.extras)
    cod = f.rename(dict(zip(f.extras, cod_extras)))
    ps, qs, thetas = [], [], []
    for i in range(len(f.extras)):
        ps.append(divided_difference(f.w, i, f.extras, cod_extras))
        qs.append(vdiff(cod_extras[i], f.extras[i]))
        if graded:
            thetas.append(cod_extras[i].grade - Bidegree(1, 0))
    word = koszul_multi(ps, qs, graded=graded, thetas=thetas or None)
    return TwoMorphism(f, cod, word)


def same_instance(f: OneMorphism, g: OneMorphism) -> bool:
    """Equality up to the (irrelevant) ordering of the extras."""
    return (f.src == g.src and f.tgt == g.tgt
            and frozenset(f.extras) == frozenset(g.extras) and f.w == g.w)


def vertical(top: TwoMorphism, bottom: TwoMorphism) -> TwoMorphism:
    """top . bottom, sharing the middle 1-morphism instance exactly.

    The middle's private variables become internal in the composed word.
    """
    if not same_instance(top.dom, bottom.cod):
        raise WordError("vertical composition: middle 1-morphisms differ")
    mid = top.dom
    shared = (top.word.variables() & bottom.word.variables()) \
        | (frozenset(mid.all_vars))
    word = top.word.tensor(bottom.word, shared=shared)
    out = TwoMorphism(bottom.dom, top.cod, word)
    private = frozenset(mid.all_vars) - out.dom.all_vars - out.cod.all_vars
    return TwoMorphism(out.dom, out.cod, word.with_internal(
        (word.variables() & private) | word.internal | private))


def horizontal(left: TwoMorphism, right: TwoMorphism) -> TwoMorphism:
    """left o right (right acts first); boundary objects must be shared:
    right.tgt variables == left.src variables instance-wise."""
    for f, g in ((right.dom, left.dom), (right.cod, left.cod)):
        if f.tgt != g.src:
            raise WordError("horizontal composition: object instances differ")
    dom = OneMorphism(right.dom.src, left.dom.tgt,
                      right.dom.extras + left.dom.extras + right.dom.tgt,
                      right.dom.w + left.dom.w)
    cod = OneMorphism(right.cod.src, left.cod.tgt,
                      right.cod.extras + left.cod.extras + right.cod.tgt,
                      right.cod.w + left.cod.w)
    shared = left.word.variables() & right.word.variables()
    word = left.word.tensor(right.word, shared=shared)
    return TwoMorphism(dom, cod, word)


def box_2(a: TwoMorphism, b: TwoMorphism) -> TwoMorphism:
    word = a.word.tensor(b.word)
    return TwoMorphism(box_1(a.dom, b.dom), box_1(a.cod, b.cod), word)


def _telescope_word(dom: OneMorphism, cod: OneMorphism, w: Polynomial,
                    pairs, extra_p=None, graded: bool = False,
                    inverse: bool = False) -> KoszulWord:
    """Koszul word for cod.w - dom.w by telescoping w along variable pairs.

    `pairs` is a list of (old_vars, new_vars) groups substituted in order;
    factor i of a group has p = difference quotient of the partially
    substituted w, q = new - old, optionally corrected by `extra_p`
    (a map old_var -> polynomial subtracted from p, for absorbed unit
    extras).  With `inverse`, p entries are negated (the reverse 2-morphism).
    """
    ps, qs, thetas = [], [], []
    current = w
    for old, new in pairs:
        for i in range(len(old)):
            p = divided_difference(current, i, old, new)
            if extra_p and old[i] in extra_p:
                p = p - extra_p[old[i]]
            ps.append(-p if inverse else p)
            qs.append(vdiff(new[i], old[i]))
            if graded:
                thetas.append((new[i].grade or ZERO_DEG) - Bidegree(1, 0))
        current = current.substitute({o: poly(n) for o, n in zip(old, new)})
    return koszul_multi(ps, qs, graded=graded, thetas=thetas or None)


def unitor_lambda(f: OneMorphism, graded: bool = False,
                  inverse: bool = False) -> TwoMorphism:
    """lambda_f: 1_tgt o f -> f (its inverse with inverse=True).

    The word has q entries a' - a over the extras and y' - y over the
    absorbed intermediate object, per the Knoerrer-type reduction.
    """
    yp = ObjectC(f.tgt).primed()
    while set(yp.variables) & f.all_vars:
        yp = yp.primed()
    unit = identity_1(ObjectC(f.tgt), yp,
                      acopy=_next_copy(f.all_vars, "b"), aname="b",
                      graded=graded)
    comp = compose_1(unit, f)
    tgt_extras = tuple(
        _fresh_copy_map(comp.all_vars | f.all_vars, list(f.extras)).get(v, v.primed())
        for v in f.extras)
    target = f.rename({**dict(zip(f.extras, tgt_extras)),
                       **dict(zip(f.tgt, yp.variables))})
    pairs = [(f.extras, tgt_extras), (f.tgt, yp.variables)]
    word = _telescope_word(comp, target, f.w, pairs,
                           extra_p={y: poly(b) for y, b in zip(f.tgt, unit.extras)},
                           graded=graded, inverse=inverse)
    if inverse:
        return TwoMorphism(target, comp, word)
    return TwoMorphism(comp, target, word)


def unitor_rho(f: OneMorphism, graded: bool = False,
               inverse: bool = False) -> TwoMorphism:
    """rho_f: f o 1_src -> f (its inverse with inverse=True)."""
    x = ObjectC(f.src)
    xmid = x.primed()
    while set(xmid.variables) & f.all_vars:
        xmid = xmid.primed()
    unit = identity_1(x, xmid, acopy=_next_copy(f.all_vars, "b"), aname="b",
                      graded=graded)
    f_shifted = f.rename(dict(zip(f.src, xmid.variables)))
    comp = compose_1(f_shifted, unit)
    tgt_extras = tuple(
        _fresh_copy_map(comp.all_vars | f.all_vars, list(f.extras)).get(v, v.primed())
        for v in f.extras)
    target = f.rename(dict(zip(f.extras, tgt_extras)))
    pairs = [(f_shifted.extras, tgt_extras), (tuple(xmid.variables), f.src)]
    word = _telescope_word(comp, target, f_shifted.w, pairs,
                           extra_p={m: -poly(b)
                                    for m, b in zip(xmid.variables, unit.extras)},
                           graded=graded, inverse=inverse)
    if inverse:
        return TwoMorphism(target, comp, word)
    return TwoMorphism(comp, target, word)


def _next_copy(taken, name: str) -> int:
    copies = [v.copy for v in taken if v.name.rstrip("0123456789") == name]
    return max(copies, default=-1) + 1


# short names used by the surface-language front end
def obj(n: int, graded: bool = False) -> ObjectC:
    return ObjectC.make(n, graded=graded)


def id(x: ObjectC, graded: bool = False) -> OneMorphism:  # noqa: A001
    return identity_1(x, graded=graded)


compose = compose_1
boxtimes = box_1


def braid(x: ObjectC, y: ObjectC, graded: bool = False) -> OneMorphism:
    return braiding(x, y, x.primed(), y.primed(), graded=graded)
