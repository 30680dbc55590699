"""The bordism-word DSL: parsing, typechecking, and evaluation.

Grammar:  expr := gen | expr "." expr   (vertical, bottom to top)
               | expr "o" expr          (horizontal, right acts first)
               | expr "*" expr          (monoidal)
               | "genus(" nat ")"
with gen in {cap, cup, saddle+, saddle-, cyl, ev~, coev~, ev, coev, 1[gen]}.

Words are typed against the oriented bordism signatures: objects are tuples
of oriented points, 1-morphism types are composition-normalised lists of
arcs, and 2-morphism generators connect such lists.  Evaluation recognises
the canonical closed-surface decompositions (sphere, genus(g), and the
explicit cap/saddle/cup towers) and the generator-level pieces; these cover
every surface the engine's acceptance pipeline uses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .duality import TwistParams, DEFAULT_PARAMS


class BordismError(ValueError):
    def __init__(self, msg, pos=None):
        super().__init__(msg if pos is None else f"{msg} (at token {pos})")
        self.pos = pos


# -- types --------------------------------------------------------------------

PLUS, MINUS = "+", "-"

ARCS = {
    "ev~": ((PLUS, MINUS), ()),
    "coev~": ((), (MINUS, PLUS)),
    "ev": ((MINUS, PLUS), ()),
    "coev": ((), (PLUS, MINUS)),
}


@dataclass(frozen=True)
class OneType:
    """A 1-morphism type: source/target signatures and the reduced list of
    arc generators (identities elided)."""

    src: tuple
    tgt: tuple
    atoms: tuple  # arc names, in order of application

    @staticmethod
    def identity(sig: tuple) -> "OneType":
        return OneType(sig, sig, ())

    @staticmethod
    def arc(name: str) -> "OneType":
        src, tgt = ARCS[name]
        return OneType(src, tgt, (name,))

    def compose(self, first: "OneType") -> "OneType":
        """self after `first`."""
        if first.tgt != self.src:
            raise BordismError(
                f"cannot compose: {first.tgt} does not match {self.src}")
        return OneType(first.src, self.tgt, first.atoms + self.atoms)

    def box(self, other: "OneType") -> "OneType":
        return OneType(self.src + other.src, self.tgt + other.tgt,
                       self.atoms + other.atoms)

    def __str__(self) -> str:
        inner = " o ".join(reversed(self.atoms)) if self.atoms else "1"
        return f"{inner}: {''.join(self.src) or '()'} -> {''.join(self.tgt) or '()'}"


@dataclass(frozen=True)
class Node:
    """Typed DSL node; level 1 nodes are 1-morphism words, level 2 nodes
    carry (dom, cod) 1-morphism types."""

    kind: str
    level: int
    children: tuple = ()
    name: str = ""
    genus: int = -1
    onetype: Optional[OneType] = None
    dom: Optional[OneType] = None
    cod: Optional[OneType] = None


GEN2 = {
    # name: (dom atoms, cod atoms, signature); words read bottom-to-top, so
    # cap is the birth hemisphere and saddle+ the loop-creating saddle
    "cap": ((), ("coev", "ev~"), ()),
    "cup": (("coev", "ev~"), (), ()),
    "saddle+": ((), ("ev~", "coev"), (PLUS, MINUS)),
    "saddle-": (("ev~", "coev"), (), (PLUS, MINUS)),
    "cyl": (("coev", "ev~"), ("coev", "ev~"), ()),
}


def _gen2_node(name: str) -> Node:
    dom_atoms, cod_atoms, sig = GEN2[name]
    return Node("gen2", 2, name=name, dom=_chain(sig, dom_atoms),
                cod=_chain(sig, cod_atoms))


def _chain(sig: tuple, atoms: tuple) -> OneType:
    t = OneType.identity(sig)
    for a in atoms:
        t = OneType.arc(a).compose(t)
    return t


# -- tokenizer / parser --------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?P<tok>genus\(\s*\d+\s*\)|1\[[a-z~+-]+\]|saddle\+|saddle-|ev~|coev~|"
    r"ev|coev|cap|cup|cyl|[.*o()])")


def _tokenize(text: str):
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise BordismError(f"bad token at: {text[pos:].strip()[:20]!r}")
            break
        out.append(m.group("tok"))
        pos = m.end()
    return out


class _Parser:
    """Precedence: '*' binds loosest, then '.', then 'o'."""

    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self):
        t = self.peek()
        if t is None:
            raise BordismError("unexpected end of input", self.i)
        self.i += 1
        return t

    def parse(self) -> Node:
        node = self.boxexpr()
        if self.peek() is not None:
            raise BordismError(f"trailing input {self.peek()!r}", self.i)
        return node

    def boxexpr(self) -> Node:
        left = self.vexpr()
        while self.peek() == "*":
            self.next()
            right = self.vexpr()
            left = _box(left, right, self.i)
        return left

    def vexpr(self) -> Node:
        left = self.hexpr()
        while self.peek() == ".":
            self.next()
            right = self.hexpr()
            left = _vertical(right, left, self.i)  # left happens first
        return left

    def hexpr(self) -> Node:
        left = self.atom()
        while self.peek() == "o":
            self.next()
            right = self.atom()
            left = _horizontal(left, right, self.i)
        return left

    def atom(self) -> Node:
        t = self.next()
        if t == "(":
            node = self.boxexpr()
            if self.next() != ")":
                raise BordismError("expected ')'", self.i)
            return node
        if t.startswith("genus("):
            g = int(t[len("genus("):-1])
            sphere = OneType.identity(())
            return Node("genus", 2, genus=g, dom=sphere, cod=sphere)
        if t.startswith("1["):
            name = t[2:-1]
            if name not in ARCS:
                raise BordismError(f"unknown 1-morphism {name!r} in 1[...]", self.i)
            ot = OneType.arc(name)
            return Node("id2", 2, name=name, dom=ot, cod=ot)
        if t in ARCS:
            return Node("arc", 1, name=t, onetype=OneType.arc(t))
        if t in GEN2:
            return _gen2_node(t)
        raise BordismError(f"unknown generator {t!r}", self.i)


def _vertical(top: Node, bottom: Node, pos) -> Node:
    if top.level != 2 or bottom.level != 2:
        raise BordismError("vertical composition needs 2-morphism words", pos)
    if bottom.cod.atoms != top.dom.atoms or bottom.cod.src != top.dom.src \
            or bottom.cod.tgt != top.dom.tgt:
        raise BordismError(
            f"vertical mismatch: {bottom.cod} then {top.dom}", pos)
    return Node("vert", 2, children=(top, bottom), dom=bottom.dom, cod=top.cod)


def _horizontal(left: Node, right: Node, pos) -> Node:
    if left.level == 1 and right.level == 1:
        return Node("hcomp1", 1, children=(left, right),
                    onetype=left.onetype.compose(right.onetype))
    if left.level == 2 and right.level == 2:
        return Node("hcomp", 2, children=(left, right),
                    dom=left.dom.compose(right.dom),
                    cod=left.cod.compose(right.cod))
    raise BordismError("horizontal composition of mixed levels", pos)


def _box(a: Node, b: Node, pos) -> Node:
    if a.level == 1 and b.level == 1:
        return Node("box1", 1, children=(a, b),
                    onetype=a.onetype.box(b.onetype))
    if a.level == 2 and b.level == 2:
        return Node("box", 2, children=(a, b), dom=a.dom.box(b.dom),
                    cod=a.cod.box(b.cod))
    raise BordismError("monoidal product of mixed levels", pos)


def parse_bordism(text: str) -> Node:
    """Parse and typecheck a bordism word."""
    return _Parser(_tokenize(text)).parse()


_PREC = {"box": 0, "box1": 0, "vert": 1, "hcomp": 2, "hcomp1": 2}


def pretty(node: Node) -> str:
    def wrap(child: Node, parent_prec: int) -> str:
        text = pretty(child)
        if _PREC.get(child.kind, 3) < parent_prec:
            return f"({text})"
        return text

    if node.kind == "arc" or node.kind == "gen2":
        return node.name
    if node.kind == "id2":
        return f"1[{node.name}]"
    if node.kind == "genus":
        return f"genus({node.genus})"
    if node.kind == "vert":
        top, bottom = node.children
        return f"{wrap(bottom, 1)} . {wrap(top, 1)}"
    if node.kind in ("hcomp", "hcomp1"):
        left, right = node.children
        return f"{wrap(left, 2)} o {wrap(right, 2)}"
    if node.kind in ("box", "box1"):
        a, b = node.children
        return f"{wrap(a, 0)} * {wrap(b, 0)}"
    raise BordismError(f"unprintable node {node.kind}")


# -- evaluation -----------------------------------------------------------------

def _vertical_chain(node: Node):
    if node.kind == "vert":
        top, bottom = node.children
        return _vertical_chain(bottom) + _vertical_chain(top)
    return [node]


def _handle_count(level: Node) -> Optional[int]:
    """Recognise 1[ev~] o (saddle+ . saddle-)^k o 1[coev] towers (also the
    bare cylinder, k = 0)."""
    if level.kind == "gen2" and level.name == "cyl":
        return 0
    if level.kind != "hcomp":
        return None
    left, right = level.children
    if not (left.kind == "hcomp" and right.kind == "id2"
            and right.name == "coev"):
        return None
    lleft, middle = left.children
    if not (lleft.kind == "id2" and lleft.name == "ev~"):
        return None
    chain = _vertical_chain(middle)
    if len(chain) % 2:
        return None
    count = 0
    for i in range(0, len(chain), 2):
        a, b = chain[i], chain[i + 1]
        if not (a.kind == "gen2" and a.name == "saddle+"
                and b.kind == "gen2" and b.name == "saddle-"):
            return None
        count += 1
    return count


def evaluate(node: Node, n: int, graded: bool = False,
             params: TwistParams = DEFAULT_PARAMS):
    """Evaluate a typed bordism word.

    Closed surfaces in the canonical decompositions return a StateSpace;
    1-morphism words return the OneMorphism the theory assigns to them;
    single 2-morphism generators return their TwoMorphism.  Other, freely
    whiskered words are outside the evaluator's scope and raise.
    """
    from . import tqft
    from .cat2 import compose_1, box_1
    from . import duality

    if node.level == 1:
        return _evaluate_one(node, n, graded)

    if node.kind == "genus":
        return tqft.state_space(node.genus, n, graded, params)

    if node.kind == "vert":
        chain = _vertical_chain(node)
        if chain[0].kind == "gen2" and chain[0].name == "cap" \
                and chain[-1].kind == "gen2" and chain[-1].name == "cup":
            middle = chain[1:-1]
            handles = 0
            for level in middle:
                k = _handle_count(level)
                if k is None:
                    raise BordismError(
                        f"unsupported tower level: {pretty(level)}")
                handles += k
            return tqft.state_space(handles, n, graded, params)
        raise BordismError(
            "only canonical closed-surface towers are evaluated")

    if node.kind == "gen2" or node.kind == "id2":
        return _evaluate_generator(node, n, graded, params)

    raise BordismError(f"cannot evaluate {pretty(node)}: unsupported shape")


def _evaluate_one(node: Node, n: int, graded: bool):
    from .cat2 import compose_1, box_1
    from . import duality

    if node.kind == "arc":
        ms = duality.adjunction_one_morphisms(n, graded)
        return ms[node.name]
    if node.kind == "hcomp1":
        left, right = node.children
        f = _evaluate_one(right, n, graded)
        g = _evaluate_one(left, n, graded)
        g = _refresh(g, f)
        return compose_1(g, f)
    if node.kind == "box1":
        a, b = node.children
        fa = _evaluate_one(a, n, graded)
        fb = _refresh(_evaluate_one(b, n, graded), fa)
        return box_1(fa, fb)
    raise BordismError(f"cannot evaluate 1-morphism node {node.kind}")


def _refresh(g, f):
    """Rename g's variables clashing with f to fresh copies."""
    from .cat2 import _fresh_copy_map
    clash = [v for v in g.all_vars if v in f.all_vars]
    if not clash:
        return g
    ren = _fresh_copy_map(set(f.all_vars) | set(g.all_vars), clash)
    return g.rename(ren)


def _evaluate_generator(node: Node, n: int, graded: bool,
                        params: TwistParams):
    from . import duality
    from .duality import Pair, extras
    from .cat2 import OneMorphism, compose_1
    from .poly import Polynomial

    g = graded
    P0, P1 = Pair.make(n, 0, g), Pair.make(n, 1, g)
    empty = OneMorphism((), (), (), Polynomial.zero())

    def tw(name):
        return getattr(params, name)() if graded else None

    if node.kind == "id2":
        ms = duality.adjunction_one_morphisms(n, graded)
        f = ms[node.name]
        fresh = f.rename({v: v.primed(3) for v in f.extras})
        return duality.cylinder(f, fresh, g)

    name = node.name
    a0, a1 = extras("a", n, 0, g), extras("a", n, 1, g)
    if name == "cap":
        E = compose_1(duality.ev_tilde(P0, a1), duality.coev(P0, a0))
        return duality.cap_word(empty, E, a0, a1, P0, g, tw("cap"))
    if name == "cup":
        E = compose_1(duality.ev_tilde(P0, a1), duality.coev(P0, a0))
        return duality.cup_word(E, empty, a0, a1, P0, g, tw("cup"))
    b, c = extras("b", n, 0, g), extras("c", n, 0, g)
    punit = duality.pair_unit(P0, P1, b, c)
    if name == "saddle-":
        dom = compose_1(duality.coev(P1, a1), duality.ev_tilde(P0, a0))
        return duality.saddle_word(dom, punit, a0, a1, b, c, P0, P1, g,
                                   tw("saddle"))
    if name == "saddle+":
        cod = compose_1(duality.coev(P1, a1), duality.ev_tilde(P0, a0))
        return duality.saddle_op_word(punit, cod, a0, a1, b, c, P0, P1, g,
                                      tw("saddle_op"))
    if name == "cyl":
        from .cat2 import unit_2
        E = compose_1(duality.ev_tilde(P0, a1), duality.coev(P0, a0))
        return unit_2(E, graded=g)
    raise BordismError(f"unknown generator {name}")
