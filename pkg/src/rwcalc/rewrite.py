"""Rewrite rules on Koszul words and the normalisation strategy.

The rules are: internal-variable elimination, row combination, factor swap,
sign flips and collapse of [0,0] factors.  `normalize` drives them to a
fixed point, recording an auditable trace; every step preserves the
isomorphism class and (after its own substitution) the potential.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Optional

from .poly import Bidegree, Polynomial, Variable, poly
from .matfac import KoszulFactor, KoszulWord


class RewriteError(ValueError):
    pass


def _linear_pair(p: Polynomial):
    """((v1, c1), (v2, c2)) when p = c1*v1 + c2*v2 with unit coefficients."""
    if len(p.terms) != 2:
        return None
    pairs = []
    for m, c in p.terms.items():
        if len(m) != 1 or m[0][1] != 1 or abs(c) != 1:
            return None
        pairs.append((m[0][0], c))
    return tuple(pairs)


def _vardiff(p: Polynomial):
    """(b, a, sign) with p = sign*(b - a), minuend first, or None."""
    lp = _linear_pair(p)
    if lp is None:
        return None
    (v1, c1), (v2, c2) = lp
    if c1 + c2 != 0:
        return None
    if c1 == 1:
        return (v1, v2, 1)
    return (v2, v1, 1) if c2 == 1 else None


@dataclass(frozen=True)
class FreeSummand:
    """One (C + C[1]) tensor contribution from a collapsed [0,0] factor."""

    theta: Optional[Bidegree] = None


@dataclass
class FreeSummandLog:
    entries: list = field(default_factory=list)

    def add(self, theta: Optional[Bidegree]):
        self.entries.append(FreeSummand(theta))

    def __len__(self):
        return len(self.entries)


def word_hash(w: KoszulWord) -> str:
    blob = json.dumps(w.to_json(), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


@dataclass(frozen=True)
class TraceStep:
    rule: str
    indices: tuple
    before: str
    after: str
    detail: str = ""

    def to_json(self) -> dict:
        return {"rule": self.rule, "indices": list(self.indices),
                "before-hash": self.before, "after-hash": self.after,
                "detail": self.detail}


# ---------------------------------------------------------------------------
# elementary rules
# ---------------------------------------------------------------------------

def eliminate_internal(w: KoszulWord, index: int):
    """Remove factor `index`, of shape [s*(b - a), p] with an internal
    variable among {b, a}, substituting it away in the rest of the word.

    The isomorphism behind this move carries one parity shift per eliminated
    variable (checked against direct cohomology of small instances), so the
    word's shift bit flips.  Returns (word, gone, kept); the
    vanishing-derivative hypothesis on the total potential is verified
    symbolically, never assumed.
    """
    if not 0 <= index < len(w.factors):
        raise RewriteError("index out of range")
    f = w.factors[index]
    lp = _linear_pair(f.p)
    if lp is None:
        raise RewriteError(f"factor {index} is not of shape [b - a, p]: {f}")
    (v1, c1), (v2, c2) = lp
    if v1 in w.internal:
        gone, kept, ratio = v1, v2, -c2 / c1
    elif v2 in w.internal:
        gone, kept, ratio = v2, v1, -c1 / c2
    else:
        raise RewriteError(f"neither {v1} nor {v2} is internal in factor {index}")
    total = w.potential()
    if not total.partial(gone).is_zero():
        raise RewriteError(
            f"elimination hypothesis fails: d/d{gone} of the potential is "
            f"{total.partial(gone)}")
    sub = {gone: ratio * poly(kept)}
    rest = [KoszulFactor(g.p.substitute(sub), g.q.substitute(sub), g.theta)
            for i, g in enumerate(w.factors) if i != index]
    out = w.replace_factors(rest, shift=w.shift + 1,
                            internal=w.internal - {gone})
    expect = total.substitute(sub)
    if out.potential() != expect:
        raise AssertionError("eliminate broke the potential")
    return out, gone, kept


def row_combine(w: KoszulWord, i: int, j: int, sign: int) -> KoszulWord:
    """[.., [p_i +- p_j, q_i], .., [p_j, q_j -+ q_i], ..]; potential fixed."""
    if sign not in (1, -1):
        raise RewriteError("sign must be +1 or -1")
    if not (0 <= i < len(w.factors) and 0 <= j < len(w.factors)) or i == j:
        raise RewriteError("index out of range")
    fi, fj = w.factors[i], w.factors[j]
    if w.graded and fi.theta != fj.theta:
        raise RewriteError("row_combine on factors of different theta degree")
    new_i = KoszulFactor(fi.p + sign * fj.p, fi.q, fi.theta)
    new_j = KoszulFactor(fj.p, fj.q - sign * fi.q, fj.theta)
    facs = list(w.factors)
    facs[i], facs[j] = new_i, new_j
    out = w.replace_factors(facs)
    if out.potential() != w.potential():
        raise AssertionError("row_combine broke the potential")
    return out


def swap_factor(w: KoszulWord, i: int) -> KoszulWord:
    """[p, q] -> [q, p] at the cost of a global shift; in graded mode the
    word twist absorbs the factor's theta (and theta flips sign)."""
    if not 0 <= i < len(w.factors):
        raise RewriteError("index out of range")
    facs = list(w.factors)
    f = facs[i]
    facs[i] = f.swapped()
    twist = w.twist - f.theta if w.graded else None
    return w.replace_factors(facs, shift=w.shift + 1, twist=twist)


def negate_word(w: KoszulWord) -> KoszulWord:
    """All factors [p, q] -> [-p, -q]; isomorphic via a diagonal conjugation."""
    return w.replace_factors([f.negate() for f in w.factors])


def negate_factor(w: KoszulWord, i: int) -> KoszulWord:
    if not 0 <= i < len(w.factors):
        raise RewriteError("index out of range")
    facs = list(w.factors)
    facs[i] = facs[i].negate()
    return w.replace_factors(facs)


def collapse_zero_factor(w: KoszulWord, i: int, log: FreeSummandLog) -> KoszulWord:
    """Remove a [0, 0] factor, logging one C + C[1] tensor contribution."""
    if not 0 <= i < len(w.factors):
        raise RewriteError("index out of range")
    f = w.factors[i]
    if not (f.p.is_zero() and f.q.is_zero()):
        raise RewriteError(f"factor {i} is not [0, 0]: {f}")
    log.add(f.theta)
    facs = [g for k, g in enumerate(w.factors) if k != i]
    return w.replace_factors(facs)


# ---------------------------------------------------------------------------
# normalisation
# ---------------------------------------------------------------------------

def _resolved(f: KoszulFactor) -> bool:
    """Factors with a zero entry belong to the normal form; they carry the
    cohomology and are never eliminated or swapped, only combined into."""
    return f.p.is_zero() or f.q.is_zero()


def _bulk_type(v: Variable) -> bool:
    if v.grade is not None:
        from .poly import DEG_X
        return v.grade == DEG_X
    return v.name[:1] in "xyz"


def _eliminable_index(w: KoszulWord) -> Optional[int]:
    """Lowest eligible factor, defect-type differences before bulk-type
    ones (the order the worked reductions use)."""
    total = w.potential()
    best = None
    for i, f in enumerate(w.factors):
        if _resolved(f):
            continue
        lp = _linear_pair(f.p)
        if lp is None:
            continue
        (v1, _), (v2, _) = lp
        if v1 not in w.internal and v2 not in w.internal:
            continue
        gone = v1 if v1 in w.internal else v2
        if not total.partial(gone).is_zero():
            continue
        key = (_bulk_type(gone), i)
        if best is None or key < best[0]:
            best = (key, i)
    return None if best is None else best[1]


def _zero_factor_index(w: KoszulWord) -> Optional[int]:
    for i, f in enumerate(w.factors):
        if f.p.is_zero() and f.q.is_zero():
            return i
    return None


def _useful_moves(w: KoszulWord):
    """Candidate (name, args) moves for the bounded search, in a fixed order.

    Swaps are proposed when the q side is a variable difference or zero (so
    the swap may expose an elimination or a combine); combines only when
    they zero out an entry or create a variable-difference entry.
    """
    moves = []
    for i, f in enumerate(w.factors):
        if _resolved(f):
            continue
        if _vardiff(f.q) is not None:
            moves.append(("swap", (i,)))
    k = len(w.factors)
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            fi, fj = w.factors[i], w.factors[j]
            if _resolved(fi) and _resolved(fj):
                continue
            if w.graded and fi.theta != fj.theta:
                continue
            for sign in (1, -1):
                new_p = fi.p + sign * fj.p
                new_q = fj.q - sign * fi.q
                interesting = (
                    (new_p.is_zero() and not fi.p.is_zero())
                    or (new_q.is_zero() and not fj.q.is_zero())
                    or (_vardiff(new_p) is not None and _vardiff(fi.p) is None)
                    or (_vardiff(new_q) is not None and _vardiff(fj.q) is None)
                    or (_resolved(fj) and not _resolved(fi)
                        and _vardiff(new_q) is not None and new_q != fj.q))
                if interesting:
                    moves.append(("row_combine", (i, j, sign)))
    return moves


def _apply_move(w: KoszulWord, move) -> KoszulWord:
    name, args = move
    if name == "swap":
        return swap_factor(w, *args)
    if name == "row_combine":
        return row_combine(w, *args)
    raise RewriteError(f"unknown move {name}")


def _state_key(w: KoszulWord):
    return (tuple((str(f.p), str(f.q)) for f in w.factors), w.shift % 2)


def _search_enabling_sequence(w: KoszulWord, depth: int):
    """Iterative-deepening search for a move sequence that enables an
    elimination or creates a [0, 0] factor.  Deterministic: moves are tried
    in the order produced by `_useful_moves`."""
    zeros_now = sum(1 for f in w.factors
                    if f.p.is_zero() and f.q.is_zero())

    def goal(state: KoszulWord) -> bool:
        if _eliminable_index(state) is not None:
            return True
        zeros = sum(1 for f in state.factors
                    if f.p.is_zero() and f.q.is_zero())
        return zeros > zeros_now

    def dfs(state: KoszulWord, path, budget, seen):
        if budget == 0:
            return None
        for move in _useful_moves(state):
            try:
                nxt = _apply_move(state, move)
            except RewriteError:
                continue
            key = _state_key(nxt)
            if key in seen:
                continue
            if goal(nxt):
                return path + [move]
            if budget > 1:
                seen.add(key)
                found = dfs(nxt, path + [move], budget - 1, seen)
                if found is not None:
                    return found
        return None

    for d in range(1, depth + 1):
        found = dfs(w, [], d, {_state_key(w)})
        if found is not None:
            return found
    return None


@dataclass
class NormalizeResult:
    word: KoszulWord
    log: FreeSummandLog
    trace: list

    def trace_json(self) -> list:
        return [s.to_json() for s in self.trace]


def normalize(w: KoszulWord, search_depth: int = 3) -> NormalizeResult:
    """Drive the rule system to a fixed point.

    Strategy: (1) eliminate any eligible factor, lowest index first;
    (2) otherwise search for a short swap/row_combine sequence that enables
    one or creates a [0, 0] factor; (3) collapse [0, 0] factors; (4) stop
    when nothing applies.  A final sign pass makes leading coefficients
    positive.  Identical inputs give identical traces.
    """
    log = FreeSummandLog()
    trace: list = []
    cur = w

    def record(rule, indices, new, detail=""):
        nonlocal cur
        trace.append(TraceStep(rule, tuple(indices), word_hash(cur),
                               word_hash(new), detail))
        cur = new

    while True:
        i = _zero_factor_index(cur)
        if i is not None:
            new = collapse_zero_factor(cur, i, log)
            record("collapse", (i,), new)
            continue
        i = _eliminable_index(cur)
        if i is not None:
            new, gone, kept = eliminate_internal(cur, i)
            record("eliminate", (i,), new, f"{gone} -> {kept}")
            continue
        seq = _search_enabling_sequence(cur, search_depth)
        if seq is not None:
            for move in seq:
                new = _apply_move(cur, move)
                record(move[0], move[1], new)
            continue
        # merge pass: zero out repeated entries (Gaussian-style), which
        # both canonicalises and can expose further reductions
        merged = False
        k = len(cur.factors)
        for j in range(k):
            for i in range(k):
                if i == j:
                    continue
                fi, fj = cur.factors[i], cur.factors[j]
                if _resolved(fi) and _resolved(fj):
                    continue
                if cur.graded and fi.theta != fj.theta:
                    continue
                if not fj.p.is_zero() and fi.p == fj.p and not fi.q.is_zero():
                    new = row_combine(cur, i, j, -1)
                    record("row_combine", (i, j, -1), new)
                    merged = True
                    break
                if not fj.p.is_zero() and fi.p == -fj.p and not fi.q.is_zero():
                    new = negate_factor(cur, i)
                    record("negate", (i,), new)
                    new = row_combine(cur, i, j, -1)
                    record("row_combine", (i, j, -1), new)
                    merged = True
                    break
            if merged:
                break
        if merged:
            continue
        break
    # orientation pass: identity-like factors carry the defect-type
    # difference in the first slot
    changed = True
    while changed:
        changed = False
        for i, f in enumerate(cur.factors):
            dp, dq = _vardiff(f.p), _vardiff(f.q)
            if dp is None or dq is None:
                continue
            if _bulk_type(dp[0]) and not _bulk_type(dq[0]):
                new = swap_factor(cur, i)
                record("swap", (i,), new)
                changed = True
                break
    # cosmetic sign pass: leading coefficients positive
    for i, f in enumerate(cur.factors):
        lead = f.p if not f.p.is_zero() else f.q
        if not lead.is_zero() and lead.leading_coefficient() < 0:
            new = negate_factor(cur, i)
            record("negate", (i,), new)
    return NormalizeResult(cur, log, trace)
