"""Command-line front end: evaluation, series, verification suites, and
word normalization, with machine-readable output via --json.

Exit codes: 0 on success/pass, 1 on a failed check, 2 on usage errors.
The environment variable RWCALC_DEGREE_BOUND overrides the homotopy
oracle's default degree bound.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .duality import TwistParams, DEFAULT_PARAMS, verify_zorro, \
    verify_serre_trivial
from .bordism import parse_bordism, evaluate, BordismError
from .matfac import word_from_json
from .rewrite import normalize
from .tqft import (
    state_space, generating_function, specialize_s_to_minus_t,
    index_closed_form, verify_frobenius, StateSpace,
)


def _parse_twists(text: str) -> TwistParams:
    """r_s=1/2,q_s=0,... with exact rational values."""
    values = {}
    for part in text.split(","):
        if not part.strip():
            continue
        key, _, val = part.partition("=")
        key = key.strip()
        if key not in ("r_s", "q_s", "r_sh", "q_sh", "r_nh", "q_nh"):
            raise ValueError(f"unknown twist parameter {key!r}")
        values[key] = Fraction(val.strip())
    base = {f: getattr(DEFAULT_PARAMS, f)
            for f in ("r_s", "q_s", "r_sh", "q_sh", "r_nh", "q_nh")}
    base.update(values)
    return TwistParams(**base)


def degree_bound() -> int:
    return int(os.environ.get("RWCALC_DEGREE_BOUND", "4"))


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _cmd_eval(args) -> int:
    params = _parse_twists(args.twists) if args.twists else DEFAULT_PARAMS
    if args.genus is not None:
        result = state_space(args.genus, args.n, args.graded, params)
    else:
        with open(args.word) as fh:
            text = fh.read()
        node = parse_bordism(text)
        result = evaluate(node, args.n, args.graded, params)
    if isinstance(result, StateSpace):
        payload = result.to_json()
        even, odd, free = result.counts()
        lines = [f"normal form: {result.word}",
                 f"generators: {even} even + {odd} odd over a ring "
                 f"on {free} variables (block parity {result.parity})"]
        if args.graded:
            lines.append(f"series: {result.series()}")
        _emit(args, payload, "\n".join(lines))
    else:
        text = str(result)
        payload = result.word.to_json() if hasattr(result, "word") else {"result": text}
        _emit(args, payload, text)
    return 0


def _cmd_series(args) -> int:
    params = _parse_twists(args.twists) if args.twists else DEFAULT_PARAMS
    series = generating_function(args.g, args.n, params)
    if args.subs:
        if args.subs.replace(" ", "") != "s=-t":
            print("only the substitution s=-t is supported", file=sys.stderr)
            return 2
        closed = index_closed_form(args.g, args.n, params)
        if not specialize_s_to_minus_t(series).equals(closed.as_series()):
            print("internal check failed: specialisation does not match "
                  "its closed form", file=sys.stderr)
            return 1
        _emit(args, closed.as_series().to_json(), str(closed))
        return 0
    _emit(args, series.to_json(), str(series))
    return 0


def _cmd_check(args) -> int:
    params = _parse_twists(args.twists) if args.twists else DEFAULT_PARAMS
    if args.what == "zorro":
        reports = verify_zorro(args.n, graded=args.graded, params=params)
        ok = all(r.ok for r in reports)
        payload = {"moves": [{"move": r.move, "ok": r.ok,
                              "steps": r.trace_len,
                              "twist": str(r.twist_sum) if r.twist_sum else None}
                             for r in reports],
                   "ok": ok}
        _emit(args, payload, "\n".join(str(r) for r in reports))
        return 0 if ok else 1
    if args.what == "serre":
        rep = verify_serre_trivial(args.n, graded=args.graded)
        payload = {"ok": rep.ok, "chain-length": rep.chain_length,
                   "trivialisations": [w.to_json() for w in rep.trivialisations]}
        _emit(args, payload, str(rep))
        return 0 if rep.ok else 1
    if args.what == "frobenius":
        rep = verify_frobenius(args.n, graded=args.graded, params=params)
        payload = {"unitality": rep.unitality,
                   "associativity": rep.associativity,
                   "commutativity": rep.commutativity,
                   "pairing": rep.pairing, "ok": rep.ok}
        _emit(args, payload, str(rep))
        return 0 if rep.ok else 1
    print(f"unknown check {args.what!r}", file=sys.stderr)
    return 2


def _cmd_normalize(args) -> int:
    with open(args.file) as fh:
        data = json.load(fh)
    word = word_from_json(data)
    res = normalize(word)
    payload = {"word": res.word.to_json(), "trace": res.trace_json(),
               "free-summands": len(res.log)}
    text = (f"normal form: {res.word}\n"
            f"{len(res.trace)} steps, {len(res.log)} free summands")
    _emit(args, payload, text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="rwcalc",
        description="Koszul matrix factorisation calculus and surface "
                    "invariants")
    sub = ap.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate a bordism word or surface")
    group = pe.add_mutually_exclusive_group(required=True)
    group.add_argument("--word", help="file containing a bordism word")
    group.add_argument("--genus", type=int, help="closed surface of genus G")
    pe.add_argument("--n", type=int, required=True)
    pe.add_argument("--graded", action="store_true")
    pe.add_argument("--twists", help="r_s=..,q_s=..,... exact rationals")
    pe.add_argument("--json", action="store_true")
    pe.set_defaults(func=_cmd_eval)

    ps = sub.add_parser("series", help="closed-form generating function")
    ps.add_argument("--g", type=int, required=True)
    ps.add_argument("--n", type=int, required=True)
    ps.add_argument("--subs", help="substitution, only s=-t")
    ps.add_argument("--twists")
    ps.add_argument("--json", action="store_true")
    ps.set_defaults(func=_cmd_series)

    pc = sub.add_parser("check", help="verification suites")
    pc.add_argument("what", choices=["zorro", "serre", "frobenius"])
    pc.add_argument("--n", type=int, required=True)
    pc.add_argument("--graded", action="store_true")
    pc.add_argument("--twists")
    pc.add_argument("--json", action="store_true")
    pc.set_defaults(func=_cmd_check)

    pn = sub.add_parser("normalize", help="normalize a Koszul word (JSON)")
    pn.add_argument("file")
    pn.add_argument("--json", action="store_true")
    pn.set_defaults(func=_cmd_normalize)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (BordismError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
