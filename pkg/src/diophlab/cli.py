"""Command line interface: ``diophlab <command> ...``.

Records are JSON lines on stdout with every integer as a decimal string.
Exit codes: 0 success, 1 false assertion, 2 bad input, 3 interrupted search.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import curve as cv
from . import families as fam
from . import search as srch
from .arith import DomainError, as_fraction, is_square
from .dnset import SquareWitness, Triple, is_dn_set, scale_solutions, spectrum

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INTERRUPTED = 0, 1, 2, 3

log = logging.getLogger("diophlab")


class UsageError(Exception):
    pass


# -- serialization ----------------------------------------------------------

def jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return str(obj.numerator) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, Triple):
        return [str(v) for v in obj]
    if isinstance(obj, cv.Point):
        return {"x": jsonable(obj.x), "y": jsonable(obj.y)}
    if obj is cv.INFINITY:
        return "infinity"
    if isinstance(obj, SquareWitness):
        return {"r": str(obj.r), "s": str(obj.s), "t": str(obj.t)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {obj!r}")


def make_record(command: str, inputs: dict, result: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command,
            "inputs": jsonable(inputs), "result": jsonable(result)}


def check_record(record: dict) -> bool:
    """Re-verify every (triple, n, witness) identity inside a parsed record."""
    res = record["result"]
    if "triple" not in res:
        return True
    a, b, c = (int(v) for v in res["triple"])
    entries = res.get("entries") or []
    if "witness" in res and "n" in res:
        entries = entries + [{"n": res["n"], "witness": res["witness"]}]
    for e in entries:
        n = int(e["n"])
        w = {k: int(v) for k, v in e["witness"].items()}
        if (w["r"] ** 2, w["s"] ** 2, w["t"] ** 2) != (b * c + n, c * a + n, a * b + n):
            return False
    return True


def _emit(out, record: dict) -> None:
    out.write(json.dumps(record) + "\n")
    out.flush()


# -- argument helpers -------------------------------------------------------

def _triple(text: str) -> Triple:
    try:
        return Triple.parse(text)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"not an integer: {text!r}") from None


def _range(text: str) -> range:
    m = re.fullmatch(r"\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?", text)
    if not m:
        raise UsageError(f"expected N or LO..HI, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    return range(lo, hi + 1)


_TOKEN = re.compile(r"\s*(?:(\d+)|([ABCPSR])|([-+()]))")


def parse_expr(text: str) -> dict[str, int]:
    """Parse a linear combination of named points, e.g. ``2(R+P) - S``.

    Returns the coefficient of each generator.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise UsageError(f"bad point expression at {text[pos:]!r}")
        tokens.append(m.group(1) or m.group(2) or m.group(3))
        pos = m.end()
    tokens.append(None)
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        tok = tokens[i]
        i += 1
        return tok

    def expr():
        sign = 1
        if peek() in ("+", "-"):
            sign = -1 if take() == "-" else 1
        acc = scaled(term(), sign)
        while peek() in ("+", "-"):
            sign = -1 if take() == "-" else 1
            acc = combine(acc, scaled(term(), sign))
        return acc

    def term():
        k = 1
        if peek() is not None and peek().isdigit():
            k = int(take())
        tok = take()
        if tok == "(":
            inner = expr()
            if take() != ")":
                raise UsageError("unbalanced parentheses")
            return scaled(inner, k)
        if tok is not None and tok in "ABCPSR":
            return {tok: k}
        raise UsageError(f"expected generator or '(' in {text!r}")

    def scaled(v, k):
        return {g: k * c for g, c in v.items()}

    def combine(u, v):
        out = dict(u)
        for g, c in v.items():
            out[g] = out.get(g, 0) + c
        return out

    coeffs = expr()
    if peek() is not None:
        raise UsageError(f"trailing input in {text!r}")
    return {g: c for g, c in coeffs.items() if c}


# -- commands ---------------------------------------------------------------

def cmd_verify(args, out) -> int:
    t = _triple(args.triple)
    n = _int(args.n)
    if n == 0:
        raise UsageError("n must be nonzero")
    w = is_dn_set(t, n)
    inputs = {"triple": t, "n": n}
    if w is not None:
        _emit(out, make_record("verify", inputs, {"triple": t, "n": n, "holds": True, "witness": w}))
        return EXIT_OK
    failing = next([x, y] for x, y in ((t.a, t.b), (t.a, t.c), (t.b, t.c))
                   if is_square(x * y + n) is None)
    _emit(out, make_record("verify", inputs, {"triple": t, "n": n, "holds": False,
                                              "failing_pair": failing}))
    return EXIT_FALSE


CSV_FIELDS = ("n", "r", "s", "t", "degenerate")


def spectrum_rows(entries) -> list[dict]:
    return [{"n": e.n, "r": e.witness.r, "s": e.witness.s, "t": e.witness.t,
             "degenerate": e.degenerate} for e in entries]


def cmd_spectrum(args, out) -> int:
    t = _triple(args.triple)
    entries = spectrum(t)
    if args.csv:
        w = csv.DictWriter(out, fieldnames=CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        for row in spectrum_rows(entries):
            w.writerow({k: str(v).lower() if isinstance(v, bool) else str(v) for k, v in row.items()})
        return EXIT_OK
    result = {"triple": t, "count": len(entries),
              "entries": [{"n": e.n, "witness": e.witness, "degenerate": e.degenerate} for e in entries]}
    _emit(out, make_record("spectrum", {"triple": t}, result))
    return EXIT_OK


def cmd_curve(args, out) -> int:
    t = _triple(args.triple)
    spec = cv.induced_curve(t)
    named = cv.named_points(t).as_dict()
    inputs = {"triple": t}
    if args.point:
        parts = args.point.split(",")
        if len(parts) != 2:
            raise UsageError("--point expects x,y")
        try:
            pt = cv.Point(as_fraction(parts[0]), as_fraction(parts[1]))
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad point literal {args.point!r}") from None
        if not cv.is_on_curve(spec, pt):
            raise UsageError(f"{args.point} is not on the induced curve")
        inputs["point"] = args.point
        coeffs, in_2e = None, None
    else:
        coeffs = parse_expr(args.expr)
        missing = [g for g in coeffs if g not in named]
        if missing:
            raise UsageError(f"{t} is not a D(1)-set; generators {missing} are undefined")
        pt = cv.INFINITY
        for g, k in coeffs.items():
            pt = cv.add(spec, pt, cv.multiply(spec, k, named[g]))
        inputs["expr"] = args.expr
        # S = 2R, so S never breaks divisibility by 2
        in_2e = all(k % 2 == 0 for g, k in coeffs.items() if g != "S")
    result = {"triple": t, "point": pt, "integral": cv.is_integral(pt)}
    if coeffs is not None:
        result["coefficients"] = coeffs
    if pt is not cv.INFINITY:
        result["x_integral"] = pt.x.denominator == 1
        if pt.x.denominator == 1 and pt.x != 0:
            n = int(pt.x)
            w = is_dn_set(t, n)
            if w is None and in_2e:
                raise cv.InconsistencyError(f"x = {n} of a point in 2E(Q) failed D(n)")
            if w is not None:
                result["n"] = n
                result["witness"] = w
    _emit(out, make_record("curve", inputs, result))
    return EXIT_OK


def cmd_family(args, out) -> int:
    try:
        if args.name == "k":
            for k in _range(args.k):
                for branch, t in zip((-1, 1), fam.family_k(k)):
                    _emit(out, make_record("family", {"family": "k", "k": k, "branch": branch},
                                           {"triple": t, "n_list": [1]}))
            return EXIT_OK
        for i in _range(args.i):
            if args.name == "inf1":
                fo = fam.inf1(i)
            elif args.name == "inf2":
                fo = fam.inf2(i)
            else:
                fo = fam.inf3(_int(args.a), i, generalize=args.generalize)
            _emit(out, make_record("family", {"family": args.name, "i": i},
                                   {"triple": fo.triple, "n_list": list(fo.n_list),
                                    "provenance": fo.provenance}))
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    return EXIT_OK


def cmd_search(args, out) -> int:
    opts = {"workers": args.workers, "checkpoint": args.checkpoint}
    try:
        if args.kind == "s2p":
            rep = srch.search_s2p(args.a_max, args.b_max, args.c_max,
                                  require_2p_integral=not args.all_parities, **opts)
        elif args.kind == "fourth-n":
            rep = srch.search_fourth_n(args.i_max, **opts)
        else:
            rep = srch.search_family_k(args.k_max, args.min_spectrum, **opts)
    except srch.CheckpointMismatch as exc:
        raise UsageError(str(exc)) from None
    except srch.SearchInterrupted as exc:
        rep = exc.report
        _emit(out, make_record("search", {"kind": args.kind, **rep.params},
                               {"complete": False, "cursor": rep.cursor, "hits": rep.hits,
                                "counters": rep.counters}))
        return EXIT_INTERRUPTED
    for hit in rep.hits:
        _emit(out, make_record("search-hit", {"kind": args.kind}, hit))
    _emit(out, make_record("search", {"kind": args.kind, **rep.params},
                           {"complete": True, "cursor": rep.cursor, "hit_count": len(rep.hits),
                            "counters": rep.counters}))
    return EXIT_OK


def cmd_scale(args, out) -> int:
    t = _triple(args.triple)
    try:
        xs = json.loads(Path(args.xvalues).read_text())
        fr = [as_fraction(x) for x in xs]
    except (OSError, ValueError, TypeError) as exc:
        raise UsageError(f"cannot read x-values from {args.xvalues}: {exc}") from None
    try:
        sol = scale_solutions(t, fr)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    entries = [{"n": n, "witness": is_dn_set(sol.scaled_triple, n)} for n in sol.n_values]
    _emit(out, make_record("scale", {"triple": t, "xvalues": fr},
                           {"z": sol.z, "triple": sol.scaled_triple,
                            "n_values": list(sol.n_values), "entries": entries}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="diophlab", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", help="check whether a triple is a D(n)-set")
    s.add_argument("--triple", required=True)
    s.add_argument("--n", required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("spectrum", help="all n for which a triple is a D(n)-set")
    s.add_argument("--triple", required=True)
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON line (default)")
    fmt.add_argument("--csv", action="store_true")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("curve", help="evaluate a point on the induced curve")
    s.add_argument("--triple", required=True)
    what = s.add_mutually_exclusive_group(required=True)
    what.add_argument("--expr", help="linear combination over A,B,C,P,S,R, e.g. '2(R+P)'")
    what.add_argument("--point", help="explicit point x,y (rationals as num/den)")
    s.set_defaults(func=cmd_curve)

    s = sub.add_parser("family", help="members of the explicit families")
    s.add_argument("name", choices=("inf1", "inf2", "inf3", "k"))
    s.add_argument("--i", default="1", help="index or range LO..HI")
    s.add_argument("--a", default="4", help="base element for inf3")
    s.add_argument("--k", default="3", help="odd k or range for family k")
    s.add_argument("--generalize", action="store_true", help="allow inf3 with a != 4")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("search", help="run a resumable search")
    s.add_argument("kind", choices=("s2p", "fourth-n", "family-k"))
    s.add_argument("--a-max", type=int, default=1000)
    s.add_argument("--b-max", type=int, default=1000)
    s.add_argument("--c-max", type=int, default=10**6)
    s.add_argument("--all-parities", action="store_true",
                   help="s2p: also examine triples with a+b+c odd")
    s.add_argument("--i-max", type=int, default=1000)
    s.add_argument("--k-max", type=int, default=101)
    s.add_argument("--min-spectrum", type=int, default=4)
    s.add_argument("--checkpoint", type=Path)
    s.add_argument("--workers", type=int, default=None,
                   help="worker processes (default: $DIOPHLAB_WORKERS or 1)")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("scale", help="clear denominators of rational solutions")
    s.add_argument("--triple", required=True)
    s.add_argument("--xvalues", required=True, help='JSON list of "num/den" strings')
    s.set_defaults(func=cmd_scale)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, out)
    except (UsageError, DomainError) as exc:
        print(f"diophlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except cv.InconsistencyError as exc:
        print(f"diophlab: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_FALSE


if __name__ == "__main__":
    sys.exit(main())
