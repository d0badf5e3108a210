"""Command-line entry point: ``tdlcrank <command> ...``.

Exit codes: 0 success, 1 parse or usage error, 2 ill-formed expression or
violated hypothesis, 3 evaluation error (overflow, domain).  Results go to
stdout, diagnostics to stderr.  With ``--json`` every command prints exactly
one JSON document on stdout, including errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from . import tree as T
from .builder import build_and_verify, build_group
from .chains import witness_chain
from .checks import run_selftest
from .errors import (
    HypothesisError,
    IllFormedError,
    NoWitnessChainError,
    OrdinalDomainError,
    OrdinalError,
    OrdinalOverflowError,
    ParseError,
)
from .ordinal import compare
from .parsing import parse_automorphism, parse_group_expr, parse_ordinal, parse_vertex, print_group_expr
from .rank import eval_rank, monolith_rank

EXIT_OK, EXIT_PARSE, EXIT_HYPOTHESIS, EXIT_EVAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; 2 is reserved for hypothesis violations
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _classify(exc: BaseException):
    if isinstance(exc, (ParseError, UsageError, OSError)):
        return EXIT_PARSE, "parse" if isinstance(exc, ParseError) else "usage"
    if isinstance(exc, IllFormedError):
        return EXIT_HYPOTHESIS, "ill-formed"
    if isinstance(exc, (HypothesisError, NoWitnessChainError, T.TreeError)):
        return EXIT_HYPOTHESIS, "hypothesis"
    if isinstance(exc, OrdinalOverflowError):
        return EXIT_EVAL, "overflow"
    if isinstance(exc, (OrdinalDomainError, OrdinalError)):
        return EXIT_EVAL, "domain"
    return EXIT_EVAL, "evaluation"


# -- commands ----------------------------------------------------------------
# each returns (exit code, text lines, json payload)


def cmd_ord_eval(args):
    o = parse_ordinal(args.expr)
    return EXIT_OK, [str(o)], {"value": str(o)}


def cmd_ord_cmp(args):
    a, b = parse_ordinal(args.a), parse_ordinal(args.b)
    c = int(compare(a, b))
    sym = {-1: "<", 0: "=", 1: ">"}[c]
    return EXIT_OK, [f"{a} {sym} {b}"], {"a": str(a), "b": str(b), "cmp": c}


def cmd_rank_eval(args):
    expr = parse_group_expr(args.expr)
    res = eval_rank(expr, use_chains=not args.no_chains)
    lines = [res.text()]
    if args.trace:
        lines += [f"  {s.rule} [{s.cite}] -> {s.value}" for s in res.trace]
    payload = res.to_json()
    if not args.trace:
        payload.pop("trace")
    payload["expr"] = print_group_expr(expr)
    return EXIT_OK, lines, payload


def cmd_rank_build(args):
    target = parse_ordinal(args.target)
    if args.verify:
        expr, _ = build_and_verify(target, seed=args.seed_name)
    else:
        expr = build_group(target, seed=args.seed_name)
    text = print_group_expr(expr)
    lines = [text] + (["verified"] if args.verify else [])
    return EXIT_OK, lines, {"target": str(target), "expr": text, "verified": bool(args.verify)}


def cmd_chain(args):
    expr = parse_group_expr(args.expr)
    chain = witness_chain(expr)
    entries = chain.sample(args.samples)
    lines = [f"length {chain.length}"]
    for e in entries:
        lines.append(f"  [{e.index}] height {e.height}: {print_group_expr(e.expr)}")
    payload = {
        "expr": print_group_expr(expr),
        "length": str(chain.length),
        "entries": [
            {"index": str(e.index), "height": str(e.height), "expr": print_group_expr(e.expr),
             "rank": eval_rank(e.expr).text(), "path": e.path}
            for e in entries
        ],
    }
    return EXIT_OK, lines, payload


def cmd_mono(args):
    expr = parse_group_expr(args.expr)
    r = monolith_rank(expr)
    return EXIT_OK, [str(r)], {"expr": print_group_expr(expr), "value": str(r)}


def cmd_tree_selftest(args):
    if args.branching < 2:
        raise UsageError("--branching must be at least 2")
    if args.cases < 1:
        raise UsageError("--cases must be positive")
    results = run_selftest(args.branching, args.seed, args.cases)
    ok = all(r.passed for r in results)
    lines = [f"{r.name}: {'PASS' if r.passed else 'FAIL'} ({r.cases} cases)" for r in results]
    for r in results:
        lines += [f"  {msg}" for msg in r.failures]
    payload = {"branching": args.branching, "seed": args.seed, "passed": ok,
               "checks": [r.as_dict() for r in results]}
    return (EXIT_OK if ok else EXIT_EVAL), lines, payload


def cmd_tree_apply(args):
    g = parse_automorphism(args.elem, args.branching)
    v = parse_vertex(args.vertex, g.branching)
    out = T.apply(g, v)
    return EXIT_OK, [str(out)], {"vertex": str(v), "image": str(out)}


def _read_generators(path: str, b: Optional[int]) -> List[T.TreeAutomorphism]:
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    gens = []
    for line in lines:
        line = line.split("#", 1)[0].strip()
        if line:
            gens.append(parse_automorphism(line, b))
    if not gens:
        raise UsageError(f"{path}: no generators")
    widths = {x.branching for x in gens}
    if len(widths) != 1:
        raise T.TreeError(f"generators disagree on branching: {sorted(widths)}")
    return gens


def cmd_tree_orbit(args):
    gens = _read_generators(args.gens_file, args.branching)
    b = gens[0].branching
    start = parse_vertex(args.vertex, b)
    if args.eta_min > args.eta_max or args.wmax < 0:
        raise UsageError("need eta-min <= eta-max and wmax >= 0")
    got = sorted(T.orbit(gens, start, args.eta_min, args.eta_max, args.wmax))
    return EXIT_OK, [str(v) for v in got], {"start": str(start), "count": len(got),
                                            "vertices": [str(v) for v in got]}


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print one JSON document")

    p = _Parser(prog="tdlcrank", description="Decomposition ranks of elementary groups.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ord_p = sub.add_parser("ord", help="ordinal arithmetic")
    ord_sub = ord_p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = ord_sub.add_parser("eval", parents=[common], help="normalize an ordinal expression")
    q.add_argument("expr")
    q.set_defaults(func=cmd_ord_eval)
    q = ord_sub.add_parser("cmp", parents=[common], help="compare two ordinals")
    q.add_argument("a")
    q.add_argument("b")
    q.set_defaults(func=cmd_ord_cmp)

    rank_p = sub.add_parser("rank", help="rank evaluation and construction")
    rank_sub = rank_p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = rank_sub.add_parser("eval", parents=[common], help="evaluate the rank of a group expression")
    q.add_argument("expr")
    q.add_argument("--trace", action="store_true", help="show the rule trace")
    q.add_argument("--no-chains", action="store_true", help="disable the witnessing-chain rule")
    q.set_defaults(func=cmd_rank_eval)
    q = rank_sub.add_parser("build", parents=[common], help="build a group of a given rank")
    q.add_argument("target")
    q.add_argument("--verify", action="store_true", help="re-evaluate and check the fixpoint")
    q.add_argument("--seed-name", default="s", help="name of the seed atom (default: s)")
    q.set_defaults(func=cmd_rank_build)

    q = sub.add_parser("chain", parents=[common], help="sample a witnessing chain")
    q.add_argument("expr")
    q.add_argument("--samples", type=int, default=4, help="entries per CNF block (default: 4)")
    q.set_defaults(func=cmd_chain)

    q = sub.add_parser("mono", parents=[common], help="rank of the monolith of an EX node")
    q.add_argument("expr")
    q.set_defaults(func=cmd_mono)

    tree_p = sub.add_parser("tree", help="tree automorphism simulator")
    tree_sub = tree_p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = tree_sub.add_parser("selftest", parents=[common], help="run the randomised identity checks")
    q.add_argument("--branching", type=int, default=3)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--cases", type=int, default=100)
    q.set_defaults(func=cmd_tree_selftest)
    q = tree_sub.add_parser("apply", parents=[common], help="apply an element to a vertex")
    q.add_argument("elem")
    q.add_argument("vertex")
    q.add_argument("--branching", type=int, default=None)
    q.set_defaults(func=cmd_tree_apply)
    q = tree_sub.add_parser("orbit", parents=[common], help="orbit of a vertex inside a window")
    q.add_argument("gens_file", metavar="gens-file", help="one element per line, '#' comments")
    q.add_argument("vertex")
    q.add_argument("--eta-min", type=int, required=True)
    q.add_argument("--eta-max", type=int, required=True)
    q.add_argument("--wmax", type=int, required=True)
    q.add_argument("--branching", type=int, default=None)
    q.set_defaults(func=cmd_tree_orbit)
    return p


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    want_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        code, lines, payload = args.func(args)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except Exception as exc:  # every failure maps to a documented exit code
        code, kind = _classify(exc)
        msg = str(exc)
        print(f"error ({kind}): {msg}", file=stderr)
        if want_json:
            err = {"kind": kind, "message": msg}
            if isinstance(exc, ParseError):
                err["offset"] = exc.offset
            if isinstance(exc, IllFormedError):
                err["violations"] = list(exc.violations)
            print(json.dumps({"ok": False, "error": err}, sort_keys=True), file=stdout)
        return code
    if want_json:
        print(json.dumps({"ok": code == EXIT_OK, "result": payload}, sort_keys=True), file=stdout)
    else:
        for line in lines:
            print(line, file=stdout)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
