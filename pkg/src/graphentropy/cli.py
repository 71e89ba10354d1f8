"""Command-line front end: ``graphentropy <command> [options]``.

Every command prints one report (JSON by default) with the command echo,
sha256 digests of the input files, results, a status and the wall time.
Exit codes: 0 success, 2 input or usage error, 3 budget exceeded or
undetermined.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import codes, entropic, network, serialize
from .errors import BudgetExceeded, LPError, ParseError, Undetermined
from .graph import enumerate_tournaments, max_induced_acyclic, minimal_split, parse_graph

EXIT_OK, EXIT_INPUT, EXIT_BUDGET = 0, 2, 3


class _InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _InputError(f"usage: {message}")


def _read(path: str, digests: dict) -> str:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror}") from None
    digests[path] = serialize.sha256_text(data)
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError:
        raise _InputError(f"{path}: not UTF-8 text") from None


def _ineq(args, digests):
    sel = args.ineq
    if sel in ("shannon", "zy"):
        return sel
    if sel.startswith("file:"):
        path = sel[len("file:"):]
        try:
            return entropic.load_inequality_set(_read(path, digests), name=path)
        except ParseError as exc:
            raise ParseError(f"{path}: {exc}") from None
    raise _InputError(f"--ineq must be shannon, zy or file:PATH, got {sel!r}")


def _graph(args, digests):
    try:
        return parse_graph(_read(args.graph, digests))
    except ParseError as exc:
        raise ParseError(f"{args.graph}: {exc}") from None


def _network(args, digests):
    try:
        return network.parse_network(_read(args.network, digests))
    except ParseError as exc:
        raise ParseError(f"{args.network}: {exc}") from None


# ---------------------------------------------------------------- commands

def cmd_guess(args, digests):
    g = _graph(args, digests)
    if args.mode == "exact":
        code = codes.max_graph_code(g, args.s)
        return "ok", {"value": codes.LogValue(len(code), args.s),
                      "code": code, "code_valid": codes.validate_code(g, code)}
    b = codes.guessing_bounds(g, args.s)
    res = {"lower": b.lower, "upper": b.upper, "closed": b.closed,
           "code": b.code, "code_valid": codes.validate_code(g, b.code)}
    if b.closed:
        res["value"] = b.upper
    return ("ok" if b.closed else "bounds"), res


def cmd_entropy(args, digests):
    g = _graph(args, digests)
    return "ok", {"value": entropic.entropy_bound(g, _ineq(args, digests), args.groups),
                  "ineq": args.ineq}


def cmd_index_code(args, digests):
    g = _graph(args, digests)
    colouring = None
    if args.coloring:
        mapping = json.loads(_read(args.coloring, digests))
        colouring = codes.coloring_from_mapping(g, args.s, mapping.get("colours", mapping))
    ic = codes.min_index_code(g, args.s, args.mode, coloring=colouring)
    res = {"value": ic.length, "messages": ic.messages, "exact": ic.exact,
           "public_guessing_number": codes.Complement(g.n, ic.length),
           "valid": codes.is_index_coloring(g, args.s, ic.colours)}
    if args.witness:
        res["coloring"] = ic
    return "ok" if ic.exact else "upper-bound", res


def cmd_index_bound(args, digests):
    g = _graph(args, digests)
    return "ok", {"value": entropic.index_code_bound(g, _ineq(args, digests), args.groups),
                  "ineq": args.ineq}


def cmd_split(args, digests):
    g = _graph(args, digests)
    B = sorted(minimal_split(g)) if args.B is None else sorted(args.B)
    net = network.split_graph(g, B)
    return "ok", {"split": B, "k": net.k, "minimal": len(B) == len(minimal_split(g)),
                  "acyclic_independence": max_induced_acyclic(g)[0],
                  "pairs": [list(p) for p in net.pairs], "network": net.to_text()}


def cmd_identify(args, digests):
    net = _network(args, digests)
    g = network.identify(net)
    return "ok", {"n": g.n, "edges": [list(e) for e in sorted(g.edges)], "graph": g.to_text()}


def cmd_solve(args, digests):
    net = _network(args, digests)
    res = {"k": net.k, "s": args.s}
    if args.assignment:
        asg = serialize.load_assignment(_read(args.assignment, digests))
        res["assignment_solves"] = network.is_solution(net, asg, args.s)
    try:
        res["solvable"] = network.is_solvable(net, args.s, args.mode)
    except Undetermined as exc:
        res.update(solvable=None, lower=exc.lower, upper=exc.upper)
        return "undetermined", res
    return "ok", res


def cmd_capacity11(args, digests):
    net = _network(args, digests)
    g = network.identify(net)
    bound = entropic.entropy_bound(g, _ineq(args, digests), args.groups)
    return "ok", {"k": net.k, "entropy": bound, "capacity11": bound >= net.k,
                  "ineq": args.ineq}


def cmd_tournaments(args, digests):
    reps = enumerate_tournaments(args.n)
    res = {"n": args.n, "classes": len(reps)}
    if args.report_entropy:
        rows = []
        for t in reps:
            e = entropic.entropy_bound(t)
            row = {"edges": [list(x) for x in sorted(t.edges)], "entropy": e,
                   "integral": e.denominator == 1}
            if args.s:
                row["guessing_number"] = codes.guessing_number(t, args.s)
                row["guess_le_entropy"] = row["guessing_number"] <= e
            rows.append(row)
        res["tournaments"] = rows
        res["all_integral"] = all(r["integral"] for r in rows)
    return "ok", res


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    p = _Parser(prog="graphentropy", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    def ineq_opts(q):
        q.add_argument("--ineq", default="shannon", help="shannon, zy or file:PATH")
        q.add_argument("--groups", choices=entropic.POLICIES, default=None)

    q = sub.add_parser("guess", help="guessing number")
    q.add_argument("--graph", required=True)
    q.add_argument("--s", type=int, required=True)
    q.add_argument("--mode", choices=("exact", "sandwich"), default="exact")
    q.set_defaults(func=cmd_guess)

    q = sub.add_parser("entropy", help="LP bound on the graph entropy")
    q.add_argument("--graph", required=True)
    ineq_opts(q)
    q.set_defaults(func=cmd_entropy)

    q = sub.add_parser("index-code", help="shortest index code")
    q.add_argument("--graph", required=True)
    q.add_argument("--s", type=int, required=True)
    q.add_argument("--mode", choices=("exact", "construct"), default="exact")
    q.add_argument("--coloring", help="JSON word -> colour mapping to consider")
    q.add_argument("--witness", action="store_true", help="include the colouring")
    q.set_defaults(func=cmd_index_code)

    q = sub.add_parser("index-bound", help="LP lower bound on the index code")
    q.add_argument("--graph", required=True)
    ineq_opts(q)
    q.set_defaults(func=cmd_index_bound)

    q = sub.add_parser("split", help="split a graph into a multiple-unicast network")
    q.add_argument("--graph", required=True)
    q.add_argument("--B", type=int, nargs="*", help="split set (default: a minimal one)")
    q.set_defaults(func=cmd_split)

    q = sub.add_parser("identify", help="merge each source with its target")
    q.add_argument("--network", required=True)
    q.set_defaults(func=cmd_identify)

    q = sub.add_parser("solve", help="network solvability over a fixed alphabet")
    q.add_argument("--network", required=True)
    q.add_argument("--s", type=int, required=True)
    q.add_argument("--mode", choices=("auto", "exact", "sandwich"), default="auto")
    q.add_argument("--assignment", help="JSON coding assignment to check")
    q.set_defaults(func=cmd_solve)

    q = sub.add_parser("capacity11", help="(1,1) coding capacity test")
    q.add_argument("--network", required=True)
    ineq_opts(q)
    q.set_defaults(func=cmd_capacity11)

    q = sub.add_parser("tournaments", help="tournament isomorphism classes")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--report-entropy", action="store_true")
    q.add_argument("--s", type=int, default=None)
    q.set_defaults(func=cmd_tournaments)
    return p


def _text(obj, indent=0) -> list:
    pad = "  " * indent
    lines = []
    for k, v in obj.items():
        if isinstance(v, dict) and ("num" in v or "count" in v):
            if "num" in v:
                exact = f"{v['num']}/{v['den']}" if v["den"] != 1 else str(v["num"])
            else:
                exact = f"log_{v['base']}({v['count']})"
            lines.append(f"{pad}{k}: {exact} ({v['decimal']})")
        elif isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines += _text(v, indent + 1)
        elif isinstance(v, str) and "\n" in v:
            lines.append(f"{pad}{k}:")
            lines += [pad + "  " + ln for ln in v.rstrip("\n").splitlines()]
        else:
            lines.append(f"{pad}{k}: {json.dumps(v) if not isinstance(v, str) else v}")
    return lines


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    start = time.perf_counter()
    digests: dict = {}
    report = {"command": argv, "inputs": digests}
    fmt = "json"
    try:
        args = build_parser().parse_args(argv)
        fmt = getattr(args, "format", "json")
        status, results = args.func(args, digests)
        report.update(status=status, results=results)
        code = EXIT_OK
    except (ParseError, _InputError, ValueError) as exc:
        report.update(status="input-error", error=str(exc))
        code = EXIT_INPUT
    except (BudgetExceeded, Undetermined) as exc:
        report.update(status="budget" if isinstance(exc, BudgetExceeded) else "undetermined",
                      error=str(exc))
        code = EXIT_BUDGET
    except LPError as exc:
        report.update(status="lp-error", error=str(exc))
        code = 1
    if report.get("status") == "undetermined":
        code = EXIT_BUDGET
    report["wall_time_ms"] = round((time.perf_counter() - start) * 1000, 3)
    encoded = serialize.to_json(report)
    if fmt == "text":
        out.write("\n".join(_text(encoded)) + "\n")
    else:
        out.write(json.dumps(encoded, sort_keys=True, indent=2) + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
