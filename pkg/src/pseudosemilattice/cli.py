"""Command-line front end.

Exit codes: 0 for success or a true decision, 1 for a false decision,
2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Sequence, TextIO

from .bigraph import GraphError, delta, from_json, to_dot, to_json
from .model import AlgebraError, FiniteAlgebra, check_axioms, e2, find_counterexample, load_algebra
from .order import compare, enumerate_class, enumerate_component
from .rewrite import NormalForm, equal_ps, theta
from .term import TermSyntaxError, format_term, parse_term
from .variety import equal_sps, family_pair, is_elementary, lambda_witness, some_word

BUILTIN_E2 = "builtin:e2"


class _UsageError(Exception):
    pass


def _read(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    try:
        return Path(source).read_text()
    except OSError as exc:
        raise _UsageError(f"cannot read {source}: {exc.strerror}") from None


def _algebra(source: str) -> FiniteAlgebra:
    return e2() if source == BUILTIN_E2 else load_algebra(_read(source))


def _nf_text(a: NormalForm) -> str:
    g = a.graph
    return f"{format_term(some_word(g))}\t{len(g.vertices)} vertices\t{a.key}"


def _nf_json(a: NormalForm) -> dict:
    return {"word": format_term(some_word(a.graph)), "key": a.key, "graph": json.loads(to_json(a.graph))}


def _emit_graph(out: TextIO, a: NormalForm, fmt: str) -> None:
    if fmt == "json":
        out.write(json.dumps(_nf_json(a)) + "\n")
    elif fmt == "dot":
        out.write(to_dot(a.graph) + "\n")
    else:
        out.write(_nf_text(a) + "\n")


def _emit_set(out: TextIO, items: set[NormalForm], fmt: str) -> None:
    ordered = sorted(items, key=lambda a: a.key)
    if fmt == "json":
        out.write(json.dumps({"size": len(ordered), "elements": [_nf_json(a) for a in ordered]}) + "\n")
        return
    out.write(f"size {len(ordered)}\n")
    for a in ordered:
        out.write(_nf_text(a) + "\n")


def cmd_normalize(ns, out) -> int:
    _emit_graph(out, theta(parse_term(ns.term)), ns.format)
    return 0


def cmd_eq(ns, out) -> int:
    decide = equal_ps if ns.theory == "ps" else equal_sps
    if ns.basis is not None:
        if ns.terms:
            raise _UsageError("--basis takes no terms")
        pair = family_pair("A", ns.basis)
        u, v = pair.upper_word, pair.lower_word
    else:
        if len(ns.terms) != 2:
            raise _UsageError("eq needs two terms (or --basis N)")
        u, v = (parse_term(t) for t in ns.terms)
    same = decide(u, v)
    if ns.format == "json":
        out.write(json.dumps({"theory": ns.theory, "u": format_term(u), "v": format_term(v), "equal": same}) + "\n")
    else:
        out.write(("equal" if same else "not equal") + "\n")
    return 0 if same else 1


def cmd_order(ns, out) -> int:
    b, a = theta(parse_term(ns.first)), theta(parse_term(ns.second))
    rec = asdict(compare(b, a))
    if ns.format == "json":
        out.write(json.dumps(rec) + "\n")
    else:
        for k, v in rec.items():
            out.write(f"{k}\t{str(v).lower()}\n")
    return 0


def cmd_class(ns, out) -> int:
    _emit_set(out, enumerate_class(theta(parse_term(ns.term)), ns.side.upper()), ns.format)
    return 0


def cmd_component(ns, out) -> int:
    _emit_set(out, enumerate_component(theta(parse_term(ns.term))), ns.format)
    return 0


def cmd_basis(ns, out) -> int:
    pair = family_pair(ns.family, ns.n)
    elementary = is_elementary(pair.upper, pair.lower)
    if ns.format == "json":
        out.write(
            json.dumps(
                {
                    "family": pair.family,
                    "n": pair.n,
                    "elementary": elementary,
                    "upper": _nf_json(pair.upper),
                    "lower": _nf_json(pair.lower),
                }
            )
            + "\n"
        )
    elif ns.format == "dot":
        out.write(to_dot(pair.upper.graph, "upper") + "\n")
        out.write(to_dot(pair.lower.graph, "lower") + "\n")
    else:
        out.write(f"upper\t{format_term(pair.upper_word)}\t{len(pair.upper)} vertices\n")
        out.write(f"lower\t{format_term(pair.lower_word)}\t{len(pair.lower)} vertices\n")
        out.write(f"elementary\t{str(elementary).lower()}\n")
    return 0


def cmd_lambda(ns, out) -> int:
    g, m = lambda_witness(ns.n, ns.k)
    if ns.format == "json":
        out.write(json.dumps({"word": format_term(m), "graph": json.loads(to_json(g))}) + "\n")
    elif ns.format == "dot":
        out.write(to_dot(g) + "\n")
    else:
        out.write(f"{format_term(m)}\n{len(g.vertices)} vertices\n")
    return 0


def cmd_axioms(ns, out) -> int:
    report = check_axioms(_algebra(ns.file))
    if ns.format == "json":
        out.write(json.dumps([asdict(r) for r in report]) + "\n")
    else:
        for r in report:
            line = f"{r.name}\t{'pass' if r.holds else 'FAIL'}"
            if r.counterexample:
                line += "\t" + ", ".join(f"{x}={e}" for x, e in r.counterexample.items())
            out.write(line + "\n")
    return 0 if all(r.holds for r in report) else 1


def cmd_model_eq(ns, out) -> int:
    m = _algebra(ns.file)
    u, v = parse_term(ns.u), parse_term(ns.v)
    cex = find_counterexample(m, u, v)
    if ns.format == "json":
        out.write(json.dumps({"holds": cex is None, "counterexample": cex}) + "\n")
    elif cex is None:
        out.write("holds\n")
    else:
        out.write("fails at " + ", ".join(f"{x}={e}" for x, e in cex.items()) + "\n")
    return 0 if cex is None else 1


def cmd_render(ns, out) -> int:
    if ns.kind == "term":
        t = parse_term(ns.input)
        g = theta(t).graph if ns.reduced else delta(t)
    else:
        try:
            data = json.loads(_read(ns.input))
        except json.JSONDecodeError as exc:
            raise GraphError(f"malformed graph JSON: {exc}") from None
        # accept the wrapped output of normalize/lambda as well as a bare graph
        if isinstance(data, dict) and "graph" in data:
            data = data["graph"]
        g = from_json(data)
    out.write(to_dot(g) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json", "dot"), default="text")
    plain = argparse.ArgumentParser(add_help=False)
    plain.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="pseudosemilattice", description="Normal forms and identities of pseudosemilattices.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("normalize", parents=[fmt], help="reduced graph of a term")
    s.add_argument("term")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("eq", parents=[plain], help="decide an identity")
    s.add_argument("--theory", choices=("ps", "sps"), required=True)
    s.add_argument("--basis", type=int, metavar="N", help="compare the generated basis words for n=N")
    s.add_argument("terms", nargs="*", metavar="TERM")
    s.set_defaults(func=cmd_eq)

    s = sub.add_parser("order", parents=[plain], help="relations of the first term to the second")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_order)

    s = sub.add_parser("class", parents=[plain], help="R- or L-class of a term")
    s.add_argument("--side", choices=("r", "l"), required=True)
    s.add_argument("term")
    s.set_defaults(func=cmd_class)

    s = sub.add_parser("component", parents=[plain], help="connected component of a term")
    s.add_argument("term")
    s.set_defaults(func=cmd_component)

    s = sub.add_parser("basis", parents=[fmt], help="a basis pair")
    s.add_argument("--family", choices=("a", "c", "m", "n"), type=str.lower, required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_basis)

    s = sub.add_parser("lambda", parents=[fmt], help="the chain graph and its word")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_lambda)

    s = sub.add_parser("axioms", parents=[plain], help="check the five axioms on a finite algebra")
    s.add_argument("file", help=f"algebra JSON path, '-' for stdin, or {BUILTIN_E2}")
    s.set_defaults(func=cmd_axioms)

    s = sub.add_parser("model-eq", parents=[plain], help="check an identity in a finite algebra")
    s.add_argument("file", help=f"algebra JSON path, '-' for stdin, or {BUILTIN_E2}")
    s.add_argument("u")
    s.add_argument("v")
    s.set_defaults(func=cmd_model_eq)

    s = sub.add_parser("render", help="DOT for a term or a graph JSON file")
    s.add_argument("kind", choices=("term", "graph"))
    s.add_argument("input", help="a term, or a graph JSON path ('-' for stdin)")
    s.add_argument("--reduced", action="store_true", help="render the normal form of a term")
    s.set_defaults(func=cmd_render)
    return p


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return ns.func(ns, out)
    except TermSyntaxError as exc:
        err.write(f"error: bad term: {exc}\n")
    except (GraphError, AlgebraError, ValueError, _UsageError) as exc:
        err.write(f"error: {exc}\n")
    return 2


def main() -> None:
    sys.exit(run())
