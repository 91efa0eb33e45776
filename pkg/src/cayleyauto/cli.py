"""Command line front end.

Exit codes: 0 on success, 1 for domain errors (reported with their
module-qualified code), 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .classify import classify
from .core import parse_automaton
from .errors import AutomatonError, BadIndex
from .frequency import DEFAULT_TOL, empirical_counts, frequency_report
from .groups import PermGroup, cayley_automaton, corpus, parse_permutations
from .kernel import build_kernel_graph
from .rational import L_multivariate, L_univariate
from .report import (
    automaton_report,
    classification_report,
    eval_report,
    fraction_report,
    frequency_json,
    kernel_report,
    render_text,
    to_json,
)


def load(source: str):
    """Read an automaton file, or fall back to a built-in corpus name."""
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            return parse_automaton(fh.read())
    return corpus(source)


def _range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cayleyauto",
                                 description="Kernels, classes, fractions and letter frequencies "
                                             "of automatic sequences.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--order", choices=("bfs", "labels"), default="bfs",
                        help="vertex order of the kernel graph")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_, source=True):
        p = sub.add_parser(name, parents=[common], help=help_)
        if source:
            p.add_argument("source", help="automaton file or corpus name")
        return p

    add("validate", "parse and print the canonical form")
    p = add("eval", "print terms a_A..a_B")
    p.add_argument("--n", type=_range, default=(1, 16), metavar="A..B")
    add("kernel", "the kernel graph and its monoid")
    add("classify", "sequence classes and certificates")
    p = add("fraction", "the rational fraction L")
    p.add_argument("--multivariate", action="store_true")
    p.add_argument("--vertex", type=int, default=None, help="kernel vertex (default: base)")
    p = add("freq", "letter frequencies along n = p^k")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--empirical", type=int, nargs="+", metavar="N", default=[],
                   help="also count letters directly up to p^N")
    p = add("from-group", "Cayley automaton of a permutation group", source=False)
    p.add_argument("--gens", nargs="+", required=True, help='generators, e.g. "(1,2,3)"')
    p.add_argument("--K", nargs="*", default=[], help="generators of the label subgroup")
    p.add_argument("--degree", type=int, default=None)
    p = add("corpus", "print a built-in automaton", source=False)
    p.add_argument("name")
    return ap


def execute(args) -> dict:
    cmd = args.command
    if cmd == "corpus":
        return automaton_report(corpus(args.name))
    if cmd == "from-group":
        gens = parse_permutations(args.gens + args.K, args.degree)
        G = PermGroup(gens[: len(args.gens)])
        K = G.subgroup(gens[len(args.gens):])
        return automaton_report(cayley_automaton(G, K))
    aut = load(args.source)
    if cmd == "validate":
        return automaton_report(aut)
    if cmd == "eval":
        lo, hi = args.n
        if lo < 1 or hi < lo:
            raise BadIndex(f"invalid index range {lo}..{hi} (indices start at 1)")
        return eval_report(aut, lo, hi)
    graph = build_kernel_graph(aut, order=args.order)
    if cmd == "kernel":
        return kernel_report(graph)
    if cmd == "classify":
        return classification_report(classify(graph), graph)
    if cmd == "fraction":
        u = graph.base if args.vertex is None else args.vertex
        if not 0 <= u < graph.size:
            raise BadIndex(f"vertex {u} out of range 0..{graph.size - 1}")
        L = L_multivariate(graph, u) if args.multivariate else L_univariate(graph, u)
        return fraction_report(L, u)
    if cmd == "freq":
        rep = frequency_report(L_univariate(graph), aut.p, tol=args.tol)
        counts = [empirical_counts(aut, n) for n in args.empirical]
        return frequency_json(rep, counts)
    raise AssertionError(cmd)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rep = execute(args)
    except AutomatonError as exc:
        err = {"kind": "error", **exc.to_dict()}
        if args.format == "json":
            print(to_json(err))
        else:
            print(render_text(err), file=sys.stderr)
        return 1
    print(to_json(rep) if args.format == "json" else render_text(rep))
    return 0


if __name__ == "__main__":
    sys.exit(main())
