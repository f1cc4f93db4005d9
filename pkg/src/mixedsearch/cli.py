"""Command-line interface.

Exit codes: 0 success, 1 validation failure or inconsistency, 2 usage error,
3 resource guard exceeded. File arguments accept a path or the name of a
bundled corpus file (``c6.json``, ``sun3-ltd.json``, ...).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .bramble import TightBramble, is_tight_bramble, max_order_bramble, minimum_cover, order, trim_bramble
from .cartesian import build_product, canonical_ltd, embed_in_cartesian_product
from .corpus import bundled_names, resolve
from .decomposition import fullify, is_full, marginal_edges, validate, width
from .errors import InputError, MixedSearchError, ResourceGuardError, StrategyFault
from .game import SLIDE_RULES
from .graph import edge, sorted_edges, verify_minor_model, vkey
from .io import (
    bramble_from_json,
    bramble_to_json,
    decomposition_from_json,
    decomposition_to_dot,
    decomposition_to_json,
    dump_trace,
    dumps,
    graph_from_json,
    graph_to_dot,
    graph_to_json,
    model_to_json,
    read_json,
)
from .oracle import brute_avms, brute_mavms, verify_theorem
from .strategies import (
    LazyFugitive,
    ScriptedFugitive,
    fugitive_from_bramble,
    run_match,
    searcher_from_ltd,
    tree_searcher,
)

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _load_graph(arg: str):
    return graph_from_json(read_json(resolve(arg)))


def _load_ltd(arg: str, graph=None):
    path = resolve(arg)
    return decomposition_from_json(read_json(path), graph, path.parent)


def _load_bramble(arg: str, graph) -> list:
    return bramble_from_json(read_json(resolve(arg)))


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _edge_list(es) -> list:
    return [[vkey(a), vkey(b)] for a, b in sorted_edges(es)]


# -- subcommands ------------------------------------------------------------


def cmd_validate_ltd(args) -> int:
    g = _load_graph(args.graph)
    d = _load_ltd(args.ltd, g)
    report = validate(d)
    out = {"valid": report.ok}
    if report.ok:
        out["width"] = width(d)
        out["full"] = is_full(d)
        out["marginal_edges"] = _edge_list(marginal_edges(d).edges)
    else:
        out["condition"] = report.condition
        out["message"] = report.message
    if args.format == "dot":
        _emit(args, decomposition_to_dot(d))
    else:
        _emit(args, dumps(out))
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_fullify(args) -> int:
    g = _load_graph(args.graph)
    d = fullify(_load_ltd(args.ltd, g))
    _emit(args, decomposition_to_dot(d) if args.format == "dot" else dumps(decomposition_to_json(d)))
    return EXIT_OK


def cmd_cartesian(args) -> int:
    tree = _load_graph(args.tree)
    root = args.root if args.root is not None else tree.vertices[0] if tree.n else None
    cp = build_product(tree, args.k)
    d = canonical_ltd(tree, root, args.k)
    if args.format == "dot":
        _emit(args, graph_to_dot(cp.product))
    else:
        _emit(args, dumps({"k": args.k, "root": root, "product": graph_to_json(cp.product),
                           "decomposition": decomposition_to_json(d, graph_ref="product")}))
    return EXIT_OK


def cmd_embed(args) -> int:
    g = _load_graph(args.graph)
    d = _load_ltd(args.ltd, g)
    full = is_full(d) if validate(d) else False
    d = d if full else fullify(d)
    emb = embed_in_cartesian_product(d)
    check = verify_minor_model(emb.product.product, g, emb.model)
    out = model_to_json(emb.model)
    out.update({"k": emb.k, "tree": graph_to_json(emb.tree), "fullified": not full, "verified": check.ok})
    if not check.ok:
        out["violation"] = check.detail
    _emit(args, dumps(out))
    return EXIT_OK if check.ok else EXIT_INVALID


def cmd_bramble_order(args) -> int:
    g = _load_graph(args.graph)
    elements = _load_bramble(args.bramble, g)
    report = is_tight_bramble(g, elements)
    out = {"tight": report.ok, "order": order(g, elements),
           "cover": sorted(vkey(v) for v in minimum_cover(g, elements))}
    if not report.ok:
        out["message"] = report.message
    _emit(args, dumps(out))
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_bramble_max(args) -> int:
    g = _load_graph(args.graph)
    b, k = max_order_bramble(g)
    b = trim_bramble(g, b)
    out = bramble_to_json(b)
    out["order"] = k
    _emit(args, dumps(out))
    return EXIT_OK


def cmd_solve(args) -> int:
    g = _load_graph(args.graph)
    if args.monotone:
        out = {"mavms": brute_mavms(g, args.slide_rule)}
    else:
        out = {"avms": brute_avms(g, args.slide_rule)}
    _emit(args, dumps(out))
    return EXIT_OK


def cmd_strategy(args) -> int:
    g = _load_graph(args.graph)
    if args.ltd:
        d = _load_ltd(args.ltd, g)
        report = validate(d)
        if not report:
            raise InputError(f"invalid decomposition: {report.message}")
        strategy = searcher_from_ltd(d if is_full(d) else fullify(d))
    else:
        strategy = fugitive_from_bramble(TightBramble.of(g, _load_bramble(args.bramble, g)))
    _emit(args, dumps(strategy.describe()))
    return EXIT_OK


def _parse_edge(text: str):
    text = text.strip()
    for sep in ("-", ",", " "):
        if sep in text:
            u, v = (p.strip() for p in text.split(sep, 1))
            return edge(u, v)
    if len(text) == 2:
        return edge(text[0], text[1])
    raise InputError(f"cannot read an edge from {text!r}")


def _searcher(spec: str, g):
    kind, _, arg = spec.partition(":")
    if kind == "tree":
        return tree_searcher(g, arg or None)
    if kind == "ltd":
        if not arg:
            raise UsageError("ltd searcher needs ltd:FILE")
        d = _load_ltd(arg, g)
        report = validate(d)
        if not report:
            raise InputError(f"invalid decomposition: {report.message}")
        return searcher_from_ltd(d if is_full(d) else fullify(d))
    raise UsageError(f"unknown searcher spec {spec!r} (use tree[:START] or ltd:FILE)")


def _fugitive(spec: str, g, rule: str):
    kind, _, arg = spec.partition(":")
    if kind == "auto":
        return LazyFugitive(g, _parse_edge(arg) if arg else None, rule)
    if kind == "bramble":
        if not arg:
            raise UsageError("bramble fugitive needs bramble:FILE")
        return fugitive_from_bramble(TightBramble.of(g, _load_bramble(arg, g)), rule=rule)
    raise UsageError(f"unknown fugitive spec {spec!r} (use auto[:U-V] or bramble:FILE)")


def _interactive_fugitive(g, start_spec: str, rule: str, stdin, stderr):
    def ask(menu, prompt):
        while True:
            for i, e in enumerate(menu):
                stderr.write(f"  [{i}] {e[0]}-{e[1]}\n")
            stderr.write(prompt)
            stderr.flush()
            line = stdin.readline()
            if not line:
                raise InputError("input ended during interactive play")
            line = line.strip()
            if line.isdigit() and int(line) < len(menu):
                return menu[int(line)]
            try:
                e = _parse_edge(line)
            except InputError:
                e = None
            if e in menu:
                return e
            stderr.write(f"illegal choice {line!r}; pick one of the listed edges\n")

    kind, _, arg = start_spec.partition(":")
    start = _parse_edge(arg) if kind == "auto" and arg else None
    if start is None:
        start = ask(list(g.edges), "starting edge> ")

    def choose(space, s_prev, e, s_next):
        stderr.write(f"searchers now on {sorted(vkey(v) for v in s_next)}; you are on {e[0]}-{e[1]}\n")
        return ask(sorted_edges(space), "your edge> ")

    return ScriptedFugitive(g, start, choose, rule)


def cmd_match(args) -> int:
    g = _load_graph(args.graph)
    searcher = _searcher(args.searcher, g)
    if args.interactive_fugitive:
        fugitive = _interactive_fugitive(g, args.fugitive, args.slide_rule, sys.stdin, sys.stderr)
    else:
        fugitive = _fugitive(args.fugitive, g, args.slide_rule)
    result = run_match(g, searcher, fugitive, args.limit, args.slide_rule)
    _emit(args, dump_trace(result.play, {"verdict": result.verdict, "searcher": searcher.name,
                                         "fugitive": fugitive.name}))
    return EXIT_OK


def cmd_verify_theorem(args) -> int:
    if args.corpus:
        directory = Path(args.corpus)
        paths = sorted(p for p in directory.glob("*.json")) if directory.is_dir() else []
        if not paths:
            raise InputError(f"no corpus files in {args.corpus}")
        reports, ok = [], True
        for p in paths:
            obj = read_json(p)
            if not (isinstance(obj, dict) and "vertices" in obj):
                continue
            g = graph_from_json(obj)
            try:
                r = verify_theorem(g, args.slide_rule, constructive=not args.no_strategies).to_json()
            except ResourceGuardError as exc:
                reports.append({"file": p.name, "skipped": str(exc)})
                continue
            r["file"] = p.name
            ok &= r["consistent"]
            reports.append(r)
        _emit(args, dumps({"consistent": ok, "reports": reports}))
        return EXIT_OK if ok else EXIT_INVALID
    if not args.graph:
        raise UsageError("verify-theorem needs --graph or --corpus")
    g = _load_graph(args.graph)
    report = verify_theorem(g, args.slide_rule, constructive=not args.no_strategies)
    _emit(args, dumps(report.to_json()))
    return EXIT_OK if report.consistent else EXIT_INVALID


def cmd_list_corpus(args) -> int:
    _emit(args, "".join(name + "\n" for name in bundled_names()))
    return EXIT_OK


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mixedsearch", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"mixedsearch {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, output=True, rule=False, fmt=False):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        if output:
            p.add_argument("-o", "--output", help="write to this file instead of stdout")
        if rule:
            p.add_argument("--slide-rule", choices=SLIDE_RULES, default="directional")
        if fmt:
            p.add_argument("--format", choices=("json", "dot"), default="json")
        return p

    p = add("validate-ltd", cmd_validate_ltd, "check a loose tree-decomposition", fmt=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--ltd", required=True)

    p = add("fullify", cmd_fullify, "turn a decomposition into a full one of the same width", fmt=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--ltd", required=True)

    p = add("cartesian", cmd_cartesian, "build T□K_k and its canonical decomposition", fmt=True)
    p.add_argument("--tree", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--root")

    p = add("embed", cmd_embed, "minor model of a graph in T□K_k from its decomposition")
    p.add_argument("--graph", required=True)
    p.add_argument("--ltd", required=True)

    p = add("bramble-order", cmd_bramble_order, "order of a bramble")
    p.add_argument("--graph", required=True)
    p.add_argument("--bramble", required=True)

    p = add("bramble-max", cmd_bramble_max, "a tight bramble of maximum order")
    p.add_argument("--graph", required=True)

    p = add("solve", cmd_solve, "exact search number by exhaustive game solving", rule=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--monotone", action="store_true", help="solve the monotone variant")

    p = add("strategy", cmd_strategy, "describe the strategy derived from a certificate")
    p.add_argument("--graph", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--ltd")
    group.add_argument("--bramble")

    p = add("match", cmd_match, "play a searcher against a fugitive and print the trace", rule=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--searcher", required=True, help="tree[:START] or ltd:FILE")
    p.add_argument("--fugitive", default="auto", help="auto[:U-V] or bramble:FILE")
    p.add_argument("--limit", type=int, default=1000)
    p.add_argument("--interactive-fugitive", action="store_true", help="choose fugitive edges at a prompt")

    p = add("verify-theorem", cmd_verify_theorem, "cross-check every parameter on small graphs", rule=True)
    p.add_argument("--graph")
    p.add_argument("--corpus", help="directory of graph JSON files")
    p.add_argument("--no-strategies", action="store_true", help="skip the certificate-driven strategy checks")

    add("list-corpus", cmd_list_corpus, "list the bundled corpus files")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except ResourceGuardError as exc:
        sys.stderr.write(f"resource guard: {exc}\n")
        return EXIT_GUARD
    except (InputError, StrategyFault, MixedSearchError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
