"""JSON and DOT serialization for graphs, decompositions, brambles, models and play traces."""
from __future__ import annotations

import json
from collections.abc import Iterable
from pathlib import Path

from .bramble import TightBramble
from .decomposition import LooseTreeDecomposition
from .errors import InputError
from .game import CAPTURED, Play, SearcherMove, is_monotone
from .graph import Graph, edge, sorted_edges, sorted_vertices, vkey

TRACE_FORMAT = "mixedsearch-trace"
TRACE_VERSION = 1


def _ids(xs: Iterable) -> list[str]:
    return [vkey(x) for x in sorted_vertices(xs)]


def _edge_json(e) -> list[str]:
    return [vkey(e[0]), vkey(e[1])]


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def read_json(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


# -- graphs -----------------------------------------------------------------


def graph_to_json(g: Graph) -> dict:
    return {"vertices": _ids(g.vertices), "edges": [_edge_json(e) for e in g.edges]}


def graph_from_json(obj) -> Graph:
    if not isinstance(obj, dict) or "vertices" not in obj or "edges" not in obj:
        raise InputError('graph JSON needs "vertices" and "edges"')
    vs = [str(v) for v in obj["vertices"]]
    es = []
    for pair in obj["edges"]:
        if not isinstance(pair, list) or len(pair) != 2:
            raise InputError(f"edge {pair!r} is not a pair")
        es.append((str(pair[0]), str(pair[1])))
    return Graph(vs, es)


# -- decompositions -------------------------------------------------------------


def decomposition_to_json(d: LooseTreeDecomposition, graph_ref: str | None = None) -> dict:
    return {
        "nodes": [{"id": vkey(t), "bag": _ids(d.bags[t])} for t in d.tree.vertices],
        "tree_edges": [_edge_json(f) for f in d.tree.edges],
        "graph": graph_ref if graph_ref is not None else graph_to_json(d.graph),
    }


def decomposition_from_json(obj, graph: Graph | None = None, base: Path | None = None) -> LooseTreeDecomposition:
    """Read a decomposition; ``graph`` overrides an embedded graph or file reference."""
    if not isinstance(obj, dict) or "nodes" not in obj or "tree_edges" not in obj:
        raise InputError('decomposition JSON needs "nodes" and "tree_edges"')
    if graph is None:
        ref = obj.get("graph")
        if isinstance(ref, dict):
            graph = graph_from_json(ref)
        elif isinstance(ref, str):
            graph = graph_from_json(read_json((base or Path(".")) / ref))
        else:
            raise InputError("decomposition JSON has no graph and none was supplied")
    bags = {}
    for node in obj["nodes"]:
        nid = str(node["id"])
        if nid in bags:
            raise InputError(f"duplicate decomposition node {nid!r}")
        bags[nid] = [str(x) for x in node.get("bag", [])]
    tree = Graph(bags, [(str(a), str(b)) for a, b in obj["tree_edges"]])
    return LooseTreeDecomposition(tree, bags, graph)


# -- brambles and minor models ------------------------------------------------------


def bramble_to_json(b) -> dict:
    elements = b.elements if isinstance(b, TightBramble) else b
    return {"elements": [_ids(x) for x in elements]}


def bramble_from_json(obj) -> list[frozenset]:
    if not isinstance(obj, dict) or "elements" not in obj:
        raise InputError('bramble JSON needs "elements"')
    return [frozenset(str(x) for x in b) for b in obj["elements"]]


def model_to_json(model: dict) -> dict:
    return {"branch_sets": {vkey(x): _ids(model[x]) for x in sorted_vertices(model)}}


def model_from_json(obj) -> dict:
    if not isinstance(obj, dict) or "branch_sets" not in obj:
        raise InputError('model JSON needs "branch_sets"')
    return {str(x): frozenset(str(v) for v in vs) for x, vs in obj["branch_sets"].items()}


# -- play traces -------------------------------------------------------------------


def move_from_json(obj) -> SearcherMove:
    kind = obj.get("kind")
    if kind == "slide":
        return SearcherMove.slide(obj["from"], obj["to"])
    if kind in ("place", "remove"):
        return SearcherMove(kind, obj["vertex"])
    raise InputError(f"unknown move record {obj!r}")


def trace_records(p: Play) -> list[dict]:
    """One record per step: step 0 is the fugitive's opening edge."""
    records = [{
        "step": 0, "move": None, "searchers": [], "fugitive": _edge_json(p.fugitive[0]),
        "cleared_now": [], "monotone_so_far": True,
    }]
    for i, move in enumerate(p.moves, start=1):
        e = p.fugitive[i]
        prefix = Play(p.graph, p.positions[: i + 1], p.fugitive[: i + 1], p.moves[:i], p.cleared[:i])
        records.append({
            "step": i,
            "move": move.to_json(),
            "searchers": _ids(p.positions[i]),
            "fugitive": "CAPTURED" if e is CAPTURED else _edge_json(e),
            "cleared_now": [_edge_json(c) for c in sorted_edges(p.cleared[i - 1])],
            "monotone_so_far": is_monotone(prefix),
        })
    return records


def trace_header(g: Graph, extra: dict | None = None) -> dict:
    header = {"format": TRACE_FORMAT, "version": TRACE_VERSION, "graph": graph_to_json(g)}
    if extra:
        header.update(extra)
    return header


def dump_trace(p: Play, extra: dict | None = None) -> str:
    lines = [trace_header(p.graph, extra)] + trace_records(p)
    return "".join(json.dumps(r, sort_keys=True) + "\n" for r in lines)


def replay_trace(text: str, g: Graph | None = None, rule: str = "directional") -> Play:
    """Re-run a trace through the game engine; raises on any step it cannot reproduce."""
    from .game import replay

    rows = [json.loads(line) for line in text.splitlines() if line.strip()]
    if not rows or rows[0].get("format") != TRACE_FORMAT:
        raise InputError("missing trace header")
    graph = g or graph_from_json(rows[0]["graph"])
    steps = rows[1:]
    if not steps or steps[0]["step"] != 0:
        raise InputError("trace lacks the opening record")
    e1 = tuple(steps[0]["fugitive"])
    moves = [move_from_json(r["move"]) for r in steps[1:]]
    choices = [CAPTURED if r["fugitive"] == "CAPTURED" else edge(*r["fugitive"]) for r in steps[1:]]
    p = replay(graph, e1, moves, choices, rule)
    for r, pos in zip(steps[1:], p.positions[1:]):
        if r["searchers"] != _ids(pos):
            raise InputError(f"step {r['step']}: searcher set does not match the engine")
    return p


# -- DOT -----------------------------------------------------------------------------


def _q(x) -> str:
    return json.dumps(vkey(x))


def graph_to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {_q(v)};" for v in g.vertices]
    lines += [f"  {_q(u)} -- {_q(v)};" for u, v in g.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def decomposition_to_dot(d: LooseTreeDecomposition, name: str = "D") -> str:
    from .decomposition import marginal_edges

    marg = marginal_edges(d)
    lines = [f"graph {name} {{", "  node [shape=box];"]
    for t in d.tree.vertices:
        label = "{" + ",".join(_ids(d.bags[t])) + "}"
        lines.append(f"  {_q(t)} [label={json.dumps(vkey(t) + ': ' + label)}];")
    for f in d.tree.edges:
        extra = ""
        if marg.get(f):
            extra = f" [style=dashed, label={json.dumps(' '.join(vkey(a) + vkey(b) for a, b in marg[f]))}]"
        lines.append(f"  {_q(f[0])} -- {_q(f[1])}{extra};")
    lines.append("}")
    return "\n".join(lines) + "\n"
