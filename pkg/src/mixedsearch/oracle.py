"""Brute-force ground truth on small graphs.

* :func:`brute_avms` and :func:`brute_mavms` solve the search game as a
  reachability game by least-fixpoint (attractor) iteration.
* :func:`brute_min_ltd_width` enumerates full loose tree-decompositions.
* :func:`naive_accessible_edges` re-derives accessibility by enumerating
  pathways length by length, independently of the game engine's closure.
* :func:`verify_theorem` cross-checks all parameters and runs the
  certificate-driven strategies.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import _kernels
from .bramble import max_order_bramble, minimum_cover, trim_bramble
from .decomposition import LooseTreeDecomposition, fullify, validate, width
from .errors import InputError, ResourceGuardError
from .game import DEFAULT_RULE, _check_rule, _junction, _slide_edge, is_avoiding_pathway, is_legitimate
from .graph import Graph, edge, edges_within, sorted_vertices, vkey

AVMS_MAX_VERTICES = 7
AVMS_MAX_EDGES = 12
MAVMS_MAX_VERTICES = 5
MAVMS_MAX_EDGES = 9
LTD_MAX_VERTICES = 5


def _guard(g: Graph, max_vertices: int, max_edges: int | None, what: str) -> None:
    if g.is_edgeless:
        raise InputError(f"{what} needs a graph with at least one edge")
    if g.n > max_vertices or (max_edges is not None and g.m > max_edges):
        limit = f"{max_vertices} vertices" + (f" and {max_edges} edges" if max_edges is not None else "")
        raise ResourceGuardError(f"{what} limited to {limit}; graph has {g.n} vertices and {g.m} edges")


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass
class MoveTable:
    """Every legitimate move between vertex masks, with fugitive spaces and clear sets."""

    graph: Graph
    src: np.ndarray
    dst: np.ndarray
    fsp: np.ndarray  # (moves, edges) edge masks
    clear: np.ndarray
    size: np.ndarray  # |S'| per move
    src_size: np.ndarray

    def upto(self, k: int):
        keep = (self.size <= k) & (self.src_size <= k)
        return self.src[keep], self.dst[keep], self.fsp[keep], self.clear[keep]


def move_table(g: Graph, rule: str = DEFAULT_RULE) -> MoveTable:
    literal = _check_rule(rule)
    n = g.n
    src, dst = [], []
    ends = g.edge_ends
    for s in range(1 << n):
        for v in range(n):
            src.append(s)
            dst.append(s ^ (1 << v))
        for em in ends:
            if _popcount(s & em) == 1:
                src.append(s)
                dst.append(s ^ em)
    src = np.array(src, dtype=np.int64)
    dst = np.array(dst, dtype=np.int64)
    inc, eu, ev = _kernels.graph_arrays(g)
    fsp = _kernels.fsp_table(inc, eu, ev, g.m, src, dst, literal, True)
    clr = _kernels.clear_table(inc, eu, ev, src, dst)
    size = np.array([_popcount(int(x)) for x in dst], dtype=np.int64)
    src_size = np.array([_popcount(int(x)) for x in src], dtype=np.int64)
    return MoveTable(g, src, dst, fsp, clr, size, src_size)


def avms_win_sets(g: Graph, k: int, table: MoveTable | None = None, rule: str = DEFAULT_RULE) -> np.ndarray:
    """``win[S]`` is the edge mask of fugitive edges from which ``k`` searchers at ``S`` win."""
    table = table or move_table(g, rule)
    src, dst, fsp, _ = table.upto(k)
    return _kernels.avms_fixpoint(src, dst, fsp, 1 << g.n)


def avms_win_sets_shuffled(g: Graph, k: int, seed: int, table: MoveTable | None = None,
                           rule: str = DEFAULT_RULE) -> np.ndarray:
    """The same fixpoint by in-place (chaotic) updates in a random move order."""
    table = table or move_table(g, rule)
    src, dst, fsp, _ = table.upto(k)
    order = list(range(len(src)))
    random.Random(seed).shuffle(order)
    win = [0] * (1 << g.n)
    changed = True
    while changed:
        changed = False
        for j in order:
            s, lose = int(src[j]), ~win[int(dst[j])]
            for e in range(g.m):
                if not win[s] >> e & 1 and int(fsp[j, e]) & lose == 0:
                    win[s] |= 1 << e
                    changed = True
    return np.array(win, dtype=np.int64)


def brute_avms(g: Graph, rule: str = DEFAULT_RULE, max_vertices: int = AVMS_MAX_VERTICES,
               max_edges: int = AVMS_MAX_EDGES) -> int:
    """Least number of searchers that win from ``(∅, e)`` for every starting edge ``e``."""
    _guard(g, max_vertices, max_edges, "brute_avms")
    table = move_table(g, rule)
    full = (1 << g.m) - 1
    for k in range(1, g.n + 1):
        if int(avms_win_sets(g, k, table)[0]) == full:
            return k
    raise AssertionError("searchers on every vertex always win")


def mavms_win_sets(g: Graph, k: int, table: MoveTable | None = None, rule: str = DEFAULT_RULE) -> np.ndarray:
    """``win[C, S]``: fugitive edges from which ``k`` searchers win monotonically, having cleared ``C``."""
    table = table or move_table(g, rule)
    src, dst, fsp, clr = table.upto(k)
    return _kernels.mavms_fixpoint(src, dst, clr, fsp, 1 << g.n, g.m)


def brute_mavms(g: Graph, rule: str = DEFAULT_RULE, max_vertices: int = MAVMS_MAX_VERTICES,
                max_edges: int = MAVMS_MAX_EDGES) -> int:
    """Like :func:`brute_avms`, but the fugitive reaching a previously cleared edge defeats the searchers."""
    _guard(g, max_vertices, max_edges, "brute_mavms")
    table = move_table(g, rule)
    full = (1 << g.m) - 1
    for k in range(1, g.n + 1):
        if int(mavms_win_sets(g, k, table)[0, 0]) == full:
            return k
    raise AssertionError("searchers on every vertex always win")


# -- minimum-width loose tree-decompositions ---------------------------------


def _full_decompositions(g: Graph, k: int):
    """Yield ``(bags, tree_edges)`` of every full width-``k`` decomposition satisfying L2."""
    vs = list(g.vertices)
    edge_set = set(g.edges)
    seen: set = set()

    def covers(bags, tree_edges):
        covered = set()
        for bag in bags:
            covered.update(e for e in edge_set if e[0] in bag and e[1] in bag)
        for a, b in tree_edges:
            (u,) = bags[a] - bags[b]
            (v,) = bags[b] - bags[a]
            if edge(u, v) in edge_set:
                covered.add(edge(u, v))
        return covered == edge_set

    def grow(bags, tree_edges, used):
        key = frozenset(frozenset((bags[a], bags[b])) for a, b in tree_edges) | {frozenset([bags[0]])}
        if key in seen:
            return
        seen.add(key)
        if len(used) == len(vs):
            if covers(bags, tree_edges):
                yield list(bags), list(tree_edges)
            return
        for i, bag in enumerate(bags):
            for drop in sorted_vertices(bag):
                for new in vs:
                    if new in used:
                        continue
                    nb = (bag - {drop}) | {new}
                    yield from grow(bags + [nb], tree_edges + [(i, len(bags))], used | {new})

    for root in combinations(vs, k):
        yield from grow([frozenset(root)], [], frozenset(root))


def min_ltd(g: Graph, max_vertices: int = LTD_MAX_VERTICES) -> tuple[int, LooseTreeDecomposition]:
    """A minimum-width loose tree-decomposition (full) and its width."""
    _guard(g, max_vertices, None, "brute_min_ltd_width")
    for k in range(1, g.n + 1):
        for bags, tree_edges in _full_decompositions(g, k):
            names = [str(i) for i in range(len(bags))]
            tree = Graph(names, [(names[a], names[b]) for a, b in tree_edges])
            d = LooseTreeDecomposition(tree, dict(zip(names, bags)), g)
            assert validate(d), validate(d).message
            return k, d
    raise AssertionError("the single-bag decomposition always exists")


def brute_min_ltd_width(g: Graph, max_vertices: int = LTD_MAX_VERTICES) -> int:
    return min_ltd(g, max_vertices)[0]


# -- naive pathway enumeration ------------------------------------------------


def naive_accessible_edges(g: Graph, s, e, s_next, rule: str = DEFAULT_RULE, trivial: bool = True,
                           max_length: int | None = None) -> frozenset:
    """Accessible edges by explicit pathway enumeration, one length at a time.

    Prefixes are extended edge by edge up to ``2|E|`` edges (enough, since
    the state that matters is finite) and each completed pathway is accepted
    only if :func:`is_avoiding_pathway` approves the whole sequence. Prefixes
    that agree on (first edge is the slid edge, last edge, length capped at 3,
    and the entry vertex when the last edge is the slid one) have the same
    futures, so one representative of each is kept.
    """
    literal = _check_rule(rule)
    s, s_next = g.check_vertices(s), g.check_vertices(s_next)
    if not is_legitimate(g, s, s_next):
        raise InputError("illegitimate move")
    e = edge(*e)
    g.edge_index(e)
    sigma, x, y = _slide_edge(g, s, s_next)
    blocked = s & s_next
    limit = 2 * g.m if max_length is None else max_length
    touching = {f: [(h, _junction(f, h)) for h in g.edges if h != f and _junction(f, h) is not None] for f in g.edges}
    layer = {(e == sigma, e, 1, None): (e,)}
    found = set()
    for _ in range(limit):
        nxt = {}
        for w in layer.values():
            if w[-1] not in found and is_avoiding_pathway(g, s, s_next, w, rule, trivial):
                found.add(w[-1])
            last = w[-1]
            if last == sigma and len(w) > 1:
                continue
            for f, j in touching[last]:
                if j in blocked:
                    continue
                if not literal and last == sigma and j != y:
                    continue
                cand = w + (f,)
                # ending on the slid edge depends on where it was entered
                key = (w[0] == sigma, f, min(len(cand), 3), j if f == sigma else None)
                nxt.setdefault(key, cand)
        layer = nxt
        if not layer:
            break
    inside = set(edges_within(g, s_next))
    return frozenset(found - inside)


# -- theorem cross-check --------------------------------------------------------


@dataclass
class TheoremReport:
    graph: Graph
    parameters: dict = field(default_factory=dict)
    consistent: bool = True
    witnesses: dict = field(default_factory=dict)
    problems: list = field(default_factory=list)

    def to_json(self) -> dict:
        from .io import graph_to_json

        return {
            "graph": graph_to_json(self.graph),
            "parameters": self.parameters,
            "consistent": self.consistent,
            "witnesses": self.witnesses,
            "problems": self.problems,
        }


def verify_theorem(g: Graph, rule: str = DEFAULT_RULE, constructive: bool = True) -> TheoremReport:
    """Compute every parameter the guards allow, check they agree, and run the certificates."""
    from .strategies import explore_fugitive, explore_searcher, fugitive_from_bramble, searcher_from_ltd

    report = TheoremReport(g)
    params = report.parameters
    params["avms"] = brute_avms(g, rule)
    bramble, k = max_order_bramble(g)
    bramble = trim_bramble(g, bramble)
    params["max_bramble_order"] = k
    report.witnesses["bramble"] = [[vkey(v) for v in sorted_vertices(b)] for b in bramble.elements]
    report.witnesses["bramble_cover"] = [vkey(v) for v in sorted_vertices(minimum_cover(g, bramble.elements))]
    d = None
    if g.n <= MAVMS_MAX_VERTICES and g.m <= MAVMS_MAX_EDGES:
        params["mavms"] = brute_mavms(g, rule)
    if g.n <= LTD_MAX_VERTICES:
        params["min_ltd_width"], d = min_ltd(g)
        report.witnesses["decomposition"] = {
            "nodes": [{"id": vkey(t), "bag": [vkey(x) for x in sorted_vertices(d.bags[t])]} for t in d.tree.vertices],
            "tree_edges": [[vkey(a), vkey(b)] for a, b in d.tree.edges],
        }
    values = set(params.values())
    if len(values) != 1:
        report.consistent = False
        report.problems.append(f"parameters disagree: {params}")
    if constructive:
        if d is not None:
            audit = explore_searcher(g, searcher_from_ltd(fullify(d)), rule)
            report.witnesses["decomposition_strategy"] = {
                "wins": audit.wins, "cost": audit.cost, "monotone": audit.monotone, "positions": audit.positions,
            }
            if not (audit.wins and audit.monotone and audit.cost == width(d)):
                report.consistent = False
                report.problems.append(f"decomposition strategy failed: {audit.failure or audit}")
        if k >= 2:
            faudit = explore_fugitive(g, fugitive_from_bramble(bramble, k, rule), k - 1, rule)
            report.witnesses["bramble_strategy"] = {"survives": faudit.survives, "positions": faudit.positions,
                                                    "searchers": k - 1}
            if not faudit.survives:
                report.consistent = False
                report.problems.append(f"bramble strategy failed: {faudit.failure}")
    return report


def connected_graphs(max_vertices: int, max_edges: int | None = None, min_vertices: int = 2) -> list[Graph]:
    """Every connected graph with at least one edge, up to isomorphism, from the graph atlas."""
    import networkx as nx

    if max_vertices > 7:
        raise ResourceGuardError("the graph atlas covers at most 7 vertices")
    names = "abcdefg"
    out = []
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if n < min_vertices or n > max_vertices or h.number_of_edges() == 0:
            continue
        if max_edges is not None and h.number_of_edges() > max_edges:
            continue
        if not nx.is_connected(h):
            continue
        out.append(Graph([names[v] for v in h.nodes], [(names[u], names[v]) for u, v in h.edges]))
    return out


def single_operation_minors(g: Graph) -> list[Graph]:
    """Every graph obtained by deleting one vertex or edge or contracting one edge (edges kept)."""
    from .graph import contract_edge, remove_edge, remove_vertices

    out = [remove_vertices(g, {v}) for v in g.vertices]
    out += [remove_edge(g, e) for e in g.edges]
    out += [contract_edge(g, e) for e in g.edges]
    return [h for h in out if not h.is_edgeless]


__all__ = [
    "brute_avms", "brute_mavms", "brute_min_ltd_width", "min_ltd", "naive_accessible_edges", "verify_theorem",
    "TheoremReport", "move_table", "avms_win_sets", "avms_win_sets_shuffled", "mavms_win_sets",
    "connected_graphs", "single_operation_minors",
]
