"""Loose tree-decompositions: validation, width, marginal edges, fullification.

A loose tree-decomposition of ``G`` is a tree ``T`` with a bag ``χ(t) ⊆ V(G)``
per node such that

* (L1) every vertex has a nonempty, connected trace ``{t : x ∈ χ(t)}``;
* (L2) every edge of ``G`` lies inside the union of two adjacent bags;
* (L3) each tree-edge carries at most one *marginal* edge, i.e. a graph edge
  between ``χ(t1) - χ(t2)`` and ``χ(t2) - χ(t1)``.
"""
from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from types import MappingProxyType

from .errors import InputError, StructuralError
from .graph import (
    Graph,
    Vertex,
    connected_components,
    contract_edge,
    edge,
    is_connected_set,
    is_separator,
    merged_vertex_name,
    remove_edge,
    remove_vertices,
    separates,
    sorted_edges,
    sorted_vertices,
    vkey,
)

Node = Vertex


class LooseTreeDecomposition:
    """A tree of bags over an underlying graph. Immutable."""

    __slots__ = ("tree", "bags", "graph")

    def __init__(self, tree: Graph, bags: Mapping[Node, Iterable[Vertex]], graph: Graph):
        unknown = [t for t in bags if t not in tree]
        if unknown:
            raise StructuralError(f"bags given for unknown tree nodes {unknown!r}")
        norm = {t: frozenset(bags.get(t, ())) for t in tree.vertices}
        object.__setattr__(self, "tree", tree)
        object.__setattr__(self, "bags", MappingProxyType(norm))
        object.__setattr__(self, "graph", graph)

    def __setattr__(self, name, value):
        raise AttributeError("LooseTreeDecomposition is immutable")

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LooseTreeDecomposition)
            and self.tree == other.tree
            and dict(self.bags) == dict(other.bags)
            and self.graph == other.graph
        )

    def __hash__(self) -> int:
        return hash((self.tree, frozenset(self.bags.items()), self.graph))

    def __repr__(self) -> str:
        return f"LooseTreeDecomposition(nodes={self.tree.n}, width={width(self)})"

    @property
    def nodes(self) -> tuple:
        return self.tree.vertices

    def trace(self, x: Vertex) -> frozenset:
        return frozenset(t for t, bag in self.bags.items() if x in bag)

    def neighbors(self, t: Node) -> list:
        return sorted_vertices(self.tree.neighbors(t))


def tree_path(tree: Graph, a: Node, b: Node) -> list:
    """The unique ``a``–``b`` path in a tree, endpoints included."""
    parent = {a: None}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        if u == b:
            break
        for w in sorted_vertices(tree.neighbors(u)):
            if w not in parent:
                parent[w] = u
                queue.append(w)
    if b not in parent:
        raise InputError(f"{a!r} and {b!r} are not connected in the tree")
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    return path[::-1]


def tree_distances(tree: Graph, source: Node) -> dict:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in tree.neighbors(u):
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def check_structure(d: LooseTreeDecomposition) -> None:
    """Raise :class:`StructuralError` unless the tree is a tree and bags use graph vertices."""
    if not d.tree.is_tree():
        raise StructuralError("the decomposition's tree field is not a tree")
    for t, bag in d.bags.items():
        stray = [x for x in bag if x not in d.graph]
        if stray:
            raise StructuralError(f"bag of node {t!r} holds non-vertices {stray!r}")


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    condition: str | None = None
    witness: object = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


class MarginalEdgeReport(dict):
    """Maps each tree-edge to the tuple of graph edges crossing it as marginal edges."""

    @property
    def edges(self) -> frozenset:
        return frozenset(e for es in self.values() for e in es)

    def present(self) -> dict:
        return {f: es for f, es in self.items() if es}


def marginal_edges(d: LooseTreeDecomposition) -> MarginalEdgeReport:
    report = MarginalEdgeReport()
    g = d.graph
    for t1, t2 in d.tree.edges:
        a = d.bags[t1] - d.bags[t2]
        b = d.bags[t2] - d.bags[t1]
        crossing = [edge(x, y) for x in a for y in b if g.has_edge(x, y)]
        report[(t1, t2)] = tuple(sorted_edges(crossing))
    return report


def validate(d: LooseTreeDecomposition) -> ValidationReport:
    check_structure(d)
    g, tree = d.graph, d.tree
    for x in g.vertices:
        tr = d.trace(x)
        if not tr:
            return ValidationReport(False, "L1", x, f"vertex {x!r} appears in no bag")
        if not is_connected_set(tree, tr):
            return ValidationReport(False, "L1", x, f"trace of {x!r} is disconnected")
    covered = set()
    for t1, t2 in tree.edges:
        union = d.bags[t1] | d.bags[t2]
        covered.update(e for e in g.edges if e[0] in union and e[1] in union)
    if tree.n == 1:
        (only,) = tree.vertices
        covered.update(e for e in g.edges if e[0] in d.bags[only] and e[1] in d.bags[only])
    for e in g.edges:
        if e not in covered:
            return ValidationReport(False, "L2", e, f"edge {e!r} lies in no union of adjacent bags")
    for f, es in marginal_edges(d).items():
        if len(es) > 1:
            return ValidationReport(False, "L3", f, f"tree-edge {f!r} carries marginal edges {list(es)!r}")
    return ValidationReport(True)


def width(d: LooseTreeDecomposition) -> int:
    return max((len(b) for b in d.bags.values()), default=0)


def _swap_pair(d: LooseTreeDecomposition, t1: Node, t2: Node):
    a = d.bags[t1] - d.bags[t2]
    b = d.bags[t2] - d.bags[t1]
    if len(a) == 1 and len(b) == 1:
        return next(iter(a)), next(iter(b))
    return None


def is_full(d: LooseTreeDecomposition) -> bool:
    k = width(d)
    if any(len(b) != k for b in d.bags.values()):
        return False
    return all(_swap_pair(d, t1, t2) is not None for t1, t2 in d.tree.edges)


def _require_valid(d: LooseTreeDecomposition) -> None:
    report = validate(d)
    if not report:
        raise InputError(f"invalid loose tree-decomposition: {report.message}")


def _require_full(d: LooseTreeDecomposition) -> None:
    _require_valid(d)
    if not is_full(d):
        raise InputError("decomposition is not full; run fullify() first")


# -- fullification --------------------------------------------------------


def _contract_nested(tree_edges: set, bags: dict) -> None:
    """Merge adjacent nodes whose bags are nested, keeping the larger bag's node."""
    while True:
        for t1, t2 in sorted(tree_edges, key=lambda f: (vkey(f[0]), vkey(f[1]))):
            if bags[t1] <= bags[t2] or bags[t2] <= bags[t1]:
                break
        else:
            return
        if bags[t1] <= bags[t2] and bags[t2] <= bags[t1]:
            keep, drop = (t1, t2) if vkey(t1) < vkey(t2) else (t2, t1)
        elif bags[t1] <= bags[t2]:
            keep, drop = t2, t1
        else:
            keep, drop = t1, t2
        tree_edges.discard((t1, t2))
        for f in [f for f in tree_edges if drop in f]:
            tree_edges.discard(f)
            other = f[0] if f[1] == drop else f[1]
            tree_edges.add(edge(keep, other))
        del bags[drop]


def fullify(d: LooseTreeDecomposition) -> LooseTreeDecomposition:
    """Return a full loose tree-decomposition of the same graph and width.

    Nested adjacent bags are contracted, undersized bags are padded from a
    full neighbour, and tree-edges whose bags differ in more than one swapped
    pair are replaced by a path of single-swap bags. The one possible crossing
    graph edge of such a tree-edge is carried by a single swap step.
    """
    _require_valid(d)
    k = width(d)
    if k == 0:
        raise InputError("cannot fullify a width-0 decomposition")
    g = d.graph
    bags = dict(d.bags)
    tree_edges = set(d.tree.edges)
    _contract_nested(tree_edges, bags)

    adj: dict = {t: set() for t in bags}
    for t1, t2 in tree_edges:
        adj[t1].add(t2)
        adj[t2].add(t1)

    def crossing(p, c):
        a, b = bags[p] - bags[c], bags[c] - bags[p]
        return [(x, y) for x in a for y in b if g.has_edge(x, y)]

    root = min((t for t in bags if len(bags[t]) == k), key=vkey)
    order = [root]
    parent = {root: None}
    for u in order:
        for w in sorted_vertices(adj[u]):
            if w not in parent:
                parent[w] = u
                order.append(w)
    for c in order[1:]:
        if len(bags[c]) >= k:
            continue
        p = parent[c]
        banned = {v for xy in crossing(p, c) for v in xy}
        candidates = [x for x in sorted_vertices(bags[p] - bags[c]) if x not in banned]
        bags[c] = bags[c] | frozenset(candidates[: k - len(bags[c])])

    taken = set(bags) | set(g.vertices)
    for t1, t2 in sorted(tree_edges, key=lambda f: (vkey(f[0]), vkey(f[1]))):
        common = bags[t1] & bags[t2]
        if len(common) >= k - 1:
            continue
        drops = sorted_vertices(bags[t1] - bags[t2])
        adds = sorted_vertices(bags[t2] - bags[t1])
        for x, y in crossing(t1, t2):
            drops.remove(x)
            adds.remove(y)
            drops.insert(0, x)
            adds.insert(0, y)
        tree_edges.discard((t1, t2))
        prev, current = t1, set(bags[t1])
        for s, (x, y) in enumerate(zip(drops[:-1], adds[:-1]), start=1):
            current = (current - {x}) | {y}
            node = f"{t1}~{t2}#{s}"
            while node in taken:
                node += "'"
            taken.add(node)
            bags[node] = frozenset(current)
            tree_edges.add(edge(prev, node))
            prev = node
        tree_edges.add(edge(prev, t2))

    out = LooseTreeDecomposition(Graph(bags, tree_edges), bags, g)
    assert validate(out) and is_full(out) and width(out) == k
    return out


# -- separator properties of full decompositions ---------------------------


def check_internal_node_separator(d: LooseTreeDecomposition, t: Node) -> bool:
    """Whether the bag of the non-leaf node ``t`` of a full decomposition separates the graph."""
    _require_full(d)
    if t not in d.tree:
        raise InputError(f"{t!r} is not a tree node")
    if d.tree.degree(t) < 2:
        raise InputError(f"node {t!r} is a leaf")
    return is_separator(d.graph, d.bags[t])


def check_tree_edge_separator(d: LooseTreeDecomposition, tree_edge) -> bool | None:
    """Whether ``χ(t1) ∩ χ(t2)`` separates the swapped pair of a full decomposition.

    Returns ``None`` (not applicable) when the swapped pair is a graph edge.
    """
    _require_full(d)
    t1, t2 = tree_edge
    if not d.tree.has_edge(t1, t2):
        raise InputError(f"{tree_edge!r} is not a tree-edge")
    x1, x2 = _swap_pair(d, t1, t2)
    if d.graph.has_edge(x1, x2):
        return None
    return separates(d.graph, d.bags[t1] & d.bags[t2], {x1}, {x2})


# -- derived decompositions ----------------------------------------------


def extend_traces(d: LooseTreeDecomposition, extension: Mapping[Vertex, Iterable[Node]]) -> LooseTreeDecomposition:
    """Replace the trace of each listed vertex by a larger connected node set."""
    _require_valid(d)
    bags = {t: set(b) for t, b in d.bags.items()}
    for x, region in extension.items():
        d.graph.index(x)
        region = frozenset(region)
        for t in region:
            if t not in d.tree:
                raise InputError(f"{t!r} is not a tree node")
        if not d.trace(x) <= region:
            raise InputError(f"extension of {x!r} does not contain its trace")
        if not is_connected_set(d.tree, region):
            raise InputError(f"extension of {x!r} is disconnected in the tree")
        for t in region:
            bags[t].add(x)
    return LooseTreeDecomposition(d.tree, bags, d.graph)


def delete_vertex(d: LooseTreeDecomposition, v: Vertex) -> LooseTreeDecomposition:
    h = remove_vertices(d.graph, {v})
    return LooseTreeDecomposition(d.tree, {t: b - {v} for t, b in d.bags.items()}, h)


def delete_edge(d: LooseTreeDecomposition, e) -> LooseTreeDecomposition:
    return LooseTreeDecomposition(d.tree, d.bags, remove_edge(d.graph, e))


def contract(d: LooseTreeDecomposition, e) -> LooseTreeDecomposition:
    x, y = edge(*e)
    h = contract_edge(d.graph, (x, y))
    ve = merged_vertex_name(d.graph, x, y)
    bags = {t: (b - {x, y}) | {ve} if (x in b or y in b) else b for t, b in d.bags.items()}
    return LooseTreeDecomposition(d.tree, bags, h)


MINOR_OPERATIONS = {"delete-vertex": delete_vertex, "delete-edge": delete_edge, "contract-edge": contract}


def restrict_to_minor(d: LooseTreeDecomposition, operation: str, target) -> LooseTreeDecomposition:
    """Carry a decomposition over one minor operation; width never grows."""
    _require_valid(d)
    try:
        op = MINOR_OPERATIONS[operation]
    except KeyError:
        raise InputError(f"unknown minor operation {operation!r}") from None
    return op(d, target)


def single_bag(g: Graph, node: Node = "r") -> LooseTreeDecomposition:
    """The one-node decomposition whose bag is the whole vertex set."""
    return LooseTreeDecomposition(Graph([node]), {node: g.vertices}, g)


def components_of_tree_minus(d: LooseTreeDecomposition, t: Node) -> list[frozenset]:
    return connected_components(d.tree, set(d.tree.vertices) - {t})
