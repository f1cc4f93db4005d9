"""Immutable simple graphs and the primitive graph theory the rest of the package uses.

Vertices are opaque hashable ids (strings or ints). Every ordering in the
package is taken from :func:`vkey`, the string form of an id, so that all
"pick the lowest vertex/edge" tie-breaks are reproducible.
"""
from __future__ import annotations

from collections.abc import Hashable, Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property

from .errors import InputError

Vertex = Hashable
Edge = tuple  # normalized (u, v) with vkey(u) < vkey(v)


def vkey(v: Vertex) -> str:
    return str(v)


def edge(u: Vertex, v: Vertex) -> Edge:
    """Return the normalized form of the unordered pair ``{u, v}``."""
    if vkey(u) == vkey(v):
        raise InputError(f"loop at vertex {u!r}")
    return (u, v) if vkey(u) < vkey(v) else (v, u)


def ekey(e: Edge) -> tuple[str, str]:
    return (vkey(e[0]), vkey(e[1]))


def sorted_vertices(vs: Iterable[Vertex]) -> list:
    return sorted(vs, key=vkey)


def sorted_edges(es: Iterable[Edge]) -> list:
    return sorted(es, key=ekey)


class Graph:
    """A finite, loopless graph without multi-edges.

    Instances are immutable; derived structures (adjacency, bit masks) are
    computed lazily and cached.
    """

    __slots__ = ("vertices", "edges", "_index", "_eindex", "__dict__")

    def __init__(self, vertices: Iterable[Vertex] = (), edges: Iterable[Sequence[Vertex]] = ()):
        vs = sorted_vertices(set(vertices))
        keys = [vkey(v) for v in vs]
        if len(set(keys)) != len(keys):
            raise InputError("two vertex ids share the same serialized form")
        index = {v: i for i, v in enumerate(vs)}
        es = set()
        for pair in edges:
            u, v = pair
            if u not in index or v not in index:
                raise InputError(f"edge {u!r}{v!r} has an endpoint outside the vertex set")
            e = edge(u, v)
            if e in es:
                raise InputError(f"multi-edge {e!r}")
            es.add(e)
        self.vertices: tuple = tuple(vs)
        self.edges: tuple = tuple(sorted_edges(es))
        self._index = index
        self._eindex = {e: j for j, e in enumerate(self.edges)}

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[Vertex]], vertices: Iterable[Vertex] = ()) -> Graph:
        edges = [tuple(e) for e in edges]
        vs = set(vertices)
        for u, v in edges:
            vs.update((u, v))
        return cls(vs, edges)

    # -- basic queries -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def __contains__(self, v: Vertex) -> bool:
        return v in self._index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def index(self, v: Vertex) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise InputError(f"vertex {v!r} not in graph") from None

    def edge_index(self, e: Sequence[Vertex]) -> int:
        try:
            return self._eindex[edge(*e)]
        except KeyError:
            raise InputError(f"edge {tuple(e)!r} not in graph") from None

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return vkey(u) != vkey(v) and edge(u, v) in self._eindex

    def check_vertices(self, vs: Iterable[Vertex]) -> frozenset:
        vs = frozenset(vs)
        for v in vs:
            if v not in self._index:
                raise InputError(f"vertex {v!r} not in graph")
        return vs

    @cached_property
    def adjacency(self) -> Mapping[Vertex, frozenset]:
        adj: dict = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(ns) for v, ns in adj.items()}

    def neighbors(self, v: Vertex) -> frozenset:
        return self.adjacency[v]

    def degree(self, v: Vertex) -> int:
        return len(self.adjacency[v])

    @property
    def is_edgeless(self) -> bool:
        return self.m == 0

    def is_connected(self) -> bool:
        return len(connected_components(self)) <= 1

    def is_tree(self) -> bool:
        return self.n >= 1 and self.m == self.n - 1 and self.is_connected()

    # -- bit-mask views used by the search kernels ---------------------

    def vmask(self, vs: Iterable[Vertex]) -> int:
        out = 0
        for v in vs:
            out |= 1 << self.index(v)
        return out

    def emask(self, es: Iterable[Sequence[Vertex]]) -> int:
        out = 0
        for e in es:
            out |= 1 << self.edge_index(e)
        return out

    def vertices_of(self, mask: int) -> frozenset:
        return frozenset(v for i, v in enumerate(self.vertices) if mask >> i & 1)

    def edges_of(self, mask: int) -> frozenset:
        return frozenset(e for j, e in enumerate(self.edges) if mask >> j & 1)

    @cached_property
    def edge_ends(self) -> tuple[int, ...]:
        """Vertex mask of the two endpoints of each edge."""
        return tuple((1 << self._index[u]) | (1 << self._index[v]) for u, v in self.edges)

    @cached_property
    def incidence(self) -> tuple[int, ...]:
        """Edge mask of the edges incident to each vertex."""
        inc = [0] * self.n
        for j, (u, v) in enumerate(self.edges):
            inc[self._index[u]] |= 1 << j
            inc[self._index[v]] |= 1 << j
        return tuple(inc)

    def inside_mask(self, vmask: int) -> int:
        """Edge mask of ``E(G[S])`` for the vertex set encoded by ``vmask``."""
        out = 0
        for j, ends in enumerate(self.edge_ends):
            if ends & vmask == ends:
                out |= 1 << j
        return out


# -- module-level graph theory ------------------------------------------


def edges_within(g: Graph, s: Iterable[Vertex]) -> list:
    s = set(s)
    return [e for e in g.edges if e[0] in s and e[1] in s]


def connected_components(g: Graph, within: Iterable[Vertex] | None = None) -> list[frozenset]:
    """Components of ``g`` (or of ``g[within]``), ordered by their lowest vertex."""
    allowed = set(g.vertices) if within is None else set(within)
    seen: set = set()
    comps = []
    for root in g.vertices:
        if root not in allowed or root in seen:
            continue
        comp = {root}
        stack = [root]
        while stack:
            u = stack.pop()
            for w in g.adjacency[u]:
                if w in allowed and w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def is_connected_set(g: Graph, s: Iterable[Vertex]) -> bool:
    s = set(s)
    return bool(s) and len(connected_components(g, s)) == 1


def induced_subgraph(g: Graph, s: Iterable[Vertex]) -> Graph:
    s = g.check_vertices(s)
    return Graph(s, edges_within(g, s))


def remove_vertices(g: Graph, s: Iterable[Vertex]) -> Graph:
    s = g.check_vertices(s)
    return induced_subgraph(g, set(g.vertices) - s)


def remove_edge(g: Graph, e: Sequence[Vertex]) -> Graph:
    g.edge_index(e)
    e = edge(*e)
    return Graph(g.vertices, [f for f in g.edges if f != e])


def is_separator(g: Graph, s: Iterable[Vertex]) -> bool:
    """True iff ``G - S`` has more components than ``G``."""
    s = g.check_vertices(s)
    rest = set(g.vertices) - s
    return len(connected_components(g, rest)) > len(connected_components(g))


def separates(g: Graph, s: Iterable[Vertex], xs: Iterable[Vertex], ys: Iterable[Vertex]) -> bool:
    """True iff ``X - S`` and ``Y - S`` are nonempty and no component of ``G - S`` meets both."""
    s = g.check_vertices(s)
    xs = g.check_vertices(xs) - s
    ys = g.check_vertices(ys) - s
    if not xs or not ys:
        return False
    for comp in connected_components(g, set(g.vertices) - s):
        if comp & xs and comp & ys:
            return False
    return True


def merged_vertex_name(g: Graph, u: Vertex, v: Vertex) -> str:
    u, v = edge(u, v)
    name = f"{u}{v}"
    while name in g:
        name += "'"
    return name


def contract_edge(g: Graph, e: Sequence[Vertex]) -> Graph:
    """Return ``G/e``; the merged vertex is named by concatenating the endpoint ids."""
    g.edge_index(e)
    x, y = edge(*e)
    ve = merged_vertex_name(g, x, y)
    rename = {x: ve, y: ve}
    vs = [v for v in g.vertices if v not in rename] + [ve]
    es = set()
    for a, b in g.edges:
        a2, b2 = rename.get(a, a), rename.get(b, b)
        if a2 != b2:
            es.add(edge(a2, b2))
    return Graph(vs, es)


MinorModel = Mapping[Vertex, frozenset]


@dataclass(frozen=True)
class MinorModelReport:
    ok: bool
    condition: str | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_minor_model(host: Graph, pattern: Graph, model: Mapping[Vertex, Iterable[Vertex]]) -> MinorModelReport:
    """Check that ``model`` maps ``pattern`` into ``host`` as a minor model.

    Conditions are checked in order (connected branch sets, disjointness,
    edge realisation) and the first violation is reported.
    """
    if set(model) != set(pattern.vertices):
        return MinorModelReport(False, "keys", "model keys differ from the pattern's vertex set")
    sets = {}
    for x in pattern.vertices:
        bs = frozenset(model[x])
        if not bs <= set(host.vertices):
            return MinorModelReport(False, "keys", f"branch set of {x!r} leaves the host")
        sets[x] = bs
    for x in pattern.vertices:
        if not is_connected_set(host, sets[x]):
            return MinorModelReport(False, "connected", f"branch set of {x!r} is empty or disconnected")
    owner: dict = {}
    for x in pattern.vertices:
        for v in sets[x]:
            if v in owner:
                return MinorModelReport(False, "disjoint", f"{v!r} lies in the branch sets of {owner[v]!r} and {x!r}")
            owner[v] = x
    for x, y in pattern.edges:
        if not any(host.has_edge(a, b) for a in sets[x] for b in sets[y]):
            return MinorModelReport(False, "edges", f"no host edge realises pattern edge {x!r}{y!r}")
    return MinorModelReport(True)


def pathway_valid(g: Graph, w: Sequence[Sequence[Vertex]]) -> bool:
    """True iff consecutive edges of ``w`` are distinct and share exactly one vertex."""
    if not w:
        raise InputError("a pathway is a nonempty edge sequence")
    es = [edge(*e) for e in w]
    for e in es:
        g.edge_index(e)
    return all(a != b and len(set(a) & set(b)) == 1 for a, b in zip(es, es[1:]))


# -- small constructors used by tests and the bundled corpus -------------


def path_graph(n: int, prefix: str = "") -> Graph:
    names = [f"{prefix}{chr(ord('a') + i)}" if n <= 26 else f"{prefix}{i}" for i in range(n)]
    return Graph(names, list(zip(names, names[1:])))


def cycle_graph(n: int) -> Graph:
    names = [chr(ord("a") + i) for i in range(n)]
    return Graph(names, [(names[i], names[(i + 1) % n]) for i in range(n)])


def complete_graph(n: int) -> Graph:
    names = [chr(ord("a") + i) for i in range(n)]
    return Graph(names, [(names[i], names[j]) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    names = [chr(ord("a") + i) for i in range(leaves + 1)]
    return Graph(names, [(names[0], x) for x in names[1:]])


def sun3() -> Graph:
    """The 3-sun: inner triangle b, c, e; outer vertices a, d, f of degree two."""
    return Graph.from_edges(
        [("a", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("b", "e"), ("c", "e"), ("c", "f"), ("d", "e"), ("e", "f")]
    )
