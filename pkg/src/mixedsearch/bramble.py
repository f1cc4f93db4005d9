"""Tight brambles: touching tests, covers, order, and a few constructions.

A tight bramble is a family of connected vertex sets of size at least two
that pairwise *tightly touch*: they intersect, or two distinct edges run
between them. Its order is the least size of a vertex set meeting every
element (a cover).
"""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from itertools import combinations

import networkx as nx
import numpy as np

from . import _kernels
from .errors import InputError, ResourceGuardError
from .graph import Graph, Vertex, connected_components, is_connected_set, separates, sorted_vertices, vkey

MAX_ORDER_VERTICES = 10
MAX_BRAMBLE_VERTICES = 7
MAX_FAMILIES = 200_000


def _canonical(family: Iterable[Iterable[Vertex]]) -> tuple[frozenset, ...]:
    out, seen = [], set()
    for b in family:
        b = frozenset(b)
        if b not in seen:
            seen.add(b)
            out.append(b)
    return tuple(out)


def element_key(b: Iterable[Vertex]) -> tuple:
    return (len(b), [vkey(v) for v in sorted_vertices(b)])


@dataclass(frozen=True)
class TightBramble:
    """A family of vertex sets over ``graph``; build it with :meth:`of` to validate."""

    graph: Graph
    elements: tuple

    @classmethod
    def of(cls, g: Graph, family: Iterable[Iterable[Vertex]]) -> TightBramble:
        b = cls(g, _canonical(family))
        report = is_tight_bramble(g, b.elements)
        if not report:
            raise InputError(f"not a tight bramble: {report.message}")
        return b

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return order(self.graph, self.elements)


def _elements(family) -> tuple[frozenset, ...]:
    if isinstance(family, TightBramble):
        return family.elements
    return _canonical(family)


def crossing_edges(g: Graph, s1: Iterable[Vertex], s2: Iterable[Vertex]) -> list:
    s1, s2 = g.check_vertices(s1), g.check_vertices(s2)
    return [(u, v) for u, v in g.edges if (u in s1 and v in s2) or (u in s2 and v in s1)]


def tightly_touching(g: Graph, s1: Iterable[Vertex], s2: Iterable[Vertex]) -> bool:
    s1, s2 = g.check_vertices(s1), g.check_vertices(s2)
    if s1 & s2:
        return True
    return len(crossing_edges(g, s1, s2)) >= 2


@dataclass(frozen=True)
class BrambleReport:
    ok: bool
    condition: str | None = None
    witness: object = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def is_tight_bramble(g: Graph, family) -> BrambleReport:
    elements = _elements(family)
    for b in elements:
        if not b <= set(g.vertices):
            return BrambleReport(False, "vertices", b, f"element {sorted_vertices(b)} leaves the graph")
        if len(b) < 2:
            return BrambleReport(False, "size", b, f"element {sorted_vertices(b)} has fewer than two vertices")
        if not is_connected_set(g, b):
            return BrambleReport(False, "connected", b, f"element {sorted_vertices(b)} is disconnected")
    for b1, b2 in combinations(elements, 2):
        if not tightly_touching(g, b1, b2):
            return BrambleReport(
                False, "touching", (b1, b2), f"{sorted_vertices(b1)} and {sorted_vertices(b2)} do not tightly touch"
            )
    return BrambleReport(True)


def is_cover(g: Graph, family, s: Iterable[Vertex]) -> bool:
    s = g.check_vertices(s)
    return all(b & s for b in _elements(family))


def order(g: Graph, family, max_vertices: int = MAX_ORDER_VERTICES) -> int:
    """Least size of a cover, by exhaustive search over vertex subsets."""
    elements = _elements(family)
    if not elements:
        return 0
    if g.n > max_vertices:
        raise ResourceGuardError(f"order search limited to {max_vertices} vertices, graph has {g.n}")
    for b in elements:
        g.check_vertices(b)
        if not b:
            raise InputError("an empty element has no cover")
    masks = np.array([g.vmask(b) for b in elements], dtype=np.int64)
    return int(_kernels.min_cover(masks, g.n))


def minimum_cover(g: Graph, family, max_vertices: int = MAX_ORDER_VERTICES) -> frozenset:
    """A lexicographically first cover of minimum size."""
    k = order(g, family, max_vertices)
    elements = _elements(family)
    for s in combinations(g.vertices, k):
        if all(b & set(s) for b in elements):
            return frozenset(s)
    raise AssertionError("order() found a cover that enumeration missed")


def normalize_singletons(g: Graph, family) -> TightBramble:
    """Replace a singleton ``{x}`` by two-vertex sets around ``x``; the order is unchanged.

    For every other element ``S`` the sets ``{x, y}`` and ``{x, z}`` are added
    for two neighbours ``y, z`` of ``x`` in ``S`` (one if ``S`` offers only one).
    If ``{x}`` is the whole family, the edges at ``x`` are used instead.
    """
    elements = _elements(family)
    singles = [b for b in elements if len(b) == 1]
    if not singles:
        return TightBramble.of(g, elements)
    xs = {next(iter(b)) for b in singles}
    if len(xs) > 1:
        raise InputError("distinct singletons never touch; the family is not pairwise touching")
    (x,) = xs
    g.index(x)
    if g.degree(x) == 0:
        raise InputError(f"singleton vertex {x!r} is isolated")
    rest = [b for b in elements if len(b) != 1]
    added = []
    for b in rest:
        near = sorted_vertices(g.neighbors(x) & b)
        if not near:
            raise InputError(f"singleton {{{x!r}}} does not touch {sorted_vertices(b)}")
        added += [frozenset({x, v}) for v in near[:2]]
    if not rest:
        added = [frozenset({x, v}) for v in sorted_vertices(g.neighbors(x))]
    return TightBramble.of(g, rest + added)


def check_separator_cover(g: Graph, family, s1, s2, s) -> bool | None:
    """Whether a separator of two covers is itself a cover; ``None`` if the premise fails."""
    s1, s2, s = g.check_vertices(s1), g.check_vertices(s2), g.check_vertices(s)
    if not (is_cover(g, family, s1) and is_cover(g, family, s2)):
        return None
    if not separates(g, s, s1, s2):
        return None
    return is_cover(g, family, s)


def connected_sets(g: Graph, min_size: int = 2) -> list[frozenset]:
    """All connected vertex sets of at least ``min_size`` vertices, in canonical order."""
    out = []
    for r in range(min_size, g.n + 1):
        for s in combinations(g.vertices, r):
            if is_connected_set(g, s):
                out.append(frozenset(s))
    return out


def max_order_bramble(
    g: Graph, max_vertices: int = MAX_BRAMBLE_VERTICES, max_families: int = MAX_FAMILIES
) -> tuple[TightBramble, int]:
    """A tight bramble of maximum order, searched over maximal touching families.

    Adding elements to a family never lowers its order, so it suffices to
    scan the maximal cliques of the tight-touching relation on connected sets.
    """
    if g.is_edgeless:
        raise InputError("edgeless graphs have only the empty bramble")
    if g.n > max_vertices:
        raise ResourceGuardError(f"bramble search limited to {max_vertices} vertices, graph has {g.n}")
    sets = connected_sets(g)
    touch = nx.Graph()
    touch.add_nodes_from(range(len(sets)))
    for i, j in combinations(range(len(sets)), 2):
        if tightly_touching(g, sets[i], sets[j]):
            touch.add_edge(i, j)
    masks = np.array([g.vmask(b) for b in sets], dtype=np.int64)
    ceiling = g.n - 1
    best, best_order = None, -1
    for count, clique in enumerate(nx.find_cliques(touch), start=1):
        if count > max_families:
            raise ResourceGuardError(f"more than {max_families} maximal touching families")
        k = int(_kernels.min_cover(masks[sorted(clique)], g.n))
        if k > best_order:
            best, best_order = sorted(clique), k
            if k >= ceiling:
                break
    family = tuple(sets[i] for i in best)
    return TightBramble(g, family), best_order


def trim_bramble(g: Graph, bramble: TightBramble) -> TightBramble:
    """Drop elements greedily (largest first) while the order stays the same."""
    k = order(g, bramble.elements)
    kept = list(sorted(bramble.elements, key=element_key))
    for b in sorted(bramble.elements, key=element_key, reverse=True):
        trial = [c for c in kept if c != b]
        if trial and order(g, trial) == k:
            kept = trial
    return TightBramble(g, tuple(kept))


def cycle_bramble(g: Graph) -> TightBramble:
    """The order-2 bramble of a cycle: two consecutive edges and the rest of the cycle."""
    if g.n < 3 or g.m != g.n or any(g.degree(v) != 2 for v in g.vertices) or len(connected_components(g)) != 1:
        raise InputError("cycle_bramble needs a cycle")
    v0 = g.vertices[0]
    v1 = sorted_vertices(g.neighbors(v0))[0]
    (v2,) = g.neighbors(v1) - {v0}
    family = (frozenset({v0, v1}), frozenset({v1, v2}), frozenset(g.vertices) - {v1})
    return TightBramble.of(g, family)


def tree_bramble(g: Graph) -> TightBramble:
    """The order-1 bramble made of a single edge."""
    if g.is_edgeless:
        raise InputError("edgeless graphs have only the empty bramble")
    return TightBramble.of(g, [set(g.edges[0])])
