"""Cartesian tree products ``T□K_k``, their canonical decomposition, and minor embeddings.

Product vertices are named ``"t:i"`` for tree node ``t`` and slot ``i`` in
``1..k``; canonical decomposition nodes are named ``"t/j"``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .decomposition import LooseTreeDecomposition, _require_valid, is_full, width
from .errors import InputError
from .graph import Graph, Vertex, sorted_vertices, vkey


def product_vertex(t: Vertex, i: int) -> str:
    return f"{t}:{i}"


def decomposition_node(t: Vertex, j: int) -> str:
    return f"{t}/{j}"


@dataclass(frozen=True)
class CartesianProduct:
    tree: Graph
    k: int
    product: Graph

    def vertex(self, t: Vertex, i: int) -> str:
        return product_vertex(t, i)

    def column(self, t: Vertex) -> list[str]:
        return [product_vertex(t, i) for i in range(1, self.k + 1)]


def _require_tree(tree: Graph) -> None:
    if not tree.is_tree():
        raise InputError("expected a tree")


def build_product(tree: Graph, k: int) -> CartesianProduct:
    _require_tree(tree)
    if k < 1:
        raise InputError("k must be at least 1")
    vs = [product_vertex(t, i) for t in tree.vertices for i in range(1, k + 1)]
    es = [
        (product_vertex(t, i), product_vertex(t, j))
        for t in tree.vertices
        for i in range(1, k + 1)
        for j in range(i + 1, k + 1)
    ]
    es += [(product_vertex(t, i), product_vertex(u, i)) for t, u in tree.edges for i in range(1, k + 1)]
    return CartesianProduct(tree, k, Graph(vs, es))


def _parents(tree: Graph, root: Vertex) -> dict:
    parent = {root: None}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in sorted_vertices(tree.neighbors(u)):
            if w not in parent:
                parent[w] = u
                queue.append(w)
    return parent


def canonical_ltd(tree: Graph, root: Vertex, k: int) -> LooseTreeDecomposition:
    """The full width-``k`` decomposition of ``T□K_k`` that walks each column in slot order.

    The root contributes one node holding its whole column. Every other tree
    node ``t`` with parent ``p`` contributes nodes ``t/1 .. t/k``; node ``t/j``
    holds slots ``1..j`` of ``t`` and slots ``j+1..k`` of ``p``.
    """
    if root not in tree:
        raise InputError(f"root {root!r} is not a tree node")
    cp = build_product(tree, k)
    parent = _parents(tree, root)
    bags = {decomposition_node(root, k): [product_vertex(root, i) for i in range(1, k + 1)]}
    tree_edges = []
    for t in tree.vertices:
        p = parent[t]
        if p is None:
            continue
        for j in range(1, k + 1):
            bags[decomposition_node(t, j)] = [product_vertex(t, i) for i in range(1, j + 1)] + [
                product_vertex(p, i) for i in range(j + 1, k + 1)
            ]
            if j < k:
                tree_edges.append((decomposition_node(t, j), decomposition_node(t, j + 1)))
        tree_edges.append((decomposition_node(p, k), decomposition_node(t, 1)))
    return LooseTreeDecomposition(Graph(bags, tree_edges), bags, cp.product)


@dataclass(frozen=True)
class Embedding:
    """A minor model of a graph (and of its completion) in ``T□K_k``."""

    tree: Graph
    k: int
    product: CartesianProduct
    model: dict
    completion: Graph
    slots: dict  # decomposition node -> {vertex: slot}


def completion_graph(d: LooseTreeDecomposition) -> Graph:
    """Add every pair sharing a bag and every swapped pair across a tree-edge."""
    es = set()
    for bag in d.bags.values():
        bag = sorted_vertices(bag)
        es.update((u, v) for i, u in enumerate(bag) for v in bag[i + 1:])
    for t1, t2 in d.tree.edges:
        for u in d.bags[t1] - d.bags[t2]:
            for v in d.bags[t2] - d.bags[t1]:
                es.add((u, v) if vkey(u) < vkey(v) else (v, u))
    return Graph(d.graph.vertices, es)


def embed_in_cartesian_product(d: LooseTreeDecomposition) -> Embedding:
    """Minor model of ``d.graph`` in ``T□K_k`` where ``T`` is the decomposition tree.

    Slots are seeded on the lowest-id node in sorted vertex order. Crossing a
    tree-edge, shared vertices keep their slot and the incoming vertex takes
    the slot of the one that left.
    """
    _require_valid(d)
    if not is_full(d):
        raise InputError("decomposition is not full; run fullify() first")
    k = width(d)
    if k < 1:
        raise InputError("cannot embed a width-0 decomposition")
    seed = sorted_vertices(d.tree.vertices)[0]
    slots = {seed: {x: i for i, x in enumerate(sorted_vertices(d.bags[seed]), start=1)}}
    queue = deque([seed])
    while queue:
        p = queue.popleft()
        for c in sorted_vertices(d.tree.neighbors(p)):
            if c in slots:
                continue
            (u,) = d.bags[p] - d.bags[c]
            (v,) = d.bags[c] - d.bags[p]
            assignment = dict(slots[p])
            assignment[v] = assignment.pop(u)
            slots[c] = assignment
            queue.append(c)
    model = {x: frozenset() for x in d.graph.vertices}
    for t, assignment in slots.items():
        for x, i in assignment.items():
            model[x] = model[x] | {product_vertex(t, i)}
    return Embedding(d.tree, k, build_product(d.tree, k), model, completion_graph(d), slots)
