import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mixedsearch.cartesian import build_product, canonical_ltd, completion_graph, embed_in_cartesian_product
from mixedsearch.corpus import fig1_tree, fig4_tree
from mixedsearch.decomposition import (
    LooseTreeDecomposition,
    is_full,
    marginal_edges,
    single_bag,
    validate,
    width,
)
from mixedsearch.errors import InputError
from mixedsearch.graph import Graph, complete_graph, path_graph, verify_minor_model


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


@st.composite
def trees(draw, max_nodes=6):
    n = draw(st.integers(1, max_nodes))
    names = [f"t{i}" for i in range(n)]
    es = [(names[draw(st.integers(0, i - 1))], names[i]) for i in range(1, n)]
    return Graph(names, es)


def test_fig1_product_has_15_vertices_and_27_edges():
    p = build_product(fig1_tree(), 3).product
    assert (p.n, p.m) == (15, 27)
    expected = nx.cartesian_product(to_nx(fig1_tree()), nx.complete_graph(3))
    assert nx.is_isomorphic(to_nx(p), expected)


def test_product_with_k1_is_the_tree():
    t = fig4_tree()
    assert nx.is_isomorphic(to_nx(build_product(t, 1).product), to_nx(t))


def test_single_node_product_is_complete():
    assert nx.is_isomorphic(to_nx(build_product(Graph(["r"]), 4).product), nx.complete_graph(4))


def test_product_rejects_bad_input():
    with pytest.raises(InputError):
        build_product(fig4_tree(), 0)
    with pytest.raises(InputError):
        build_product(complete_graph(3), 2)


def test_fig4_canonical_bags():
    d = canonical_ltd(fig4_tree(), "a", 3)
    assert validate(d) and is_full(d) and width(d) == 3
    assert d.bags["b/2"] == {"b:1", "b:2", "a:3"}
    assert d.bags["a/3"] == {"a:1", "a:2", "a:3"}
    assert d.tree.n == 13


def test_fig4_marginal_edges_are_the_matchings():
    d = canonical_ltd(fig4_tree(), "a", 3)
    inter_copy = {e for e in d.graph.edges if e[0].split(":")[0] != e[1].split(":")[0]}
    report = marginal_edges(d)
    assert report.edges == inter_copy
    assert all(len(es) == 1 for es in report.values())


def test_canonical_small_cases():
    one = canonical_ltd(Graph(["r"]), "r", 4)
    assert one.tree.n == 1 and width(one) == 4 and validate(one)
    two = canonical_ltd(path_graph(2), "a", 2)
    assert two.tree.n == 3 and width(two) == 2 and validate(two)


@given(trees(), st.integers(1, 3))
def test_canonical_decomposition_properties(t, k):
    d = canonical_ltd(t, t.vertices[0], k)
    assert validate(d) and is_full(d) and width(d) == k
    assert d.tree.n == k * (t.n - 1) + 1


def test_embed_sun3(sun3_full):
    emb = embed_in_cartesian_product(sun3_full)
    assert emb.k == 3
    assert verify_minor_model(emb.product.product, sun3_full.graph, emb.model)
    assert verify_minor_model(emb.product.product, emb.completion, emb.model)


def test_embed_k4_single_bag():
    emb = embed_in_cartesian_product(single_bag(complete_graph(4)))
    assert emb.product.product.n == 4
    assert all(len(b) == 1 for b in emb.model.values())
    assert verify_minor_model(emb.product.product, complete_graph(4), emb.model)


def test_embed_p4():
    g = path_graph(4)
    tree = Graph.from_edges([("1", "2"), ("2", "3")])
    d = LooseTreeDecomposition(tree, {"1": {"a", "b"}, "2": {"b", "c"}, "3": {"c", "d"}}, g)
    emb = embed_in_cartesian_product(d)
    assert emb.k == 2
    assert verify_minor_model(emb.product.product, g, emb.model)


def test_embed_requires_full(sun3_ltd):
    with pytest.raises(InputError):
        embed_in_cartesian_product(sun3_ltd)


def test_completion_contains_graph(sun3_full):
    comp = completion_graph(sun3_full)
    assert set(sun3_full.graph.edges) <= set(comp.edges)
