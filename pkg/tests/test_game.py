
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import small_graphs
from mixedsearch import game
from mixedsearch.errors import InputError
from mixedsearch.game import (
    CAPTURED,
    Play,
    SearcherMove,
    accessible_edges,
    avoiding_pathway_exists,
    clear_set,
    fugitive_space,
    initial_state,
    is_avoiding_pathway,
    is_legitimate,
    is_monotone,
    legitimate_moves,
    pathway_witness,
    play_cost,
    replay,
    step,
)
from mixedsearch.graph import Graph, complete_graph, connected_components, path_graph

K4 = complete_graph(4)
ABC, BCD = {"a", "b", "c"}, {"b", "c", "d"}


def test_legitimacy():
    g = path_graph(3)
    assert is_legitimate(g, set(), {"a"})
    assert is_legitimate(g, {"a"}, {"b"})
    assert not is_legitimate(g, {"a"}, {"c"})  # no edge ac to slide along
    assert not is_legitimate(g, set(), {"a", "b"})  # two placements at once
    assert not is_legitimate(g, {"a"}, {"a"})


def test_clear_set_examples():
    expected = {("a", "d"), ("b", "d"), ("c", "d")}
    assert clear_set(K4, ABC, K4.vertices) == expected
    assert clear_set(K4, ABC, BCD) == expected
    assert clear_set(K4, ABC, {"a", "b"}) == frozenset()


def test_slide_edge_alone_is_not_a_pathway():
    assert not avoiding_pathway_exists(K4, ABC, BCD, ("a", "d"), ("a", "d"))
    # the literal rule allows a return to ad, but never through the one-edge pathway
    w = pathway_witness(K4, ABC, BCD, ("a", "d"), ("a", "d"), rule="literal")
    assert w is not None and len(w) > 2
    assert not is_avoiding_pathway(K4, ABC, BCD, [("a", "d")], rule="literal")


def test_shared_vertex_in_both_positions_blocks():
    assert not avoiding_pathway_exists(path_graph(3), {"b"}, {"a", "b"}, ("b", "c"), ("a", "b"))


def test_k4_slide_example_depends_on_rule():
    # bd reaches the slid edge ad only through d, the vertex the searcher is moving onto
    assert not avoiding_pathway_exists(K4, ABC, BCD, ("b", "d"), ("a", "d"))
    assert avoiding_pathway_exists(K4, ABC, BCD, ("b", "d"), ("a", "d"), rule="literal")
    assert pathway_witness(K4, ABC, BCD, ("b", "d"), ("a", "d"), rule="literal") == [("b", "d"), ("a", "d")]
    literal = accessible_edges(K4, ABC, ("b", "d"), BCD, rule="literal")
    assert ("a", "d") in literal and ("b", "c") not in literal
    assert fugitive_space(K4, ABC, ("b", "d"), BCD) == frozenset()
    assert fugitive_space(K4, ABC, ("b", "d"), BCD, rule="literal") == {("a", "d")}


def test_first_placement_reaches_the_component():
    g = Graph.from_edges([("a", "b"), ("b", "c"), ("d", "e")])
    assert accessible_edges(g, set(), ("a", "b"), {"c"}) == {("a", "b"), ("b", "c")}
    assert accessible_edges(g, set(), ("d", "e"), {"c"}) == {("d", "e")}


def test_trivial_pathway_switch():
    p2 = path_graph(2)
    assert accessible_edges(p2, set(), ("a", "b"), {"a"}, trivial=True) == {("a", "b")}
    assert accessible_edges(p2, set(), ("a", "b"), {"a"}, trivial=False) == frozenset()
    assert fugitive_space(p2, set(), ("a", "b"), {"a"}) == {("a", "b")}


def test_unknown_rule():
    with pytest.raises(InputError):
        fugitive_space(K4, ABC, ("b", "d"), BCD, rule="sideways")


def test_p2_capture():
    p2 = path_graph(2)
    assert fugitive_space(p2, {"a"}, ("a", "b"), {"b"}) == frozenset()
    p = Play.start(p2, ("a", "b"))
    p.advance(SearcherMove.place("a"))
    assert p.fugitive[-1] == ("a", "b")
    result = p.advance(SearcherMove.slide("a", "b"))
    assert result.state.captured and p.finished
    assert play_cost(p) == 1 and is_monotone(p)


def test_step_rejects_illegal_choices():
    state = initial_state(K4, ("a", "b"))
    with pytest.raises(InputError, match="outside"):
        step(K4, step(K4, state, SearcherMove.place("a")).state, SearcherMove.place("b"), ("a", "b"))
    with pytest.raises(InputError):
        step(K4, state, SearcherMove.slide("a", "b"))


def test_removal_lets_fugitive_stay():
    s = initial_state(K4, ("c", "d"))
    s = step(K4, s, SearcherMove.place("a")).state
    result = step(K4, s, SearcherMove.remove("a"), ("c", "d"))
    assert result.state.fugitive == ("c", "d")
    assert result.cleared_now == frozenset()


def test_reentering_a_cleared_edge_is_not_monotone():
    p = Play.start(K4, ("c", "d"))
    p.advance(SearcherMove.place("a"), ("c", "d"))
    p.advance(SearcherMove.place("b"), ("c", "d"))
    assert ("a", "b") in p.cleared[-1]
    assert is_monotone(p)
    p.advance(SearcherMove.remove("b"), ("a", "b"))
    assert not is_monotone(p) and not p.state.monotone


def test_empty_play_costs_nothing():
    assert play_cost(Play.start(K4, ("a", "b"))) == 0


def test_edgeless_graph_rejected():
    with pytest.raises(InputError):
        initial_state(Graph(["a"]), ("a", "b"))


def test_legitimate_moves_p3():
    moves = legitimate_moves(path_graph(3), {"a"})
    assert [str(m) for m in moves] == ["remove a", "place b", "place c", "slide a->b"]
    assert all(m.kind != "place" for m in legitimate_moves(path_graph(3), {"a"}, max_searchers=1))


@given(small_graphs(max_vertices=5), st.sampled_from(game.SLIDE_RULES), st.randoms(use_true_random=False))
def test_space_properties(g, rule, rnd):
    for _ in range(15):
        r = rnd.randint(0, g.n - 1)
        s = frozenset(rnd.sample(list(g.vertices), r))
        move = rnd.choice(legitimate_moves(g, s))
        s2 = move.apply(g, s)
        e = rnd.choice(g.edges)
        space = fugitive_space(g, s, e, s2, rule)
        cleared = clear_set(g, s, s2)
        for f in space:
            inside = f[0] in s2 and f[1] in s2
            assert not inside or (f == e and f not in cleared)
            if f != e:
                w = pathway_witness(g, s, s2, e, f, rule)
                assert w is not None and w[0] == e and w[-1] == f
                assert is_avoiding_pathway(g, s, s2, w, rule)


@given(small_graphs(max_vertices=6), st.randoms(use_true_random=False))
def test_placement_never_widens_the_reachable_part(g, rnd):
    for _ in range(10):
        s = frozenset(rnd.sample(list(g.vertices), rnd.randint(0, g.n - 1)))
        v = rnd.choice([x for x in g.vertices if x not in s])
        e = rnd.choice(g.edges)
        # edges reachable with the searchers standing still on s
        region = next((c for c in connected_components(g, set(g.vertices) - s) if set(e) & c), frozenset())
        still = {f for f in g.edges if set(f) & region} | {e}
        assert fugitive_space(g, s, e, s | {v}) <= still


@given(small_graphs(max_vertices=5), st.randoms(use_true_random=False))
def test_random_plays_replay(g, rnd):
    p = Play.start(g, rnd.choice(g.edges))
    choices = []
    while not p.finished and len(p) < 25:
        move = rnd.choice(legitimate_moves(g, p.positions[-1], max_searchers=3))
        space = fugitive_space(g, p.positions[-1], p.fugitive[-1], move.apply(g, p.positions[-1]))
        choice = rnd.choice(sorted(space)) if space else CAPTURED
        p.advance(move, choice if space else game.AUTO)
        choices.append(choice)
        assert is_legitimate(g, p.positions[-2], p.positions[-1])
    again = replay(g, p.fugitive[0], p.moves, choices)
    assert again.positions == p.positions and again.fugitive == p.fugitive
    assert is_monotone(again) == is_monotone(p)
