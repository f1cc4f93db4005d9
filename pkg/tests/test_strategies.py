import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import small_graphs
from mixedsearch.bramble import cycle_bramble, max_order_bramble, trim_bramble, tree_bramble
from mixedsearch.cartesian import canonical_ltd
from mixedsearch.corpus import fig4_tree, tree_decomposition_of_tree
from mixedsearch.decomposition import fullify, width
from mixedsearch.errors import InputError, StrategyFault
from mixedsearch.game import SearcherMove, fugitive_space, play_cost
from mixedsearch.graph import complete_graph, cycle_graph, path_graph, star_graph
from mixedsearch.oracle import min_ltd
from mixedsearch.strategies import (
    LazyFugitive,
    ScriptedFugitive,
    SearcherStrategy,
    explore_fugitive,
    explore_searcher,
    fugitive_from_bramble,
    run_match,
    searcher_from_ltd,
    tree_searcher,
)


class WalkingSearcher(SearcherStrategy):
    """One searcher that keeps sliding along a fixed cyclic order."""

    name = "walker"

    def __init__(self, g, order):
        super().__init__(g)
        self.order = order

    def move(self, s, e):
        if not s:
            return SearcherMove.place(self.order[0])
        (v,) = s
        return SearcherMove.slide(v, self.order[(self.order.index(v) + 1) % len(self.order)])


class BrokenSearcher(SearcherStrategy):
    name = "broken"

    def move(self, s, e):
        return SearcherMove.remove("a")


def test_sun3_decomposition_strategy_wins_monotonically(sun3_full):
    audit = explore_searcher(sun3_full.graph, searcher_from_ltd(sun3_full))
    assert audit.wins and audit.cost == 3 and audit.monotone and audit.progress


def test_strategy_needs_a_full_decomposition(sun3_ltd):
    with pytest.raises(InputError):
        searcher_from_ltd(sun3_ltd)


def test_tree_decomposition_gives_one_searcher():
    t = fig4_tree()
    audit = explore_searcher(t, searcher_from_ltd(fullify(tree_decomposition_of_tree(t))))
    assert audit.wins and audit.cost == 1 and audit.monotone


def test_ladder_product_strategy():
    d = canonical_ltd(fig4_tree(), "a", 2)
    audit = explore_searcher(d.graph, searcher_from_ltd(d))
    assert audit.wins and audit.cost == 2 and audit.monotone and audit.progress


def test_tree_searcher_on_p4():
    g = path_graph(4)
    assert explore_searcher(g, tree_searcher(g)).wins
    for e in g.edges:
        result = run_match(g, tree_searcher(g), LazyFugitive(g, e))
        assert result.captured
        assert sum(m.kind == "slide" for m in result.play.moves) <= 3


def test_tree_searcher_single_edge_and_star():
    p2 = path_graph(2)
    result = run_match(p2, tree_searcher(p2), LazyFugitive(p2))
    assert result.captured and len(result.play) == 2
    star = star_graph(3)
    leaf = next(v for v in star.vertices if star.degree(v) == 1)
    audit = explore_searcher(star, tree_searcher(star, leaf))
    assert audit.wins and audit.cost == 1
    with pytest.raises(InputError):
        tree_searcher(cycle_graph(4))


def test_cycle_bramble_escapes_one_searcher():
    c6 = cycle_graph(6)
    f = fugitive_from_bramble(cycle_bramble(c6))
    audit = explore_fugitive(c6, f, 1)
    assert audit.survives, audit.failure
    result = run_match(c6, WalkingSearcher(c6, list("abcdef")), f, step_limit=200)
    assert result.verdict == "cycle-detected"
    for s_prev, e, s_next, space in zip(result.play.positions, result.play.fugitive, result.play.positions[1:],
                                        result.spaces):
        assert fugitive_space(c6, s_prev, e, s_next) == space


def test_k4_bramble_escapes_two_searchers():
    k4 = complete_graph(4)
    b, k = max_order_bramble(k4)
    assert k == 3
    assert explore_fugitive(k4, fugitive_from_bramble(trim_bramble(k4, b)), k - 1).survives


def test_removals_never_move_the_bramble_fugitive():
    c6 = cycle_graph(6)
    f = fugitive_from_bramble(cycle_bramble(c6))
    e = f.initial_edge()
    assert f.respond(frozenset({"d"}), e, frozenset()) == e


def test_order_one_bramble_rejected():
    with pytest.raises(InputError):
        fugitive_from_bramble(tree_bramble(path_graph(3)))


def test_enough_searchers_capture_the_bramble_fugitive(sun3_full):
    g = sun3_full.graph
    b, _ = max_order_bramble(g)
    result = run_match(g, searcher_from_ltd(sun3_full), fugitive_from_bramble(b))
    assert result.captured and play_cost(result.play) <= 3


def test_illegal_searcher_move_is_a_fault():
    with pytest.raises(StrategyFault, match="illegal move"):
        run_match(path_graph(3), BrokenSearcher(path_graph(3)), LazyFugitive(path_graph(3)))


def test_fugitive_leaving_its_space_is_a_fault():
    g = path_graph(3)
    bad = ScriptedFugitive(g, ("a", "b"), lambda space, *_: ("z", "q"))
    with pytest.raises(StrategyFault, match="outside"):
        run_match(g, tree_searcher(g), bad)


def test_step_limit():
    c6 = cycle_graph(6)
    f = LazyFugitive(c6, ("d", "e"))
    hopeless = WalkingSearcher(c6, list("ab"))
    result = run_match(c6, hopeless, f, step_limit=3)
    assert result.verdict in ("escaped-by-limit", "cycle-detected")


@given(small_graphs(max_vertices=5))
def test_min_width_decomposition_strategy(g):
    k, d = min_ltd(g)
    full = fullify(d)
    audit = explore_searcher(g, searcher_from_ltd(full))
    assert audit.wins and audit.monotone and audit.progress
    assert audit.cost == width(full) == k


@given(small_graphs(max_vertices=5), st.randoms(use_true_random=False))
def test_searchers_stay_inside_the_current_bag(g, rnd):
    _, d = min_ltd(g)
    full = fullify(d)
    searcher = searcher_from_ltd(full)
    f = ScriptedFugitive(g, rnd.choice(g.edges), lambda space, *_: rnd.choice(sorted(space)))
    result = run_match(g, searcher, f)
    assert result.captured
    # replay the policy to inspect its node after each move
    searcher.reset()
    for s, e, s_next in zip(result.play.positions, result.play.fugitive, result.play.positions[1:]):
        searcher.move(s, e)
        assert s_next <= full.bags[searcher.state[0]]


@given(small_graphs(max_vertices=5))
def test_max_bramble_fugitive_escapes(g):
    b, k = max_order_bramble(g)
    if k < 2:
        return
    audit = explore_fugitive(g, fugitive_from_bramble(trim_bramble(g, b)), k - 1)
    assert audit.survives, audit.failure
