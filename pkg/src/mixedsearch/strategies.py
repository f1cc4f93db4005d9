"""Strategies for both players, a match driver, and exhaustive strategy checkers.

Strategies are deterministic policies with a small hashable ``state``. The
exhaustive explorers save and restore that state to branch over every answer
of the opponent.
"""
from __future__ import annotations

from collections.abc import Hashable, Iterable
from dataclasses import dataclass, field

from .bramble import TightBramble, element_key, order as bramble_order
from .decomposition import LooseTreeDecomposition, _require_full, tree_distances, tree_path, width
from .errors import InputError, ResourceGuardError, StrategyFault
from .game import (
    AUTO,
    CAPTURED,
    DEFAULT_RULE,
    Play,
    SearcherMove,
    clear_set,
    fugitive_space,
    fugitive_space_mask,
    lazy_choice,
    legitimate_moves,
    require_edges,
)
from .graph import Edge, Graph, Vertex, connected_components, edge, edges_within, sorted_edges, sorted_vertices, vkey


class SearcherStrategy:
    """Policy ``(S, e) -> move``; ``state`` captures everything else it remembers."""

    name = "searcher"
    state: Hashable = None

    def __init__(self, graph: Graph):
        require_edges(graph)
        self.graph = graph

    def reset(self) -> None:
        self.state = None

    def move(self, s: frozenset, e: Edge) -> SearcherMove:
        raise NotImplementedError

    def in_setup(self, s: frozenset, state: Hashable) -> bool:
        """Whether the strategy is still placing its opening searchers (no progress guarantee yet)."""
        return False

    def describe(self) -> dict:
        return {"kind": self.name}


class FugitiveStrategy:
    """An initial edge plus a policy ``(S, e, S') -> edge``."""

    name = "fugitive"
    state: Hashable = None

    def __init__(self, graph: Graph, rule: str = DEFAULT_RULE):
        require_edges(graph)
        self.graph = graph
        self.rule = rule

    def reset(self) -> None:
        self.state = None

    def initial_edge(self) -> Edge:
        raise NotImplementedError

    def respond(self, s_prev: frozenset, e: Edge, s_next: frozenset):
        raise NotImplementedError

    def describe(self) -> dict:
        return {"kind": self.name}


# -- searcher from a full loose tree-decomposition --------------------------


class DecompositionSearcher(SearcherStrategy):
    """Monotone searcher that walks a full decomposition toward the fugitive.

    After filling the bag of a start node, each step moves from the current
    node ``t`` to its neighbour ``t'`` on the way to the nearest tree-edge
    whose two bags contain the fugitive edge. The swapped pair ``u -> v`` is
    a slide when ``uv`` is an edge, otherwise a removal followed by a placement.

    ``state`` is ``(node, pending_vertex)``; ``pending_vertex`` is set between
    the removal and the placement of a non-edge swap.
    """

    name = "ltd-searcher"

    def __init__(self, d: LooseTreeDecomposition):
        _require_full(d)
        super().__init__(d.graph)
        self.decomposition = d
        self.width = width(d)
        self._distances = {t: tree_distances(d.tree, t) for t in d.tree.vertices}
        self._covering: dict = {}

    def _covering_edges(self, e: Edge) -> list:
        found = self._covering.get(e)
        if found is None:
            d = self.decomposition
            found = [
                (t1, t2) for t1, t2 in d.tree.edges if set(e) <= d.bags[t1] | d.bags[t2]
            ]
            if d.tree.n == 1:
                found = [(t, t) for t in d.tree.vertices if set(e) <= d.bags[t]]
            self._covering[e] = found
        return found

    def start_node(self, e: Edge):
        d = self.decomposition
        covering = [t for t in sorted_vertices(d.tree.vertices) if set(e) <= d.bags[t]]
        return covering[0] if covering else sorted_vertices(d.tree.vertices)[0]

    def _target(self, t, e: Edge):
        """Next node toward the nearest covering tree-edge, or ``None`` if ``t`` already sees it."""
        dist = self._distances[t]
        best = None
        for t1, t2 in self._covering_edges(e):
            near, far = (t1, t2) if dist[t1] <= dist[t2] else (t2, t1)
            key = (dist[near], vkey(near), vkey(far))
            if best is None or key < best[0]:
                best = (key, far)
        if best is None:
            raise StrategyFault(f"fugitive edge {e!r} is covered by no tree-edge")
        far = best[1]
        if far == t:
            return None
        return tree_path(self.decomposition.tree, t, far)[1]

    def move(self, s: frozenset, e: Edge) -> SearcherMove:
        d = self.decomposition
        if self.state is None:
            self.state = (self.start_node(e), None)
        t, pending = self.state
        bag = d.bags[t]
        if pending is not None:
            nxt, v = pending
            self.state = (nxt, None)
            return SearcherMove.place(v)
        missing = bag - s
        if missing:
            return SearcherMove.place(sorted_vertices(missing)[0])
        nxt = self._target(t, e)
        if nxt is None:
            raise StrategyFault(f"fugitive edge {e!r} lies inside the occupied bag of {t!r}")
        (u,) = bag - d.bags[nxt]
        (v,) = d.bags[nxt] - bag
        if self.graph.has_edge(u, v):
            self.state = (nxt, None)
            return SearcherMove.slide(u, v)
        self.state = (t, (nxt, v))
        return SearcherMove.remove(u)

    def in_setup(self, s: frozenset, state: Hashable) -> bool:
        return state is None or (state[1] is None and s != self.decomposition.bags[state[0]])

    def describe(self) -> dict:
        d = self.decomposition
        return {
            "kind": self.name,
            "width": self.width,
            "nodes": [{"id": vkey(t), "bag": [vkey(x) for x in sorted_vertices(d.bags[t])]} for t in d.tree.vertices],
            "tree_edges": [[vkey(a), vkey(b)] for a, b in d.tree.edges],
        }


def searcher_from_ltd(d: LooseTreeDecomposition) -> DecompositionSearcher:
    return DecompositionSearcher(d)


# -- one searcher on a tree -------------------------------------------------


class TreeSearcher(SearcherStrategy):
    """A single searcher that keeps sliding toward the fugitive's side of the tree."""

    name = "tree-searcher"

    def __init__(self, tree: Graph, start: Vertex | None = None):
        if not tree.is_tree() or tree.m == 0:
            raise InputError("tree_searcher needs a tree with at least one edge")
        super().__init__(tree)
        self.start = tree.vertices[0] if start is None else start
        tree.index(self.start)

    def move(self, s: frozenset, e: Edge) -> SearcherMove:
        if not s:
            return SearcherMove.place(self.start)
        (v,) = s
        if v in e:
            (w,) = set(e) - {v}
            return SearcherMove.slide(v, w)
        for comp in connected_components(self.graph, set(self.graph.vertices) - {v}):
            if e[0] in comp:
                (w,) = self.graph.neighbors(v) & comp
                return SearcherMove.slide(v, w)
        raise StrategyFault(f"fugitive edge {e!r} not found in any component")


def tree_searcher(t: Graph, start: Vertex | None = None) -> TreeSearcher:
    return TreeSearcher(t, start)


# -- fugitives ----------------------------------------------------------------


class LazyFugitive(FugitiveStrategy):
    """Stays put when it may, otherwise takes the lowest available edge."""

    name = "lazy-fugitive"

    def __init__(self, graph: Graph, start: Edge | None = None, rule: str = DEFAULT_RULE):
        super().__init__(graph, rule)
        self.start = graph.edges[0] if start is None else edge(*start)

    def initial_edge(self) -> Edge:
        return self.start

    def respond(self, s_prev, e, s_next):
        space = fugitive_space(self.graph, s_prev, e, s_next, self.rule)
        return lazy_choice(self.graph, e, space) if space else CAPTURED


class BrambleFugitive(FugitiveStrategy):
    """Escape strategy that hides inside a bramble element free of searchers.

    The fugitive sits on an edge of its current element ``B``. It stays while
    ``B`` remains searcher-free; once a searcher lands in ``B`` it moves to the
    lowest reachable edge of the first element disjoint from the new position.
    ``state`` is the index of ``B`` in canonical element order.
    """

    name = "bramble-fugitive"

    def __init__(self, bramble: TightBramble, k: int | None = None, rule: str = DEFAULT_RULE):
        g = bramble.graph
        super().__init__(g, rule)
        self.elements = tuple(sorted(bramble.elements, key=element_key))
        self.order = bramble_order(g, self.elements) if k is None else k
        if self.order < 2:
            raise InputError("bramble order below 2; use the tree analysis instead")
        self._edges = [tuple(sorted_edges(edges_within(g, b))) for b in self.elements]

    def initial_edge(self) -> Edge:
        self.state = 0
        return self._edges[0][0]

    def respond(self, s_prev, e, s_next):
        g = self.graph
        space = fugitive_space(g, s_prev, e, s_next, self.rule)
        if not space:
            return CAPTURED
        s_next = frozenset(s_next)
        if self.state is not None:
            b = self.elements[self.state]
            if not (b & s_next) and set(e) <= b and e in space:
                return e
        disjoint = [i for i, b in enumerate(self.elements) if not (b & s_next)]
        for i in disjoint:
            reachable = [f for f in self._edges[i] if f in space]
            if reachable:
                self.state = i
                return reachable[0]
        if disjoint and len(s_next) < self.order:
            raise StrategyFault(
                f"no edge of a searcher-free element is reachable after {sorted_vertices(s_prev)} -> "
                f"{sorted_vertices(s_next)} from {e!r}"
            )
        self.state = None
        return lazy_choice(g, e, space)

    def describe(self) -> dict:
        return {
            "kind": self.name,
            "order": self.order,
            "elements": [[vkey(x) for x in sorted_vertices(b)] for b in self.elements],
        }


def fugitive_from_bramble(b: TightBramble, k: int | None = None, rule: str = DEFAULT_RULE) -> BrambleFugitive:
    return BrambleFugitive(b, k, rule)


class ScriptedFugitive(FugitiveStrategy):
    """Answers from a callback ``(space, s_prev, e, s_next) -> edge``; used for interactive play."""

    name = "scripted-fugitive"

    def __init__(self, graph: Graph, start: Edge, chooser, rule: str = DEFAULT_RULE):
        super().__init__(graph, rule)
        self.start = edge(*start)
        self.chooser = chooser

    def initial_edge(self) -> Edge:
        return self.start

    def respond(self, s_prev, e, s_next):
        space = fugitive_space(self.graph, s_prev, e, s_next, self.rule)
        if not space:
            return CAPTURED
        return self.chooser(space, s_prev, e, s_next)


# -- matches -------------------------------------------------------------------


CAPTURED_VERDICT = "captured"
ESCAPED_VERDICT = "escaped-by-limit"
CYCLE_VERDICT = "cycle-detected"


@dataclass
class MatchResult:
    play: Play
    verdict: str
    spaces: list = field(default_factory=list)

    @property
    def captured(self) -> bool:
        return self.verdict == CAPTURED_VERDICT


def run_match(
    g: Graph, searcher: SearcherStrategy, fugitive: FugitiveStrategy,
    step_limit: int = 1000, rule: str = DEFAULT_RULE,
) -> MatchResult:
    """Alternate the two policies until capture, a repeated position, or ``step_limit`` moves."""
    require_edges(g)
    searcher.reset()
    fugitive.reset()
    e1 = fugitive.initial_edge()
    try:
        play = Play.start(g, e1)
    except InputError as exc:
        raise StrategyFault(f"fugitive opened on an illegal edge: {exc}") from None
    seen = set()
    spaces = []
    while len(play) < step_limit:
        s, e = play.positions[-1], play.fugitive[-1]
        key = (s, e, searcher.state, fugitive.state)
        if key in seen:
            return MatchResult(play, CYCLE_VERDICT, spaces)
        seen.add(key)
        move = searcher.move(s, e)
        try:
            s_next = move.apply(g, s)
        except InputError as exc:
            raise StrategyFault(f"searcher emitted illegal move {move}: {exc}") from None
        choice = fugitive.respond(s, e, s_next)
        space = fugitive_space(g, s, e, s_next, rule)
        spaces.append(space)
        if choice is CAPTURED:
            if space:
                raise StrategyFault("fugitive surrendered while it still had room")
            play.advance(move, AUTO, rule)
            return MatchResult(play, CAPTURED_VERDICT, spaces)
        if choice not in space:
            raise StrategyFault(f"fugitive emitted edge {choice!r} outside its fugitive space")
        play.advance(move, choice, rule)
    return MatchResult(play, ESCAPED_VERDICT, spaces)


# -- exhaustive checks ------------------------------------------------------------


@dataclass
class SearcherAudit:
    """Outcome of exploring a searcher strategy against every fugitive behaviour."""

    wins: bool
    cost: int
    monotone: bool
    progress: bool
    positions: int
    failure: str = ""
    strict_progress: bool = True


def explore_searcher(
    g: Graph, searcher: SearcherStrategy, rule: str = DEFAULT_RULE,
    initial_edges: Iterable[Edge] | None = None, max_positions: int = 2_000_000,
) -> SearcherAudit:
    """Expand every fugitive answer against a deterministic searcher.

    The searcher wins iff no play can run forever, i.e. the position graph
    reachable under its policy is acyclic and every leaf is a capture. The
    position carries the cumulative cleared set (for monotonicity) and the
    last non-removal fugitive space (for the progress measure).

    Once the opening placements are done, ``progress`` requires the fugitive
    space never to grow between consecutive non-removal steps and no two
    removals in a row; ``strict_progress`` records whether it also shrank at
    every such step. Walking toward a distant covering tree-edge can leave the
    space unchanged for a step, so only the first is a guarantee.
    """
    require_edges(g)
    starts = g.edges if initial_edges is None else [edge(*e) for e in initial_edges]
    audit = SearcherAudit(True, 0, True, True, 0)
    done: set = set()
    clear_cache: dict = {}

    def children(pos):
        s, e, strat, cleared, last_fsp, last_removal = pos
        searcher.state = strat
        move = searcher.move(s, e)
        try:
            s_next = move.apply(g, s)
        except InputError as exc:
            raise StrategyFault(f"searcher emitted illegal move {move}: {exc}") from None
        audit.cost = max(audit.cost, len(s_next))
        sm, sm2 = g.vmask(s), g.vmask(s_next)
        space = fugitive_space_mask(g, sm, g.edge_index(e), sm2, rule)
        key = (sm, sm2)
        if key not in clear_cache:
            clear_cache[key] = g.emask(clear_set(g, s, s_next))
        cleared_now = cleared | clear_cache[key]
        removal = move.kind == "remove"
        checked = not searcher.in_setup(s, strat)
        if checked and removal and last_removal:
            audit.progress = False
            audit.failure = audit.failure or f"two consecutive removals at {sorted_vertices(s)}"
        if checked and not removal and last_fsp is not None:
            if space & ~last_fsp:
                audit.progress = False
                audit.failure = audit.failure or f"fugitive space grew after {move}"
            elif space == last_fsp:
                audit.strict_progress = False
        new_fsp = last_fsp if removal else space
        out = []
        j = 0
        rest = space
        while rest:
            if rest & 1:
                if cleared_now >> j & 1:
                    audit.monotone = False
                    audit.failure = audit.failure or f"fugitive re-enters cleared edge {g.edges[j]!r} after {move}"
                out.append((s_next, g.edges[j], searcher.state, cleared_now, new_fsp, removal))
            rest >>= 1
            j += 1
        return out

    for e1 in starts:
        searcher.reset()
        root = (frozenset(), e1, searcher.state, 0, None, False)
        if root in done:
            continue
        on_stack = {root}
        stack = [(root, iter(children(root)))]
        while stack:
            pos, it = stack[-1]
            child = next(it, None)
            if child is None:
                stack.pop()
                on_stack.discard(pos)
                done.add(pos)
                continue
            if child in on_stack:
                audit.wins = False
                audit.failure = audit.failure or f"fugitive can cycle through {child[0]!r}, {child[1]!r}"
                return audit
            if child in done:
                continue
            if len(done) + len(on_stack) > max_positions:
                raise ResourceGuardError(f"more than {max_positions} positions")
            on_stack.add(child)
            stack.append((child, iter(children(child))))
    audit.positions = len(done)
    return audit


@dataclass
class FugitiveAudit:
    """Outcome of exploring a fugitive strategy against every searcher behaviour."""

    survives: bool
    positions: int
    searchers: int
    failure: str = ""


def explore_fugitive(
    g: Graph, fugitive: FugitiveStrategy, max_searchers: int, rule: str = DEFAULT_RULE,
    max_positions: int = 2_000_000,
) -> FugitiveAudit:
    """Expand every searcher move (at most ``max_searchers`` searchers) against the fugitive.

    If no reachable position is a capture, every play is infinite: the state
    space is finite, so each play revisits a position, certifying escape.
    """
    require_edges(g)
    fugitive.reset()
    e1 = fugitive.initial_edge()
    root = (frozenset(), e1, fugitive.state)
    seen = {root}
    frontier = [root]
    while frontier:
        s, e, st = frontier.pop()
        for move in legitimate_moves(g, s, max_searchers):
            s_next = move.apply(g, s)
            fugitive.state = st
            try:
                choice = fugitive.respond(s, e, s_next)
            except StrategyFault as exc:
                return FugitiveAudit(False, len(seen), max_searchers, str(exc))
            if choice is CAPTURED:
                return FugitiveAudit(
                    False, len(seen), max_searchers,
                    f"captured by {move} from {sorted_vertices(s)} with fugitive on {e!r}",
                )
            space = fugitive_space(g, s, e, s_next, rule)
            if choice not in space:
                return FugitiveAudit(False, len(seen), max_searchers, f"emitted {choice!r} outside the fugitive space")
            child = (s_next, choice, fugitive.state)
            if child not in seen:
                if len(seen) >= max_positions:
                    raise ResourceGuardError(f"more than {max_positions} positions")
                seen.add(child)
                frontier.append(child)
    return FugitiveAudit(True, len(seen), max_searchers)
