"""Mechanics of the mixed search game against an agile, visible fugitive.

A position is a searcher set ``S`` plus the fugitive's edge. The searchers
move ``S -> S'`` by placing, removing, or sliding one searcher; the move
clears some edges and the fugitive answers with an edge of its *fugitive
space*: its old edge unless cleared, plus every edge it can reach along an
``(S, S')``-avoiding pathway without ending inside ``S'``.

Slide semantics. When a searcher slides along ``σ = xy`` from ``x`` to ``y``,
a fugitive leaving ``σ`` must exit through ``y`` (the end the searcher is
heading to, which it has not reached yet), and a fugitive entering ``σ`` must
enter through ``x`` (behind the searcher). This is the default
``rule="directional"``. ``rule="literal"`` lets pathways leave and enter the
slid edge at either end; under that reading a path on three vertices already
needs two searchers, so it is kept only for comparison.
"""
from __future__ import annotations

from collections import deque
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field

from . import _kernels
from .errors import InputError
from .graph import Edge, Graph, Vertex, edge, sorted_edges, sorted_vertices, vkey

SLIDE_RULES = ("directional", "literal")
DEFAULT_RULE = "directional"

# Whether the one-edge pathway <e> witnesses e as accessible for e other than
# the slid edge. It never changes the fugitive space, only accessible_edges().
TRIVIAL_PATHWAY_WITNESSES = True


class _Captured:
    __slots__ = ()

    def __repr__(self) -> str:
        return "CAPTURED"

    def __reduce__(self):
        return "CAPTURED"


CAPTURED = _Captured()


class _Auto:
    __slots__ = ()

    def __repr__(self) -> str:
        return "AUTO"


AUTO = _Auto()


def _check_rule(rule: str) -> bool:
    if rule not in SLIDE_RULES:
        raise InputError(f"unknown slide rule {rule!r}; expected one of {SLIDE_RULES}")
    return rule == "literal"


def require_edges(g: Graph) -> None:
    if g.is_edgeless:
        raise InputError("the search game is not defined on edgeless graphs")


# -- searcher moves -------------------------------------------------------


@dataclass(frozen=True)
class SearcherMove:
    kind: str  # "place" | "remove" | "slide"
    vertex: Vertex = None
    target: Vertex = None

    def __post_init__(self):
        if self.kind not in ("place", "remove", "slide"):
            raise InputError(f"unknown move kind {self.kind!r}")
        if self.kind == "slide" and self.target is None:
            raise InputError("a slide needs a target vertex")

    @classmethod
    def place(cls, v: Vertex) -> SearcherMove:
        return cls("place", v)

    @classmethod
    def remove(cls, v: Vertex) -> SearcherMove:
        return cls("remove", v)

    @classmethod
    def slide(cls, u: Vertex, v: Vertex) -> SearcherMove:
        return cls("slide", u, v)

    def apply(self, g: Graph, s: Iterable[Vertex]) -> frozenset:
        """The searcher set after the move; raises unless the move is legitimate."""
        s = frozenset(s)
        if self.kind == "place":
            g.index(self.vertex)
            if self.vertex in s:
                raise InputError(f"vertex {self.vertex!r} is already occupied")
            out = s | {self.vertex}
        elif self.kind == "remove":
            if self.vertex not in s:
                raise InputError(f"no searcher on {self.vertex!r} to remove")
            out = s - {self.vertex}
        else:
            if self.vertex not in s:
                raise InputError(f"no searcher on {self.vertex!r} to slide")
            if self.target in s:
                raise InputError(f"slide target {self.target!r} is already occupied")
            if not g.has_edge(self.vertex, self.target):
                raise InputError(f"no edge {self.vertex!r}{self.target!r} to slide along")
            out = (s - {self.vertex}) | {self.target}
        return out

    def to_json(self) -> dict:
        if self.kind == "slide":
            return {"kind": "slide", "from": vkey(self.vertex), "to": vkey(self.target)}
        return {"kind": self.kind, "vertex": vkey(self.vertex)}

    def __str__(self) -> str:
        if self.kind == "slide":
            return f"slide {self.vertex}->{self.target}"
        return f"{self.kind} {self.vertex}"


def is_legitimate(g: Graph, s: Iterable[Vertex], s_next: Iterable[Vertex]) -> bool:
    s, s_next = g.check_vertices(s), g.check_vertices(s_next)
    added, removed = s_next - s, s - s_next
    if len(added) + len(removed) == 1:
        return True
    if len(added) == 1 and len(removed) == 1:
        return g.has_edge(next(iter(removed)), next(iter(added)))
    return False


def move_between(g: Graph, s: Iterable[Vertex], s_next: Iterable[Vertex]) -> SearcherMove:
    """The unique move turning ``s`` into ``s_next``."""
    s, s_next = g.check_vertices(s), g.check_vertices(s_next)
    if not is_legitimate(g, s, s_next):
        raise InputError(f"illegitimate move {sorted_vertices(s)} -> {sorted_vertices(s_next)}")
    added, removed = s_next - s, s - s_next
    if added and removed:
        return SearcherMove.slide(next(iter(removed)), next(iter(added)))
    if added:
        return SearcherMove.place(next(iter(added)))
    return SearcherMove.remove(next(iter(removed)))


def legitimate_moves(g: Graph, s: Iterable[Vertex], max_searchers: int | None = None) -> list[SearcherMove]:
    """All moves from ``s`` in deterministic order: removals, placements, slides."""
    s = g.check_vertices(s)
    cap = g.n if max_searchers is None else max_searchers
    moves = [SearcherMove.remove(v) for v in sorted_vertices(s)]
    if len(s) < cap:
        moves += [SearcherMove.place(v) for v in g.vertices if v not in s]
    for u in sorted_vertices(s):
        for v in sorted_vertices(g.neighbors(u)):
            if v not in s:
                moves.append(SearcherMove.slide(u, v))
    return moves


# -- clearing, pathways and the fugitive space ---------------------------


def _kernel_inputs(g: Graph):
    cached = g.__dict__.get("_game_kernel_inputs")
    if cached is None:
        eu = tuple(g.index(u) for u, _ in g.edges)
        ev = tuple(g.index(v) for _, v in g.edges)
        cached = (g.incidence, eu, ev)
        g.__dict__["_game_kernel_inputs"] = cached
    return cached


def _masks(g: Graph, s, s_next):
    s, s_next = g.check_vertices(s), g.check_vertices(s_next)
    if not is_legitimate(g, s, s_next):
        raise InputError(f"illegitimate move {sorted_vertices(s)} -> {sorted_vertices(s_next)}")
    return g.vmask(s), g.vmask(s_next)


def clear_set(g: Graph, s: Iterable[Vertex], s_next: Iterable[Vertex]) -> frozenset:
    """Edges cleared by the move: ``{xy : x ∈ S}`` when ``S' - S = {y}``, otherwise nothing."""
    sm, sm2 = _masks(g, s, s_next)
    inc, eu, ev = _kernel_inputs(g)
    return g.edges_of(_kernels.clear_py(inc, eu, ev, sm, sm2))


def accessible_edges(
    g: Graph, s: Iterable[Vertex], e: Sequence[Vertex], s_next: Iterable[Vertex],
    rule: str = DEFAULT_RULE, trivial: bool | None = None,
) -> frozenset:
    literal = _check_rule(rule)
    trivial = TRIVIAL_PATHWAY_WITNESSES if trivial is None else trivial
    sm, sm2 = _masks(g, s, s_next)
    inc, eu, ev = _kernel_inputs(g)
    j = g.edge_index(e)
    return g.edges_of(_kernels.accessible_py(inc, eu, ev, g.m, sm, sm2, j, literal, trivial))


def fugitive_space_mask(g: Graph, sm: int, e_index: int, sm2: int, rule: str = DEFAULT_RULE) -> int:
    """Mask version of :func:`fugitive_space` for callers that already hold masks."""
    inc, eu, ev = _kernel_inputs(g)
    return _kernels.fugitive_space_py(inc, eu, ev, g.m, sm, sm2, e_index, rule == "literal", TRIVIAL_PATHWAY_WITNESSES)


def fugitive_space(
    g: Graph, s: Iterable[Vertex], e: Sequence[Vertex], s_next: Iterable[Vertex], rule: str = DEFAULT_RULE
) -> frozenset:
    """``({e} - clear(S, S')) ∪ A(S, e, S')``; empty means the fugitive is captured."""
    literal = _check_rule(rule)
    sm, sm2 = _masks(g, s, s_next)
    j = g.edge_index(e)
    inc, eu, ev = _kernel_inputs(g)
    return g.edges_of(_kernels.fugitive_space_py(inc, eu, ev, g.m, sm, sm2, j, literal, TRIVIAL_PATHWAY_WITNESSES))


def _slide_edge(g: Graph, s: frozenset, s_next: frozenset):
    added, removed = s_next - s, s - s_next
    if len(added) == 1 and len(removed) == 1:
        x, y = next(iter(removed)), next(iter(added))
        return edge(x, y), x, y
    return None, None, None


def _junction(a: Edge, b: Edge):
    common = set(a) & set(b)
    return next(iter(common)) if len(common) == 1 else None


def is_avoiding_pathway(
    g: Graph, s: Iterable[Vertex], s_next: Iterable[Vertex], w: Sequence[Sequence[Vertex]],
    rule: str = DEFAULT_RULE, trivial: bool | None = None,
) -> bool:
    """Check the avoiding conditions on an explicit edge sequence."""
    literal = _check_rule(rule)
    trivial = TRIVIAL_PATHWAY_WITNESSES if trivial is None else trivial
    s, s_next = g.check_vertices(s), g.check_vertices(s_next)
    if not is_legitimate(g, s, s_next):
        raise InputError("illegitimate move")
    w = [edge(*f) for f in w]
    for f in w:
        g.edge_index(f)
    sigma, x, y = _slide_edge(g, s, s_next)
    blocked = s & s_next
    t = len(w)
    if t == 0:
        return False
    if t == 1:
        return trivial and w[0] != sigma
    for a, b in zip(w, w[1:]):
        j = _junction(a, b)
        if a == b or j is None or j in blocked:
            return False
    if sigma is None:
        return True
    if any(f == sigma for f in w[1:-1]):
        return False
    if w[0] == sigma and w[-1] == sigma and t <= 2:
        return False
    if not literal:
        if w[0] == sigma and _junction(w[0], w[1]) != y:
            return False
        if w[-1] == sigma and _junction(w[-2], w[-1]) != x:
            return False
    return True


def pathway_witness(
    g: Graph, s: Iterable[Vertex], s_next: Iterable[Vertex], e: Sequence[Vertex], target: Sequence[Vertex],
    rule: str = DEFAULT_RULE, trivial: bool | None = None,
) -> list[Edge] | None:
    """A shortest ``(S, S')``-avoiding pathway from ``e`` to ``target``, or ``None``.

    Breadth-first search over states (last edge, started on the slid edge,
    length capped at 3), which is all the avoiding conditions depend on.
    """
    literal = _check_rule(rule)
    trivial = TRIVIAL_PATHWAY_WITNESSES if trivial is None else trivial
    s, s_next = g.check_vertices(s), g.check_vertices(s_next)
    if not is_legitimate(g, s, s_next):
        raise InputError("illegitimate move")
    e, target = edge(*e), edge(*target)
    g.edge_index(e)
    g.edge_index(target)
    sigma, x, y = _slide_edge(g, s, s_next)
    blocked = s & s_next
    start = (e, e == sigma, 1)
    parent = {start: None}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        last, from_sigma, length = state
        if last == target:
            path = []
            node = state
            while node is not None:
                path.append(node[0])
                node = parent[node]
            path.reverse()
            if is_avoiding_pathway(g, s, s_next, path, rule, trivial):
                return path
        if last == sigma and length > 1:
            continue
        for v in sorted_vertices(last):
            if v in blocked:
                continue
            if last == sigma and not literal and v != y:
                continue
            for u in sorted_vertices(g.neighbors(v)):
                f = edge(v, u)
                if f == last:
                    continue
                if f == sigma and not literal and v != x:
                    continue
                nxt = (f, from_sigma, min(length + 1, 3))
                if nxt not in parent:
                    parent[nxt] = state
                    queue.append(nxt)
    return None


def avoiding_pathway_exists(
    g: Graph, s: Iterable[Vertex], s_next: Iterable[Vertex], e: Sequence[Vertex], target: Sequence[Vertex],
    rule: str = DEFAULT_RULE, trivial: bool | None = None,
) -> bool:
    return pathway_witness(g, s, s_next, e, target, rule, trivial) is not None


# -- states, steps and plays ----------------------------------------------


@dataclass(frozen=True)
class GameState:
    searchers: frozenset
    fugitive: object  # an edge or CAPTURED
    cleared_history: frozenset = frozenset()
    monotone: bool = True

    @property
    def captured(self) -> bool:
        return self.fugitive is CAPTURED


def initial_state(g: Graph, e1: Sequence[Vertex]) -> GameState:
    require_edges(g)
    e1 = edge(*e1)
    g.edge_index(e1)
    return GameState(frozenset(), e1)


def lazy_choice(g: Graph, current: Edge, space: frozenset) -> Edge:
    """Stay put when allowed, otherwise take the lowest available edge."""
    if current in space:
        return current
    return sorted_edges(space)[0]


@dataclass(frozen=True)
class StepResult:
    state: GameState
    move: SearcherMove
    cleared_now: frozenset
    space: frozenset


def step(
    g: Graph, state: GameState, move: SearcherMove,
    fugitive_choice: object = AUTO, rule: str = DEFAULT_RULE,
) -> StepResult:
    """Apply a searcher move and the fugitive's answer.

    ``fugitive_choice`` is an edge, :data:`AUTO` (stay if possible, else the
    lowest edge) or a callable ``space -> edge``.
    """
    if state.captured:
        raise InputError("the fugitive is already captured")
    s_next = move.apply(g, state.searchers)
    cleared = clear_set(g, state.searchers, s_next)
    space = fugitive_space(g, state.searchers, state.fugitive, s_next, rule)
    history = state.cleared_history | cleared
    if not space:
        nxt = GameState(s_next, CAPTURED, history, state.monotone)
        return StepResult(nxt, move, cleared, space)
    if fugitive_choice is AUTO:
        choice = lazy_choice(g, state.fugitive, space)
    elif callable(fugitive_choice):
        choice = fugitive_choice(space)
    else:
        choice = fugitive_choice
    try:
        choice = edge(*choice)
    except (TypeError, ValueError):
        raise InputError(f"fugitive choice {choice!r} is not an edge") from None
    if choice not in space:
        raise InputError(f"fugitive edge {choice!r} is outside the fugitive space")
    nxt = GameState(s_next, choice, history, state.monotone and choice not in history)
    return StepResult(nxt, move, cleared, space)


@dataclass
class Play:
    """``<S_0 = ∅, e_1, S_1, e_2, ...>`` with the edges cleared at each step."""

    graph: Graph
    positions: list = field(default_factory=lambda: [frozenset()])
    fugitive: list = field(default_factory=list)
    moves: list = field(default_factory=list)
    cleared: list = field(default_factory=list)

    @classmethod
    def start(cls, g: Graph, e1: Sequence[Vertex]) -> Play:
        state = initial_state(g, e1)
        return cls(g, [state.searchers], [state.fugitive])

    @property
    def state(self) -> GameState:
        history = frozenset().union(*self.cleared) if self.cleared else frozenset()
        return GameState(self.positions[-1], self.fugitive[-1], history, is_monotone(self))

    @property
    def finished(self) -> bool:
        return bool(self.fugitive) and self.fugitive[-1] is CAPTURED

    def advance(self, move: SearcherMove, fugitive_choice: object = AUTO, rule: str = DEFAULT_RULE) -> StepResult:
        result = step(self.graph, self.state, move, fugitive_choice, rule)
        self.positions.append(result.state.searchers)
        self.fugitive.append(result.state.fugitive)
        self.moves.append(move)
        self.cleared.append(result.cleared_now)
        return result

    def __len__(self) -> int:
        return len(self.moves)


def play_cost(p: Play) -> int:
    return max((len(s) for s in p.positions), default=0)


def is_monotone(p: Play) -> bool:
    """No fugitive edge lies in the clear set of any strictly earlier step.

    The fugitive edge after step ``i`` is ``fugitive[i]`` and must avoid the
    edges cleared at steps ``1..i``.
    """
    seen: set = set()
    for i, cleared in enumerate(p.cleared, start=1):
        seen |= cleared
        e = p.fugitive[i] if i < len(p.fugitive) else CAPTURED
        if e is not CAPTURED and e in seen:
            return False
    return True


def replay(g: Graph, e1: Sequence[Vertex], moves: Iterable[SearcherMove], choices: Iterable[object],
           rule: str = DEFAULT_RULE) -> Play:
    """Rebuild a play from its moves and fugitive answers, validating every step."""
    p = Play.start(g, e1)
    for move, choice in zip(moves, choices):
        result = p.advance(move, AUTO if choice is CAPTURED else choice, rule)
        if choice is CAPTURED and not result.state.captured:
            raise InputError("trace claims a capture the engine does not reproduce")
        if choice is not CAPTURED and result.state.captured:
            raise InputError("trace continues after the engine captured the fugitive")
    return p


FugitiveChoice = Callable[[frozenset], Edge]
