"""The bundled regression corpus: small graphs, decompositions and brambles.

The JSON files under ``mixedsearch/data`` are generated from the constructors
here (``python -m mixedsearch.corpus DIR``) and the tests check they match.
"""
from __future__ import annotations

import sys
from importlib import resources
from pathlib import Path

from .bramble import cycle_bramble, max_order_bramble, trim_bramble
from .cartesian import build_product, canonical_ltd
from .decomposition import LooseTreeDecomposition
from .graph import Graph, complete_graph, cycle_graph, path_graph, star_graph, sun3

DATA_PACKAGE = "mixedsearch.data"


def fig1_tree() -> Graph:
    return Graph.from_edges([("1", "2"), ("1", "3"), ("1", "4"), ("3", "5")])


def fig4_tree() -> Graph:
    return Graph.from_edges([("a", "b"), ("b", "c"), ("c", "d"), ("c", "f")])


def sun3_decomposition() -> LooseTreeDecomposition:
    """Width 3, six nodes; marginal edges ac, bd and cf."""
    bags = {"1": "ab", "2": "bce", "3": "be", "4": "ce", "5": "de", "6": "ef"}
    tree = Graph.from_edges([("1", "2"), ("2", "3"), ("2", "4"), ("3", "5"), ("4", "6")])
    return LooseTreeDecomposition(tree, {t: set(b) for t, b in bags.items()}, sun3())


def sun3_minus_a_decomposition() -> LooseTreeDecomposition:
    """The width-2 decomposition of the 3-sun without ``a``; marginal edges bc, bd and cf."""
    from .graph import remove_vertices

    bags = {"3": "be", "4": "ce", "5": "de", "6": "ef"}
    tree = Graph.from_edges([("3", "4"), ("3", "5"), ("4", "6")])
    return LooseTreeDecomposition(tree, {t: set(b) for t, b in bags.items()}, remove_vertices(sun3(), {"a"}))


def tree_decomposition_of_tree(t: Graph) -> LooseTreeDecomposition:
    """Width 1: one singleton bag per vertex along the tree itself."""
    return LooseTreeDecomposition(t, {v: {v} for v in t.vertices}, t)


def graphs() -> dict[str, Graph]:
    out = {f"p{n}": path_graph(n) for n in range(2, 6)}
    out.update({f"star{k}": star_graph(k) for k in (3, 4)})
    out.update({f"c{n}": cycle_graph(n) for n in range(3, 7)})
    out["k4"] = complete_graph(4)
    out["sun3"] = sun3()
    out["fig1-tree"] = fig1_tree()
    out["fig4-tree"] = fig4_tree()
    out["tk2"] = build_product(fig4_tree(), 2).product
    out["tk3"] = build_product(fig4_tree(), 3).product
    out["fig1-tk3"] = build_product(fig1_tree(), 3).product
    return out


def trees() -> dict[str, Graph]:
    return {name: g for name, g in graphs().items() if g.is_tree()}


def decompositions() -> dict[str, LooseTreeDecomposition]:
    out = {
        "sun3-ltd": sun3_decomposition(),
        "sun3-minus-a-ltd": sun3_minus_a_decomposition(),
        "tk2-ltd": canonical_ltd(fig4_tree(), "a", 2),
        "tk3-ltd": canonical_ltd(fig4_tree(), "a", 3),
    }
    for name, g in trees().items():
        if name.startswith(("p", "star")):
            out[f"{name}-ltd"] = tree_decomposition_of_tree(g)
    return out


def brambles() -> dict[str, tuple[str, list]]:
    """Bramble name -> (graph name, elements)."""
    out = {"c6-bramble": ("c6", list(cycle_bramble(cycle_graph(6)).elements))}
    for name in ("k4", "sun3", "c4"):
        g = graphs()[name]
        b, _ = max_order_bramble(g)
        out[f"{name}-bramble"] = (name, list(trim_bramble(g, b).elements))
    return out


def _graph_ref(d: LooseTreeDecomposition) -> str | None:
    for name, g in graphs().items():
        if g == d.graph:
            return f"{name}.json"
    return None


def files() -> dict[str, object]:
    """Every bundled file name -> its JSON payload."""
    from .io import bramble_to_json, decomposition_to_json, graph_to_json

    out: dict[str, object] = {f"{name}.json": graph_to_json(g) for name, g in graphs().items()}
    for name, d in decompositions().items():
        out[f"{name}.json"] = decomposition_to_json(d, _graph_ref(d))
    for name, (gname, elements) in brambles().items():
        payload = bramble_to_json(elements)
        payload["graph"] = f"{gname}.json"
        out[f"{name}.json"] = payload
    return out


def write_corpus(directory) -> list[Path]:
    from .io import dumps

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, payload in sorted(files().items()):
        path = directory / name
        path.write_text(dumps(payload))
        written.append(path)
    return written


def bundled_path(name: str) -> Path:
    """Path of a bundled corpus file; ``name`` may omit the ``.json`` suffix."""
    if not name.endswith(".json"):
        name += ".json"
    return Path(str(resources.files(DATA_PACKAGE).joinpath(name)))


def bundled_names() -> list[str]:
    return sorted(p.name for p in resources.files(DATA_PACKAGE).iterdir() if p.name.endswith(".json"))


def resolve(path_or_name: str) -> Path:
    """A filesystem path if it exists, otherwise the bundled file of that name."""
    p = Path(path_or_name)
    if p.exists():
        return p
    candidate = bundled_path(p.name)
    if candidate.exists():
        return candidate
    return p


if __name__ == "__main__":
    for path in write_corpus(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).parent / "data"):
        print(path)
