import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import small_graphs
from mixedsearch import corpus
from mixedsearch.bramble import cycle_bramble
from mixedsearch.cartesian import embed_in_cartesian_product
from mixedsearch.corpus import bundled_names, bundled_path, files, resolve
from mixedsearch.errors import InputError
from mixedsearch.game import AUTO, Play, fugitive_space, legitimate_moves
from mixedsearch.graph import cycle_graph, path_graph
from mixedsearch.io import (
    bramble_from_json,
    bramble_to_json,
    decomposition_from_json,
    decomposition_to_dot,
    decomposition_to_json,
    dump_trace,
    graph_from_json,
    graph_to_dot,
    graph_to_json,
    model_from_json,
    model_to_json,
    read_json,
    replay_trace,
)
from mixedsearch.strategies import LazyFugitive, run_match, tree_searcher


def test_bundled_files_match_their_generators():
    expected = files()
    assert set(bundled_names()) == set(expected)
    for name, payload in expected.items():
        assert read_json(bundled_path(name)) == json.loads(json.dumps(payload)), name


def test_resolve_prefers_existing_paths(tmp_path):
    assert resolve("c6.json") == bundled_path("c6.json")
    local = tmp_path / "c6.json"
    local.write_text("{}")
    assert resolve(str(local)) == local


@given(small_graphs(max_vertices=7, connected=False))
def test_graph_round_trip(g):
    assert graph_from_json(json.loads(json.dumps(graph_to_json(g)))) == g


def test_decomposition_round_trip(sun3_ltd, tmp_path):
    obj = decomposition_to_json(sun3_ltd)
    assert decomposition_from_json(obj) == sun3_ltd
    (tmp_path / "g.json").write_text(json.dumps(graph_to_json(sun3_ltd.graph)))
    ref = decomposition_to_json(sun3_ltd, "g.json")
    assert decomposition_from_json(ref, base=tmp_path) == sun3_ltd
    with pytest.raises(InputError):
        decomposition_from_json({"nodes": [], "tree_edges": []})


def test_bramble_and_model_round_trip(sun3_full):
    b = cycle_bramble(cycle_graph(6))
    assert set(bramble_from_json(bramble_to_json(b))) == set(b.elements)
    model = embed_in_cartesian_product(sun3_full).model
    assert model_from_json(model_to_json(model)) == {k: frozenset(v) for k, v in model.items()}


def test_malformed_inputs(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    with pytest.raises(InputError):
        read_json(bad)
    with pytest.raises(InputError):
        read_json(tmp_path / "missing.json")
    with pytest.raises(InputError):
        graph_from_json({"vertices": ["a"]})
    with pytest.raises(InputError):
        graph_from_json({"vertices": ["a", "b"], "edges": [["a", "b", "c"]]})


def test_trace_records_p4():
    g = path_graph(4)
    result = run_match(g, tree_searcher(g), LazyFugitive(g))
    lines = dump_trace(result.play).splitlines()
    header, records = json.loads(lines[0]), [json.loads(x) for x in lines[1:]]
    assert header["format"] == "mixedsearch-trace" and header["version"] == 1
    assert records[0]["step"] == 0 and records[0]["move"] is None
    assert records[-1]["fugitive"] == "CAPTURED"
    assert all(r["monotone_so_far"] for r in records)
    assert replay_trace("\n".join(lines)).positions == result.play.positions


def test_tampered_trace_is_rejected():
    g = path_graph(4)
    result = run_match(g, tree_searcher(g), LazyFugitive(g))
    rows = [json.loads(x) for x in dump_trace(result.play).splitlines()]
    rows[-1]["fugitive"] = ["a", "b"]
    with pytest.raises(InputError):
        replay_trace("\n".join(json.dumps(r) for r in rows))


@given(small_graphs(max_vertices=5), st.randoms(use_true_random=False))
def test_random_traces_replay(g, rnd):
    p = Play.start(g, rnd.choice(g.edges))
    while not p.finished and len(p) < 20:
        s = p.positions[-1]
        move = rnd.choice(legitimate_moves(g, s, 3))
        space = fugitive_space(g, s, p.fugitive[-1], move.apply(g, s))
        p.advance(move, rnd.choice(sorted(space)) if space else AUTO)
    text = dump_trace(p)
    again = replay_trace(text)
    assert again.positions == p.positions and again.fugitive == p.fugitive
    assert dump_trace(again) == text


def test_dot_output(sun3_ltd):
    dot = graph_to_dot(path_graph(3))
    assert dot.startswith("graph G {") and '"a" -- "b";' in dot
    ddot = decomposition_to_dot(sun3_ltd)
    assert ddot.count("style=dashed") == 3


def test_write_corpus(tmp_path):
    written = corpus.write_corpus(tmp_path)
    assert {p.name for p in written} == set(files())
