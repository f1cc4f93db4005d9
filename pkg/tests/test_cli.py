import io
import json
import subprocess
import sys


from mixedsearch.cli import main
from mixedsearch.corpus import bundled_names, bundled_path
from mixedsearch.graph import path_graph
from mixedsearch.io import graph_to_json, replay_trace


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_fig2(capsys):
    code, out, _ = run(capsys, "validate-ltd", "--graph", "sun3.json", "--ltd", "sun3-ltd.json")
    report = json.loads(out)
    assert code == 0 and report["valid"] and report["width"] == 3
    assert report["marginal_edges"] == [["a", "c"], ["b", "d"], ["c", "f"]]


def test_validate_invalid_exits_1(capsys, tmp_path):
    ltd = json.loads(bundled_path("sun3-ltd.json").read_text())
    for node in ltd["nodes"]:
        if node["id"] == "3":
            node["bag"] = ["b"]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(ltd))
    code, out, _ = run(capsys, "validate-ltd", "--graph", "sun3.json", "--ltd", str(path))
    assert code == 1 and json.loads(out)["condition"] == "L1"


def test_fullify_writes_a_full_decomposition(capsys, tmp_path):
    target = tmp_path / "full.json"
    code, _, _ = run(capsys, "fullify", "--graph", "sun3.json", "--ltd", "sun3-ltd.json", "-o", str(target))
    assert code == 0
    code, out, _ = run(capsys, "validate-ltd", "--graph", "sun3.json", "--ltd", str(target))
    assert json.loads(out)["full"] is True


def test_cartesian_and_dot(capsys):
    code, out, _ = run(capsys, "cartesian", "--tree", "fig4-tree.json", "-k", "3", "--root", "a")
    obj = json.loads(out)
    assert code == 0 and len(obj["product"]["vertices"]) == 15
    bags = {n["id"]: n["bag"] for n in obj["decomposition"]["nodes"]}
    assert bags["b/2"] == ["a:3", "b:1", "b:2"]
    code, out, _ = run(capsys, "cartesian", "--tree", "fig4-tree.json", "-k", "2", "--format", "dot")
    assert code == 0 and out.startswith("graph G {")


def test_embed(capsys):
    code, out, _ = run(capsys, "embed", "--graph", "sun3.json", "--ltd", "sun3-ltd.json")
    obj = json.loads(out)
    assert code == 0 and obj["verified"] and obj["fullified"] and obj["k"] == 3
    assert set(obj["branch_sets"]) == set("abcdef")


def test_brambles(capsys):
    code, out, _ = run(capsys, "bramble-order", "--graph", "c6.json", "--bramble", "c6-bramble.json")
    assert code == 0 and json.loads(out)["order"] == 2 and json.loads(out)["tight"]
    code, out, _ = run(capsys, "bramble-max", "--graph", "k4.json")
    assert code == 0 and json.loads(out)["order"] == 3


def test_solve(capsys):
    code, out, _ = run(capsys, "solve", "--graph", "c5.json")
    assert code == 0 and json.loads(out) == {"avms": 2}
    code, out, _ = run(capsys, "solve", "--graph", "c5.json", "--monotone")
    assert json.loads(out) == {"mavms": 2}
    code, out, _ = run(capsys, "solve", "--graph", "p3.json", "--slide-rule", "literal")
    assert json.loads(out) == {"avms": 2}


def test_resource_guard_exits_3(capsys, tmp_path):
    path = tmp_path / "p9.json"
    path.write_text(json.dumps(graph_to_json(path_graph(9))))
    code, _, err = run(capsys, "solve", "--graph", str(path))
    assert code == 3 and "resource guard" in err


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "solve")[0] == 2
    assert run(capsys, "no-such-command")[0] == 2
    assert run(capsys, "match", "--graph", "p4.json", "--searcher", "robot")[0] == 2
    assert run(capsys, "verify-theorem")[0] == 2


def test_missing_file_exits_1(capsys):
    code, _, err = run(capsys, "solve", "--graph", "nowhere.json")
    assert code == 1 and "cannot read" in err


def test_strategy_descriptors(capsys):
    code, out, _ = run(capsys, "strategy", "--graph", "sun3.json", "--ltd", "sun3-ltd.json")
    obj = json.loads(out)
    assert code == 0 and obj["kind"] == "ltd-searcher" and obj["width"] == 3
    code, out, _ = run(capsys, "strategy", "--graph", "c6.json", "--bramble", "c6-bramble.json")
    assert json.loads(out)["order"] == 2


def test_match_trace_replays(capsys):
    code, out, _ = run(capsys, "match", "--graph", "p4.json", "--searcher", "tree", "--fugitive", "auto")
    assert code == 0
    last = json.loads(out.splitlines()[-1])
    assert last["fugitive"] == "CAPTURED"
    assert replay_trace(out).finished
    code2, out2, _ = run(capsys, "match", "--graph", "p4.json", "--searcher", "tree", "--fugitive", "auto")
    assert out2 == out


def test_match_bramble_cycle(capsys):
    code, out, _ = run(capsys, "match", "--graph", "sun3.json", "--searcher", "ltd:sun3-ltd.json",
                       "--fugitive", "bramble:sun3-bramble.json")
    header = json.loads(out.splitlines()[0])
    assert code == 0 and header["verdict"] == "captured"
    replay_trace(out)


def test_interactive_fugitive(capsys, monkeypatch):
    # pick the starting edge, then answer with a bad choice followed by menu index 0 each turn
    monkeypatch.setattr(sys, "stdin", io.StringIO("c-d\n" + "zz\n0\n" * 10))
    code, out, err = run(capsys, "match", "--graph", "p4.json", "--searcher", "tree", "--interactive-fugitive")
    assert code == 0
    assert "illegal choice" in err and "[0]" in err
    assert json.loads(out.splitlines()[1])["fugitive"] == ["c", "d"]
    assert replay_trace(out).finished


def test_interactive_eof(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(""))
    code, _, err = run(capsys, "match", "--graph", "p4.json", "--searcher", "tree", "--interactive-fugitive")
    assert code == 1 and "input ended" in err


def test_verify_theorem_c6(capsys):
    code, out, _ = run(capsys, "verify-theorem", "--graph", "c6.json")
    report = json.loads(out)
    assert code == 0 and report["consistent"]
    assert set(report["parameters"].values()) == {2}


def test_verify_theorem_corpus(capsys, tmp_path):
    for name in ("p3.json", "c4.json", "k4.json", "c4-bramble.json"):
        src = bundled_path(name)
        (tmp_path / name).write_text(src.read_text())
    code, out, _ = run(capsys, "verify-theorem", "--corpus", str(tmp_path))
    report = json.loads(out)
    assert code == 0 and report["consistent"]
    assert [r["file"] for r in report["reports"]] == ["c4.json", "k4.json", "p3.json"]


def test_list_corpus(capsys):
    code, out, _ = run(capsys, "list-corpus")
    assert code == 0 and out.split() == bundled_names()


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "mixedsearch.cli", "solve", "--graph", "p4.json"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout) == {"avms": 1}
