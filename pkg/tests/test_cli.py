import json

import pytest

from subtile.cli import main
from subtile.jsonio import library_to_json, tiling_to_json
from subtile.core import Library, Polyomino, TransformMode
from subtile.represent import NOT_REP_MULTISET
from subtile.jsonio import row_piece_to_json
from subtile.subtiling import staircase_tiling


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


@pytest.fixture
def dominoes(tmp_path):
    return write(tmp_path, "dom.json", {"mode": "rotations", "pieces": [{"rect": [1, 2]}]})


def test_tile_and_count(capsys, tmp_path, dominoes):
    code, out, err = run(capsys, "tile", "--library", dominoes, "--n", 2, "--m", 3)
    assert code == 0 and json.loads(out)["tileable"] and "tiling found" in err
    code, out, _ = run(capsys, "count", "--library", dominoes, "--n", 2, "--m", 3)
    assert code == 0 and json.loads(out)["count"] == 3
    squares = write(tmp_path, "sq.json", [{"rect": [2, 2]}])
    assert run(capsys, "tile", "--library", squares, "--n", 3, "--m", 4)[0] == 1
    assert run(capsys, "count", "--library", squares, "--n", 3, "--m", 4)[0] == 1


def test_decide(capsys, tmp_path):
    code, out, _ = run(capsys, "decide", "--staircase", 7, "--mode", "gen")
    assert code == 1 and json.loads(out)["subtiling"] is False
    lib = Library((Polyomino.rect(1, 2),))
    from subtile.core import Placement, Tiling

    t = Tiling(1, 4, (Placement(0, 0, (0, 0)), Placement(0, 0, (2, 0))), lib)
    inst = write(tmp_path, "t.json", tiling_to_json(t))
    code, out, _ = run(capsys, "decide", "--instance", inst)
    assert code == 0 and json.loads(out)["split"] == 2
    ms = write(tmp_path, "ms.json", {"n": 1, "m": 4, "multiset": {"counts": [{"piece": {"rect": [1, 2]}, "count": 2}]}})
    assert run(capsys, "decide", "--instance", ms)[0] == 0


def test_beta(capsys, dominoes):
    code, out, err = run(capsys, "beta", "--library", dominoes, "--n", 1, "--mmax", 6)
    body = json.loads(out)
    assert code == 0 and body["beta"] == 2 and body["exhaustive"] and "lower bound" in err


def test_represent(capsys, tmp_path):
    inst = write(tmp_path, "p.json", {"n": 5, "pieces": [row_piece_to_json(p) for p in NOT_REP_MULTISET]})
    code, out, _ = run(capsys, "represent", "--instance", inst)
    assert code == 1 and json.loads(out) == {"equations": True, "m": 4, "tiling": None}
    lib = write(tmp_path, "l.json", [{"rect": [1, 1]}, {"rect": [2, 1]}])
    code, out, _ = run(capsys, "represent", "--library", lib, "--n", 2)
    assert code == 0 and json.loads(out)["sufficient"] == "n<=3"
    code, out, _ = run(capsys, "represent", "--library", lib, "--n", 2, "--search", "--mmax", 3)
    assert code == 0 and json.loads(out)["counterexample"] is None
    bad = write(tmp_path, "bad.json", {"n": 2, "pieces": [{"rect": [1, 2], "rows": [1, 1]}]})
    assert run(capsys, "represent", "--instance", bad)[0] == 2


def test_rectpack(capsys):
    code, out, _ = run(capsys, "rectpack", 2, 3, 6, 5)
    assert code == 0 and json.loads(out)["tiles"]
    code, out, _ = run(capsys, "rectpack", 2, 3, 5, 5)
    assert code == 1 and not json.loads(out)["condition_a"]
    assert run(capsys, "rectpack", 2, 3, 5)[0] == 2


def test_rectpack_beta_flags_disagreement(capsys):
    code, out, err = run(capsys, "rectpack", 2, 3, 5, "--beta")
    body = json.loads(out)
    assert code == 0
    assert body["paper_value"] == 12 and body["agreement"] in ("agree", "disagree")
    assert (body["agreement"] == "agree") == (body["empirical_value"] == 12)
    assert body["agreement"].upper() in err


def test_tall(capsys, tmp_path):
    lib = write(tmp_path, "tall.json", [{"rect": [4, 3]}, {"rect": [3, 3]}, {"rect": [1, 1]}])
    code, out, _ = run(capsys, "tall", "--library", lib, "--n", 4, "--check")
    body = json.loads(out)
    assert code == 0 and body["beta"] == 3 and body["empirical"]["agrees"]
    short = write(tmp_path, "short.json", [{"rect": [2, 2]}, {"rect": [1, 1]}])
    assert run(capsys, "tall", "--library", short, "--n", 4)[0] == 1


def test_reduce(capsys, tmp_path):
    emit = tmp_path / "inst.json"
    code, out, _ = run(capsys, "reduce", "--partition", "1,2,3", "--emit", emit)
    assert code == 0 and json.loads(out)["n"] == 8
    assert json.loads(emit.read_text())["m"] == 6
    code, out, _ = run(capsys, "reduce", "--partition", "1,2,3", "--solve")
    body = json.loads(out)
    assert code == 0 and body["agrees_with_brute_force"] and body["rotation_rigid"]
    assert sum(body["witness_partition"]["left"]) == 3
    assert run(capsys, "reduce", "--partition", "1,1,4", "--solve")[0] == 1
    assert run(capsys, "reduce", "--partition", "1,2")[0] == 1
    assert run(capsys, "reduce", "--partition", "1,x")[0] == 2


def test_paper_encoding_roundtrip(capsys, tmp_path):
    emit = tmp_path / "pairs.json"
    run(capsys, "reduce", "--partition", "1,1", "--paper-encoding", "--emit", emit)
    body = json.loads(emit.read_text())
    assert body["n"] == "100" and body["m"] == "10"
    code, out, _ = run(capsys, "decide", "--instance", emit, "--paper-encoding", "--mode", "gen")
    assert code == 0 and json.loads(out)["split"] == 1


def test_bounds(capsys, tmp_path):
    units = write(tmp_path, "u.json", [{"rect": [1, 1]}, {"rect": [1, 2]}, {"rect": [1, 3]}])
    code, out, _ = run(capsys, "bounds", "--library", units, "--n", 2)
    body = json.loads(out)
    assert code == 0 and body["bounds"]["unit_height"]["value"] == "243/2"
    assert body["bounds"]["unit_height"]["ceil"] == 122
    dom = write(tmp_path, "d.json", [{"rect": [1, 2]}])
    code, out, _ = run(capsys, "bounds", "--library", dom, "--n", 1, "--check", "--mmax", 6)
    body = json.loads(out)
    assert code == 0 and body["violations"] == [] and body["empirical"]["beta"] == 2


def test_render(capsys, tmp_path):
    inst = write(tmp_path, "s.json", tiling_to_json(staircase_tiling(3)))
    code, out, _ = run(capsys, "render", "--instance", inst)
    assert code == 0 and out.startswith("<svg")
    code, out, _ = run(capsys, "render", "--instance", inst, "--format", "ascii")
    assert code == 0 and len(out.splitlines()) == 2


def test_error_exit_codes(capsys, tmp_path, dominoes):
    assert run(capsys, "tile", "--library", tmp_path / "missing.json", "--n", 1, "--m", 2)[0] == 2
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    code, _, err = run(capsys, "tile", "--library", broken, "--n", 1, "--m", 2)
    assert code == 2 and "malformed" in err
    bad_schema = write(tmp_path, "bs.json", {"pieces": [{"rect": [1]}]})
    assert run(capsys, "tile", "--library", bad_schema, "--n", 1, "--m", 2)[0] == 2
    assert run(capsys, "tile", "--n", 1, "--m", 2)[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["count", "--library", dominoes])
    assert e.value.code == 2


def test_budget_exit_code(capsys, dominoes):
    code, out, _ = run(capsys, "count", "--library", dominoes, "--n", 6, "--m", 6, "--budget", 5)
    assert code == 3 and json.loads(out)["error"] == "budget exceeded"
    code, out, _ = run(capsys, "beta", "--library", dominoes, "--n", 3, "--mmax", 8, "--budget", 50)
    assert code == 3 and json.loads(out)["exhaustive"] is False


def test_module_entry_point():
    import subprocess
    import sys

    r = subprocess.run([sys.executable, "-m", "subtile", "rectpack", "1", "1", "2", "2"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["tiles"]
