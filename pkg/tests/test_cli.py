import json
import subprocess
import sys

import jsonschema
import pytest

from spectrex import schema_path
from spectrex.cli import BUILTINS, main, parse_range, read_graph
from spectrex.errors import InputError
from spectrex.graph import complete_graph, cycle_graph, path_graph, petersen_graph, turan_graph
from spectrex.graph6 import graph6_encode

SCHEMA = json.loads(schema_path().read_text())


def validate(payload):
    jsonschema.Draft202012Validator(SCHEMA).validate(payload)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_builtins_are_documented_strings():
    expect = {
        "K3": complete_graph(3),
        "K4": complete_graph(4),
        "K5": complete_graph(5),
        "C5": cycle_graph(5),
        "P3": path_graph(3),
        "Petersen": petersen_graph(),
    }
    for name, g in expect.items():
        assert BUILTINS[name] == graph6_encode(g)
        assert read_graph(name) == g


def test_parse_range():
    assert parse_range("3..5") == [3, 4, 5]
    assert parse_range("7") == [7]
    for bad in ("5..3", "a..b", "-1"):
        with pytest.raises(InputError):
            parse_range(bad)


def test_construct(capsys, tmp_path):
    code, out, err = run(capsys, "construct", "--F", "K3", "--k", "2", "--n", "9", "-o", str(tmp_path / "c.json"))
    assert code == 0
    assert len(out.split()) == 1 and "edges=24" in err
    validate(json.loads((tmp_path / "c.json").read_text()))
    code, out, _ = run(capsys, "construct", "--F", "K4", "--k", "1", "--n", "8")
    assert code == 0 and "edges=21" in _
    code, _, err = run(capsys, "construct", "--F", "K3", "--k", "2", "--n", "3")
    assert code == 1 and "below" in err


def test_search_edge(capsys, tmp_path):
    path = tmp_path / "cat.json"
    code, _, err = run(capsys, "search", "edge", "--F", "K3", "--k", "2", "--n", "8", "-o", str(path))
    assert code == 0
    cat = json.loads(path.read_text())
    validate(cat)
    assert cat["value"] == 19 and cat["kind"] == "edge"


def test_search_spectral_stdout(capsys):
    code, out, _ = run(capsys, "search", "spectral", "--F", "K3", "--n", "6")
    cat = json.loads(out)
    validate(cat)
    assert code == 0 and cat["value"] == pytest.approx(3) and cat["graphs"] == ["EFz_"]


def test_search_over_cap(capsys):
    code, _, err = run(capsys, "search", "edge", "--F", "K3", "--n", "20")
    assert code == 2 and "--cap 20" in err


def test_search_bipartite_raw_only(capsys):
    code, out, err = run(capsys, "search", "edge", "--F", "P3", "--n", "5")
    assert code == 0 and "bipartite" in err
    assert json.loads(out)["value"] == 2
    code, _, err = run(capsys, "verify", "edge", "--F", "P3", "--n", "4..5")
    assert code == 1 and "only by `search`" in err


def test_search_resume(capsys, tmp_path):
    ck = str(tmp_path / "ck.json")
    ref = tmp_path / "ref.json"
    run(capsys, "search", "edge", "--F", "K3", "--k", "2", "--n", "8", "-o", str(ref))
    code, _, err = run(capsys, "search", "edge", "--F", "K3", "--k", "2", "--n", "8", "--checkpoint", ck, "--stop-after", "2")
    assert code == 0 and "--resume" in err
    validate(json.loads(open(ck).read()))
    code, _, err = run(capsys, "search", "edge", "--F", "K3", "--k", "2", "--n", "8", "--checkpoint", ck)
    assert code == 1 and "exists" in err
    out = tmp_path / "out.json"
    code, _, _ = run(capsys, "search", "edge", "--F", "K3", "--k", "2", "--n", "8", "--checkpoint", ck, "--resume", "-o", str(out))
    a, b = json.loads(ref.read_text()), json.loads(out.read_text())
    for d in (a, b):
        del d["stats"]["wall_time"]
    assert code == 0 and a == b


def test_workers_do_not_change_output(capsys, tmp_path):
    outs = []
    for w in ("1", "2"):
        p = tmp_path / f"w{w}.json"
        run(capsys, "search", "spectral", "--F", "K3", "--k", "2", "--n", "7", "--workers", w, "-o", str(p))
        d = json.loads(p.read_text())
        del d["stats"]["wall_time"]
        outs.append(d)
    assert outs[0] == outs[1]


def test_verify_edge(capsys, tmp_path):
    path, csv_path = tmp_path / "v.json", tmp_path / "v.csv"
    code, _, err = run(capsys, "verify", "edge", "--F", "K3", "--n", "3..9", "-o", str(path), "--csv", str(csv_path))
    rep = json.loads(path.read_text())
    validate(rep)
    assert code == 0 and {r["verdict"] for r in rep["rows"]} == {"EQUAL"}
    assert csv_path.read_text().splitlines()[:2] == ["n,ex", "3,2"]
    code, out, _ = run(capsys, "verify", "edge", "--F", "K3", "--k", "2", "--n", "6..6")
    assert code == 0 and json.loads(out)["rows"][0]["verdict"] == "DIFFERS"


def test_verify_spectral(capsys):
    code, out, err = run(capsys, "verify", "spectral", "--F", "K3", "--k", "2", "--n", "8..9")
    rep = json.loads(out)
    validate(rep)
    assert code == 0
    assert [r["contained"] for r in rep["rows"]] == [False, True]


def test_verify_measure_a(capsys):
    code, out, err = run(capsys, "verify", "edge", "--F", "C5", "--n", "6..8", "--measure-a")
    assert code == 0 and "measured a = 0" in err
    assert json.loads(out)["family"]["a"] == 0


def test_cache_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SPECTREX_CACHE_DIR", str(tmp_path / "cache"))
    run(capsys, "search", "edge", "--F", "K3", "--k", "2", "--n", "7")
    files = list((tmp_path / "cache").iterdir())
    assert len(files) == 1
    code, out, _ = run(capsys, "search", "edge", "--F", "K3", "--k", "2", "--n", "7")
    assert code == 0 and json.loads(out)["value"] == 15


def test_spectral_commands(capsys, tmp_path):
    g6 = tmp_path / "t.g6"
    g6.write_text(graph6_encode(turan_graph(200, 2)) + "\n")
    proc = subprocess.run(
        [sys.executable, "-m", "spectrex.cli", "spectral", "--graph6", "-", "--tol", "1e-10"],
        stdin=g6.open(),
        capture_output=True,
        text=True,
        check=True,
    )
    d = json.loads(proc.stdout)
    validate(d)
    assert d["rho"] == pytest.approx(100, abs=1e-10)
    code, out, _ = run(capsys, "spectral", "quotient", "--sizes", "2,2", "--clique", "1")
    d = json.loads(out)
    validate(d)
    assert d["rho"] == pytest.approx(3.2360679775) and d["formula_deviation"] < 1e-10
    code, out, _ = run(capsys, "spectral", "--graph6", "Bw")
    assert json.loads(out)["rho"] == pytest.approx(2)
    code, _, err = run(capsys, "spectral", "--graph6", "B!")
    assert code == 1 and "at byte 1" in err
    code, _, err = run(capsys, "spectral", "quotient", "--sizes", "0,2")
    assert code == 1


def test_bounds_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "bounds", "chvatal-hanson", "--nu", "2", "--delta", "3", "--oracle")
    d = json.loads(out)
    validate(d)
    assert code == 0 and d["bound_value"] == d["witness_value"] == 7 and d["satisfied"]
    code, out, _ = run(capsys, "bounds", "turan", "--n", "7", "--r", "3")
    d = json.loads(out)
    validate(d)
    assert d["witness_value"] == 16 and round(d["bound_value"][0]["float"], 3) == 15.958
    sets = tmp_path / "a.json"
    sets.write_text(json.dumps([[1, 2, 3], [2, 3, 4], ["x", 3]]))
    code, out, _ = run(capsys, "bounds", "intersection", "--sets", str(sets))
    validate(json.loads(out))
    assert code == 0 and json.loads(out)["satisfied"]
    code, out, _ = run(capsys, "bounds", "erdos-stone", "--n", "100", "--F", "C5")
    assert json.loads(out)["bound_value"] == 2500
    sets.write_text("{}")
    code, _, _ = run(capsys, "bounds", "intersection", "--sets", str(sets))
    assert code == 1


def test_console_script_entry():
    proc = subprocess.run(["spectrex", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "0.1.0"
