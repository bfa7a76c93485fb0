import json
import subprocess
import sys

import pytest

from colpoly.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_invariant_text(capsys):
    code, out, _ = run(capsys, "invariant", "--knot", "trefoil_left")
    assert code == 0 and "trefoil_left: 1 + 5*x" in out


def test_invariant_symmetries_json(capsys):
    code, out, _ = run(capsys, "invariant", "--braid", "s1^3", "--symmetries", "all", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert [r["variant"] for r in doc["results"]] == ["none", "obv", "inv", "rev"]
    assert [r["text"] for r in doc["results"]] == ["1 + 5*x^4", "1 + 5*x", "1 + 5*x", "1 + 5*x^4"]


def test_pd_and_wirtinger_sources(capsys, tmp_path):
    code, out, _ = run(capsys, "invariant", "--pd", "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]")
    assert code == 0 and "pd: 1 + 5*x" in out
    path = tmp_path / "k.json"
    path.write_text('{"kappa": [2, 3, 1], "eps": [-1, -1, -1]}')
    code, out, _ = run(capsys, "invariant", "--wirtinger", str(path))
    assert code == 0 and "wirtinger: 1 + 5*x" in out


@pytest.mark.parametrize("pipeline", ["statesum", "yb-closed"])
def test_pipelines_agree(capsys, pipeline):
    code, out, _ = run(capsys, "invariant", "--knot", "fig8", "--group", "PSL2_7", "--pipeline", pipeline)
    assert code == 0 and "fig8: 24 + 168*x^3 + 168*x^4" in out


def test_long_trace(capsys):
    code, out, _ = run(capsys, "yb-trace", "--knot", "fig8", "--mode", "long", "--group", "PSL2_7")
    assert code == 0 and "1 + 7*x^3 + 7*x^4" in out


def test_colourings_listing(capsys):
    code, out, _ = run(capsys, "colourings", "--knot", "trefoil_left", "--limit", "2")
    assert code == 0 and out.startswith("6 colourings") and "4 more" in out


def test_statesum_over_m11(capsys):
    code, out, _ = run(capsys, "statesum", "--knot", "bretzel_3_5_7", "--group", "M11")
    assert code == 0 and "720 + 7920*x" in out


def test_fixtures(capsys):
    code, out, _ = run(capsys, "fixtures")
    assert code == 0 and "kinoshita_terasaka" in out
    code, out, _ = run(capsys, "fixtures", "--show", "8_17")
    assert code == 0 and "wirtinger:" in out


@pytest.mark.parametrize("argv,status", [
    (["invariant", "--braid", "s1 s2^"], 2),
    (["invariant", "--knot", "nosuchknot"], 2),
    (["invariant", "--knot", "fig8", "--symmetries", "mirror"], 2),
    (["invariant", "--braid", "s1 s1"], 3),
    (["invariant", "--knot", "fig8", "--group", "S7", "--basepoint", "(1,2)", "--pipeline", "statesum"], 3),
    (["invariant", "--knot", "conway", "--pipeline", "yb-closed"], 3),
    (["invariant", "--knot", "kinoshita_terasaka", "--group", "A7", "--node-cap", "1000"], 4),
    (["yb-trace", "--knot", "fig8", "--group", "M11"], 4),
])
def test_exit_codes(capsys, argv, status):
    code, _, err = run(capsys, *argv)
    assert code == status and err.startswith("error:")


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "cocycle", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["failed"] == 0 and doc["passed"] > 0


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "colpoly.cli", "invariant", "--knot", "unknot"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "unknot: 1" in proc.stdout
