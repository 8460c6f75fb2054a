import io
import json
import subprocess
import sys

import pytest

from conftest import DATA
from minsing.cli import run
from minsing.report import parse_report, report_to_dict

FIG1 = str(DATA / "fig1.json")


def call(*argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_discriminant_json():
    code, out, _ = call("discriminant", FIG1, "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["invariants"]["e_delta"] == "10" and data["invariants"]["n_b"] == "9"
    assert len(data["branches"]) == 9 and len(data["contacts"]) == 36
    assert all(isinstance(c, str) for _, _, c in data["contacts"])
    assert data["representative"]["polynomial"].count("(") == 9


def test_output_is_deterministic():
    runs = [call("discriminant", FIG1, "--format", "json")[1] for _ in range(2)]
    assert runs[0] == runs[1]
    assert call("export-dot", FIG1)[1] == call("export-dot", FIG1)[1]


def test_report_roundtrip():
    data = json.loads(call("discriminant", FIG1, "--format", "json")[1])
    assert report_to_dict(parse_report(data)) == data


def test_family_pipe(monkeypatch):
    code, graph, _ = call("family", "an", "5")
    assert code == 0
    code, out, _ = call("discriminant", "-", "--format", "json", stdin=graph, monkeypatch=monkeypatch)
    data = json.loads(out)
    assert [b["char_exponents"] for b in data["branches"]] == [["1"], ["1"]]
    assert data["contacts"][0][2] == "3"


def test_family_pipe_subprocess():
    fam = subprocess.run([sys.executable, "-m", "minsing", "family", "cyclic", "7", "3"],
                         capture_output=True, text=True, check=True)
    res = subprocess.run([sys.executable, "-m", "minsing", "discriminant", "-", "--no-representative"],
                         input=fam.stdout, capture_output=True, text=True)
    assert res.returncode == 0 and "e_delta\t4" in res.stdout


def test_validate(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"vertices": [{"id": "x", "weight": 1}], "edges": []}))
    code, _, err = call("validate", str(bad))
    assert code == 1 and "NotMinimalResolution" in err
    code, out, _ = call("validate", str(bad), "--format", "json")
    assert json.loads(out)["error"] == "NotMinimalResolution"
    assert call("validate", FIG1)[0] == 0


def test_usage_errors(tmp_path):
    assert call()[0] == 64
    assert call("frobnicate")[0] == 64
    assert call("analyze", str(tmp_path / "missing.json"))[0] == 64
    assert call("family", "cyclic", "7", "x")[0] == 64
    assert call("discriminant", FIG1, "--format", "xml")[0] == 64


def test_domain_errors():
    assert call("family", "cyclic", "6", "4")[0] == 1
    assert call("discriminant", str(DATA / "shared_cusps.txt"))[0] == 1
    assert call("emit-equation", str(DATA / "parallel_cusps.txt"))[0] == 1


def test_verify(tmp_path):
    report = tmp_path / "r.json"
    report.write_text(call("discriminant", FIG1, "--format", "json")[1])
    code, out, _ = call("verify", str(report), "--trace")
    assert code == 0 and "verified" in out and out.count("trace") == 36
    data = json.loads(report.read_text())
    data["contacts"][0][2] = "2"
    report.write_text(json.dumps(data))
    code, _, err = call("verify", str(report))
    assert code == 2 and "mismatch" in err
    data = json.loads(call("discriminant", FIG1, "--format", "json")[1])
    data["representative"]["parametrizations"][1]["y"][1] = "7"
    report.write_text(json.dumps(data))
    assert call("verify", str(report))[0] == 2


def test_analyze():
    code, out, _ = call("analyze", FIG1, "--format", "json")
    data = json.loads(out)
    row = next(r for r in data["vertices"] if r["vertex"] == "d")
    assert row == {"vertex": "d", "weight": "2", "valence": "2", "depth": "3",
                   "klass": "central", "branches": "2"}
    assert data["arcs"] == [["a", "b"]]
    table = call("analyze", FIG1)[1]
    assert table.splitlines()[0].split("\t") == ["vertex", "weight", "valence", "depth", "klass", "branches"]
    assert "arcs\ta~b" in table


def test_emit_equation():
    code, out, _ = call("emit-equation", FIG1)
    assert code == 0 and out.count(")*(") == 8


def test_export_dot_fig1():
    dot = call("export-dot", FIG1)[1]
    nodes = [l for l in dot.splitlines() if "[label=" in l]
    edges = [l for l in dot.splitlines() if " -- " in l]
    assert len(nodes) == 9 and len(edges) == 8
    assert '"a" -- "b" [style=bold];' in dot
    assert sum("doublecircle" in l for l in nodes) == 2
    assert '"x1" [label="x1 w=4 s=1 m=4"];' in dot


def test_export_dot_small(tmp_path):
    one = tmp_path / "one.txt"
    one.write_text("v 3\n")
    dot = call("export-dot", str(one))[1]
    assert '"v" [label="v w=3 s=1 m=4"];' in dot and " -- " not in dot
    chain = tmp_path / "chain.txt"
    chain.write_text("p 3\nq 2\nr 2\nedge p q\nedge q r\n")
    dot = call("export-dot", str(chain))[1]
    assert '"q" [label="q w=2 s=2 m=2", shape=doublecircle];' in dot
    assert "bold" not in dot


def test_family_star_table():
    code, out, _ = call("family", "star", "1,2", "--format", "table")
    assert code == 0 and out.splitlines()[0] == "a1_1 2"
