import io
import json

import pytest

from conftest import DATA
from gbg.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def graph(name):
    return str(DATA / f"{name}.graph")


def test_present_text():
    code, out = run("present", "--graph", graph("twin_triangles"), "-n", "2")
    assert code == 0
    assert "generators (5):" in out and "relators (1):" in out


def test_present_simplified_free_group():
    code, out = run("present", "--graph", graph("boxy"), "-n", "2", "--simplify")
    assert code == 0
    assert "free of rank 3" in out


def test_present_json():
    code, out = run("present", "--graph", graph("wheel"), "-n", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["strands"] == 2 and not doc["simplified"]
    assert (len(doc["generators"]), len(doc["relators"])) == (11, 6)


def test_present_gap():
    code, out = run("present", "--graph", graph("twin_triangles"), "-n", "2", "--format", "gap")
    assert code == 0
    assert "F := FreeGroup(5);" in out


def test_jobs_do_not_change_output():
    _, one = run("present", "--graph", graph("tmin"), "-n", "4", "--format", "json")
    _, four = run("present", "--graph", graph("tmin"), "-n", "4", "--format", "json", "--jobs", "4")
    assert one == four


def test_closed_forms_flag_does_not_change_output():
    _, a = run("present", "--graph", "balloon:3", "-n", "3")
    _, b = run("present", "--graph", "balloon:3", "-n", "3", "--no-closed-forms")
    assert a == b


def test_cells_command():
    code, out = run("cells", "--graph", "path:3", "-n", "2")
    assert code == 0
    assert "dimension 0: 3 cells" in out
    assert "dimension 1: 2 cells" in out
    assert "dimension 2: 0 cells" in out


def test_critical_command():
    code, out = run("critical", "--graph", graph("tmin"), "-n", "4", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert (len(doc["1"]), len(doc["2"])) == (24, 6)


def test_homology_check_agrees():
    code, out = run("homology-check", "--graph", graph("wheel"), "-n", "2")
    assert code == 0
    assert out.rstrip().endswith("agree")


def test_conjecture_check_reports_verdict():
    code, out = run("conjecture-check", "--graph", graph("twin_triangles"), "-n", "2")
    assert code == 0
    assert "planar: yes" in out
    assert "verdict: all commutators" in out


def test_conjecture_check_needs_two_strands():
    with pytest.raises(SystemExit) as exc:
        run("conjecture-check", "--graph", graph("twin_triangles"), "-n", "3")
    assert exc.value.code == 2


def test_random_family_is_seeded():
    a = run("present", "--graph", "random", "-n", "2", "--seed", "4")
    b = run("present", "--graph", "random", "-n", "2", "--seed", "4")
    assert a == b and a[0] == 0


def test_budget_exit_code(monkeypatch):
    monkeypatch.setenv("GBG_CELL_BUDGET", "5")
    code, _ = run("present", "--graph", graph("tmin"), "-n", "4")
    assert code == 2


def test_missing_file_exit_code(tmp_path):
    code, _ = run("present", "--graph", str(tmp_path / "nope.graph"), "-n", "2")
    assert code == 1


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.graph"
    bad.write_text("graph bad\nvertex a\nedge e a b\n")
    code, _ = run("present", "--graph", str(bad), "-n", "2")
    assert code == 1
    assert "b" in capsys.readouterr().err


def test_zero_strands_is_a_usage_error():
    with pytest.raises(SystemExit) as exc:
        run("present", "--graph", graph("twin_triangles"), "-n", "0")
    assert exc.value.code == 2


def test_verbose_traces_to_stderr(capsys):
    code, _ = run("present", "--graph", graph("twin_triangles"), "-n", "2", "-v")
    assert code == 0
    assert "# relator of" in capsys.readouterr().err
