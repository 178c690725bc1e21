import sys
from pathlib import Path

import pytest

from gbg import load_graph
from gbg.complex import ConfigurationComplex, make_cell

DATA = Path(__file__).parent / "data"


def fixture_graph(name):
    return load_graph(DATA / f"{name}.graph")


def complex_for(name, n):
    return ConfigurationComplex(fixture_graph(name), n)


def cell(cx, *atoms):
    """Build a cell from printed labels: vertex labels and (tau, iota) pairs."""
    num = cx.tree.number
    out = []
    for a in atoms:
        if isinstance(a, tuple):
            x, y = num[str(a[0])], num[str(a[1])]
            out.append((max(x, y), min(x, y)))
        else:
            out.append(num[str(a)])
    return make_cell(out)


@pytest.fixture(scope="session")
def twin_triangles():
    return complex_for("twin_triangles", 2)


@pytest.fixture(scope="session")
def tmin():
    return complex_for("tmin", 4)


@pytest.fixture(scope="session")
def letter_h():
    return complex_for("letter_h", 4)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
