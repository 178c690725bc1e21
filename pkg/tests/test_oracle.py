from dataclasses import replace

import pytest

from conftest import complex_for, fixture_graph
from gbg import families
from gbg.complex import ConfigurationComplex
from gbg.graph_core import prepare
from gbg.oracle import boundary_check, chain_boundary, h1


def test_tripod_two_strands_is_cyclic():
    g = prepare(families.star(3, 2), 2)
    assert h1(g, 2).free_rank == 1


@pytest.mark.parametrize("name", ["twin_triangles", "boxy", "wheel", "letter_h", "tmin"])
def test_one_strand_gives_cycle_rank(name):
    g = fixture_graph(name)
    hom = h1(g, 1)
    assert hom.free_rank == len(g.edges) - len(g.vertices) + 1
    assert hom.torsion == ()


def test_balloon_pair():
    hom = h1(prepare(families.balloon(2, 2), 2), 2)
    assert (hom.free_rank, hom.torsion) == (5, ())
    assert str(hom) == "Z^5"


def test_twin_triangles_cell_counts_give_euler_characteristic():
    cx = complex_for("twin_triangles", 2)
    hom = h1(cx.graph, 2)
    n0, n1, n2 = hom.cell_counts
    assert (n0, n1, n2) == tuple(len(cx.enumerate_cells(d)) for d in range(3))
    # connected, so rank d1 = n0 - 1 and rank d2 = n1 - rank d1 - b1
    rank2 = n1 - (n0 - 1) - hom.free_rank
    assert 0 <= rank2 <= n2


@pytest.mark.parametrize("name,n", [("twin_triangles", 2), ("boxy", 2), ("wheel", 2), ("tmin", 4)])
def test_boundary_squares_to_zero(name, n):
    assert boundary_check(complex_for(name, n))


def test_boundary_check_names_a_perturbed_cell():
    cx = complex_for("twin_triangles", 2)
    ch = chain_boundary(cx)
    k = 3
    row = dict(ch.d2[k])
    j = next(iter(row))
    row[j] = -row[j]
    d2 = list(ch.d2)
    d2[k] = row
    report = boundary_check(cx, replace(ch, d2=d2))
    assert not report
    assert report.culprit == ch.cells[2][k]


def test_d1_rows_have_two_opposite_entries():
    ch = chain_boundary(complex_for("boxy", 2))
    assert all(sorted(r.values()) == [-1, 1] for r in ch.d1)


def test_disconnected_complex_counts_components():
    g = families.path(3)
    # three strands fill the path: one 0-cell, nothing else
    cx = ConfigurationComplex(g, 3)
    hom = h1(g, 3)
    assert hom.cell_counts == (1, 0, 0) and hom.free_rank == 0
    assert len(cx.critical_cells(0)) == 1
