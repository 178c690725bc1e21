"""Property checks shared by the property suite and the acceptance run.

Each check raises AssertionError on failure and returns a small count of
what it looked at, so callers can tell a vacuous pass from a real one.
"""

import random
from collections import defaultdict
from graphlib import CycleError, TopologicalSorter

from gbg.closed_forms import cost_closed_form
from gbg.complex import COLLAPSIBLE, CRITICAL, REDUNDANT, ConfigurationComplex, dimension
from gbg.families import disjoint_loops_graph, random_graph
from gbg.graph_core import prepare
from gbg.oracle import h1
from gbg.presenter import Presenter, abelianization, commutator_form_check
from gbg.rewrite import Rewriter, free_reduce

SEEDS = range(50)
STRANDS = (1, 2, 3)


def random_complex(seed, n):
    g = prepare(random_graph(seed, max_vertices=14, extra=4), n)
    return ConfigurationComplex(g, n)


def check_matching(cx, top=None):
    """W is a bijection from redundant to collapsible cells with no closed paths."""
    top = min(cx.n, 2) if top is None else top
    cells = {d: cx.enumerate_cells(d) for d in range(top + 1)}
    images = {}
    for d in range(top):
        for c in cells[d]:
            m = cx.classify(c)
            if m.tag == REDUNDANT:
                w = m.partner
                assert dimension(w) == d + 1 and cx.is_cell(w)
                assert w not in images, "W is not injective"
                images[w] = c
                back = cx.classify(w)
                assert back.tag == COLLAPSIBLE and back.partner == c
    for d in range(1, top + 1):
        for c in cells[d]:
            if cx.classify(c).tag == COLLAPSIBLE:
                assert c in images, "collapsible cell without a W-preimage"
    for d in range(top):
        ts = TopologicalSorter()
        for c in cells[d]:
            m = cx.classify(c)
            if m.tag == REDUNDANT:
                nxt = [f for f in cx.faces(m.partner) if f != c and cx.classify(f).tag == REDUNDANT]
                ts.add(c, *nxt)
        try:
            ts.prepare()
        except CycleError:
            raise AssertionError(f"matching has a cycle in dimension {d}") from None
    crit = [sum(1 for c in cells[d] if cx.classify(c).tag == CRITICAL) for d in range(top + 1)]
    return cells, crit


def check_confluence(cx, seed, words=10):
    """Left-first and right-first rewriting agree after free reduction."""
    plain = Rewriter(cx, shortcuts=False)
    fast = Rewriter(cx)
    rng = random.Random(seed)
    letters = cx.enumerate_cells(1)
    if not letters:
        return 0
    tested = 0
    for c in cx.critical_cells(2):
        w = cx.boundary_word(c)
        assert free_reduce(plain.reduce_fully(w, "left")) == free_reduce(plain.reduce_fully(w, "right"))
        tested += 1
    for _ in range(words):
        w = tuple((rng.choice(letters), rng.choice((1, -1))) for _ in range(rng.randint(1, 6)))
        left = free_reduce(plain.reduce_fully(w, "left"))
        assert left == free_reduce(plain.reduce_fully(w, "right")) == fast.m_infinity(w)
        tested += 1
    return tested


def check_closed_forms(cx):
    """Closed-form costs agree with flowing at every corner they cover."""
    pr = Presenter(cx, closed_forms=False)
    hits = 0
    for c in cx.critical_cells(2):
        for q, cost in pr.corner_costs(c):
            got = cost_closed_form(cx, q, c)
            if got is not None:
                assert got == cost, f"closed form differs at {q}"
                hits += 1
    return hits


def check_structured(cx):
    """Arm assembly (and the octagon for two strands) reproduces the rewritten relator."""
    pr = Presenter(cx, check=False)
    checked = 0
    for c in cx.critical_cells(2):
        res = pr.relator_for(c)
        assert res.structured == res.word
        slow = Presenter(cx, closed_forms=False, check=False).assemble(pr.arms(c))
        assert slow == res.word
        if cx.n == 2 and cx.tree.closed_forms_apply(2):
            assert pr.octagon_relator(c) == res.word
        checked += 1
    return checked


def check_vanishing(cx):
    """At each of the four corners of a critical 2-cell one of the two costs is trivial."""
    if not cx.tree.assumption_holds(cx.n):
        return 0
    pr = Presenter(cx, closed_forms=False)
    corners = 0
    for c in cx.critical_cells(2):
        by_corner = defaultdict(list)
        for q, cost in pr.corner_costs(c):
            by_corner[tuple(sorted(q.vertices + (q.point,)))].append(cost)
        assert len(by_corner) == 4
        for costs in by_corner.values():
            assert len(costs) == 2
            assert not costs[0] or not costs[1], "both costs at a corner are nontrivial"
            corners += 1
    return corners


def check_homology(cx):
    """Returns the torsion seen, which is expected (not required) to be empty."""
    if len(cx.critical_cells(0)) != 1:
        return None
    pres = Presenter(cx).presentation()
    rank, torsion = abelianization(pres)
    ref = h1(cx.graph, cx.n)
    assert (rank, tuple(torsion)) == (ref.free_rank, ref.torsion)
    return ref.torsion


def check_disjoint_loops(seed):
    g = prepare(disjoint_loops_graph(seed), 2)
    cx = ConfigurationComplex(g, 2)
    flags = commutator_form_check(Presenter(cx).presentation())
    assert all(flags), f"non-commutator relator for loops seed {seed}"
    return len(flags)
