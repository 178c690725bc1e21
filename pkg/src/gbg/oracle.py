"""First homology straight from the cellular chain complex, no Morse theory."""

from __future__ import annotations

from dataclasses import dataclass

from .complex import ConfigurationComplex, make_cell
from .smith import sparse_invariant_factors


@dataclass(frozen=True)
class ChainBoundary:
    cells: tuple  # (0-cells, 1-cells, 2-cells)
    d1: list  # per 1-cell: {0-cell index: coefficient}
    d2: list  # per 2-cell: {1-cell index: coefficient}


@dataclass(frozen=True)
class Homology:
    free_rank: int
    torsion: tuple
    cell_counts: tuple

    def __str__(self):
        parts = [f"Z^{self.free_rank}"] + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts)


@dataclass(frozen=True)
class BoundaryReport:
    ok: bool
    culprit: tuple | None = None

    def __bool__(self):
        return self.ok


def chain_boundary(cx: ConfigurationComplex):
    c0, c1, c2 = (cx.enumerate_cells(d) for d in range(3))
    i0 = {c: k for k, c in enumerate(c0)}
    i1 = {c: k for k, c in enumerate(c1)}
    d1 = []
    for c in c1:
        k = next(j for j, a in enumerate(c) if type(a) is not int)
        rest = c[:k] + c[k + 1:]
        iota, tau = c[k]
        row = {i0[make_cell(rest + (tau,))]: 1}
        row[i0[make_cell(rest + (iota,))]] = -1
        d1.append(row)
    d2 = []
    for c in c2:
        row = {}
        for face, s in cx.boundary_word(c):
            j = i1[face]
            row[j] = row.get(j, 0) + s
        d2.append({j: v for j, v in row.items() if v})
    return ChainBoundary((c0, c1, c2), d1, d2)


def boundary_check(cx, chain=None):
    """Verify d1 . d2 = 0, naming the first 2-cell where it fails."""
    ch = chain if chain is not None else chain_boundary(cx)
    for k, row in enumerate(ch.d2):
        acc = {}
        for j, v in row.items():
            for i, w in ch.d1[j].items():
                acc[i] = acc.get(i, 0) + v * w
        if any(acc.values()):
            return BoundaryReport(False, ch.cells[2][k])
    return BoundaryReport(True)


def _components(n0, d1):
    parent = list(range(n0))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row in d1:
        a, b = list(row)
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return len({find(x) for x in range(n0)})


def h1(g, n, budget=None):
    cx = ConfigurationComplex(g, n, budget=budget)
    ch = chain_boundary(cx)
    n0, n1, n2 = (len(c) for c in ch.cells)
    rank1 = n0 - _components(n0, ch.d1)
    factors = sparse_invariant_factors(ch.d2)
    torsion = tuple(sorted(f for f in factors if f > 1))
    return Homology(n1 - rank1 - len(factors), torsion, (n0, n1, n2))
