"""Cells of the discretized configuration space and their Morse classes.

A cell is a tuple of atoms sorted by number.  A vertex atom is an ``int``
(its tree number); an edge atom is a pair ``(iota, tau)`` with
``iota > tau``.  An edge is numbered by its ``iota`` end, and since the
closures of atoms are disjoint no two atoms of a cell share a number.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

REDUNDANT = "redundant"
COLLAPSIBLE = "collapsible"
CRITICAL = "critical"


class CellBudgetExceeded(RuntimeError):
    pass


class NotExpressible(ValueError):
    """Cell has no vector-notation name."""


def atom_key(a):
    return a if type(a) is int else a[0]


def make_cell(atoms):
    return tuple(sorted(atoms, key=atom_key))


def is_edge(a):
    return type(a) is not int


def dimension(c):
    return sum(1 for a in c if type(a) is not int)


def occupied(c):
    occ = set()
    for a in c:
        if type(a) is int:
            occ.add(a)
        else:
            occ.update(a)
    return occ


@dataclass(frozen=True)
class MorseClass:
    tag: str
    partner: tuple | None = None


@dataclass(frozen=True)
class ClusterTerm:
    vertex: int  # the essential vertex X (tau of the edge)
    direction: int  # i, the direction of the edge from X
    vector: tuple  # entries for directions 1 .. deg_T(X)-1

    @property
    def is_critical(self):
        return any(self.vector[j - 1] > 0 for j in range(1, self.direction))


@dataclass(frozen=True)
class VectorNotation:
    clusters: tuple
    deleted: tuple  # deleted edge pairs
    basepoint_count: int

    @property
    def strands(self):
        return sum(sum(t.vector) for t in self.clusters) + len(self.deleted) + self.basepoint_count


class ConfigurationComplex:
    """The cube complex UD^n of a marked graph, with its Morse matching."""

    def __init__(self, g, n, budget=None):
        if n < 1:
            raise ValueError("strand count must be >= 1")
        self.graph = g
        self.tree = g.tree
        self.n = n
        self.budget = budget
        t = self.tree
        if n > len(t):
            raise ValueError(f"{n} strands do not fit on {len(t)} vertices")
        self.parent = t.parent
        self.tree_pairs = t.tree_pairs
        # atoms in number order; edges (v, u) with u < v come right after v
        nbrs = {v: [] for v in range(len(t))}
        for (i, j) in list(t.tree_pairs) + t.deleted_pairs:
            nbrs[i].append(j)
        self._atoms = []
        for v in range(len(t)):
            self._atoms.append(v)
            for u in sorted(nbrs[v]):
                self._atoms.append((v, u))
        self._classes = {}

    # -- enumeration ------------------------------------------------------

    def enumerate_cells(self, dim):
        """All cells of dimension ``dim`` in canonical order."""
        n = self.n
        atoms = self._atoms
        out = []
        budget = self.budget
        chosen = []
        occ = set()

        def rec(start, edges_left):
            nonlocal out
            slots = n - len(chosen)
            if slots == 0:
                if edges_left == 0:
                    out.append(tuple(chosen))
                    if budget is not None and len(out) > budget:
                        raise CellBudgetExceeded(f"more than {budget} cells of dimension {dim}")
                return
            for k in range(start, len(atoms)):
                a = atoms[k]
                if type(a) is int:
                    if slots == edges_left or a in occ:
                        continue
                    occ.add(a)
                    chosen.append(a)
                    rec(k + 1, edges_left)
                    chosen.pop()
                    occ.discard(a)
                else:
                    if edges_left == 0 or a[0] in occ or a[1] in occ:
                        continue
                    occ.update(a)
                    chosen.append(a)
                    rec(k + 1, edges_left - 1)
                    chosen.pop()
                    occ.difference_update(a)

        if 0 <= dim <= n:
            rec(0, dim)
        return out

    def is_cell(self, c):
        if len(c) != self.n:
            return False
        seen = set()
        for a in c:
            pts = (a,) if type(a) is int else a
            if type(a) is not int and a not in self.tree_pairs and a not in self.tree.deleted_pairs:
                return False
            for p in pts:
                if p in seen or not 0 <= p < len(self.tree):
                    return False
                seen.add(p)
        return list(c) == sorted(c, key=atom_key)

    # -- blocking and the matching -----------------------------------------

    def is_blocked(self, c, v, occ=None):
        if v == 0:
            return True
        if occ is None:
            occ = occupied(c)
        return self.parent[v] in occ

    def is_order_respecting(self, c, e):
        if e not in self.tree_pairs:
            return False
        iota, tau = e
        for a in c:
            if type(a) is int and tau < a < iota and self.parent[a] == tau:
                return False
        return True

    def classify(self, c):
        got = self._classes.get(c)
        if got is not None:
            return got
        occ = occupied(c)
        result = MorseClass(CRITICAL)
        for k, a in enumerate(c):
            if type(a) is int:
                if a != 0 and self.parent[a] not in occ:
                    w = c[:k] + ((a, self.parent[a]),) + c[k + 1:]
                    result = MorseClass(REDUNDANT, w)
                    break
            elif self.is_order_respecting(c, a):
                w = make_cell(c[:k] + (a[0],) + c[k + 1:])
                result = MorseClass(COLLAPSIBLE, w)
                break
        self._classes[c] = result
        return result

    def critical_cells(self, dim):
        return [c for c in self.enumerate_cells(dim) if self.classify(c).tag == CRITICAL]

    def faces(self, c):
        """Codimension-one faces, two per edge atom (iota side first)."""
        out = []
        for k, a in enumerate(c):
            if type(a) is not int:
                rest = c[:k] + c[k + 1:]
                out.append(make_cell(rest + (a[0],)))
                out.append(make_cell(rest + (a[1],)))
        return out

    # -- vertex reduction ---------------------------------------------------

    def r_step(self, c):
        occ = occupied(c)
        for k, a in enumerate(c):
            if type(a) is int and a != 0 and self.parent[a] not in occ:
                return make_cell(c[:k] + (self.parent[a],) + c[k + 1:])
        return c

    def r_infinity(self, c):
        while True:
            nxt = self.r_step(c)
            if nxt == c:
                return c
            c = nxt

    # -- 2-cell boundaries ----------------------------------------------------

    def boundary_word(self, c):
        """bottom * right * top^-1 * left^-1 for a 2-cell.

        With e1 < e2 the two edge atoms and V the vertices: bottom = V+e1+iota(e2),
        right = V+tau(e1)+e2, top = V+e1+tau(e2), left = V+iota(e1)+e2.
        """
        edges = [a for a in c if type(a) is not int]
        if len(edges) != 2:
            raise ValueError("boundary_word needs a 2-cell")
        e1, e2 = edges
        verts = tuple(a for a in c if type(a) is int)
        bottom = make_cell(verts + (e1, e2[0]))
        right = make_cell(verts + (e1[1], e2))
        top = make_cell(verts + (e1, e2[1]))
        left = make_cell(verts + (e1[0], e2))
        return ((bottom, 1), (right, 1), (top, -1), (left, -1))

    # -- vector notation ------------------------------------------------------------

    def vector_notation(self, c):
        t = self.tree
        occ_by = {}
        for a in c:
            for p in ((a,) if type(a) is int else a):
                occ_by[p] = a
        roots = {}
        for a in c:
            if type(a) is not int:
                continue
            x = a
            while True:
                if x == 0:
                    root = 0
                    break
                p = self.parent[x]
                if p not in occ_by:
                    raise NotExpressible(f"vertex {t.label[a]} is unblocked")
                b = occ_by[p]
                if type(b) is int:
                    x = b
                    continue
                root = b
                break
            roots.setdefault(root, []).append(a)
        edges = [a for a in c if type(a) is not int]
        clusters = []
        deleted = []
        kstar = len(roots.pop(0, []))
        for e in edges:
            members = roots.pop(e, [])
            if e not in self.tree_pairs:
                if 0 in e:
                    kstar += len(members)
                elif members:
                    raise NotExpressible("vertices blocked by a deleted edge")
                deleted.append(e)
                continue
            x = e[1]
            if x == 0:
                raise NotExpressible("edge at the basepoint")
            width = t.deg_tree[x] - 1
            vec = [0] * width
            i = t.direction(x, e[0])
            vec[i - 1] += 1
            for w in members:
                vec[t.direction(x, w) - 1] += 1
            clusters.append(ClusterTerm(x, i, tuple(vec)))
        clusters.sort(key=lambda term: term.vertex)
        vn = VectorNotation(tuple(clusters), tuple(deleted), kstar)
        if self.cell_from_notation(vn) != c:
            raise NotExpressible("cluster is not a stack along the tree")
        return vn

    def _stack(self, start, count):
        out = []
        v = start
        for _ in range(count):
            if v is None:
                raise NotExpressible("stack runs off the tree")
            out.append(v)
            kids = self.tree.children[v]
            v = kids[0] if kids else None
        return out

    def cell_from_notation(self, vn):
        t = self.tree
        atoms = []
        used_star = False
        for term in vn.clusters:
            x, i = term.vertex, term.direction
            if not 1 <= i <= t.deg_tree[x] - 1 or len(term.vector) != t.deg_tree[x] - 1:
                raise NotExpressible("bad cluster shape")
            tip = t.child_in_direction(x, i)
            atoms.append((tip, x))
            kids = t.children[tip]
            atoms += self._stack(kids[0] if kids else None, term.vector[i - 1] - 1)
            for j, a in enumerate(term.vector, start=1):
                if j != i and a:
                    atoms += self._stack(t.child_in_direction(x, j), a)
        for e in vn.deleted:
            atoms.append(e)
            used_star = used_star or 0 in e
        if vn.basepoint_count:
            first = t.children[0][0] if used_star else 0
            atoms += self._stack(first, vn.basepoint_count)
        c = make_cell(atoms)
        if not self.is_cell(c):
            raise NotExpressible("notation does not describe a cell")
        return c

    def format_notation(self, vn):
        t = self.tree
        parts = []
        for term in vn.clusters:
            name = t.essential_letters.get(term.vertex, f"({t.label[term.vertex]})")
            parts.append(f"{name}_{term.direction}[{','.join(map(str, term.vector))}]")
        for e in vn.deleted:
            parts.append(t.edge_id[e])
        if vn.basepoint_count:
            parts.append(f"{vn.basepoint_count}*")
        return " + ".join(parts) if parts else "0*"

    def parse_notation(self, text):
        t = self.tree
        letters = {name: v for v, name in t.essential_letters.items()}
        ids = {eid: pair for pair, eid in t.edge_id.items()}
        clusters, deleted, kstar = [], [], 0
        for part in text.split(" + "):
            part = part.strip()
            m = re.fullmatch(r"(?:([A-Z]+)|\((.+)\))_(\d+)\[([\d,]+)\]", part)
            if m:
                x = letters[m.group(1)] if m.group(1) else t.number[m.group(2)]
                vec = tuple(int(s) for s in m.group(4).split(","))
                clusters.append(ClusterTerm(x, int(m.group(3)), vec))
            elif re.fullmatch(r"\d+\*", part):
                kstar = int(part[:-1])
            elif part in ids:
                deleted.append(ids[part])
            else:
                raise NotExpressible(f"cannot parse term {part!r}")
        return VectorNotation(tuple(clusters), tuple(deleted), kstar)

    def name(self, c):
        """Vector-notation name, or plain set notation if there is none."""
        try:
            return self.format_notation(self.vector_notation(c))
        except NotExpressible:
            return self.set_notation(c)

    def set_notation(self, c):
        lab = self.tree.label
        parts = []
        for a in c:
            if type(a) is int:
                parts.append(str(lab[a]))
            else:
                parts.append(f"[{lab[a[1]]},{lab[a[0]]}]")
        return "{" + ",".join(parts) + "}"
