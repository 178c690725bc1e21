"""Embedded graphs, subdivision, maximal trees and the tree order calculus.

A graph is stored with string vertex and edge ids and a rotation system
(clockwise cyclic order of incident edges at each vertex).  Once a basepoint
and a set of deleted edges are fixed, :attr:`EmbeddedGraph.tree` exposes the
integer data everything downstream works with: vertices are identified with
their depth-first numbers, ``0`` being the basepoint.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from functools import cached_property


class GraphError(ValueError):
    """Invalid graph or graph-file content."""


class GraphParseError(GraphError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column else "") + ": "
        super().__init__(where + message)


@dataclass(frozen=True)
class OrientedEdge:
    id: str
    iota: int
    tau: int
    deleted: bool

    @property
    def pair(self):
        return (self.iota, self.tau)


@dataclass(frozen=True, eq=False)
class EmbeddedGraph:
    name: str
    vertices: tuple
    edges: dict  # edge id -> (u, v), insertion order is the canonical order
    rotation: dict  # vertex id -> tuple of edge ids, clockwise
    basepoint: str | None = None
    deleted: frozenset | None = None
    flags: tuple = field(default=())

    # -- plain graph structure -------------------------------------------

    @cached_property
    def incidence(self):
        inc = {v: [] for v in self.vertices}
        for eid, (u, v) in self.edges.items():
            inc[u].append((eid, v))
            if u != v:
                inc[v].append((eid, u))
            else:
                inc[u].append((eid, u))
        return inc

    def degree(self, v):
        return len(self.incidence[v])

    def other_end(self, eid, v):
        a, b = self.edges[eid]
        return b if a == v else a

    @property
    def is_simple(self):
        seen = set()
        for u, v in self.edges.values():
            if u == v or frozenset((u, v)) in seen:
                return False
            seen.add(frozenset((u, v)))
        return True

    @property
    def marked(self):
        return self.basepoint is not None and self.deleted is not None

    @property
    def cycle_rank(self):
        return len(self.edges) - len(self.vertices) + 1

    def is_connected(self, without=None):
        verts = [v for v in self.vertices if v != without]
        if not verts:
            return True
        seen = {verts[0]}
        stack = [verts[0]]
        while stack:
            x = stack.pop()
            for _, y in self.incidence[x]:
                if y != without and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(verts)

    @cached_property
    def tree(self):
        if not self.marked:
            raise GraphError("graph has no basepoint/maximal tree yet; call choose_tree")
        return TreeData(self)

    # -- convenience wrappers around the tree calculus ---------------------

    def number(self, v):
        return self.tree.number[v]

    def direction(self, v1, v2):
        t = self.tree
        return t.direction(t.number[v1], t.number[v2])

    def meet(self, v, w):
        t = self.tree
        return t.label[t.meet(t.number[v], t.number[w])]

    def geodesic(self, v, w):
        t = self.tree
        path = t.geodesic(t.number[v], t.number[w])
        return [t.edge_id[p] for p in path]

    def edge_e(self, v):
        t = self.tree
        x = t.number[v]
        if x == 0:
            raise GraphError("the basepoint has no edge e(*)")
        pair = (x, t.parent[x])
        return OrientedEdge(t.edge_id[pair], x, t.parent[x], False)

    def oriented(self, eid):
        t = self.tree
        u, v = (t.number[x] for x in self.edges[eid])
        return OrientedEdge(eid, max(u, v), min(u, v), eid in self.deleted)


class TreeData:
    """Integer view of a marked graph: DFS numbers, parents, directions."""

    def __init__(self, g: EmbeddedGraph):
        if not g.is_simple:
            raise GraphError("graph must be simple; subdivide it first")
        star = g.basepoint
        tree_edges = [e for e in g.edges if e not in g.deleted]
        if len(tree_edges) != len(g.vertices) - 1:
            raise GraphError("deleted edges do not leave a spanning tree")
        tadj = {v: [] for v in g.vertices}
        tree_set = set(tree_edges)
        for v in g.vertices:
            for eid in g.rotation[v]:
                if eid in tree_set:
                    tadj[v].append(eid)
        if len(tadj[star]) != 1:
            raise GraphError(f"basepoint {star!r} must have degree 1 in the tree")

        label = []
        number = {}
        parent = []
        children = []
        # iterative DFS; children visited in rotation order after the parent edge
        number[star] = 0
        label.append(star)
        parent.append(-1)
        children.append([])
        stack = [(star, None, _rotated(tadj[star], None), 0)]
        while stack:
            v, pe, todo, k = stack.pop()
            if k < len(todo):
                stack.append((v, pe, todo, k + 1))
                eid = todo[k]
                w = g.other_end(eid, v)
                if w in number:
                    raise GraphError("tree edges contain a cycle")
                number[w] = len(label)
                label.append(w)
                parent.append(number[v])
                children.append([])
                children[number[v]].append(number[w])
                stack.append((w, eid, _rotated(tadj[w], eid), 0))
        if len(label) != len(g.vertices):
            raise GraphError("tree edges do not span the graph")

        self.graph = g
        self.label = label
        self.number = number
        self.parent = parent
        self.children = children
        nv = len(label)
        self.size = [1] * nv
        for v in range(nv - 1, 0, -1):
            self.size[parent[v]] += self.size[v]
        self.depth = [0] * nv
        for v in range(1, nv):
            self.depth[v] = self.depth[parent[v]] + 1
        self.edge_id = {}
        self.tree_pairs = set()
        self.deleted_pairs = []
        for eid, (a, b) in g.edges.items():
            x, y = number[a], number[b]
            pair = (max(x, y), min(x, y))
            self.edge_id[pair] = eid
            if eid in g.deleted:
                self.deleted_pairs.append(pair)
            else:
                self.tree_pairs.add(pair)
        self.deleted_pairs.sort()
        self.deg_tree = [len(children[v]) + (v != 0) for v in range(nv)]
        self.deg_graph = [g.degree(label[v]) for v in range(nv)]

    def __len__(self):
        return len(self.label)

    def in_subtree(self, root, v):
        return root <= v < root + self.size[root]

    def direction(self, v1, v2):
        if v1 == 0 or v2 == v1 or not self.in_subtree(v1, v2):
            return 0
        for k, c in enumerate(self.children[v1], start=1):
            if self.in_subtree(c, v2):
                return k
        raise AssertionError("unreachable")

    def meet(self, v, w):
        while not self.in_subtree(v, w):
            v = self.parent[v]
        return v

    def geodesic(self, v, w):
        """Tree edges (as (iota, tau) pairs) along the geodesic from v to w."""
        m = self.meet(v, w)
        up, down = [], []
        while v != m:
            up.append((v, self.parent[v]))
            v = self.parent[v]
        while w != m:
            down.append((w, self.parent[w]))
            w = self.parent[w]
        return up + down[::-1]

    def child_in_direction(self, v, k):
        return self.children[v][k - 1]

    @cached_property
    def essential_letters(self):
        """Capital letter names for essential vertices, in numbering order."""
        names = {}
        for v in range(len(self)):
            if self.deg_graph[v] >= 3:
                names[v] = _letter(len(names))
        return names

    def assumption_holds(self, n):
        for v in range(len(self)):
            if self.deg_tree[v] == 1 and self.deg_graph[v] > 2:
                return False
        return all(length >= n - 1 for length in self.tree_segment_lengths())

    def deleted_ends_are_leaves(self):
        return all(self.deg_tree[v] == 1 for pair in self.deleted_pairs for v in pair)

    def closed_forms_apply(self, n):
        """Whether the closed-form corner costs describe this tree.

        Besides the degree and subdivision conditions, the cost formulas take
        for granted that a cluster drains to the basepoint unobstructed, which
        needs every deleted edge to end at a leaf of the tree.
        """
        return self.assumption_holds(n) and self.deleted_ends_are_leaves()

    def tree_segment_lengths(self):
        out = []
        for v in range(len(self)):
            if self.deg_tree[v] == 2:
                continue
            for c in self.children[v]:
                length = 1
                while self.deg_tree[c] == 2:
                    c = self.children[c][0]
                    length += 1
                out.append(length)
        return out


def _rotated(edges, start):
    if start is None or start not in edges:
        return list(edges)
    k = edges.index(start)
    return edges[k + 1:] + edges[:k]


def _letter(k):
    s = ""
    k += 1
    while k:
        k, r = divmod(k - 1, 26)
        s = chr(65 + r) + s
    return s


# -- file format ---------------------------------------------------------


def parse_graph(text, name="graph"):
    vertices = []
    vset = set()
    basepoint = None
    edges = {}
    deleted = set()
    rotation = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, _, rest = line.partition(" ")
        toks = rest.split()
        if word == "graph":
            if len(toks) != 1:
                raise GraphParseError("expected 'graph <name>'", lineno, 1)
            name = toks[0]
        elif word == "vertex":
            if not 1 <= len(toks) <= 2 or (len(toks) == 2 and toks[1] != "basepoint"):
                raise GraphParseError("expected 'vertex <id> [basepoint]'", lineno, 1)
            v = toks[0]
            if v in vset:
                raise GraphParseError(f"duplicate vertex {v!r}", lineno, raw.find(v) + 1)
            vertices.append(v)
            vset.add(v)
            if len(toks) == 2:
                if basepoint is not None:
                    raise GraphParseError("more than one basepoint", lineno, 1)
                basepoint = v
        elif word == "edge":
            if not 3 <= len(toks) <= 4 or (len(toks) == 4 and toks[3] != "deleted"):
                raise GraphParseError("expected 'edge <id> <u> <v> [deleted]'", lineno, 1)
            eid, u, v = toks[:3]
            if eid in edges:
                raise GraphParseError(f"duplicate edge {eid!r}", lineno, raw.find(eid) + 1)
            for x in (u, v):
                if x not in vset:
                    raise GraphParseError(f"undeclared vertex {x!r}", lineno, raw.find(" " + x) + 2)
            edges[eid] = (u, v)
            if len(toks) == 4:
                deleted.add(eid)
        elif word == "rot":
            head, colon, tail = rest.partition(":")
            v = head.strip()
            if not colon or v not in vset:
                raise GraphParseError(f"bad rotation line for vertex {v!r}", lineno, 1)
            rotation[v] = tuple(tail.split())
        else:
            raise GraphParseError(f"unknown directive {word!r}", lineno, 1)
    if not vertices:
        raise GraphParseError("no vertices declared")

    inc = {v: [] for v in vertices}
    for eid, (u, v) in edges.items():
        inc[u].append(eid)
        inc[v].append(eid)  # a loop appears twice
    for v in vertices:
        if v in rotation:
            if sorted(rotation[v]) != sorted(inc[v]):
                raise GraphParseError(f"rotation at {v!r} does not list exactly its incident edges")
        else:
            rotation[v] = tuple(inc[v])

    flags = []
    seen = set()
    for u, v in edges.values():
        if u == v:
            flags.append("self-loop")
        elif frozenset((u, v)) in seen:
            flags.append("multi-edge")
        seen.add(frozenset((u, v)))
    if not deleted and basepoint is not None and len(edges) == len(vertices) - 1:
        marked = frozenset()  # a tree with a basepoint needs no choices
    else:
        marked = frozenset(deleted) if deleted else None
    g = EmbeddedGraph(name, tuple(vertices), edges, rotation, basepoint, marked, tuple(sorted(set(flags))))
    if not g.is_connected():
        raise GraphError(f"graph {name!r} is disconnected")
    return g


def load_graph(path):
    with open(path, encoding="utf-8") as fh:
        g = parse_graph(fh.read())
    return g


def format_graph(g):
    out = [f"graph {g.name}"]
    for v in g.vertices:
        out.append(f"vertex {v}" + (" basepoint" if v == g.basepoint else ""))
    for eid, (u, v) in g.edges.items():
        out.append(f"edge {eid} {u} {v}" + (" deleted" if g.deleted and eid in g.deleted else ""))
    for v in g.vertices:
        out.append(f"rot {v}: " + " ".join(g.rotation[v]))
    return "\n".join(out) + "\n"


# -- subdivision ---------------------------------------------------------


def subdivide_edge(g, eid, k, deleted_piece=None, fresh_deleted=()):
    """Insert ``k`` degree-2 vertices into edge ``eid``.

    Piece ``t`` of the result runs from the ``t``-th to the ``t+1``-th vertex
    of ``u, s1, ..., sk, v``.  If ``eid`` was deleted, ``deleted_piece``
    (default: the middle one) stays deleted and the others join the tree.
    ``fresh_deleted`` lists piece indices to mark deleted regardless.
    """
    if k <= 0:
        return g
    u, v = g.edges[eid]
    new_vs = [f"{eid}.{t}" for t in range(1, k + 1)]
    pieces = [f"{eid}/{t}" for t in range(k + 1)]
    for x in new_vs:
        if x in g.vertices:
            raise GraphError(f"cannot name subdivision vertex {x!r}: id in use")
    chain = [u] + new_vs + [v]
    edges = {}
    for e, ends in g.edges.items():
        if e == eid:
            for t, p in enumerate(pieces):
                edges[p] = (chain[t], chain[t + 1])
        else:
            edges[e] = ends
    rotation = {}
    for x, rot in g.rotation.items():
        rot = list(rot)
        if x == u:
            rot[rot.index(eid)] = pieces[0]
        if x == v:
            rot[rot.index(eid)] = pieces[-1]
        rotation[x] = tuple(rot)
    for t, s in enumerate(new_vs):
        rotation[s] = (pieces[t], pieces[t + 1])
    deleted = g.deleted
    if deleted is not None:
        deleted = set(deleted)
        if eid in deleted:
            deleted.discard(eid)
            deleted.add(pieces[(k + 1) // 2 if deleted_piece is None else deleted_piece])
        deleted.update(pieces[t] for t in fresh_deleted)
        deleted = frozenset(deleted)
    verts = []
    for x in g.vertices:
        verts.append(x)
    verts.extend(new_vs)
    return replace(g, vertices=tuple(verts), edges=edges, rotation=rotation,
                   deleted=deleted, flags=())


def _segments(g, degree):
    """Maximal paths whose interior vertices have ``degree`` 2.

    Yields (endpoint, endpoint, edge ids) for paths between vertices of
    degree != 2; closed cycles through degree-2 vertices only are skipped.
    """
    used = set()
    for x in g.vertices:
        if degree(x) == 2:
            continue
        for eid, y in g.incidence[x]:
            if eid in used:
                continue
            path = [eid]
            used.add(eid)
            prev, cur = eid, y
            while degree(cur) == 2:
                nxt = [(e, z) for e, z in g.incidence[cur] if e != prev]
                if not nxt:
                    break
                prev, cur = nxt[0]
                if prev in used:
                    break
                used.add(prev)
                path.append(prev)
            yield x, cur, path


def shortest_cycle(g):
    """Length and edge list of a shortest cycle (None if g is a forest)."""
    best = None
    order = {e: k for k, e in enumerate(g.edges)}
    for eid, (u, v) in g.edges.items():
        if u == v:
            cand = (1, order[eid], [eid])
        else:
            # BFS from u to v avoiding eid
            prev = {u: None}
            dq = deque([u])
            while dq and v not in prev:
                x = dq.popleft()
                for e, y in g.incidence[x]:
                    if e != eid and y not in prev:
                        prev[y] = (e, x)
                        dq.append(y)
            if v not in prev:
                continue
            path = [eid]
            x = v
            while prev[x] is not None:
                e, x = prev[x]
                path.append(e)
            cand = (len(path), min(order[e] for e in path), path)
        if best is None or cand[:2] < best[:2]:
            best = cand
    if best is None:
        return None
    return best[0], best[2]


def is_sufficiently_subdivided(g, n):
    if len(g.vertices) < n:
        return False
    for a, b, path in _segments(g, g.degree):
        if a != b and len(path) < n - 1:
            return False
    cyc = shortest_cycle(g)
    return cyc is None or cyc[0] >= max(n + 1, 3)


def subdivide_for(g, n):
    """Homeomorphic refinement of ``g`` sufficiently subdivided for ``n`` strands."""
    if n < 1:
        raise ValueError("strand count must be >= 1")
    changed = True
    while changed:
        changed = False
        for a, b, path in list(_segments(g, g.degree)):
            if a != b and len(path) < n - 1:
                first = min(path, key=lambda e: list(g.edges).index(e))
                g = subdivide_edge(g, first, n - 1 - len(path))
                changed = True
                break
    while True:
        cyc = shortest_cycle(g)
        if cyc is None or cyc[0] >= max(n + 1, 3):
            break
        eorder = list(g.edges)
        g = subdivide_edge(g, min(cyc[1], key=eorder.index), 1)
    if len(g.vertices) < n:
        if not g.edges:
            raise GraphError("a single vertex carries at most one strand")
        while len(g.vertices) < n:
            g = subdivide_edge(g, next(iter(g.edges)), 1)
    return g


# -- maximal tree selection ------------------------------------------------


def _bridges(g):
    out = set()
    for eid in g.edges:
        h = replace(g, edges={e: ends for e, ends in g.edges.items() if e != eid})
        if not h.is_connected():
            out.add(eid)
    return out


def _dfs_visit(g, root, pe, visited, tree, forbidden):
    stack = [(root, iter(_rotated(list(g.rotation[root]), pe)))]
    while stack:
        v, it = stack[-1]
        for eid in it:
            if eid in forbidden:
                continue
            w = g.other_end(eid, v)
            if w not in visited:
                visited.add(w)
                tree.add(eid)
                stack.append((w, iter(_rotated(list(g.rotation[w]), eid))))
                break
        else:
            stack.pop()


def _hub_vertex(g, star):
    """A vertex lying on every cycle whose removal leaves >= 2 components."""
    if g.cycle_rank == 0:
        return None
    for v0 in g.vertices:
        if v0 == star:
            continue
        rest = [v for v in g.vertices if v != v0]
        n_edges = sum(1 for a, b in g.edges.values() if v0 not in (a, b))
        comps = _components(g, without=v0)
        if n_edges == len(rest) - len(comps) and len(comps) >= 2:
            return v0, comps
    return None


def _components(g, without):
    seen = {}
    comps = []
    for s in g.vertices:
        if s == without or s in seen:
            continue
        comp = [s]
        seen[s] = len(comps)
        stack = [s]
        while stack:
            x = stack.pop()
            for _, y in g.incidence[x]:
                if y != without and y not in seen:
                    seen[y] = len(comps)
                    comp.append(y)
                    stack.append(y)
        comps.append(comp)
    return comps


def choose_tree(g, n=2):
    """Pick basepoint and maximal tree; repair until the degree assumption holds.

    A declared tree (``deleted`` flags in the file) is kept as is.
    """
    if g.deleted is not None:
        if g.basepoint is None:
            tdeg = {v: 0 for v in g.vertices}
            for eid, (a, b) in g.edges.items():
                if eid not in g.deleted:
                    tdeg[a] += 1
                    tdeg[b] += 1
            cands = [v for v in g.vertices if tdeg[v] == 1]
            cands.sort(key=lambda v: (g.degree(v) != 1, g.vertices.index(v)))
            if not cands:
                raise GraphError("declared tree has no leaf for the basepoint")
            g = replace(g, basepoint=cands[0])
        g.tree  # validate
        return g

    forced = set()
    star = g.basepoint
    if star is None:
        leaves = [v for v in g.vertices if g.degree(v) == 1]
        if leaves:
            star = leaves[0]
        elif not g.edges:
            star = g.vertices[0]
        else:
            bridges = _bridges(g)
            eid = next(e for e in g.edges if e not in bridges)
            g = subdivide_edge(g, eid, 1)
            star = f"{eid}.1"
            forced.add(f"{eid}/1")
    elif g.degree(star) > 2:
        raise GraphError(f"basepoint {star!r} has degree {g.degree(star)} > 2")
    elif g.degree(star) == 2:
        if not g.is_connected(without=star) and g.cycle_rank:
            raise GraphError(f"basepoint {star!r} must not be a cut vertex")
        forced.add(g.rotation[star][1])

    hub = _hub_vertex(g, star) if not forced else None
    if hub is not None:
        v0, comps = hub
        tree = {e for e, (a, b) in g.edges.items() if v0 not in (a, b)}
        for comp in comps:
            cset = set(comp)
            for eid in g.rotation[v0]:
                if g.other_end(eid, v0) in cset:
                    tree.add(eid)
                    break
    else:
        tree = set()
        _dfs_visit(g, star, None, {star}, tree, forced)
    g = replace(g, basepoint=star, deleted=frozenset(e for e in g.edges if e not in tree))
    g = _leafify_deleted(g, strict=hub is None)
    g = _lengthen_tree_segments(g, n)
    g.tree
    return g


def _tree_degree(g):
    tdeg = {v: 0 for v in g.vertices}
    for eid, (a, b) in g.edges.items():
        if eid not in g.deleted:
            tdeg[a] += 1
            tdeg[b] += 1
    return tdeg


def _leafify_deleted(g, strict=True):
    """Subdivide deleted edges at offending ends.

    An end offends if it is a tree leaf of degree > 2; with ``strict`` every
    end that is not a tree leaf of degree 2 offends.
    """
    while True:
        tdeg = _tree_degree(g)
        bad = None
        for eid in g.edges:
            if eid not in g.deleted:
                continue
            for end in g.edges[eid]:
                leaf_ok = tdeg[end] == 1 and g.degree(end) == 2
                if (not leaf_ok) if strict else (tdeg[end] == 1 and g.degree(end) > 2):
                    bad = (eid, end)
                    break
            if bad:
                break
        if bad is None:
            return g
        eid, end = bad
        u, v = g.edges[eid]
        # piece touching `end` joins the tree, the other stays deleted
        g = subdivide_edge(g, eid, 1, deleted_piece=1 if end == u else 0)


def _lengthen_tree_segments(g, n):
    if n <= 2:
        return g
    while True:
        tdeg = _tree_degree(g)
        tg = replace(g, edges={e: ends for e, ends in g.edges.items() if e not in g.deleted})
        order = list(g.edges)
        short = None
        for a, b, path in _segments(tg, lambda x: tdeg[x]):
            if len(path) < n - 1:
                short = (min(path, key=order.index), n - 1 - len(path))
                break
        if short is None:
            return g
        g = subdivide_edge(g, *short)


def prepare(g, n):
    """Subdivide for ``n`` strands and fix a maximal tree."""
    return choose_tree(subdivide_for(g, n), n)
