"""Generators for the graph families used in tests and examples."""

from __future__ import annotations

import random

from .graph_core import parse_graph


def _lab(v):
    return "*" if v == 0 else str(v)


def tree_text(name, parent, deleted=(), extra_edges=()):
    """File text for a graph given by a numbered tree plus extra edges.

    ``parent[v]`` is the tree parent of vertex ``v`` (``parent[0]`` unused) and
    children must be numbered in the depth-first order they should receive.
    ``deleted`` edges are declared as such; ``extra_edges`` are left for the
    tree chooser.
    """
    lines = [f"graph {name}"]
    for v in range(len(parent)):
        lines.append(f"vertex {_lab(v)}" + (" basepoint" if v == 0 else ""))
    edges = [(f"e{_lab(parent[v])}_{v}", parent[v], v, "") for v in range(1, len(parent))]
    edges += [(f"d{_lab(a)}_{b}", a, b, " deleted") for a, b in deleted]
    edges += [(f"x{_lab(a)}_{b}", a, b, "") for a, b in extra_edges]
    for eid, a, b, flag in edges:
        lines.append(f"edge {eid} {_lab(a)} {_lab(b)}{flag}")
    for v in range(len(parent)):
        up = [e[0] for e in edges if e[2] == v and e[0].startswith("e")]
        down = sorted((e for e in edges if e[1] == v and e[0].startswith("e")), key=lambda e: e[2])
        other = [e[0] for e in edges if not e[0].startswith("e") and v in (e[1], e[2])]
        lines.append(f"rot {_lab(v)}: " + " ".join(up + [e[0] for e in down] + other))
    return "\n".join(lines) + "\n"


def _chain(parent, start, k):
    for _ in range(k):
        parent.append(start)
        start = len(parent) - 1
    return start


def star(k, n=2):
    """Star with k arms of length max(n-1, 1), basepoint at the end of arm 1."""
    arm = max(n - 1, 1)
    parent = [-1]
    centre = _chain(parent, 0, arm)
    for _ in range(k - 1):
        _chain(parent, centre, arm)
    return parse_graph(tree_text(f"star{k}", parent))


def path(length):
    parent = [-1]
    _chain(parent, 0, length - 1)
    return parse_graph(tree_text(f"path{length}", parent))


def balloon(m, n=2):
    """m triangles (n=2) or pentagons (n=3) hanging off one hub by stems."""
    if n == 2:
        parent = [-1, 0]
        deleted = []
        for _ in range(m):
            b = _chain(parent, 1, 1)
            x = _chain(parent, b, 1)
            y = _chain(parent, b, 1)
            deleted.append((x, y))
        return parse_graph(tree_text(f"balloon{m}", parent, deleted))
    if n == 3:
        parent = [-1, 0, 1]
        deleted = []
        for _ in range(m):
            b = _chain(parent, 2, 2)
            x = _chain(parent, b, 2)
            y = _chain(parent, b, 2)
            deleted.append((x, y))
        return parse_graph(tree_text(f"balloon{m}_3", parent, deleted))
    raise ValueError("balloon graphs are built for n = 2 or 3")


def random_graph(seed, max_vertices=8, extra=3):
    """A small connected simple graph: a random tree plus a few extra edges.

    The result carries no basepoint or tree; run it through ``prepare``.
    """
    rng = random.Random(seed)
    nv = rng.randint(2, max_vertices)
    parent = [-1] + [rng.randrange(v) for v in range(1, nv)]
    pairs = {(parent[v], v) for v in range(1, nv)}
    for _ in range(rng.randint(0, extra)):
        a, b = rng.sample(range(nv), 2) if nv > 1 else (0, 0)
        if a != b and (a, b) not in pairs and (b, a) not in pairs:
            pairs.add((a, b))
    lines = [f"graph random{seed}"]
    lines += [f"vertex v{v}" for v in range(nv)]
    lines += [f"edge f{k} v{a} v{b}" for k, (a, b) in enumerate(sorted(pairs))]
    return parse_graph("\n".join(lines) + "\n")


def disjoint_loops_graph(seed, max_vertices=10, loops=3):
    """Random tree plus chords whose cycles share no vertex."""
    rng = random.Random(seed)
    nv = rng.randint(3, max_vertices)
    parent = [-1] + [rng.randrange(v) for v in range(1, nv)]

    def up(v):
        out = [v]
        while parent[v] >= 0:
            v = parent[v]
            out.append(v)
        return out

    used = set()
    pairs = {(parent[v], v) for v in range(1, nv)}
    made = 0
    for _ in range(loops * 25):
        if made == loops:
            break
        a, b = rng.sample(range(nv), 2)
        pa, pb = up(a), up(b)
        m = next(x for x in pa if x in pb)
        cyc = set(pa[:pa.index(m) + 1] + pb[:pb.index(m) + 1])
        if len(cyc) < 3 or cyc & used or (a, b) in pairs or (b, a) in pairs:
            continue
        used |= cyc
        pairs.add((a, b))
        made += 1
    lines = [f"graph loops{seed}"]
    lines += [f"vertex v{v}" for v in range(nv)]
    lines += [f"edge f{k} v{a} v{b}" for k, (a, b) in enumerate(sorted(pairs))]
    return parse_graph("\n".join(lines) + "\n")
