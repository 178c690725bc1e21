"""Closed-form corner costs for critical 2-cells.

Each function returns a word of critical letters, or None when the corner is
outside the case analysis (the caller then runs the flow instead).  Letters
are built as a single cluster plus strands stacked at the basepoint, then
classified: collapsible letters are dropped.
"""

from __future__ import annotations

from .complex import COLLAPSIBLE, CRITICAL, ClusterTerm, NotExpressible, VectorNotation


class _NotApplicable(Exception):
    pass


def _delta(k, width):
    v = [0] * width
    v[k - 1] = 1
    return v


def _add(*vs):
    return [sum(xs) for xs in zip(*vs)]


def _scale(k, v):
    return [k * x for x in v]


def _decrement(vec, times):
    v = list(vec)
    for _ in range(times):
        k = next(i for i, x in enumerate(v) if x)
        v[k] -= 1
    return v


def _first_nonzero(vec):
    return next(i for i, x in enumerate(vec) if x) + 1


class _Builder:
    def __init__(self, cx):
        self.cx = cx
        self.t = cx.tree

    def dirn(self, a, b):
        d = self.t.direction(a, b)
        if d <= 0:
            raise _NotApplicable
        return d

    def width(self, x):
        return self.t.deg_tree[x] - 1

    def letter(self, x, d, vec):
        vec = tuple(vec)
        rest = self.cx.n - sum(vec)
        if rest < 0 or not 1 <= d <= len(vec) or vec[d - 1] < 1:
            raise _NotApplicable
        try:
            cell = self.cx.cell_from_notation(VectorNotation((ClusterTerm(x, d, vec),), (), rest))
        except NotExpressible:
            raise _NotApplicable from None
        tag = self.cx.classify(cell).tag
        if tag == CRITICAL:
            return [(cell, 1)]
        if tag == COLLAPSIBLE:
            return []
        raise _NotApplicable


def two_strand_cost(cx, v1, v2):
    """c(v1; v2) for two strands: v1 moves, v2 is the fixed endpoint."""
    if not cx.tree.closed_forms_apply(2):
        raise ValueError("closed forms need deleted edges ending at tree leaves")
    if v1 < v2 or v2 == 0:
        return ()
    b = _Builder(cx)
    t = cx.tree
    a = t.meet(v1, v2)
    i, j = t.direction(a, v1), t.direction(a, v2)
    if i <= 0 or j <= 0:
        return ()
    w = b.width(a)
    try:
        return tuple(b.letter(a, i, _add(_delta(i, w), _delta(j, w))))
    except _NotApplicable:
        return ()


def cost_closed_form(cx, q, c):
    """Closed-form cost of the corner query ``q`` of the critical 2-cell ``c``."""
    if not cx.tree.closed_forms_apply(cx.n):
        return None
    try:
        return tuple(_cost(cx, q, c))
    except (_NotApplicable, NotExpressible, StopIteration, KeyError):
        return None


def _cost(cx, q, c):
    t = cx.tree
    b = _Builder(cx)
    y = q.edge
    edges = [a for a in c if type(a) is not int]
    if y not in edges:
        raise _NotApplicable
    (x,) = [e for e in edges if e != y]
    base = set(a for a in c if type(a) is int)
    extra = set(q.vertices) - base
    if len(extra) != 1 or not base <= set(q.vertices):
        raise _NotApplicable
    (alpha,) = extra
    if alpha not in x:
        raise _NotApplicable
    beta = q.point
    x_tree = x in cx.tree_pairs
    y_tree = y in cx.tree_pairs
    vn = cx.vector_notation(c)
    terms = {term.vertex: term for term in vn.clusters}

    if not x_tree and not y_tree:
        if alpha < beta or beta == 0:
            return []
        C = t.meet(alpha, beta)
        i, j = b.dirn(C, beta), b.dirn(C, alpha)
        w = b.width(C)
        return b.letter(C, j, _add(_delta(i, w), _delta(j, w)))

    if x_tree and y_tree:
        A, B = x[1], y[1]
        ta, tb = terms[A], terms[B]
        a_vec, i = list(ta.vector), ta.direction
        nb = sum(tb.vector)
        C = t.meet(A, B)
        if C == A:
            k = b.dirn(A, B)
            w = b.width(A)
            out = []
            if alpha == x[0]:
                start, count = a_vec, sum(a_vec)
            else:
                start, count = _add(a_vec, _scale(-1, _delta(i, w))), sum(a_vec) - 1
            for ell in range(count):
                v = _decrement(start, ell)
                out += b.letter(A, _first_nonzero(v), _add(v, _scale(nb, _delta(k, w))))
            return out
        if C != B and A > B:
            da, db = b.dirn(C, A), b.dirn(C, B)
            w = b.width(C)
            na = sum(a_vec)
            out = []
            for ell in range(na):
                out += b.letter(C, da, _add(_scale(na - ell, _delta(da, w)), _scale(nb, _delta(db, w))))
            return out
        return []

    if not x_tree and y_tree:
        B = y[1]
        nb = sum(terms[B].vector)
        C = t.meet(alpha, B)
        if C != B and alpha > B:
            da, db = b.dirn(C, alpha), b.dirn(C, B)
            w = b.width(C)
            return b.letter(C, da, _add(_scale(nb, _delta(db, w)), _delta(da, w)))
        return []

    # x in the tree, y deleted
    A = x[1]
    ta = terms[A]
    a_vec, i = list(ta.vector), ta.direction
    C = t.meet(A, beta)
    if C == A:
        k = b.dirn(A, beta)
        w = b.width(A)
        if alpha == x[1]:
            start, count = _add(a_vec, _scale(-1, _delta(i, w))), sum(a_vec) - 1
        else:
            start, count = a_vec, sum(a_vec)
        out = []
        for ell in range(count):
            v = _decrement(start, ell)
            out += b.letter(A, _first_nonzero(v), _add(v, _delta(k, w)))
        return out
    if A > beta:
        da, db = b.dirn(C, A), b.dirn(C, beta)
        w = b.width(C)
        na = sum(a_vec)
        out = []
        for ell in range(na):
            out += b.letter(C, da, _add(_scale(na - ell, _delta(da, w)), _delta(db, w)))
        return out
    return []
