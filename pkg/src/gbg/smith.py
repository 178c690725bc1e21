"""Exact integer Smith normal form (invariant factors only)."""

from __future__ import annotations


def invariant_factors(matrix):
    """Nonzero diagonal of the Smith normal form, each dividing the next.

    ``matrix`` is a list of equal-length rows of ints; it is not modified.
    """
    a = [list(r) for r in matrix if any(r)]
    if not a:
        return []
    m, n = len(a), len(a[0])
    diag = []
    t = 0
    while t < m and t < n:
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    ri, rt = a[i], a[t]
                    for k in range(t, n):
                        ri[k] -= q * rt[k]
                if a[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if done:
                # divisibility of the rest of the block by the pivot
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                i, _ = bad
                for k in range(t, n):
                    a[t][k] += a[i][k]
                continue
            # move the smallest remainder into the pivot spot and repeat
            best = None
            for i in range(t, m):
                if a[i][t] and (best is None or abs(a[i][t]) < best[0]):
                    best = (abs(a[i][t]), i, t)
            for j in range(t, n):
                if a[t][j] and abs(a[t][j]) < best[0]:
                    best = (abs(a[t][j]), t, j)
            _, i, j = best
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def sparse_invariant_factors(rows, ncols=None):
    """Invariant factors of a sparse integer matrix given as ``{col: value}`` rows.

    Unit pivots are eliminated sparsely first; whatever is left goes through
    the dense routine.
    """
    rows = {k: {c: v for c, v in r.items() if v} for k, r in enumerate(rows)}
    rows = {k: r for k, r in rows.items() if r}
    cols = {}
    for k, r in rows.items():
        for c in r:
            cols.setdefault(c, set()).add(k)
    units = 0
    while True:
        pivot = None
        for k in sorted(rows, key=lambda k: len(rows[k])):
            r = rows[k]
            cand = [c for c, v in r.items() if v in (1, -1)]
            if cand:
                c = min(cand, key=lambda c: len(cols[c]))
                pivot = (k, c)
                break
        if pivot is None:
            break
        k, c = pivot
        prow = rows.pop(k)
        p = prow[c]
        for cc in prow:
            cols[cc].discard(k)
        for other in list(cols[c]):
            r = rows[other]
            f = r[c] * p  # p is +-1, so r[c]/p == r[c]*p
            for cc, v in prow.items():
                nv = r.get(cc, 0) - f * v
                if nv:
                    if cc not in r:
                        cols[cc].add(other)
                    r[cc] = nv
                elif cc in r:
                    del r[cc]
                    cols[cc].discard(other)
            if not r:
                del rows[other]
        del cols[c]
        units += 1
    if not rows:
        return [1] * units
    used = sorted({c for r in rows.values() for c in r})
    index = {c: i for i, c in enumerate(used)}
    dense = []
    for r in rows.values():
        line = [0] * len(used)
        for c, v in r.items():
            line[index[c]] = v
        dense.append(line)
    return [1] * units + invariant_factors(dense)
