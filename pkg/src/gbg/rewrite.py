"""Rewriting words of oriented 1-cells into critical 1-cells.

A letter is ``(cell, sign)`` with ``sign`` in ``{1, -1}``; a 1-cell is
positively oriented from its iota-end 0-cell to its tau-end 0-cell.  A word
is a tuple of letters.
"""

from __future__ import annotations

from .complex import COLLAPSIBLE, CRITICAL, REDUNDANT, occupied


class RewriteError(RuntimeError):
    pass


FLOWS_TO = "flows-to"


def inverse(word):
    return tuple((c, -s) for c, s in reversed(word))


def free_reduce(word):
    out = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def cyclic_reduce(word):
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
        w = w[1:-1]
    return tuple(w)


class Rewriter:
    """Normal forms M-infinity over one configuration complex.

    Normal forms of single positive letters are memoized; a word is reduced
    letter by letter and then freely reduced.
    """

    def __init__(self, cx, shortcuts=True):
        self.cx = cx
        self.shortcuts = shortcuts
        self._memo = {}

    # -- single moves --------------------------------------------------------

    def replacement(self, cell):
        """The word a redundant 1-cell is pushed to across W(cell)."""
        cls = self.cx.classify(cell)
        if cls.tag != REDUNDANT:
            raise ValueError("replacement() needs a redundant 1-cell")
        bw = self.cx.boundary_word(cls.partner)
        for k, (c, s) in enumerate(bw):
            if c == cell:
                w3 = bw[k + 1:] + bw[:k]
                return inverse(w3) if s == 1 else w3
        raise RewriteError("cell is not on the boundary of its matched 2-cell")

    def _move_at(self, word, i):
        c, s = word[i]
        if i + 1 < len(word) and word[i + 1][0] == c and word[i + 1][1] == -s:
            return word[:i] + word[i + 2:]
        tag = self.cx.classify(c).tag
        if tag == COLLAPSIBLE:
            return word[:i] + word[i + 1:]
        if tag == REDUNDANT:
            rep = self.replacement(c)
            if s == -1:
                rep = inverse(rep)
            return word[:i] + rep + word[i + 1:]
        return None

    def reduce_step(self, word, strategy="left"):
        """Apply one move at the leftmost (or rightmost) position; None if reduced."""
        positions = range(len(word)) if strategy == "left" else range(len(word) - 1, -1, -1)
        for i in positions:
            nxt = self._move_at(word, i)
            if nxt is not None:
                return nxt
        return None

    def reduce_fully(self, word, strategy="left", budget=None, trace=None):
        """Iterate reduce_step to the reduced word (no memo, no shortcuts)."""
        if budget is None:
            budget = 10_000 * (len(word) + 1) * max(1, len(self.cx.tree)) ** 2
        steps = 0
        while True:
            nxt = self.reduce_step(word, strategy)
            if nxt is None:
                return word
            if trace is not None:
                trace.append(nxt)
            word = nxt
            steps += 1
            if steps > budget:
                raise RewriteError("rewriting step budget exceeded")

    # -- shortcuts ------------------------------------------------------------------

    def redundant_shortcut(self, cell):
        """Fast paths for a redundant 1-cell.

        Returns ``()`` when the cell rewrites to the empty word, ``(FLOWS_TO, r(cell))``
        when it rewrites to the same thing as r(cell), and None otherwise.
        """
        cx = self.cx
        occ = occupied(cell)
        verts = [a for a in cell if type(a) is int]
        e = next(a for a in cell if type(a) is not int)
        v1 = next((v for v in verts if v != 0 and cx.parent[v] not in occ), None)
        if v1 is None:
            return None
        iota, tau = e
        if e in cx.tree_pairs and not any(tau < v < iota for v in verts):
            return ()
        lo = cx.parent[v1]
        others = [v for v in verts if v != v1] + [tau, iota]
        if not any(lo < x < v1 for x in others):
            return (FLOWS_TO, cx.r_step(cell))
        return None

    # -- normal forms -----------------------------------------------------------------

    def _deps(self, cell):
        if self.shortcuts:
            sc = self.redundant_shortcut(cell)
            if sc == ():
                return (), None
            if sc is not None:
                return None, sc[1]
        return self.replacement(cell), None

    def letter_form(self, cell):
        memo = self._memo
        if cell in memo:
            return memo[cell]
        stack = [cell]
        onstack = {cell}
        classify = self.cx.classify
        while stack:
            x = stack[-1]
            if x in memo:
                stack.pop()
                onstack.discard(x)
                continue
            tag = classify(x).tag
            if tag == CRITICAL:
                memo[x] = ((x, 1),)
                continue
            if tag == COLLAPSIBLE:
                memo[x] = ()
                continue
            rep, same_as = self._deps(x)
            deps = [same_as] if same_as is not None else [c for c, _ in rep]
            missing = next((d for d in deps if d not in memo), None)
            if missing is not None:
                if missing in onstack:
                    raise RewriteError("cyclic flow: the matching is not acyclic")
                stack.append(missing)
                onstack.add(missing)
                continue
            if same_as is not None:
                memo[x] = memo[same_as]
            else:
                out = []
                for c, s in rep:
                    out.extend(memo[c] if s == 1 else inverse(memo[c]))
                memo[x] = free_reduce(out)
        return memo[cell]

    def m_infinity(self, word):
        out = []
        for c, s in word:
            f = self.letter_form(c)
            out.extend(f if s == 1 else inverse(f))
        return free_reduce(out)
