"""Relative flows, costs, relators and whole presentations."""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex import COLLAPSIBLE, CRITICAL, ConfigurationComplex, make_cell
from .rewrite import Rewriter, cyclic_reduce, free_reduce, inverse
from .smith import invariant_factors

IOTA = "iota"
TAU = "tau"


class PresentationError(RuntimeError):
    pass


class StructureMismatch(AssertionError):
    """The arm decomposition of a relator disagreed with direct rewriting."""


@dataclass(frozen=True)
class CostQuery:
    vertices: tuple  # n-1 vertex numbers, sorted
    edge: tuple  # the fixed edge (iota, tau)
    endpoint: str  # IOTA or TAU

    @property
    def point(self):
        return self.edge[0] if self.endpoint == IOTA else self.edge[1]


@dataclass
class RelatorResult:
    cell: tuple
    word: tuple  # M-infinity of the boundary word
    arms: list = field(default_factory=list)  # (face, sign, cost_iota, label, cost_tau)
    structured: tuple | None = None


class Presenter:
    """Builds relators for one complex; closed forms are optional shortcuts."""

    def __init__(self, cx: ConfigurationComplex, closed_forms=True, check=True):
        self.cx = cx
        self.rw = Rewriter(cx)
        self.check = check
        self.closed_forms = closed_forms and cx.tree.closed_forms_apply(cx.n)
        self.closed_form_hits = 0

    # -- flows and costs -----------------------------------------------------

    def relative_flow(self, q: CostQuery):
        """Edge-path draining the free vertices while the endpoint of ``q.edge`` stays put."""
        parent = self.cx.parent
        verts = set(q.vertices)
        fixed = q.point
        occ = verts | set(q.edge)
        path = []
        while True:
            v = next((v for v in sorted(verts) if v != 0 and parent[v] not in occ), None)
            if v is None:
                return tuple(path)
            rest = [u for u in verts if u != v]
            path.append((make_cell(rest + [(v, parent[v]), fixed]), 1))
            verts.discard(v)
            occ.discard(v)
            verts.add(parent[v])
            occ.add(parent[v])

    def cost(self, q: CostQuery):
        return self.rw.m_infinity(self.relative_flow(q))

    def corner_query(self, face, edge, endpoint):
        verts = tuple(a for a in face if type(a) is int)
        return CostQuery(verts, edge, endpoint)

    def face_edge(self, face):
        return next(a for a in face if type(a) is not int)

    def corner_costs(self, c):
        """The eight (query, cost) pairs of a critical 2-cell, two per face."""
        out = []
        for face, _ in self.cx.boundary_word(c):
            e = self.face_edge(face)
            for end in (IOTA, TAU):
                q = self.corner_query(face, e, end)
                out.append((q, self.cost(q)))
        return out

    def _cost_fast(self, q, c):
        if self.closed_forms:
            from .closed_forms import cost_closed_form

            got = cost_closed_form(self.cx, q, c)
            if got is not None:
                self.closed_form_hits += 1
                return got
        return self.cost(q)

    # -- relators ---------------------------------------------------------------------

    def label(self, face):
        """M-infinity of r-infinity(face): the cell itself if critical, else empty."""
        r = self.cx.r_infinity(face)
        tag = self.cx.classify(r).tag
        if tag == CRITICAL:
            return ((r, 1),)
        if tag == COLLAPSIBLE:
            return ()
        raise PresentationError("r-infinity of a face has an unblocked vertex")

    def arms(self, c, fast=False):
        out = []
        for face, sign in self.cx.boundary_word(c):
            e = self.face_edge(face)
            qi = self.corner_query(face, e, IOTA)
            qt = self.corner_query(face, e, TAU)
            if fast:
                ci, ct = self._cost_fast(qi, c), self._cost_fast(qt, c)
            else:
                ci, ct = self.cost(qi), self.cost(qt)
            out.append((face, sign, ci, self.label(face), ct))
        return out

    @staticmethod
    def assemble(arms):
        word = []
        for _, sign, ci, lab, ct in arms:
            arm = ci + lab + inverse(ct)
            word.extend(arm if sign == 1 else inverse(arm))
        return free_reduce(word)

    def relator_for(self, c, structured=True):
        if self.cx.classify(c).tag != CRITICAL:
            raise ValueError("relator_for needs a critical 2-cell")
        word = self.rw.m_infinity(self.cx.boundary_word(c))
        res = RelatorResult(c, word)
        if structured:
            res.arms = self.arms(c, fast=True)
            res.structured = self.assemble(res.arms)
            if self.check and res.structured != word:
                raise StructureMismatch(f"arm assembly differs from rewriting for {self.cx.set_notation(c)}")
        return res

    def octagon_relator(self, c):
        """Two-strand relator from the octagon: four face labels and four corner labels."""
        if self.cx.n != 2:
            raise ValueError("the octagon applies to two strands only")
        from .closed_forms import two_strand_cost

        arms = []
        for face, sign in self.cx.boundary_word(c):
            e = self.face_edge(face)
            (v,) = [a for a in face if type(a) is int]
            ci = two_strand_cost(self.cx, v, e[0])
            ct = two_strand_cost(self.cx, v, e[1])
            arms.append((face, sign, ci, self.label(face), ct))
        return self.assemble(arms)

    # -- whole presentation ----------------------------------------------------------

    def presentation(self, jobs=1):
        cx = self.cx
        zero = cx.critical_cells(0)
        if len(zero) != 1:
            raise PresentationError(f"configuration space is disconnected ({len(zero)} critical 0-cells)")
        gens = cx.critical_cells(1)
        index = {c: k for k, c in enumerate(gens)}
        twos = cx.critical_cells(2)
        if jobs > 1 and len(twos) > 1:
            from concurrent.futures import ThreadPoolExecutor

            with ThreadPoolExecutor(jobs) as pool:
                results = list(pool.map(self.relator_for, twos))
        else:
            results = [self.relator_for(c) for c in twos]
        rels = []
        for res in results:
            rels.append(canonical_relator(tuple((index[x], s) for x, s in res.word)))
        names = tuple(cx.name(c) for c in gens)
        if len(set(names)) != len(names):
            names = tuple(cx.set_notation(c) for c in gens)
        return Presentation(names, tuple(rels), tuple(gens), tuple(twos))


# -- group words over generator indices ----------------------------------------------


def _key(word):
    return tuple((g, 0 if s == 1 else 1) for g, s in word)


def canonical_relator(word):
    """Least rotation of the cyclically reduced word or of its inverse."""
    w = cyclic_reduce(word)
    if not w:
        return ()
    best = None
    for cand in (w, inverse(w)):
        for k in range(len(cand)):
            rot = cand[k:] + cand[:k]
            if best is None or _key(rot) < _key(best):
                best = rot
    return best


def commutator(x, y):
    return free_reduce(tuple(x) + tuple(y) + inverse(x) + inverse(y))


def same_relator(u, v):
    return canonical_relator(u) == canonical_relator(v)


def is_commutator(word):
    """Whether the word is conjugate to some [x, y] in the free group.

    Uses the fact that a cyclically reduced commutator is a cyclic rotation of
    X Y Z X^-1 Y^-1 Z^-1 with X, Y, Z possibly empty.
    """
    w = cyclic_reduce(word)
    L = len(w)
    if L == 0:
        return True
    if L % 2:
        return False
    h = L // 2
    for k in range(L):
        rot = w[k:] + w[:k]
        u, v = rot[:h], rot[h:]
        for a in range(h + 1):
            for b in range(h - a + 1):
                X, Y, Z = u[:a], u[a:a + b], u[a + b:]
                if v == inverse(X) + inverse(Y) + inverse(Z):
                    return True
    return False


@dataclass(frozen=True)
class Presentation:
    generators: tuple  # names
    relators: tuple  # words over generator indices
    cells: tuple = ()  # critical 1-cells behind the generators, if known
    sources: tuple = ()  # critical 2-cells behind the relators, if known

    def word_text(self, word):
        if not word:
            return "1"
        out = []
        for g, s in word:
            name = self.generators[g]
            if " " in name:
                name = f"({name})"
            out.append(name + ("^-1" if s == -1 else ""))
        return " ".join(out)

    def format_text(self):
        lines = [f"generators ({len(self.generators)}):"]
        lines += [f"  g{k + 1} = {name}" for k, name in enumerate(self.generators)]
        lines.append(f"relators ({len(self.relators)}):")
        lines += [f"  r{k + 1} = {self.word_text(r)}" for k, r in enumerate(self.relators)]
        if not self.relators:
            lines.append(f"free of rank {len(self.generators)}")
        return "\n".join(lines) + "\n"

    def to_json(self):
        return {
            "generators": list(self.generators),
            "relators": [[[g, s] for g, s in r] for r in self.relators],
            "relators_text": [self.word_text(r) for r in self.relators],
        }

    def to_gap(self):
        k = len(self.generators)
        lines = [f"# F.{i + 1} = {name}" for i, name in enumerate(self.generators)]
        lines.append(f"F := FreeGroup({k});")
        rels = []
        for r in self.relators:
            if not r:
                rels.append("One(F)")
            else:
                rels.append("*".join(f"F.{g + 1}" + ("^-1" if s == -1 else "") for g, s in r))
        lines.append("rels := [" + ", ".join(rels) + "];")
        lines.append("G := F / rels;")
        return "\n".join(lines) + "\n"


def abelianization(p: Presentation):
    """(free rank, torsion coefficients) of the abelianized group."""
    k = len(p.generators)
    rows = []
    for r in p.relators:
        row = [0] * k
        for g, s in r:
            row[g] += s
        rows.append(row)
    d = invariant_factors(rows) if k else []
    return k - len(d), [x for x in d if x > 1]


def commutator_form_check(p: Presentation):
    return [is_commutator(r) for r in p.relators]


def _substitute(word, g, repl):
    out = []
    for x, s in word:
        if x == g:
            out.extend(repl if s == 1 else inverse(repl))
        else:
            out.append((x, s))
    return free_reduce(out)


def tietze_simplify(p: Presentation, max_passes=None):
    """Eliminate generators that occur exactly once in some relator."""
    alive = list(range(len(p.generators)))
    rels = _tidy(p.relators)
    passes = len(alive) if max_passes is None else max_passes
    for _ in range(passes):
        pick = None
        for g in alive:
            for k in sorted(range(len(rels)), key=lambda k: (len(rels[k]), k)):
                r = rels[k]
                if sum(1 for x, _ in r if x == g) == 1:
                    pick = (g, k)
                    break
            if pick:
                break
        if pick is None:
            break
        g, k = pick
        r = rels[k]
        pos = next(i for i, (x, _) in enumerate(r) if x == g)
        rot = r[pos:] + r[:pos]
        w = rot[1:]
        repl = inverse(w) if rot[0][1] == 1 else w
        rels = _tidy([_substitute(x, g, repl) for j, x in enumerate(rels) if j != k])
        alive.remove(g)
    remap = {g: i for i, g in enumerate(alive)}
    new_rels = tuple(canonical_relator(tuple((remap[x], s) for x, s in r)) for r in rels)
    cells = tuple(p.cells[g] for g in alive) if p.cells else ()
    return Presentation(tuple(p.generators[g] for g in alive), new_rels, cells, ())


def _tidy(rels):
    out = []
    seen = set()
    for r in rels:
        c = canonical_relator(r)
        if c and c not in seen:
            seen.add(c)
            out.append(cyclic_reduce(r))
    return out


def presentation(g, n, closed_forms=True, jobs=1, budget=None):
    cx = ConfigurationComplex(g, n, budget=budget)
    return Presenter(cx, closed_forms=closed_forms).presentation(jobs=jobs)
