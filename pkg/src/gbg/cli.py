"""Command-line front end: ``gbg <command> --graph FILE --strands N``."""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import families
from .complex import CellBudgetExceeded, ConfigurationComplex
from .graph_core import GraphError, load_graph, prepare
from .oracle import h1
from .presenter import (
    Presenter,
    PresentationError,
    abelianization,
    commutator_form_check,
    tietze_simplify,
)
from .rewrite import Rewriter

COMMANDS = ("present", "cells", "critical", "homology-check", "conjecture-check")


class UsageError(Exception):
    pass


def _build_parser():
    ap = argparse.ArgumentParser(prog="gbg", description="Presentations of graph braid groups.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--graph", required=True,
                    help="graph file, or a family: star:K, path:L, balloon:M, random, loops")
    ap.add_argument("--strands", "-n", type=int, required=True)
    ap.add_argument("--format", choices=("text", "json", "gap"), default="text")
    ap.add_argument("--simplify", action="store_true", help="apply Tietze eliminations")
    ap.add_argument("--no-closed-forms", action="store_true", help="always compute costs by flowing")
    ap.add_argument("--seed", type=int, default=0, help="seed for the random families")
    ap.add_argument("--jobs", type=int, default=1, help="threads used for relators")
    ap.add_argument("--verbose", "-v", action="store_true", help="print rewriting traces to stderr")
    return ap


def _budget():
    raw = os.environ.get("GBG_CELL_BUDGET")
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"GBG_CELL_BUDGET must be an integer, got {raw!r}") from None


def _load(spec, n, seed):
    kind, _, arg = spec.partition(":")
    if kind == "star" and arg:
        return families.star(int(arg), n)
    if kind == "path" and arg:
        return families.path(int(arg))
    if kind == "balloon" and arg:
        return families.balloon(int(arg), 3 if n >= 3 else 2)
    if spec == "random":
        return families.random_graph(seed)
    if spec == "loops":
        return families.disjoint_loops_graph(seed)
    return load_graph(spec)


def _complex(args):
    g = prepare(_load(args.graph, args.strands, args.seed), args.strands)
    return ConfigurationComplex(g, args.strands, budget=_budget())


def _trace(cx, pres, out):
    rw = Rewriter(cx, shortcuts=False)
    for c in pres.sources:
        trace = []
        rw.reduce_fully(cx.boundary_word(c), trace=trace)
        print(f"# relator of {cx.name(c)}: {len(trace)} moves", file=out)
        for w in trace:
            print("#   " + " ".join(cx.set_notation(x) + ("^-1" if s == -1 else "") for x, s in w), file=out)


def cmd_present(args, out):
    cx = _complex(args)
    presenter = Presenter(cx, closed_forms=not args.no_closed_forms)
    pres = presenter.presentation(jobs=max(1, args.jobs))
    if args.verbose:
        _trace(cx, pres, sys.stderr)
    if args.simplify:
        pres = tietze_simplify(pres)
    if args.format == "json":
        doc = {"graph": cx.graph.name, "strands": cx.n, "simplified": args.simplify}
        doc.update(pres.to_json())
        json.dump(doc, out, indent=2, sort_keys=True)
        out.write("\n")
    elif args.format == "gap":
        out.write(pres.to_gap())
    else:
        out.write(pres.format_text())
    return 0


def cmd_cells(args, out):
    cx = _complex(args)
    doc = {}
    for d in range(cx.n + 1):
        rows = []
        for c in cx.enumerate_cells(d):
            cls = cx.classify(c)
            partner = cx.set_notation(cls.partner) if cls.partner else None
            rows.append((cx.set_notation(c), cls.tag, partner))
        doc[d] = rows
    if args.format == "json":
        json.dump({str(d): [{"cell": a, "class": b, "partner": p} for a, b, p in rows]
                   for d, rows in doc.items()}, out, indent=2)
        out.write("\n")
        return 0
    for d, rows in doc.items():
        out.write(f"dimension {d}: {len(rows)} cells\n")
        for a, b, p in rows:
            out.write(f"  {a} {b}" + (f" -> {p}" if p else "") + "\n")
    return 0


def cmd_critical(args, out):
    cx = _complex(args)
    doc = {d: [cx.name(c) for c in cx.critical_cells(d)] for d in range(min(cx.n, 2) + 1)}
    if args.format == "json":
        json.dump({str(d): names for d, names in doc.items()}, out, indent=2)
        out.write("\n")
        return 0
    for d, names in doc.items():
        out.write(f"critical {d}-cells: {len(names)}\n")
        for name in names:
            out.write(f"  {name}\n")
    return 0


def cmd_homology_check(args, out):
    cx = _complex(args)
    pres = Presenter(cx, closed_forms=not args.no_closed_forms).presentation(jobs=max(1, args.jobs))
    rank, torsion = abelianization(pres)
    ref = h1(cx.graph, cx.n, budget=_budget())
    ok = (rank, tuple(torsion)) == (ref.free_rank, ref.torsion)
    out.write(f"abelianized presentation: rank {rank}, torsion {list(torsion)}\n")
    out.write(f"cellular H1: rank {ref.free_rank}, torsion {list(ref.torsion)} "
              f"(cells {'/'.join(map(str, ref.cell_counts))})\n")
    out.write("agree\n" if ok else "MISMATCH\n")
    return 0 if ok else 3


def cmd_conjecture_check(args, out):
    if args.strands != 2:
        raise UsageError("conjecture-check is about two strands; use --strands 2")
    import networkx as nx

    g = _load(args.graph, 2, args.seed)
    planar, _ = nx.check_planarity(nx.Graph(list(g.edges.values())))
    cx = _complex(args)
    pres = Presenter(cx, closed_forms=not args.no_closed_forms).presentation(jobs=max(1, args.jobs))
    flags = commutator_form_check(pres)
    simple = tietze_simplify(pres)
    sflags = commutator_form_check(simple)
    out.write(f"planar: {'yes' if planar else 'no'}\n")
    out.write(f"relators: {len(flags)}, commutators: {sum(flags)}\n")
    for k, f in enumerate(flags, start=1):
        if not f:
            out.write(f"  r{k} is not a commutator: {pres.word_text(pres.relators[k - 1])}\n")
    out.write(f"after simplification: {len(sflags)} relators, commutators: {sum(sflags)}\n")
    # one presentation with a non-commutator relator settles nothing either way
    verdict = "all commutators" if all(sflags) or all(flags) else "undecided"
    out.write(f"verdict: {verdict}\n")
    return 0


HANDLERS = {
    "present": cmd_present,
    "cells": cmd_cells,
    "critical": cmd_critical,
    "homology-check": cmd_homology_check,
    "conjecture-check": cmd_conjecture_check,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    ap = _build_parser()
    args = ap.parse_args(argv)
    if args.strands < 1:
        ap.error("--strands must be at least 1")
    try:
        return HANDLERS[args.command](args, out)
    except UsageError as e:
        ap.error(str(e))
    except CellBudgetExceeded as e:
        print(f"gbg: cell budget exceeded: {e}", file=sys.stderr)
        return 2
    except (GraphError, PresentationError, ValueError, OSError) as e:
        print(f"gbg: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
