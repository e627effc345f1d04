"""The pinned test corpus and a runner that evaluates it.

Graphs up to isomorphism are enumerated by vertex extension: every graph on
``n`` vertices arises from one on ``n - 1`` vertices by adding a vertex, and
isomorphic copies are merged through a canonical form (the lexicographically
least sorted edge list over relabelings that respect the degree sequence).
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations, product

from .algebra import GREVLEX, LEX, MonomialOrder
from .analysis import AnalysisReport, analyze, classify_constant_multiplicity
from .graphs import MultiGraph, complete_graph, cycle_graph, fritsch_graph, prism_graph, wheel_graph

DEFAULT_SEED = 20240601
RANDOM_INSTANCES = 20
RANDOM_MULTIPLICITIES = (1, 2, 3)


def canonical_form(n: int, edges) -> tuple:
    """Canonical sorted edge tuple of a simple graph on vertices ``1..n``."""
    edges = [tuple(sorted(e)) for e in edges]
    deg = [0] * (n + 1)
    for i, j in edges:
        deg[i] += 1
        deg[j] += 1
    # new labels are handed out in order of decreasing degree
    classes: dict = {}
    for v in range(1, n + 1):
        classes.setdefault(-deg[v], []).append(v)
    groups = [classes[k] for k in sorted(classes)]
    best = None
    for parts in product(*(permutations(gr) for gr in groups)):
        order = [v for part in parts for v in part]
        label = {v: k + 1 for k, v in enumerate(order)}
        form = tuple(sorted(tuple(sorted((label[i], label[j]))) for i, j in edges))
        if best is None or form < best:
            best = form
    return best if best is not None else ()


@lru_cache(maxsize=None)
def nonisomorphic_graphs(n: int) -> tuple:
    """Canonical edge tuples of all simple graphs on ``n`` vertices up to isomorphism."""
    if n <= 0:
        return ((),) if n == 0 else ()
    if n == 1:
        return ((),)
    seen = set()
    for base in nonisomorphic_graphs(n - 1):
        for k in range(n):
            for nbrs in combinations(range(1, n), k):
                seen.add(canonical_form(n, list(base) + [(u, n) for u in nbrs]))
    return tuple(sorted(seen, key=lambda f: (len(f), f)))


def small_graphs(max_vertices: int = 5, m: int = 1) -> list:
    out = []
    for n in range(1, max_vertices + 1):
        for k, form in enumerate(nonisomorphic_graphs(n)):
            out.append(MultiGraph(n, form, multiplicity=m, name=f"g{n}.{k}"))
    return out


def random_instances(seed: int = DEFAULT_SEED, count: int = RANDOM_INSTANCES,
                     max_vertices: int = 5) -> list:
    """Seeded per-edge multiplicities on small graphs with at least two edges."""
    rng = random.Random(seed)
    pool = [g for g in small_graphs(max_vertices) if len(g.edges) >= 2]
    out = []
    for t in range(count):
        g = pool[rng.randrange(len(pool))]
        mult = {e: rng.choice(RANDOM_MULTIPLICITIES) for e in g.edges}
        out.append(MultiGraph(g.vertex_count, mult, name=f"{g.name}~r{t}"))
    return out


def named_graphs(slow: bool = False) -> list:
    out = [wheel_graph(4), prism_graph(), complete_graph(4, 2)]
    if slow:
        out += [wheel_graph(5), wheel_graph(6), fritsch_graph()]
    return out


@dataclass(frozen=True)
class CorpusItem:
    key: str
    kind: str      # "const1", "const2", "random" or "named"
    graph: MultiGraph


def default_corpus(seed: int = DEFAULT_SEED, slow: bool = False, max_vertices: int = 5) -> list:
    items = []
    for m in (1, 2):
        for g in small_graphs(max_vertices, m):
            items.append(CorpusItem(f"{g.name}/m{m}", f"const{m}", g))
    for g in random_instances(seed, max_vertices=max_vertices):
        items.append(CorpusItem(g.name, "random", g))
    for g in named_graphs(slow):
        items.append(CorpusItem(f"{g.name}/m{g.is_constant_multiplicity() or 'x'}", "named", g))
    return items


def _run_one(args) -> tuple:
    item, kind = args
    order = LEX if kind == "lex" else GREVLEX
    return item.key, analyze(item.graph, order)


@dataclass
class CorpusResult:
    items: list                 # CorpusItem, canonical order
    reports: dict               # key -> AnalysisReport
    violations: list = field(default_factory=list)

    def summary(self) -> dict:
        reps = [self.reports[it.key] for it in self.items]
        tight = [r for r in reps if r.upper_tight]
        return {
            "instances": len(reps),
            "free": sum(r.is_free for r in reps),
            "not_free": sum(not r.is_free for r in reps),
            "cycle_bound_tight": sum(r.kung_schenck_gap == 0 for r in reps),
            "cycle_bound_not_tight": sum(r.kung_schenck_gap > 0 for r in reps),
            "single_higher_cohomology": len(tight),
            "hyperhomology_equality": sum(r.bound_upper == r.pdim_derivations for r in tight),
            "hyperhomology_bound_tight_overall": sum(r.bound_upper == r.pdim_derivations
                                                     for r in reps),
            "violations": len(self.violations),
        }

    def to_json(self) -> dict:
        return {
            "summary": self.summary(),
            "violations": list(self.violations),
            "reports": [dict(self.reports[it.key].to_json(), key=it.key, kind=it.kind)
                        for it in self.items],
        }


def run_corpus(items: list, order: MonomialOrder = GREVLEX, workers: int = 1,
               progress=None) -> CorpusResult:
    """Analyze every item; results come back in the order of ``items`` regardless of workers."""
    jobs = [(it, order.kind) for it in items]
    reports: dict = {}
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            for key, rep in ex.map(_run_one, jobs):
                reports[key] = rep
                if progress:
                    progress(key, rep)
    else:
        for job in jobs:
            key, rep = _run_one(job)
            reports[key] = rep
            if progress:
                progress(key, rep)
    violations = [v for it in items for v in reports[it.key].violations]
    violations += cross_instance_checks(items, reports)
    return CorpusResult(list(items), reports, violations)


def cross_instance_checks(items: list, reports: dict) -> list:
    """Checks that compare several instances.

    For each graph with constant multiplicity 2, the combinatorial verdict
    on constant multiplicities must equal the homological freeness verdict.
    """
    out = []
    for it in items:
        g = it.graph
        if g.is_constant_multiplicity() != 2:
            continue
        verdict = classify_constant_multiplicity(g).free_for_all_const_m_ge_2
        if verdict != reports[it.key].is_free:
            out.append(f"{it.key}: blocks-are-cliques={verdict} but free={reports[it.key].is_free}")
    return out


def format_summary(result: CorpusResult) -> str:
    s = result.summary()
    width = max(len(k) for k in s)
    lines = [f"{k.ljust(width)}  {v}" for k, v in s.items()]
    lines.append("")
    lines.append(f"{'instance'.ljust(16)} {'pdim':>4} {'free':>5} {'upper':>5} {'lower':>5} chordal")
    for it in result.items:
        r: AnalysisReport = result.reports[it.key]
        lines.append(f"{it.key.ljust(16)} {r.pdim_derivations:>4} {str(r.is_free):>5} "
                     f"{r.bound_upper:>5} {r.bound_lower_cycle:>5} {r.chordal}")
    for v in result.violations:
        lines.append(f"VIOLATION {v}")
    return "\n".join(lines)
