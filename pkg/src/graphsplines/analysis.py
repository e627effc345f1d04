"""Projective dimension, freeness verdicts, bound checks and the combinatorial classifiers."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from functools import cached_property

from .algebra import (GREVLEX, MonomialOrder, codimension, hilbert_series_from_betti,
                      hilbert_series_from_initial, minimal_free_resolution)
from .cliques import build_clique_complex, leaf_ordering, vertex_separated_leaf_ordering
from .graphs import (MultiGraph, Partition, blocks, connected_components,
                     induced_partition_subgraph, is_chordal, longest_induced_cycle_vertices,
                     maximal_cliques, rank)
from .splines import build_complexes, derivation_module, graph_ring


class InconsistencyError(RuntimeError):
    """Two routes that must agree did not; always an implementation bug."""


def graph_id(g: MultiGraph) -> str:
    if g.name:
        return g.name
    return f"v{g.vertex_count}:" + ",".join(f"{i}{j}" for i, j in g.edges)


def multiplicity_label(g: MultiGraph) -> str:
    if not g.edges:
        return "none"
    k = g.is_constant_multiplicity()
    return f"const:{k}" if k is not None else "per-edge"


class Pipeline:
    """Lazily computed algebra for one ``(G, m)``; every heavy object is built once."""

    def __init__(self, g: MultiGraph, order: MonomialOrder = GREVLEX, essential: bool = True):
        self.graph = g
        self.order = order
        self.essential = essential
        self.ring = graph_ring(g, essential)
        self._coh: dict = {}
        self._coh_res: dict = {}

    @cached_property
    def derivations(self):
        return derivation_module(self.graph, self.essential, self.order)

    @cached_property
    def derivation_resolution(self):
        return minimal_free_resolution(self.derivations, self.order)

    @cached_property
    def complexes(self):
        return build_complexes(self.graph, self.essential, self.order, with_j=False)

    @property
    def top_degree(self) -> int:
        return len(self.complexes.RmodJ) - 1

    def cohomology(self, i: int):
        if i not in self._coh:
            self._coh[i] = self.complexes.RmodJ.cohomology(i, self.order)
        return self._coh[i]

    def cohomology_resolution(self, i: int):
        if i not in self._coh_res:
            self._coh_res[i] = minimal_free_resolution(self.cohomology(i), self.order)
        return self._coh_res[i]

    def cohomology_series(self, i: int):
        return hilbert_series_from_betti(self.cohomology_resolution(i).betti, self.ring.nvars)

    def higher_nonzero(self) -> list:
        """Degrees ``i > 0`` with ``H^i(R/J) != 0``, decided by the Hilbert series."""
        return [i for i in range(1, self.top_degree + 1)
                if not self.cohomology_series(i).is_zero()]

    @property
    def pdim(self) -> int:
        p = self.derivation_resolution.pdim
        return 0 if p is None else p


def _pipe(x, order=GREVLEX) -> Pipeline:
    return x if isinstance(x, Pipeline) else Pipeline(x, order)


def pdim_and_freeness(g, order: MonomialOrder = GREVLEX) -> tuple:
    """``(pdim D, is_free)``, cross-checked against vanishing of ``H^i(R/J)``, ``i > 0``."""
    p = _pipe(g, order)
    pd = p.pdim
    vanishing = not p.higher_nonzero()
    if (pd == 0) != vanishing:
        raise InconsistencyError(
            f"{graph_id(p.graph)}: resolution gives pdim {pd} but higher cohomology "
            f"{'vanishes' if vanishing else 'is nonzero in degrees ' + str(p.higher_nonzero())}")
    return pd, pd == 0


def hyperhomology_bound(g, order: MonomialOrder = GREVLEX) -> tuple:
    """``(max_i (p_i - i - 1), tight)`` where tight means one nonvanishing ``H^i``, ``i > 0``."""
    p = _pipe(g, order)
    nz = p.higher_nonzero()
    upper = max([p.cohomology_resolution(i).pdim - i - 1 for i in nz], default=0)
    upper = max(upper, 0)
    tight = len(nz) == 1
    pd = p.pdim
    if pd > upper:
        raise InconsistencyError(f"{graph_id(p.graph)}: pdim {pd} exceeds cohomology bound {upper}")
    if tight and pd != upper:
        raise InconsistencyError(
            f"{graph_id(p.graph)}: single nonvanishing H^{nz[0]} but pdim {pd} != bound {upper}")
    return upper, tight


@dataclass(frozen=True)
class ConstantMultiplicityVerdict:
    free_for_all_const_m_ge_2: bool
    vertex_separated_ordering: bool
    blocks_are_cliques: bool
    blocks: tuple
    maximal_cliques: tuple


def classify_constant_multiplicity(g: MultiGraph) -> ConstantMultiplicityVerdict:
    """Freeness of every constant multiplicity ``m >= 2``, read off combinatorially."""
    cc = build_clique_complex(g)
    vs = vertex_separated_leaf_ordering(cc)
    bl = tuple(sorted(tuple(sorted(b)) for b in blocks(g)))
    cl = tuple(maximal_cliques(g))
    bc = set(bl) == set(cl)
    if vs != bc:
        raise InconsistencyError(
            f"{graph_id(g)}: vertex-separated ordering {vs} but blocks-are-cliques {bc}")
    return ConstantMultiplicityVerdict(bc, vs, bc, bl, cl)


def classify_totally_free(g: MultiGraph) -> bool:
    """Every block is a clique on at most three vertices."""
    return all(len(b) <= 3 and all(g.has_edge(a, c) for a in b for c in b if a < c)
               for b in blocks(g))


@dataclass(frozen=True)
class FlatCheck:
    partition: tuple
    pdim_graph: int
    pdim_flat: int

    @property
    def passed(self) -> bool:
        return self.pdim_flat <= self.pdim_graph


def flat_monotonicity_check(g, p: Partition, order: MonomialOrder = GREVLEX) -> FlatCheck:
    pipe = _pipe(g, order)
    p.validate(pipe.graph.vertex_count)
    h = induced_partition_subgraph(pipe.graph, p)
    sub = Pipeline(h, order)
    return FlatCheck(tuple(tuple(sorted(b)) for b in p.blocks), pipe.pdim, sub.pdim)


def cycle_partition(g: MultiGraph) -> Partition:
    """A longest induced cycle as one block, every other vertex alone."""
    cyc = set(longest_induced_cycle_vertices(g))
    rest = [(v,) for v in g.vertices if v not in cyc]
    return Partition(([tuple(sorted(cyc))] if cyc else []) + rest)


def kung_schenck_gap(g, order: MonomialOrder = GREVLEX) -> tuple:
    """``(lower, pdim, gap)`` with ``lower = max(longest induced cycle - 3, 0)``."""
    p = _pipe(g, order)
    lower = max(len(longest_induced_cycle_vertices(p.graph)) - 3, 0)
    pd = p.pdim
    if pd < lower:
        raise InconsistencyError(f"{graph_id(p.graph)}: pdim {pd} below cycle bound {lower}")
    return lower, pd, pd - lower


def global_bound(g: MultiGraph) -> int:
    """``max(rk - 2, 0)``; rank at most 2 forces freeness."""
    return max(rank(g) - 2, 0)


# -- full report -----------------------------------------------------------------

@dataclass
class CohomologyEntry:
    degree: int
    zero: bool
    pdim: int | None
    codim: float | int
    codim_ok: bool
    generator_degrees: list
    hilbert: dict


@dataclass
class AnalysisReport:
    graph_id: str
    vertex_count: int
    edges: list
    multiplicity: str
    order: str
    pdim_derivations: int
    is_free: bool
    derivation_betti: dict
    derivation_hilbert: dict
    cohomology: list
    codim_check: dict
    bound_upper: int
    upper_tight: bool
    bound_global: int
    bound_lower_cycle: int
    longest_induced_cycle: int
    kung_schenck_gap: int
    chordal: bool
    quasi_forest: bool
    blocks_are_cliques: bool
    vertex_separated_ordering: bool
    totally_free_shape: bool
    consistency: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        out = asdict(self)
        for c in out["cohomology"]:
            if c["codim"] == math.inf:
                c["codim"] = "inf"
        out["codim_check"] = {str(k): v for k, v in self.codim_check.items()}
        return out


def analyze(g: MultiGraph, order: MonomialOrder = GREVLEX, essential: bool = True) -> AnalysisReport:
    """Run every computation and cross-check on ``(G, m)``.

    Failed cross-checks are collected in ``violations`` rather than raised,
    so a corpus run can report all of them.
    """
    p = Pipeline(g, order, essential)
    violations: list = []
    consistency: dict = {}

    def guarded(name, fn, fallback):
        try:
            out = fn()
            consistency[name] = True
            return out
        except InconsistencyError as exc:
            consistency[name] = False
            violations.append(str(exc))
            return fallback

    pd = p.pdim
    _, free = guarded("pdim_vs_cohomology", lambda: pdim_and_freeness(p), (pd, pd == 0))
    upper, tight = guarded("hyperhomology_bound", lambda: hyperhomology_bound(p), (-1, False))
    lower, _, gap = guarded("cycle_lower_bound", lambda: kung_schenck_gap(p), (-1, pd, -1))
    verdict = guarded("constant_multiplicity_conditions",
                      lambda: classify_constant_multiplicity(g), None)

    cohom, codim_check = [], {}
    for i in range(p.top_degree + 1):
        h = p.cohomology(i)
        hs = p.cohomology_series(i)
        cd = codimension(h, order) if not hs.is_zero() else math.inf
        ok = i == 0 or cd >= i + 2
        if i > 0:
            codim_check[i] = ok
            if not ok:
                violations.append(f"{graph_id(g)}: codim H^{i}(R/J) = {cd} < {i + 2}")
        res = p.cohomology_resolution(i)
        cohom.append(CohomologyEntry(i, hs.is_zero(), res.pdim, cd, ok,
                                     sorted(res.betti.degrees(0)) if res.pdim is not None else [],
                                     p.ring.full_series(hs).to_json()))
    consistency["codimension_bound"] = all(codim_check.values())

    # the derivation module two ways: kernel of psi and H^0(R/J)
    d_betti = p.derivation_resolution.betti
    d_hs = hilbert_series_from_betti(d_betti, p.ring.nvars)
    h0_res = p.cohomology_resolution(0)
    same = (d_betti.to_json() == h0_res.betti.to_json()
            and d_hs.same_as(hilbert_series_from_betti(h0_res.betti, p.ring.nvars)))
    consistency["derivations_two_routes"] = same
    if not same:
        violations.append(f"{graph_id(g)}: psi-kernel and H^0 routes give different modules")
    hs_ok = d_hs.same_as(hilbert_series_from_initial(p.derivations, order))
    consistency["hilbert_series_two_routes"] = hs_ok
    if not hs_ok:
        violations.append(f"{graph_id(g)}: Hilbert series from Betti table and initial module differ")

    chordal = is_chordal(g).chordal
    quasi = leaf_ordering(build_clique_complex(g)) is not None
    consistency["chordal_iff_quasi_forest"] = chordal == quasi
    if chordal != quasi:
        violations.append(f"{graph_id(g)}: chordal={chordal} but quasi-forest={quasi}")
    consistency["free_implies_chordal"] = chordal or not free
    if free and not chordal:
        violations.append(f"{graph_id(g)}: free but not chordal")
    gb = global_bound(g)
    consistency["global_bound"] = pd <= gb
    if pd > gb:
        violations.append(f"{graph_id(g)}: pdim {pd} exceeds rank bound {gb}")
    small = all(len(c) <= 3 for c in connected_components(g))
    consistency["small_components_free"] = free or not small
    if small and not free:
        violations.append(f"{graph_id(g)}: components have <= 3 vertices but D is not free")

    return AnalysisReport(
        graph_id=graph_id(g),
        vertex_count=g.vertex_count,
        edges=[[i, j, m] for (i, j), m in g.multiplicity],
        multiplicity=multiplicity_label(g),
        order=order.kind,
        pdim_derivations=pd,
        is_free=free,
        derivation_betti=d_betti.to_json(),
        derivation_hilbert=p.ring.full_series(d_hs).to_json(),
        cohomology=cohom,
        codim_check=codim_check,
        bound_upper=upper,
        upper_tight=tight,
        bound_global=gb,
        bound_lower_cycle=lower,
        longest_induced_cycle=len(longest_induced_cycle_vertices(g)),
        kung_schenck_gap=gap,
        chordal=chordal,
        quasi_forest=quasi,
        blocks_are_cliques=verdict.blocks_are_cliques if verdict else False,
        vertex_separated_ordering=verdict.vertex_separated_ordering if verdict else False,
        totally_free_shape=classify_totally_free(g),
        consistency=consistency,
        violations=violations,
    )
