"""Chain complexes of generalized splines on a graph and the multi-derivation module.

Everything is computed over a polynomial ring attached to the graph.  With
``essential=True`` (the default) one vertex per connected component has its
coordinate set to zero.  The edge forms ``x_i - x_j`` only involve
differences, so this is a flat base change: Betti tables, projective
dimensions and codimensions are unchanged and Hilbert series pick up a
factor ``(1-t)^-c(G)``, which :meth:`GraphRing.full_series` restores.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import (GREVLEX, GradedMatrix, HilbertSeries, MonomialOrder, Polynomial,
                      PresentedModule, hilbert_series_from_betti, homology,
                      minimal_free_resolution, syzygies)
from .algebra.groebner import gb_of_matrix
from .algebra.modules import BettiTable, Resolution
from .cliques import CliqueComplex, build_clique_complex, coboundary
from .graphs import MultiGraph, connected_components


@dataclass(frozen=True)
class GraphRing:
    """Coordinates ``x_v`` of the vertices; ``var_of[v]`` is None for a zeroed root."""

    vertex_count: int
    nvars: int
    var_of: tuple
    essential: bool

    def x(self, v: int) -> Polynomial:
        k = self.var_of[v - 1]
        if k is None:
            return Polynomial.zero(self.nvars)
        return Polynomial.variable(k, self.nvars)

    def alpha(self, i: int, j: int) -> Polynomial:
        """The edge form ``x_i - x_j``."""
        return self.x(i) - self.x(j)

    def full_series(self, hs: HilbertSeries) -> HilbertSeries:
        """Hilbert series over ``Q[x_1..x_v]``."""
        return hs.extend(self.vertex_count - self.nvars)

    def names(self) -> list:
        inv = {k: v for v, k in enumerate(self.var_of, start=1) if k is not None}
        return [f"x{inv[k]}" for k in range(self.nvars)]


def graph_ring(g: MultiGraph, essential: bool = True) -> GraphRing:
    if not essential:
        return GraphRing(g.vertex_count, g.vertex_count, tuple(range(g.vertex_count)), False)
    roots = {max(c) for c in connected_components(g)}
    var_of, k = [], 0
    for v in g.vertices:
        if v in roots:
            var_of.append(None)
        else:
            var_of.append(k)
            k += 1
    return GraphRing(g.vertex_count, k, tuple(var_of), True)


@dataclass(frozen=True)
class EdgeLabel:
    """Generator ``(x_i - x_j)^m`` of the principal ideal on edge ``(i, j)``."""

    edge: tuple
    multiplicity: int
    generator: Polynomial


def edge_labels(g: MultiGraph, ring: GraphRing) -> dict:
    return {e: EdgeLabel(e, m, ring.alpha(*e) ** m) for e, m in g.multiplicity}


def face_edges(face: Sequence[int]) -> list:
    return [(face[a], face[b]) for a in range(len(face)) for b in range(a + 1, len(face))]


def face_ideal(g: MultiGraph, ring: GraphRing, face: Sequence[int]) -> list:
    """Generators of ``J(face)``: the powered edge forms of its edges (empty for a vertex)."""
    labels = edge_labels(g, ring)
    return [labels[e].generator for e in face_edges(face)]


@dataclass
class ModuleComplex:
    """Cochain complex ``terms[0] -> terms[1] -> ...``; ``maps[i]`` acts on generators."""

    terms: list
    maps: list
    nvars: int
    name: str = ""

    def __len__(self):
        return len(self.terms)

    def cohomology(self, i: int, order: MonomialOrder = GREVLEX) -> PresentedModule:
        if not 0 <= i < len(self.terms):
            return PresentedModule.zero(self.nvars)
        d_out = self.maps[i] if i < len(self.maps) else None
        target_rel = self.terms[i + 1].relations if d_out is not None else None
        d_in = self.maps[i - 1] if i > 0 else None
        return homology(self.terms[i], d_out, target_rel, d_in, order)

    def composition_lands_in_relations(self, order: MonomialOrder = GREVLEX) -> bool:
        """``maps[i+1] @ maps[i]`` maps into the relations, and each map preserves relations."""
        from .algebra.groebner import normal_form
        for i in range(len(self.maps)):
            target = self.terms[i + 1]
            res = gb_of_matrix(target.relations, order) if target.relations.col_degrees else None

            def inside(vecs):
                if res is None:
                    return all(not v for v in vecs)
                return all(not normal_form(v, res, self.nvars) for v in vecs)

            if not inside((self.maps[i] @ self.terms[i].relations).vectors()
                          if self.terms[i].relations.col_degrees else []):
                return False
            if i + 1 < len(self.maps):
                comp = self.maps[i + 1] @ self.maps[i]
                nxt = self.terms[i + 2]
                r2 = gb_of_matrix(nxt.relations, order) if nxt.relations.col_degrees else None
                for v in comp.vectors():
                    if v and (r2 is None or normal_form(v, r2, self.nvars)):
                        return False
        return True


def _incidence_matrix(c: CliqueComplex, i: int, nvars: int) -> GradedMatrix:
    """Map from the i-faces to the (i+1)-faces (transpose of the signed incidence)."""
    inc = coboundary(c, i)
    nrows, ncols = len(inc.cols), len(inc.rows)
    cols: list = [dict() for _ in range(ncols)]
    for (r, cc), s in inc.entries.items():
        cols[r][cc] = Polynomial.constant(s, nvars)
    return GradedMatrix(nvars, [0] * nrows, [0] * ncols, cols)


@dataclass
class SplineComplexes:
    graph: MultiGraph
    ring: GraphRing
    clique_complex: CliqueComplex
    R: ModuleComplex
    J: ModuleComplex
    RmodJ: ModuleComplex


def build_complexes(g: MultiGraph, essential: bool = True,
                    order: MonomialOrder = GREVLEX, with_j: bool = True) -> SplineComplexes:
    """Assemble ``R[G]``, ``J[G]`` and ``R/J[G]``.

    ``J[G]`` needs a presentation of every face ideal; pass ``with_j=False``
    to skip it when only ``R/J[G]`` is wanted.
    """
    ring = graph_ring(g, essential)
    n = ring.nvars
    cc = build_clique_complex(g)
    top = cc.dimension
    labels = edge_labels(g, ring)

    r_terms = [PresentedModule.free(n, [0] * len(cc.faces(i))) for i in range(top + 1)]
    r_maps = [_incidence_matrix(cc, i, n) for i in range(top)]

    q_terms = []
    for i in range(top + 1):
        parts = [PresentedModule.cyclic([labels[e].generator for e in face_edges(f)], n)
                 for f in cc.faces(i)]
        q_terms.append(PresentedModule.direct_sum(parts, n))
    q_maps = [_incidence_matrix(cc, i, n) for i in range(top)]

    j_terms, j_maps = [], []
    if with_j:
        gen_index = []
        for i in range(top + 1):
            index, degs, blocks = {}, [], []
            for f in cc.faces(i):
                edges = face_edges(f)
                for e in edges:
                    index[(f, e)] = len(degs)
                    degs.append(labels[e].multiplicity)
                if edges:
                    row = GradedMatrix(n, [0], [labels[e].multiplicity for e in edges],
                                       [{0: labels[e].generator} for e in edges])
                    syz = syzygies(row, order)
                    blocks.append(PresentedModule(syz.row_degrees, syz))
            gen_index.append(index)
            j_terms.append(PresentedModule.direct_sum(blocks, n) if blocks
                           else PresentedModule.zero(n))
        for i in range(top):
            inc = coboundary(cc, i)
            src, dst = gen_index[i], gen_index[i + 1]
            cols: list = [dict() for _ in range(len(src))]
            for (r, c), s in inc.entries.items():
                sigma, tau = inc.rows[r], inc.cols[c]
                for e in face_edges(sigma):
                    cols[src[(sigma, e)]][dst[(tau, e)]] = Polynomial.constant(s, n)
            j_maps.append(GradedMatrix(n, j_terms[i + 1].gen_degrees, j_terms[i].gen_degrees,
                                       cols))
    return SplineComplexes(
        g, ring, cc,
        ModuleComplex(r_terms, r_maps, n, "R"),
        ModuleComplex(j_terms, j_maps, n, "J"),
        ModuleComplex(q_terms, q_maps, n, "R/J"),
    )


# -- the derivation module via psi ------------------------------------------

def psi_matrix(g: MultiGraph, essential: bool = False) -> GradedMatrix:
    """Rows are edges; v derivation columns (degree 0) then one column per edge.

    Row ``e = (i, j)`` reads ``θ_i - θ_j + (x_i - x_j)^{m_e} c_e``; the edge
    column has degree ``m_e`` so every entry is homogeneous.
    """
    ring = graph_ring(g, essential)
    n = ring.nvars
    edges = g.edges
    v = g.vertex_count
    cols: list = [dict() for _ in range(v + len(edges))]
    for r, (i, j) in enumerate(edges):
        cols[i - 1][r] = Polynomial.constant(1, n)
        cols[j - 1][r] = Polynomial.constant(-1, n)
        cols[v + r][r] = ring.alpha(i, j) ** g.mult(i, j)
    col_degs = [0] * v + [g.mult(i, j) for i, j in edges]
    return GradedMatrix(n, [0] * len(edges), col_degs, cols)


def derivation_module(g: MultiGraph, essential: bool = True,
                      order: MonomialOrder = GREVLEX) -> PresentedModule:
    """``D(A_G, m)`` as the projection of ``ker ψ`` to the derivation coordinates."""
    v = g.vertex_count
    ring = graph_ring(g, essential)
    if not g.edges:
        return PresentedModule.free(ring.nvars, [0] * v)
    psi = psi_matrix(g, essential)
    ker = syzygies(psi, order)
    proj = ker.submatrix(rows=range(v))
    return PresentedModule.image(proj, order)


# -- long exact sequence bookkeeping ------------------------------------------

def _term_series(m: PresentedModule, order) -> HilbertSeries:
    return hilbert_series_from_betti(minimal_free_resolution(m, order).betti, m.nvars)


@dataclass
class LESReport:
    """Hilbert-series bookkeeping for ``0 -> J -> R -> R/J -> 0``."""

    cohomology_series: dict = field(default_factory=dict)  # (complex, i) -> HilbertSeries
    euler_ok: dict = field(default_factory=dict)           # complex -> bool
    les_ok: bool = True
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.les_ok and all(self.euler_ok.values())

    def to_json(self, ring: GraphRing | None = None) -> dict:
        def conv(hs):
            return (ring.full_series(hs) if ring else hs).to_json()
        return {
            "cohomology": [{"complex": k, "degree": i, "series": conv(hs)}
                           for (k, i), hs in sorted(self.cohomology_series.items())],
            "euler_ok": self.euler_ok,
            "les_ok": self.les_ok,
            "mismatches": self.mismatches,
        }


def long_exact_sequence_check(sc: SplineComplexes, order: MonomialOrder = GREVLEX) -> LESReport:
    """Euler characteristics of each complex and the alternating LES identity."""
    n = sc.ring.nvars
    rep = LESReport()
    zero = HilbertSeries.from_dict({}, n)
    totals = {}
    for name, cx in (("J", sc.J), ("R", sc.R), ("R/J", sc.RmodJ)):
        chi_h, chi_c = zero, zero
        for i in range(len(cx)):
            h = cx.cohomology(i, order)
            hs = _term_series(h, order)
            rep.cohomology_series[(name, i)] = hs
            t = _term_series(cx.terms[i], order)
            if i % 2:
                chi_h, chi_c = chi_h - hs, chi_c - t
            else:
                chi_h, chi_c = chi_h + hs, chi_c + t
        rep.euler_ok[name] = chi_h.same_as(chi_c)
        if not rep.euler_ok[name]:
            rep.mismatches.append(f"Euler characteristic of {name}: {chi_h} != {chi_c}")
        totals[name] = chi_h
    les = totals["J"] - totals["R"] + totals["R/J"]
    rep.les_ok = les.is_zero()
    if not rep.les_ok:
        rep.mismatches.append(f"alternating LES sum is {les}, expected 0")
    return rep
