"""Clique complexes, their signed coboundary maps and leaf orderings of facets."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from gmpy2 import mpq

from .graphs import MultiGraph, maximal_cliques


@dataclass(frozen=True)
class CliqueComplex:
    """Faces of the clique complex, ``faces_by_dim[i]`` = sorted (i+1)-cliques."""

    faces_by_dim: tuple
    facets: tuple

    @property
    def dimension(self) -> int:
        return len(self.faces_by_dim) - 1

    @property
    def f_vector(self) -> tuple:
        return tuple(len(f) for f in self.faces_by_dim)

    def faces(self, i: int) -> tuple:
        if 0 <= i < len(self.faces_by_dim):
            return self.faces_by_dim[i]
        return ()

    def index(self, i: int) -> dict:
        return {f: k for k, f in enumerate(self.faces(i))}

    def to_json(self) -> dict:
        return {"f_vector": list(self.f_vector), "facets": [list(f) for f in self.facets]}


def build_clique_complex(g: MultiGraph) -> CliqueComplex:
    facets = maximal_cliques(g) if g.vertex_count else []
    faces: set = set()
    for f in facets:
        for k in range(1, len(f) + 1):
            faces.update(combinations(f, k))
    top = max((len(f) for f in faces), default=0)
    by_dim = tuple(tuple(sorted(f for f in faces if len(f) == k + 1)) for k in range(top))
    return CliqueComplex(by_dim, tuple(facets))


@dataclass(frozen=True)
class SignedIncidence:
    """Coboundary ``δ^i`` as a sparse {(row, col): ±1} map.

    Rows index the i-faces and columns the (i+1)-faces, as in the ordering
    of :class:`CliqueComplex`.
    """

    dim: int
    rows: tuple
    cols: tuple
    entries: dict

    def dense(self) -> list:
        return [[self.entries.get((r, c), 0) for c in range(len(self.cols))]
                for r in range(len(self.rows))]


def incidence_sign(face: tuple, coface: tuple) -> int:
    """Sign of ``face ⊂ coface`` in the coboundary.

    For a face of dimension >= 1 it is ``(-1)^t`` with ``t`` the 0-based
    position in ``coface`` of the vertex missing from ``face``.  Vertex-to-edge
    signs are +1 at the smaller endpoint and -1 at the larger one, which is
    the global negation of that rule in degree 0.
    """
    t = next(k for k, v in enumerate(coface) if v not in face)
    sign = -1 if t % 2 else 1
    return -sign if len(face) == 1 else sign


def coboundary(c: CliqueComplex, i: int) -> SignedIncidence:
    rows = c.faces(i) if i >= 0 else ()
    cols = c.faces(i + 1) if i >= 0 else ()
    ridx = {f: k for k, f in enumerate(rows)}
    entries = {}
    for col, tau in enumerate(cols):
        for k in range(len(tau)):
            sigma = tau[:k] + tau[k + 1:]
            entries[(ridx[sigma], col)] = incidence_sign(sigma, tau)
    return SignedIncidence(i, rows, cols, entries)


def rational_rank(rows: list) -> int:
    m = [[mpq(x) for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col] / m[rank][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def simplicial_cohomology(c: CliqueComplex) -> list:
    """Rational Betti numbers ``b_0, ..., b_dim`` of the clique complex."""
    ranks = [rational_rank(coboundary(c, i).dense()) if c.faces(i + 1) else 0
             for i in range(c.dimension + 1)]
    out = []
    for i, f in enumerate(c.f_vector):
        prev = ranks[i - 1] if i > 0 else 0
        out.append(f - ranks[i] - prev)
    return out


# -- leaf orderings ------------------------------------------------------------

def leaf_witness(facet: tuple, others) -> tuple | None:
    """A branch ``H`` making ``facet`` a leaf among ``others``; ``()`` if it is alone."""
    others = [h for h in others if h != facet]
    if not others:
        return ()
    f = set(facet)
    meets = [f & set(g) for g in others]
    for h in others:
        hf = f & set(h)
        if all(m <= hf for m in meets):
            return h
    return None


@dataclass(frozen=True)
class LeafOrdering:
    facets: tuple      # F_1, ..., F_k
    witnesses: tuple   # witness branch of F_i in <F_1..F_i> (() for F_1)


def leaf_ordering(c: CliqueComplex) -> LeafOrdering | None:
    """Greedy leaf ordering, built by peeling leaves off the end."""
    remaining = list(c.facets)
    rev, wit = [], []
    while remaining:
        for f in remaining:
            h = leaf_witness(f, remaining)
            if h is not None:
                break
        else:
            return None
        remaining.remove(f)
        rev.append(f)
        wit.append(h)
    return LeafOrdering(tuple(rev[::-1]), tuple(wit[::-1]))


def verify_leaf_ordering(order: LeafOrdering) -> bool:
    fs = list(order.facets)
    for i, (f, h) in enumerate(zip(fs, order.witnesses)):
        prefix = fs[: i + 1]
        if i == 0:
            if h != ():
                return False
            continue
        if h not in prefix[:-1]:
            return False
        hf = set(f) & set(h)
        if any(not (set(f) & set(g)) <= hf for g in prefix[:-1]):
            return False
    return True


def exhaustive_leaf_ordering_exists(facets) -> bool:
    """Search all orderings (memoized on the remaining set); for testing the greedy method."""
    @lru_cache(maxsize=None)
    def ok(rest: frozenset) -> bool:
        if len(rest) <= 1:
            return True
        return any(leaf_witness(f, rest) is not None and ok(rest - {f}) for f in rest)
    return ok(frozenset(facets))


def vertex_separated_leaf_ordering(c: CliqueComplex) -> bool:
    """Is there a leaf ordering where each facet meets its predecessors in <= 1 vertex?"""
    @lru_cache(maxsize=None)
    def ok(rest: frozenset) -> bool:
        if len(rest) <= 1:
            return True
        for f in rest:
            others = rest - {f}
            union = set().union(*others)
            if len(set(f) & union) <= 1 and leaf_witness(f, rest) is not None \
                    and ok(others):
                return True
        return False
    return ok(frozenset(c.facets))
