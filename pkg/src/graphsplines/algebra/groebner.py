"""Buchberger's algorithm for submodules of graded free modules.

Module elements are dicts ``{(component, exponent): coefficient}``.  The
engine processes S-pairs and input generators by (sugar) degree.  For
homogeneous input this yields, besides a Groebner basis:

* the indices of a minimal generating subset of the input (an input is kept
  iff it does not reduce to zero against the basis truncated at its degree);
* with ``track=True``, generators of the syzygy module of the input, read off
  from S-pairs reducing to zero (Schreyer) plus the relations expressing the
  redundant inputs.

Pair selection uses the Gebauer-Moeller chain criteria.  The product
criterion is never applied: it is invalid for vectors, and the pairs it would
skip carry syzygies that are needed.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import count
from typing import Sequence

from gmpy2 import mpq

from .matrix import GradedMatrix, Vector
from .polynomial import (GREVLEX, MonomialOrder, mono_div, mono_divides, mono_lcm,
                         mono_mul)


class ModuleOrder:
    """Term order on a free module ``⊕ S(-shift_c)``.

    grevlex: degree (shift included), then grevlex, then lower component
    first.  lex: lex on the monomial, then component.  ``nk`` returns a
    negated key, so the largest term has the smallest ``nk``.
    """

    def __init__(self, order: MonomialOrder, nvars: int, shifts: Sequence[int]):
        self.order = order
        self.nvars = nvars
        self.shifts = tuple(shifts)
        self._cache: dict = {}

    def nk(self, term) -> tuple:
        k = self._cache.get(term)
        if k is None:
            c, e = term
            if self.order.perm is not None:
                e = tuple(e[i] for i in self.order.perm)
            if self.order.kind == "lex":
                k = tuple(-x for x in e) + (c,)
            else:
                k = (-(sum(e) + self.shifts[c]),) + tuple(reversed(e)) + (c,)
            self._cache[term] = k
        return k

    def lead(self, v: Vector):
        return min(v, key=self.nk)

    def sorted_terms(self, v: Vector) -> list:
        """Terms as ``(comp, exp, coeff)``, largest first."""
        return [(t[0], t[1], v[t]) for t in sorted(v, key=self.nk)]


def is_homogeneous_vector(v: Vector, shifts: Sequence[int]) -> bool:
    return len({sum(e) + shifts[c] for (c, e) in v}) <= 1


def _sub_scaled(target: dict, src: dict, q, mono=None):
    """target -= q * mono * src, in place."""
    for (c, e), x in src.items():
        t = (c, e if mono is None else mono_mul(e, mono))
        v = target.get(t, 0) - q * x
        if v:
            target[t] = v
        else:
            target.pop(t, None)


@dataclass
class GBResult:
    """Output of :func:`groebner_engine`."""

    basis: list            # list of Vector
    leads: list            # (comp, exp) per basis element
    sugar: list
    mingens: list          # input indices forming a minimal generating set
    pair_syzygies: list = field(default_factory=list)   # (Vector, degree) over input tags
    input_syzygies: list = field(default_factory=list)  # redundancy relations
    homogeneous: bool = True
    order: ModuleOrder | None = None

    @property
    def syzygies(self) -> list:
        return self.pair_syzygies + self.input_syzygies


class _Engine:
    def __init__(self, nvars, shifts, order, track):
        self.nvars = nvars
        self.ord = ModuleOrder(order, nvars, shifts)
        self.shifts = tuple(shifts)
        self.track = track
        self.basis: list = []      # sorted term lists
        self.vecs: list = []
        self.leads: list = []
        self.sugar: list = []
        self.reps: list = []
        self.by_comp: dict = {}
        self.pairs: dict = {}
        self.heap: list = []
        self.counter = count()
        self.pair_syz: list = []

    def find_reducer(self, c, e):
        for le, idx in self.by_comp.get(c, ()):
            if mono_divides(le, e):
                return idx
        return None

    def reduce(self, f: dict, quot: list | None) -> dict:
        nk = self.ord.nk
        heap = [(nk(t), t) for t in f]
        heapq.heapify(heap)
        rem = {}
        while heap:
            _, t = heapq.heappop(heap)
            c = f.pop(t, None)
            if c is None:
                continue
            gi = self.find_reducer(t[0], t[1])
            if gi is None:
                rem[t] = c
                continue
            terms = self.basis[gi]
            q = c / terms[0][2]
            mono = mono_div(t[1], terms[0][1])
            for gc, ge, gv in terms[1:]:
                nt = (gc, mono_mul(ge, mono))
                v = f.get(nt)
                if v is None:
                    f[nt] = -q * gv
                    heapq.heappush(heap, (nk(nt), nt))
                else:
                    v -= q * gv
                    if v:
                        f[nt] = v
                    else:
                        del f[nt]
            if quot is not None:
                quot.append((gi, mono, q))
        return rem

    def apply_quotients(self, rep: dict, quot: list) -> dict:
        for gi, mono, q in quot:
            _sub_scaled(rep, self.reps[gi], q, mono)
        return rep

    def add(self, v: dict, rep: dict | None, sugar: int):
        terms = self.ord.sorted_terms(v)
        lc = terms[0][2]
        if lc != 1:
            inv = 1 / lc
            terms = [(c, e, x * inv) for c, e, x in terms]
            v = {(c, e): x for c, e, x in terms}
            if rep is not None:
                rep = {t: x * inv for t, x in rep.items()}
        t = len(self.basis)
        self.basis.append(terms)
        self.vecs.append(v)
        lead = (terms[0][0], terms[0][1])
        self.leads.append(lead)
        self.sugar.append(sugar)
        self.reps.append(rep)
        self.update_pairs(t)
        self.by_comp.setdefault(lead[0], []).append((lead[1], t))

    def update_pairs(self, t: int):
        ct, et = self.leads[t]
        # Gebauer-Moeller B_k: old pairs made redundant by the new lead.
        for pid, (i, j, L) in list(self.pairs.items()):
            if self.leads[i][0] != ct or not mono_divides(et, L):
                continue
            if mono_lcm(self.leads[i][1], et) != L and mono_lcm(self.leads[j][1], et) != L:
                del self.pairs[pid]
        cands: dict = {}
        for ei, i in self.by_comp.get(ct, ()):
            cands.setdefault(mono_lcm(ei, et), i)
        lcms = list(cands)
        for L in lcms:
            # criteria M and F: keep one pair per minimal lcm
            if any(L2 != L and mono_divides(L2, L) for L2 in lcms):
                continue
            i = cands[L]
            sug = max(self.sugar[i] + sum(L) - sum(self.leads[i][1]),
                      self.sugar[t] + sum(L) - sum(et))
            pid = next(self.counter)
            self.pairs[pid] = (i, t, L)
            heapq.heappush(self.heap, (sug, 0, self.ord.nk((ct, L)), pid))

    def spair(self, i, j, L):
        mi = mono_div(L, self.leads[i][1])
        mj = mono_div(L, self.leads[j][1])
        f: dict = {}
        for c, e, x in self.basis[i][1:]:
            f[(c, mono_mul(e, mi))] = x
        _sub_scaled(f, {(c, e): x for c, e, x in self.basis[j][1:]}, 1, mj)
        rep = None
        if self.track:
            rep = {}
            _sub_scaled(rep, self.reps[i], -1, mi)
            _sub_scaled(rep, self.reps[j], 1, mj)
        return f, rep


def groebner_engine(vectors: Sequence[Vector], nvars: int, shifts: Sequence[int],
                    order: MonomialOrder = GREVLEX, degrees: Sequence[int] | None = None,
                    track: bool = False) -> GBResult:
    """Run Buchberger's algorithm on ``vectors`` in the free module with ``shifts``.

    ``degrees`` gives the degree of each input (needed only for zero inputs
    when tracking syzygies).
    """
    eng = _Engine(nvars, shifts, order, track)
    homogeneous = all(is_homogeneous_vector(v, shifts) for v in vectors if v)
    input_syz = []
    for j, v in enumerate(vectors):
        if not v:
            if track:
                d = degrees[j] if degrees is not None else 0
                input_syz.append(({(j, (0,) * nvars): mpq(1)}, d))
            continue
        sug = max(sum(e) + shifts[c] for (c, e) in v)
        heapq.heappush(eng.heap, (sug, 1, j, j))
    mingens = []
    while eng.heap:
        sug, kind, _, ident = heapq.heappop(eng.heap)
        if kind == 0:
            pair = eng.pairs.pop(ident, None)
            if pair is None:
                continue
            i, j, L = pair
            f, rep = eng.spair(i, j, L)
            quot = [] if track else None
            r = eng.reduce(f, quot)
            if track:
                eng.apply_quotients(rep, quot)
            if r:
                eng.add(r, rep, sug)
            elif track and rep:
                eng.pair_syz.append((rep, sug))
        else:
            f = dict(vectors[ident])
            quot = [] if track else None
            r = eng.reduce(f, quot)
            rep = None
            if track:
                rep = eng.apply_quotients({(ident, (0,) * nvars): mpq(1)}, quot)
            if r:
                mingens.append(ident)
                eng.add(r, rep, sug)
            elif track:
                input_syz.append((rep, sug))
    return GBResult(eng.vecs, eng.leads, eng.sugar, mingens, eng.pair_syz, input_syz,
                    homogeneous, eng.ord)


# -- user-facing operations ----------------------------------------------------

def normal_form(v: Vector, result: GBResult, nvars: int) -> Vector:
    """Remainder of ``v`` on division by the basis in ``result``."""
    eng = _Engine(nvars, result.order.shifts, result.order.order, False)
    eng.ord = result.order
    for idx, (vec, lead) in enumerate(zip(result.basis, result.leads)):
        eng.basis.append(result.order.sorted_terms(vec))
        eng.by_comp.setdefault(lead[0], []).append((lead[1], idx))
    return eng.reduce(dict(v), None)


def reduced_basis(result: GBResult, nvars: int) -> list:
    """Interreduce a Groebner basis: minimal leads, reduced tails, monic."""
    ordr = result.order
    keep = []
    for i, (ci, ei) in enumerate(result.leads):
        redundant = False
        for j, (cj, ej) in enumerate(result.leads):
            if i == j or ci != cj or not mono_divides(ej, ei):
                continue
            if ej != ei or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(i)
    out = []
    for i in keep:
        others = GBResult([result.basis[j] for j in keep if j != i],
                          [result.leads[j] for j in keep if j != i], [], [], order=ordr)
        v = result.basis[i]
        lead = result.leads[i]
        tail = {t: x for t, x in v.items() if t != lead}
        r = normal_form(tail, others, nvars) if others.basis else tail
        lc = v[lead]
        r = {t: x / lc for t, x in r.items()}
        r[lead] = mpq(1)
        out.append(r)
    out.sort(key=lambda w: ordr.nk(ordr.lead(w)), reverse=True)
    return out


def buchberger(vectors: Sequence[Vector], nvars: int, shifts: Sequence[int] | None = None,
               order: MonomialOrder = GREVLEX) -> list:
    """Reduced Groebner basis of the submodule generated by ``vectors``.

    For ideals, pass vectors with a single component 0.  The empty input
    gives the empty basis.
    """
    if shifts is None:
        rank = 1 + max((c for v in vectors for (c, _) in v), default=0)
        shifts = (0,) * rank
    res = groebner_engine([v for v in vectors if v], nvars, shifts, order)
    if not res.basis:
        return []
    return reduced_basis(res, nvars)


def s_vector(f: Vector, g: Vector, ordr: ModuleOrder):
    """S-vector of ``f`` and ``g``, or None when the leads sit in different components."""
    cf, ef = ordr.lead(f)
    cg, eg = ordr.lead(g)
    if cf != cg:
        return None
    L = mono_lcm(ef, eg)
    out: dict = {}
    _sub_scaled(out, f, -1 / f[(cf, ef)], mono_div(L, ef))
    _sub_scaled(out, g, 1 / g[(cg, eg)], mono_div(L, eg))
    return out


def gb_of_matrix(m: GradedMatrix, order: MonomialOrder = GREVLEX, track: bool = False) -> GBResult:
    return groebner_engine(m.vectors(), m.nvars, m.row_degrees, order,
                           degrees=m.col_degrees, track=track)


def minimal_generators(m: GradedMatrix, order: MonomialOrder = GREVLEX) -> GradedMatrix:
    """Minimal homogeneous generating subset of the columns of ``m``."""
    res = gb_of_matrix(m, order)
    return m.submatrix(cols=sorted(res.mingens))


def syzygies(m: GradedMatrix, order: MonomialOrder = GREVLEX, minimal: bool = True) -> GradedMatrix:
    """Matrix whose columns generate the kernel of ``m`` (columns are elements)."""
    res = gb_of_matrix(m, order, track=True)
    ncols = len(m.col_degrees)
    vecs = [v for v, _ in res.syzygies]
    degs = [d for _, d in res.syzygies]
    out = GradedMatrix.from_vectors(m.nvars, m.col_degrees, degs, vecs)
    if minimal and vecs:
        out = minimal_generators(out, order)
    elif not vecs:
        out = GradedMatrix(m.nvars, m.col_degrees, [], [])
    assert len(out.row_degrees) == ncols
    return out


def contains(m: GradedMatrix, v: Vector, order: MonomialOrder = GREVLEX) -> bool:
    """Membership of ``v`` in the column span of ``m``."""
    res = gb_of_matrix(m, order)
    return not normal_form(v, res, m.nvars)


def same_submodule(a: GradedMatrix, b: GradedMatrix, order: MonomialOrder = GREVLEX) -> bool:
    """Column spans of ``a`` and ``b`` agree (checked both ways by normal forms)."""
    ra = gb_of_matrix(a, order)
    rb = gb_of_matrix(b, order)
    return (all(not normal_form(v, ra, a.nvars) for v in b.vectors())
            and all(not normal_form(v, rb, b.nvars) for v in a.vectors()))
