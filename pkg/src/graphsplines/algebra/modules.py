"""Finitely presented graded modules, minimal free resolutions and invariants."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from gmpy2 import mpq

from .groebner import (GBResult, gb_of_matrix, groebner_engine, is_homogeneous_vector,
                       minimal_generators)
from .matrix import DegreeError, GradedMatrix, Vector
from .polynomial import GREVLEX, MonomialOrder, Polynomial, mono_mul

CODIM_INFINITE = math.inf  # codimension of the zero module


@dataclass(frozen=True)
class PresentedModule:
    """``coker(relations)``: generators of the given degrees modulo the relation columns."""

    gen_degrees: tuple
    relations: GradedMatrix

    def __post_init__(self):
        object.__setattr__(self, "gen_degrees", tuple(self.gen_degrees))
        if self.relations.row_degrees != self.gen_degrees:
            raise DegreeError("relation rows must match generator degrees")

    @property
    def nvars(self) -> int:
        return self.relations.nvars

    @property
    def num_generators(self) -> int:
        return len(self.gen_degrees)

    @classmethod
    def free(cls, nvars: int, degrees: Sequence[int]) -> PresentedModule:
        """The free module ``⊕ S(-d)``."""
        return cls(tuple(degrees), GradedMatrix(nvars, degrees, []))

    @classmethod
    def zero(cls, nvars: int) -> PresentedModule:
        return cls.free(nvars, [])

    @classmethod
    def cyclic(cls, ideal: Sequence[Polynomial], nvars: int, shift: int = 0) -> PresentedModule:
        """``(S/I)(-shift)`` for the ideal generated by ``ideal``."""
        gens = [p for p in ideal if p]
        cols = [{0: p} for p in gens]
        degs = [p.degree() + shift for p in gens]
        return cls((shift,), GradedMatrix(nvars, [shift], degs, cols))

    @classmethod
    def direct_sum(cls, mods: Sequence[PresentedModule], nvars: int) -> PresentedModule:
        degs, cols, cdegs = [], [], []
        offset = 0
        for m in mods:
            for col, d in zip(m.relations.columns, m.relations.col_degrees):
                cols.append({i + offset: p for i, p in col.items()})
                cdegs.append(d)
            degs.extend(m.gen_degrees)
            offset += m.num_generators
        return cls(tuple(degs), GradedMatrix(nvars, degs, cdegs, cols, check=False))

    @classmethod
    def image(cls, m: GradedMatrix, order: MonomialOrder = GREVLEX) -> PresentedModule:
        """The submodule spanned by the columns of ``m``, minimally presented."""
        from .groebner import syzygies
        gens = minimal_generators(m, order)
        return cls(gens.col_degrees, syzygies(gens, order))

    def is_homogeneous(self) -> bool:
        try:
            self.relations.check_degrees()
        except DegreeError:
            return False
        return True

    def is_zero(self) -> bool:
        return prune(self).num_generators == 0

    def to_json(self, names=None) -> dict:
        return {"gen_degrees": list(self.gen_degrees),
                "relations": self.relations.to_json(names)}


def _poly_at_row(v: Vector, i: int) -> dict:
    return {e: c for (r, e), c in v.items() if r == i}


def prune(m: PresentedModule) -> PresentedModule:
    """Minimal presentation: eliminate generators killed by a unit entry.

    Each relation with a constant coefficient ``c`` on generator ``i`` lets us
    solve for that generator; it is substituted into the other relations and
    both are dropped.  Zero relations are discarded.
    """
    nvars = m.nvars
    zero = (0,) * nvars
    degs = list(m.gen_degrees)
    rels = [v for v in m.relations.vectors() if v]
    rel_degs = [d for v, d in zip(m.relations.vectors(), m.relations.col_degrees) if v]
    alive = set(range(len(degs)))
    while True:
        pivot = None
        for k, v in enumerate(rels):
            for (i, e), c in v.items():
                if e == zero:
                    if pivot is None or len(v) < len(rels[pivot[0]]):
                        pivot = (k, i, c)
                    break
        if pivot is None:
            break
        k, i, c = pivot
        r = rels[k]
        new_rels, new_degs = [], []
        for kk, s in enumerate(rels):
            if kk == k:
                continue
            si = _poly_at_row(s, i)
            if si:
                s = dict(s)
                for e1, c1 in si.items():
                    q = c1 / c
                    for (row, e2), c2 in r.items():
                        t = (row, mono_mul(e1, e2))
                        val = s.get(t, 0) - q * c2
                        if val:
                            s[t] = val
                        else:
                            s.pop(t, None)
            if s:
                new_rels.append(s)
                new_degs.append(rel_degs[kk])
        rels, rel_degs = new_rels, new_degs
        alive.discard(i)
    keep = sorted(alive)
    pos = {i: k for k, i in enumerate(keep)}
    rels = [{(pos[r], e): c for (r, e), c in v.items()} for v in rels]
    new_gen_degs = [degs[i] for i in keep]
    mat = GradedMatrix.from_vectors(nvars, new_gen_degs, rel_degs, rels)
    return PresentedModule(tuple(new_gen_degs), mat)


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers ``betti[(i, j)]``; ``pdim`` is None for the zero module."""

    betti: dict
    pdim: int | None

    @classmethod
    def from_degrees(cls, degrees_per_step: Sequence[Sequence[int]]) -> BettiTable:
        betti: dict = {}
        for i, degs in enumerate(degrees_per_step):
            for d in degs:
                betti[(i, d)] = betti.get((i, d), 0) + 1
        pdim = max((i for (i, _), b in betti.items() if b), default=None)
        return cls(betti, pdim)

    def total(self, i: int) -> int:
        return sum(b for (k, _), b in self.betti.items() if k == i)

    @property
    def totals(self) -> list:
        if self.pdim is None:
            return []
        return [self.total(i) for i in range(self.pdim + 1)]

    def degrees(self, i: int) -> list:
        return sorted(d for (k, d), b in self.betti.items() if k == i for _ in range(b))

    def to_json(self) -> dict:
        return {
            "pdim": self.pdim,
            "betti": [[i, j, b] for (i, j), b in sorted(self.betti.items())],
        }

    def format(self) -> str:
        """Macaulay2-style table: rows j - i, columns i."""
        if self.pdim is None:
            return "0"
        rows = sorted({j - i for (i, j) in self.betti})
        cols = range(self.pdim + 1)
        width = max(len(str(b)) for b in self.betti.values()) + 1
        lines = ["     " + "".join(str(i).rjust(width) for i in cols),
                 "total:" + "".join(str(self.total(i)).rjust(width) for i in cols)[1:]]
        for r in rows:
            cells = "".join(
                (str(self.betti[(i, r + i)]) if self.betti.get((i, r + i)) else ".").rjust(width)
                for i in cols)
            lines.append(f"{r:>4}:" + cells)
        return "\n".join(lines)


@dataclass
class Resolution:
    """Minimal graded free resolution ``F_0 <- F_1 <- ...``; ``maps[i]`` is ``F_{i+1} -> F_i``."""

    module: PresentedModule
    maps: list
    betti: BettiTable
    ranks: list = field(default_factory=list)

    @property
    def pdim(self) -> int | None:
        return self.betti.pdim


def minimal_free_resolution(m: PresentedModule, order: MonomialOrder = GREVLEX) -> Resolution:
    """Minimal graded free resolution of a homogeneous presented module."""
    if not m.is_homogeneous():
        raise DegreeError("minimal_free_resolution needs a homogeneous module")
    m = prune(m)
    n = m.nvars
    if m.num_generators == 0:
        return Resolution(m, [], BettiTable({}, None))
    shifts = list(m.gen_degrees)
    degs_per_step = [shifts]
    vecs = [v for v in m.relations.vectors()]
    coldegs = list(m.relations.col_degrees)
    maps = []
    while vecs:
        res = groebner_engine(vecs, n, shifts, order, degrees=coldegs, track=True)
        ming = sorted(res.mingens)
        if not ming:
            break
        new_shifts = [coldegs[j] for j in ming]
        maps.append(GradedMatrix.from_vectors(n, shifts, new_shifts, [vecs[j] for j in ming]))
        degs_per_step.append(new_shifts)
        pos = {j: k for k, j in enumerate(ming)}
        vecs = [{(pos[c], e): x for (c, e), x in s.items()} for s, _ in res.pair_syzygies]
        coldegs = [d for _, d in res.pair_syzygies]
        shifts = new_shifts
    betti = BettiTable.from_degrees(degs_per_step)
    return Resolution(m, maps, betti, [len(d) for d in degs_per_step])


# -- Hilbert series ------------------------------------------------------------

@dataclass(frozen=True)
class HilbertSeries:
    """``numerator(t) / (1 - t)^nvars``; the numerator may carry negative powers."""

    numerator: tuple  # sorted ((degree, coefficient), ...), nonzero coefficients
    nvars: int

    @classmethod
    def from_dict(cls, num: dict, nvars: int) -> HilbertSeries:
        return cls(tuple(sorted((d, c) for d, c in num.items() if c)), nvars)

    def num_dict(self) -> dict:
        return dict(self.numerator)

    def is_zero(self) -> bool:
        return not self.numerator

    def pole_order(self) -> int:
        """Order of the pole at ``t = 1``: the Krull dimension (-1 for zero)."""
        if self.is_zero():
            return -1
        poly = self.num_dict()
        k = 0
        while True:
            if sum(poly.values()) != 0:
                return self.nvars - k
            poly = _divide_one_minus_t(poly)
            k += 1

    def reduced(self) -> tuple:
        """Cancel common ``(1 - t)`` factors: ``(numerator dict, denominator exponent)``."""
        poly = self.num_dict()
        k = self.nvars
        while poly and k > 0 and sum(poly.values()) == 0:
            poly = _divide_one_minus_t(poly)
            k -= 1
        return poly, k

    def coefficients(self, upto: int) -> list:
        """Hilbert function values for degrees ``0..upto`` (series expansion)."""
        out = []
        num = self.num_dict()
        for d in range(upto + 1):
            total = 0
            for a, c in num.items():
                k = d - a
                if k >= 0:
                    total += c * (math.comb(k + self.nvars - 1, self.nvars - 1)
                                  if self.nvars else (1 if k == 0 else 0))
            out.append(total)
        return out

    def extend(self, extra: int) -> HilbertSeries:
        """Series after adjoining ``extra`` free variables."""
        return HilbertSeries(self.numerator, self.nvars + extra)

    def __add__(self, other: HilbertSeries) -> HilbertSeries:
        a, b = self.num_dict(), other.num_dict()
        if self.nvars > other.nvars:
            return self + HilbertSeries.from_dict(_times_one_minus_t(b, self.nvars - other.nvars),
                                                  self.nvars)
        if other.nvars > self.nvars:
            return other + self
        out = dict(a)
        for d, c in b.items():
            out[d] = out.get(d, 0) + c
        return HilbertSeries.from_dict(out, self.nvars)

    def __neg__(self):
        return HilbertSeries(tuple((d, -c) for d, c in self.numerator), self.nvars)

    def __sub__(self, other):
        return self + (-other)

    def same_as(self, other: HilbertSeries) -> bool:
        return (self - other).is_zero()

    def to_json(self) -> dict:
        red, k = self.reduced()
        return {
            "numerator": [[d, c] for d, c in self.numerator],
            "denominator_exponent": self.nvars,
            "reduced_numerator": [[d, c] for d, c in sorted(red.items()) if c],
            "reduced_denominator_exponent": k,
        }

    def __str__(self):
        def show(num):
            if not num:
                return "0"
            parts = []
            for d, c in sorted(num.items()):
                mono = "" if d == 0 else ("t" if d == 1 else f"t^{d}")
                coef = str(abs(c)) if (abs(c) != 1 or not mono) else ""
                parts.append(("-" if c < 0 else "+", coef + mono))
            s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
            return s + "".join(f" {sg} {b}" for sg, b in parts[1:])
        num, k = self.reduced()
        return f"({show(num)})/(1-t)^{k}"


def _divide_one_minus_t(poly: dict) -> dict:
    if not poly:
        return {}
    lo, hi = min(poly), max(poly)
    out = {}
    acc = 0
    for d in range(lo, hi):
        acc += poly.get(d, 0)
        if acc:
            out[d] = acc
    return out


def _times_one_minus_t(poly: dict, k: int) -> dict:
    for _ in range(k):
        out: dict = {}
        for d, c in poly.items():
            out[d] = out.get(d, 0) + c
            out[d + 1] = out.get(d + 1, 0) - c
        poly = {d: c for d, c in out.items() if c}
    return poly


def hilbert_series_from_betti(betti: BettiTable, nvars: int) -> HilbertSeries:
    num: dict = {}
    for (i, j), b in betti.betti.items():
        num[j] = num.get(j, 0) + (-1) ** i * b
    return HilbertSeries.from_dict(num, nvars)


def _minimalize(gens) -> tuple:
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(sorted(out))


@lru_cache(maxsize=100_000)
def _monomial_numerator(gens: tuple) -> tuple:
    """K-polynomial of ``S/I`` for a minimal monomial generating set (Bigatti pivots)."""
    if not gens:
        return ((0, 1),)
    if any(not any(g) for g in gens):
        return ()
    mixed = [g for g in gens if sum(1 for x in g if x) > 1]
    if not mixed:
        poly = {0: 1}
        for g in gens:
            poly = _poly_mul(poly, {0: 1, sum(g): -1})
        return tuple(sorted(poly.items()))
    n = len(gens[0])
    # pivot on the variable occurring in the most mixed generators
    var = max(range(n), key=lambda i: sum(1 for g in mixed if g[i]))
    exps = sorted(g[var] for g in mixed if g[var])
    e = exps[len(exps) // 2]
    pivot = tuple(e if i == var else 0 for i in range(n))
    plus = _minimalize([g for g in gens] + [pivot])
    colon = _minimalize([tuple(max(a - b, 0) for a, b in zip(g, pivot)) for g in gens])
    left = dict(_monomial_numerator(plus))
    right = dict(_monomial_numerator(colon))
    out = dict(left)
    for d, c in right.items():
        out[d + e] = out.get(d + e, 0) + c
    return tuple(sorted((d, c) for d, c in out.items() if c))


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for d1, c1 in a.items():
        for d2, c2 in b.items():
            out[d1 + d2] = out.get(d1 + d2, 0) + c1 * c2
    return {d: c for d, c in out.items() if c}


def monomial_hilbert_numerator(gens: Sequence[tuple]) -> dict:
    """K-polynomial of ``S/I`` for a monomial ideal given by exponent vectors."""
    return dict(_monomial_numerator(_minimalize(gens)))


def initial_ideals(m: PresentedModule, order: MonomialOrder = GREVLEX) -> list:
    """Per generator, the minimal lead monomials of the relation module."""
    res = gb_of_matrix(m.relations, order) if m.relations.col_degrees else None
    per = [[] for _ in m.gen_degrees]
    if res is not None:
        for c, e in res.leads:
            per[c].append(e)
    return [_minimalize(g) for g in per]


def hilbert_series_from_initial(m: PresentedModule, order: MonomialOrder = GREVLEX) -> HilbertSeries:
    """Hilbert series by counting standard monomials of the initial module."""
    num: dict = {}
    for d, gens in zip(m.gen_degrees, initial_ideals(m, order)):
        for a, c in monomial_hilbert_numerator(gens).items():
            num[a + d] = num.get(a + d, 0) + c
    return HilbertSeries.from_dict(num, m.nvars)


def hilbert_series(m: PresentedModule, order: MonomialOrder = GREVLEX,
                   resolution: Resolution | None = None) -> HilbertSeries:
    """Hilbert series from the Betti table (alternating sum)."""
    if resolution is None:
        resolution = minimal_free_resolution(m, order)
    return hilbert_series_from_betti(resolution.betti, m.nvars)


def monomial_dimension(gens: Sequence[tuple], nvars: int) -> int:
    """Krull dimension of ``S/I`` via maximal independent variable sets; -1 if ``I = S``."""
    gens = _minimalize(gens)
    if any(not any(g) for g in gens):
        return -1
    supports = [frozenset(i for i, x in enumerate(g) if x) for g in gens]
    for size in range(nvars, -1, -1):
        for U in combinations(range(nvars), size):
            U = frozenset(U)
            if all(not s <= U for s in supports):
                return size
    return 0


def krull_dimension(m: PresentedModule, order: MonomialOrder = GREVLEX) -> int:
    """Dimension of the support; -1 for the zero module."""
    m = prune(m)
    if m.num_generators == 0:
        return -1
    return max(monomial_dimension(g, m.nvars) for g in initial_ideals(m, order))


def codimension(m: PresentedModule, order: MonomialOrder = GREVLEX):
    """``nvars - dim``; :data:`CODIM_INFINITE` for the zero module."""
    d = krull_dimension(m, order)
    if d < 0:
        return CODIM_INFINITE
    return m.nvars - d


# -- Fitting ideals ------------------------------------------------------------

def _det(rows: list, nvars: int) -> Polynomial:
    n = len(rows)
    if n == 0:
        return Polynomial.constant(1, nvars)
    if n == 1:
        return rows[0][0]
    total = Polynomial.zero(nvars)
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            term = rows[0][j] * _det(minor, nvars)
            total = total + term if j % 2 == 0 else total - term
    return total


def fitting_ideal(m: PresentedModule, k: int = 0) -> list:
    """Generators of the ``k``-th Fitting ideal (minors of size ``r - k``).

    Cofactor expansion; intended for small presentations only.
    """
    r = m.num_generators
    size = r - k
    if size <= 0:
        return [Polynomial.constant(1, m.nvars)]
    cols = len(m.relations.col_degrees)
    if cols < size:
        return []
    rows = m.relations.to_rows()
    out = []
    for rsel in combinations(range(r), size):
        for csel in combinations(range(cols), size):
            d = _det([[rows[i][j] for j in csel] for i in rsel], m.nvars)
            if d:
                out.append(d)
    return out


def codimension_via_fitting(m: PresentedModule, order: MonomialOrder = GREVLEX):
    """Codimension of ``S/Fitt_0(M)``, which has the same radical as ``ann(M)``."""
    m = prune(m)
    if m.num_generators == 0:
        return CODIM_INFINITE
    gens = fitting_ideal(m, 0)
    return codimension(PresentedModule.cyclic(gens, m.nvars), order)


# -- subquotients ------------------------------------------------------------

def _project(vecs, ncomp):
    out = []
    for v, d in vecs:
        w = {t: c for t, c in v.items() if t[0] < ncomp}
        if w:
            out.append((w, d))
    return out


def kernel_into_quotient(d: GradedMatrix, target_relations: GradedMatrix,
                         order: MonomialOrder = GREVLEX) -> GradedMatrix:
    """Minimal generators of ``{x : d x ∈ im(target_relations)}``."""
    k = len(d.col_degrees)
    combined = GradedMatrix.hstack([d, target_relations])
    res = gb_of_matrix(combined, order, track=True)
    proj = _project(res.syzygies, k)
    ker = GradedMatrix.from_vectors(d.nvars, d.col_degrees, [x for _, x in proj],
                                    [v for v, _ in proj])
    if not proj:
        return ker
    return minimal_generators(ker, order)


def subquotient(generators: GradedMatrix, relations: Sequence[GradedMatrix],
                order: MonomialOrder = GREVLEX) -> PresentedModule:
    """Present ``(im generators + R) / R`` where ``R`` is the span of ``relations``."""
    k = len(generators.col_degrees)
    mats = [generators] + [r for r in relations if r.col_degrees]
    combined = GradedMatrix.hstack(mats)
    res = gb_of_matrix(combined, order, track=True)
    proj = _project(res.syzygies, k)
    rel = GradedMatrix.from_vectors(generators.nvars, generators.col_degrees,
                                    [x for _, x in proj], [v for v, _ in proj])
    return prune(PresentedModule(generators.col_degrees, rel))


def homology(m: PresentedModule, d_out: GradedMatrix | None, target_relations: GradedMatrix | None,
             d_in: GradedMatrix | None, order: MonomialOrder = GREVLEX) -> PresentedModule:
    """``ker(d_out) / im(d_in)`` at ``m`` in a complex of presented modules.

    ``d_out`` maps the generators of ``m`` into a module presented by
    ``target_relations``; ``d_in`` maps into the generators of ``m``.
    """
    n = m.nvars
    if m.num_generators == 0:
        return PresentedModule.zero(n)
    if d_out is None or not d_out.row_degrees:
        ker = GradedMatrix.identity(n, m.gen_degrees)
    else:
        rels = target_relations if target_relations is not None else \
            GradedMatrix(n, d_out.row_degrees, [])
        ker = kernel_into_quotient(d_out, rels, order)
    if not ker.col_degrees:
        return PresentedModule.zero(n)
    quotient_by = [m.relations]
    if d_in is not None:
        quotient_by.append(d_in)
    return subquotient(ker, quotient_by, order)
