"""Independent reference computations used only by the tests.

Nothing here imports the package's Groebner engine: the naive Buchberger
below works on plain dicts of ``Fraction`` coefficients with no pair
criteria and no interreduction, and sympy serves as a second opinion.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import sympy

from graphsplines.corpus import nonisomorphic_graphs
from graphsplines.graphs import MultiGraph


def _lead(p: dict, key):
    return max(p, key=key)


def _sub(p: dict, q: dict, c: Fraction, shift: tuple) -> dict:
    out = dict(p)
    for e, v in q.items():
        t = tuple(a + b for a, b in zip(e, shift))
        w = out.get(t, 0) - c * v
        if w:
            out[t] = w
        else:
            out.pop(t, None)
    return out


def naive_reduce(p: dict, basis: list, key) -> dict:
    p = dict(p)
    rem: dict = {}
    while p:
        e = _lead(p, key)
        for g in basis:
            ge = _lead(g, key)
            if all(a >= b for a, b in zip(e, ge)):
                shift = tuple(a - b for a, b in zip(e, ge))
                p = _sub(p, g, Fraction(p[e]) / g[ge], shift)
                break
        else:
            rem[e] = p.pop(e)
    return rem


def naive_buchberger(polys: list, key) -> list:
    """Plain Buchberger on ideals: every pair, no criteria, no interreduction."""
    basis = [dict((e, Fraction(c)) for e, c in p.items()) for p in polys if p]
    pairs = list(combinations(range(len(basis)), 2))
    while pairs:
        i, j = pairs.pop()
        f, g = basis[i], basis[j]
        ef, eg = _lead(f, key), _lead(g, key)
        L = tuple(max(a, b) for a, b in zip(ef, eg))
        s = _sub({}, f, Fraction(-1) / f[ef], tuple(a - b for a, b in zip(L, ef)))
        s = _sub(s, g, Fraction(1) / g[eg], tuple(a - b for a, b in zip(L, eg)))
        r = naive_reduce(s, basis, key)
        if r:
            basis.append(r)
            pairs.extend((k, len(basis) - 1) for k in range(len(basis) - 1))
    return basis


def minimal_leads(basis: list, key) -> set:
    leads = {_lead(p, key) for p in basis}
    return {e for e in leads
            if not any(f != e and all(a >= b for a, b in zip(e, f)) for f in leads)}


def to_sympy(p, gens):
    return sum(sympy.Rational(int(c.numerator), int(c.denominator))
               * sympy.Mul(*[g ** k for g, k in zip(gens, e)]) for e, c in p.terms.items())


def sympy_groebner_leads(polys, nvars: int, order: str) -> set:
    gens = sympy.symbols(f"x1:{nvars + 1}")
    exprs = [to_sympy(p, gens) for p in polys]
    gb = sympy.groebner(exprs, *gens, order=order)
    return {sympy.Poly(g, *gens).monoms(order=order)[0] for g in gb.exprs}


def rank_of(rows) -> int:
    return sympy.Matrix(rows).rank() if rows and rows[0] else 0


# -- graded pieces by linear algebra -------------------------------------------

def monomials(nvars: int, d: int):
    if d < 0:
        return []
    if nvars == 0:
        return [()] if d == 0 else []
    out = []
    for k in range(d, -1, -1):
        out.extend((k,) + rest for rest in monomials(nvars - 1, d - k))
    return out


def fraction_rank(vectors: list) -> int:
    """Rank of sparse rational vectors (dicts) by elimination."""
    pivots: dict = {}
    rank = 0
    for v in vectors:
        v = {k: Fraction(c) for k, c in v.items() if c}
        while v:
            k = min(v)
            if k not in pivots:
                pivots[k] = v
                rank += 1
                break
            p = pivots[k]
            f = v[k] / p[k]
            for kk, c in p.items():
                w = v.get(kk, 0) - f * c
                if w:
                    v[kk] = w
                else:
                    v.pop(kk, None)
    return rank


def span_dim(columns, shifts, col_degrees, nvars: int, d: int) -> int:
    """Dimension in degree ``d`` of the submodule spanned by ``columns``.

    ``columns`` are dicts ``{row: Polynomial}`` in ``⊕ S(-shifts[row])``.
    """
    vecs = []
    for col, cd in zip(columns, col_degrees):
        for mono in monomials(nvars, d - cd):
            v = {}
            for row, p in col.items():
                for e, c in p.terms.items():
                    v[(row, tuple(a + b for a, b in zip(e, mono)))] = c
            vecs.append(v)
    return fraction_rank(vecs)


def free_dim(shifts, nvars: int, d: int) -> int:
    return sum(len(monomials(nvars, d - s)) for s in shifts)


def hilbert_function(gen_degrees, relations, nvars: int, d: int) -> int:
    return free_dim(gen_degrees, nvars, d) - span_dim(relations.columns, gen_degrees,
                                                      relations.col_degrees, nvars, d)


def kernel_dim(m, d: int) -> int:
    """``dim_d ker(m)`` for a graded matrix ``m``."""
    return free_dim(m.col_degrees, m.nvars, d) - span_dim(m.columns, m.row_degrees,
                                                          m.col_degrees, m.nvars, d)


def graphs_up_to(max_vertices: int = 6) -> list:
    """All simple graphs on 1..max_vertices vertices up to isomorphism."""
    return [MultiGraph(n, form) for n in range(1, max_vertices + 1)
            for form in nonisomorphic_graphs(n)]
