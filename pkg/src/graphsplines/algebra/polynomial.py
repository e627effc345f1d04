"""Sparse multivariate polynomials over the rationals and monomial orders."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from gmpy2 import mpq

Exponent = tuple  # tuple[int, ...]


def to_rational(c) -> mpq:
    if isinstance(c, Fraction):
        return mpq(c.numerator, c.denominator)
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not allowed")
    return mpq(c)


def mono_mul(a: Exponent, b: Exponent) -> Exponent:
    return tuple([x + y for x, y in zip(a, b)])


def mono_div(a: Exponent, b: Exponent) -> Exponent:
    return tuple([x - y for x, y in zip(a, b)])


def mono_divides(b: Exponent, a: Exponent) -> bool:
    """True iff the monomial ``b`` divides ``a``."""
    for x, y in zip(a, b):
        if x < y:
            return False
    return True


def mono_lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple([x if x > y else y for x, y in zip(a, b)])


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on ``nvars`` variables.

    ``kind`` is ``"grevlex"`` or ``"lex"``.  ``perm`` lists the variables from
    most to least significant; the default is ``x_0 > x_1 > ...``.
    """

    kind: str = "grevlex"
    perm: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, e: Exponent) -> tuple:
        """Sort key; a larger key means a larger monomial."""
        if self.perm is not None:
            e = tuple(e[i] for i in self.perm)
        if self.kind == "lex":
            return e
        return (sum(e),) + tuple(-x for x in reversed(e))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


class Polynomial:
    """Polynomial in ``nvars`` variables with exact rational coefficients.

    Terms are held in a dict from exponent tuples to nonzero ``mpq``
    coefficients.  Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                c = to_rational(c)
                if c:
                    clean[e] = c
        self.terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> Polynomial:
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def zero(cls, nvars: int) -> Polynomial:
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, c, nvars: int) -> Polynomial:
        c = to_rational(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, i: int, nvars: int) -> Polynomial:
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): mpq(1)})

    @classmethod
    def monomial(cls, e: Iterable[int], c=1) -> Polynomial:
        e = tuple(e)
        return cls(len(e), {e: c})

    # -- queries -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> mpq:
        return self.terms.get((0,) * self.nvars, mpq(0))

    def leading_term(self, order: MonomialOrder = GREVLEX) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def variables(self) -> set:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        return Polynomial.constant(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = to_rational(other)
            if not c:
                return Polynomial.zero(self.nvars)
            return Polynomial._raw(self.nvars, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = mono_mul(e1, e2)
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            return self == Polynomial.constant(other, self.nvars)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def mul_monomial(self, e: Exponent, c=1) -> Polynomial:
        c = to_rational(c)
        return Polynomial._raw(self.nvars, {mono_mul(k, e): v * c for k, v in self.terms.items()})

    def substitute(self, values: Mapping[int, Polynomial], nvars: int) -> Polynomial:
        """Replace variable ``i`` by ``values[i]`` (a polynomial in ``nvars`` variables)."""
        out = Polynomial.zero(nvars)
        for e, c in self.terms.items():
            term = Polynomial.constant(c, nvars)
            for i, x in enumerate(e):
                if x:
                    term = term * values[i] ** x
            out = out + term
        return out

    # -- display -------------------------------------------------------
    def to_string(self, names=None, order: MonomialOrder = GREVLEX) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        pieces = []
        for e in sorted(self.terms, key=order.key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                names[i] if x == 1 else f"{names[i]}^{x}" for i, x in enumerate(e) if x
            )
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.to_string()!r}, nvars={self.nvars})"


def polynomial_ring(nvars: int) -> list[Polynomial]:
    """The variables of ``Q[x_1..x_nvars]`` as polynomials."""
    return [Polynomial.variable(i, nvars) for i in range(nvars)]
