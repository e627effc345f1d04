"""Graded matrices over a polynomial ring.

Columns are module elements: a matrix with ``r`` rows and ``c`` columns is the
map ``S^c -> S^r`` sending the ``j``-th basis vector to column ``j``.  Entry
``(i, j)`` is homogeneous of degree ``col_degrees[j] - row_degrees[i]``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .polynomial import Polynomial, mono_mul

# Module elements used by the Groebner engine: dict mapping (row, exponent) -> coeff.
Vector = dict


class DegreeError(ValueError):
    """A matrix or module is not compatible with its declared grading."""


class GradedMatrix:
    __slots__ = ("nvars", "row_degrees", "col_degrees", "_cols")

    def __init__(self, nvars: int, row_degrees: Sequence[int], col_degrees: Sequence[int],
                 columns: Sequence[dict] | None = None, check: bool = True):
        self.nvars = nvars
        self.row_degrees = tuple(row_degrees)
        self.col_degrees = tuple(col_degrees)
        if columns is None:
            columns = [{} for _ in self.col_degrees]
        if len(columns) != len(self.col_degrees):
            raise DegreeError("column count does not match col_degrees")
        cols = []
        for col in columns:
            clean = {}
            for i, p in col.items():
                if not 0 <= i < len(self.row_degrees):
                    raise DegreeError(f"row index {i} out of range")
                if p.nvars != nvars:
                    raise ValueError("entry lives in a different ring")
                if p:
                    clean[i] = p
            cols.append(clean)
        self._cols = tuple(cols)
        if check:
            self.check_degrees()

    # -- construction ----------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], nvars: int, row_degrees=None,
                  col_degrees=None) -> GradedMatrix:
        """Build from a dense list of rows, inferring degrees when omitted."""
        nrows = len(rows)
        ncols = len(rows[0]) if rows else len(col_degrees or ())
        entries = [[e if isinstance(e, Polynomial) else Polynomial.constant(e, nvars)
                    for e in row] for row in rows]
        if row_degrees is None:
            row_degrees = [0] * nrows
        if col_degrees is None:
            col_degrees = []
            for j in range(ncols):
                d = None
                for i in range(nrows):
                    if entries[i][j]:
                        d = entries[i][j].degree() + row_degrees[i]
                        break
                col_degrees.append(0 if d is None else d)
        columns = [{i: entries[i][j] for i in range(nrows)} for j in range(ncols)]
        return cls(nvars, row_degrees, col_degrees, columns)

    @classmethod
    def from_vectors(cls, nvars: int, row_degrees, col_degrees, vectors: Iterable[Vector],
                     check: bool = False) -> GradedMatrix:
        columns = []
        for v in vectors:
            col: dict = {}
            for (i, e), c in v.items():
                col.setdefault(i, {})[e] = c
            columns.append({i: Polynomial._raw(nvars, t) for i, t in col.items()})
        return cls(nvars, row_degrees, col_degrees, columns, check=check)

    @classmethod
    def identity(cls, nvars: int, degrees: Sequence[int]) -> GradedMatrix:
        one = Polynomial.constant(1, nvars)
        return cls(nvars, degrees, degrees, [{i: one} for i in range(len(degrees))])

    @classmethod
    def hstack(cls, mats: Sequence[GradedMatrix]) -> GradedMatrix:
        first = mats[0]
        for m in mats[1:]:
            if m.row_degrees != first.row_degrees:
                raise DegreeError("hstack needs matching row degrees")
        cols = [c for m in mats for c in m._cols]
        degs = [d for m in mats for d in m.col_degrees]
        return cls(first.nvars, first.row_degrees, degs, cols, check=False)

    # -- queries ---------------------------------------------------------
    @property
    def shape(self) -> tuple:
        return len(self.row_degrees), len(self.col_degrees)

    @property
    def columns(self) -> tuple:
        return self._cols

    def __getitem__(self, ij) -> Polynomial:
        i, j = ij
        return self._cols[j].get(i, Polynomial.zero(self.nvars))

    def is_zero(self) -> bool:
        return not any(self._cols)

    def entry_degree(self, i: int, j: int) -> int:
        return self.col_degrees[j] - self.row_degrees[i]

    def check_degrees(self):
        for j, col in enumerate(self._cols):
            for i, p in col.items():
                want = self.col_degrees[j] - self.row_degrees[i]
                for e in p.terms:
                    if sum(e) != want:
                        raise DegreeError(
                            f"entry ({i},{j}) = {p} is not homogeneous of degree {want}")

    def has_unit_entry(self) -> bool:
        return any(p.is_constant() for col in self._cols for p in col.values())

    def vectors(self) -> list[Vector]:
        out = []
        for col in self._cols:
            v = {}
            for i, p in col.items():
                for e, c in p.terms.items():
                    v[(i, e)] = c
            out.append(v)
        return out

    def to_rows(self) -> list[list[Polynomial]]:
        nr, nc = self.shape
        return [[self[i, j] for j in range(nc)] for i in range(nr)]

    # -- algebra ---------------------------------------------------------
    def __matmul__(self, other: GradedMatrix) -> GradedMatrix:
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        zero = Polynomial.zero(self.nvars)
        cols = []
        for ocol in other._cols:
            acc: dict = {}
            for k, q in ocol.items():
                for i, p in self._cols[k].items():
                    acc[i] = acc.get(i, zero) + p * q
            cols.append(acc)
        return GradedMatrix(self.nvars, self.row_degrees, other.col_degrees, cols, check=False)

    def submatrix(self, rows: Sequence[int] | None = None,
                  cols: Sequence[int] | None = None) -> GradedMatrix:
        rows = range(len(self.row_degrees)) if rows is None else rows
        cols = range(len(self.col_degrees)) if cols is None else cols
        rmap = {r: k for k, r in enumerate(rows)}
        new_cols = []
        for j in cols:
            new_cols.append({rmap[i]: p for i, p in self._cols[j].items() if i in rmap})
        return GradedMatrix(self.nvars, [self.row_degrees[r] for r in rows],
                            [self.col_degrees[j] for j in cols], new_cols, check=False)

    def transpose(self) -> GradedMatrix:
        nr, nc = self.shape
        rows: list[dict] = [{} for _ in range(nr)]
        for j, col in enumerate(self._cols):
            for i, p in col.items():
                rows[i][j] = p
        return GradedMatrix(self.nvars, [-d for d in self.col_degrees],
                            [-d for d in self.row_degrees], rows, check=False)

    def __eq__(self, other):
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return (self.nvars == other.nvars and self.row_degrees == other.row_degrees
                and self.col_degrees == other.col_degrees and self._cols == other._cols)

    def to_json(self, names=None) -> dict:
        return {
            "row_degrees": list(self.row_degrees),
            "col_degrees": list(self.col_degrees),
            "entries": [[p.to_string(names) for p in row] for row in self.to_rows()],
        }

    def format(self, names=None) -> str:
        """Plain-text aligned dump, one matrix row per line."""
        rows = [[p.to_string(names) for p in row] for row in self.to_rows()]
        if not rows or not rows[0]:
            return f"<{self.shape[0]}x{self.shape[1]} matrix>"
        widths = [max(len(r[j]) for r in rows) for j in range(len(rows[0]))]
        lines = []
        for d, r in zip(self.row_degrees, rows):
            cells = "  ".join(s.rjust(w) for s, w in zip(r, widths))
            lines.append(f"{d:>3} | {cells}")
        header = "    | " + "  ".join(str(d).rjust(w) for d, w in zip(self.col_degrees, widths))
        return "\n".join([header] + lines)

    def __repr__(self):
        return f"GradedMatrix(shape={self.shape}, rows={self.row_degrees}, cols={self.col_degrees})"


def vector_degree(v: Vector, shifts: Sequence[int]) -> int:
    """Degree of a homogeneous module element (component shifts added)."""
    (i, e) = next(iter(v))
    return sum(e) + shifts[i]


def scale_vector(v: Vector, c, mono=None) -> Vector:
    if mono is None:
        return {t: x * c for t, x in v.items()}
    return {(i, mono_mul(e, mono)): x * c for (i, e), x in v.items()}
