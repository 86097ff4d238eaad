"""Exact sparse linear algebra over the rationals.

Elimination is row-incremental with a Markowitz-flavoured pivot rule: among
the surviving entries of a row the pivot is taken in the column with the
fewest nonzeros in the input matrix, ties broken by column index.  The result
is deterministic, so kernel bases are reproducible bit-for-bit.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence


class SparseMat:
    """``nrows x ncols`` matrix stored as ``{(row, col): Fraction}`` without zeros."""

    def __init__(self, nrows: int, ncols: int, entries: Mapping[tuple[int, int], object] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.entries: dict[tuple[int, int], Fraction] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError(f"entry {(i, j)} outside {nrows}x{ncols}")
            v = Fraction(v)
            if v:
                self.entries[i, j] = v

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]]) -> "SparseMat":
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v})

    @classmethod
    def from_columns(cls, columns: Sequence[Mapping[Hashable, object]]) -> tuple["SparseMat", list]:
        """Matrix whose j-th column is the sparse vector ``columns[j]``.

        Row keys are indexed in sorted order; the key list is returned too.
        """
        keys = sorted({k for col in columns for k in col})
        index = {k: i for i, k in enumerate(keys)}
        entries = {}
        for j, col in enumerate(columns):
            for k, v in col.items():
                entries[index[k], j] = v
        return cls(len(keys), len(columns), entries), keys

    def rows(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [{} for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def matvec(self, v: Mapping[int, object] | Sequence[object]) -> list[Fraction]:
        if not isinstance(v, Mapping):
            v = dict(enumerate(v))
        out = [Fraction(0)] * self.nrows
        for (i, j), a in self.entries.items():
            x = v.get(j, 0)
            if x:
                out[i] += a * x
        return out

    def transpose(self) -> "SparseMat":
        return SparseMat(self.ncols, self.nrows, {(j, i): v for (i, j), v in self.entries.items()})

    def to_dense(self) -> list[list[Fraction]]:
        m = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            m[i][j] = v
        return m

    def __repr__(self):
        return f"SparseMat({self.nrows}x{self.ncols}, nnz={len(self.entries)})"


class Echelon:
    """Incremental row echelon form; rows added later are free of earlier pivots."""

    def __init__(self, col_weight: Mapping[int, int] | None = None):
        self.col_weight = col_weight or {}
        self.pivots: dict[int, dict[int, Fraction]] = {}
        self.order: list[int] = []
        self._created: dict[int, int] = {}

    def reduce(self, row: Mapping[int, Fraction]) -> dict[int, Fraction]:
        row = dict(row)
        pivots = self.pivots
        while True:
            hits = [c for c in row if c in pivots]
            if not hits:
                return row
            hits.sort(key=self._created.__getitem__)
            for c in hits:
                f = row.get(c)
                if not f:
                    continue
                for k, v in pivots[c].items():
                    nv = row.get(k, 0) - f * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)

    def add(self, row: Mapping[int, Fraction]) -> bool:
        """Insert a row; True when it was independent of the previous ones."""
        row = self.reduce(row)
        if not row:
            return False
        weight = self.col_weight
        p = min(row, key=lambda c: (weight.get(c, 0), c))
        inv = 1 / row[p]
        self.pivots[p] = {k: v * inv for k, v in row.items()}
        self._created[p] = len(self.order)
        self.order.append(p)
        return True

    def __len__(self):
        return len(self.pivots)


def _echelon(rows: Iterable[dict[int, Fraction]], col_weight: Mapping[int, int]):
    ech = Echelon(col_weight)
    for row in rows:
        ech.add(row)
    return ech.pivots, ech.order


def _prepare(m: SparseMat):
    rows = [r for r in m.rows() if r]
    weight = Counter(j for (_, j) in m.entries)
    rows.sort(key=lambda r: (len(r), min(r)))
    return rows, weight


def rank(m: SparseMat) -> int:
    rows, weight = _prepare(m)
    pivots, _ = _echelon(rows, weight)
    return len(pivots)


def kernel_basis(m: SparseMat) -> list[dict[int, Fraction]]:
    """Basis of the right null space as sparse ``{col: value}`` vectors.

    Each vector has a 1 in its own free column and 0 in every other free column.
    """
    rows, weight = _prepare(m)
    pivots, order = _echelon(rows, weight)
    free = [j for j in range(m.ncols) if j not in pivots]
    basis = []
    for f in free:
        x: dict[int, Fraction] = {f: Fraction(1)}
        for p in reversed(order):
            s = Fraction(0)
            for k, v in pivots[p].items():
                if k != p:
                    xk = x.get(k)
                    if xk:
                        s += v * xk
            if s:
                x[p] = -s
        basis.append(x)
    return basis


def span_dim(vectors: Sequence[Mapping[Hashable, object]]) -> int:
    """Dimension of the span of sparse vectors sharing one key universe."""
    keys = sorted({k for v in vectors for k in v})
    index = {k: i for i, k in enumerate(keys)}
    rows = []
    for v in vectors:
        r = {index[k]: Fraction(x) for k, x in v.items() if x}
        if r:
            rows.append(r)
    weight = Counter(j for r in rows for j in r)
    rows.sort(key=lambda r: (len(r), min(r)))
    pivots, _ = _echelon(rows, weight)
    return len(pivots)


def row_basis(vectors: Sequence[Mapping[Hashable, object]]) -> list[int]:
    """Indices of a maximal independent subfamily, greedy in the given order."""
    keys = sorted({k for v in vectors for k in v})
    index = {k: i for i, k in enumerate(keys)}
    ech = Echelon()
    return [n for n, v in enumerate(vectors)
            if ech.add({index[k]: Fraction(x) for k, x in v.items() if x})]
