"""Truncated multivariate power series with exact rational coefficients.

A jet in ``d`` variables is known up to total degree ``order``; products and
compositions keep only what is determined, derivatives lose one order.
``order=None`` marks an exact polynomial.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Mapping, Sequence

INF = None


def _min_order(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class Jet:
    __slots__ = ("d", "order", "c")

    def __init__(self, d: int, order: int | None, coeffs: Mapping[tuple, object] | None = None):
        self.d = d
        self.order = order
        self.c: dict[tuple, Fraction] = {}
        for e, v in (coeffs or {}).items():
            if len(e) != d:
                raise ValueError(f"exponent {e} has wrong length for d={d}")
            if order is not None and sum(e) > order:
                continue
            v = Fraction(v)
            if v:
                self.c[e] = self.c.get(e, 0) + v
        self.c = {e: v for e, v in self.c.items() if v}

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, d: int, value, order: int | None = None) -> "Jet":
        return cls(d, order, {(0,) * d: value})

    @classmethod
    def var(cls, d: int, i: int, order: int | None = None) -> "Jet":
        e = [0] * d
        e[i] = 1
        return cls(d, order, {tuple(e): 1})

    @classmethod
    def zero(cls, d: int, order: int | None = None) -> "Jet":
        return cls(d, order)

    def _new(self, order, coeffs) -> "Jet":
        j = Jet.__new__(Jet)
        j.d, j.order = self.d, order
        j.c = {e: v for e, v in coeffs.items() if v and (order is None or sum(e) <= order)}
        return j

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Jet):
            other = Jet.const(self.d, other)
        out = dict(self.c)
        for e, v in other.c.items():
            out[e] = out.get(e, 0) + v
        return self._new(_min_order(self.order, other.order), out)

    __radd__ = __add__

    def __neg__(self):
        return self._new(self.order, {e: -v for e, v in self.c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Jet):
            s = Fraction(other)
            return self._new(self.order, {e: v * s for e, v in self.c.items()})
        order = _min_order(self.order, other.order)
        out: dict = {}
        bs = [(eb, vb, sum(eb)) for eb, vb in other.c.items()]
        for ea, va in self.c.items():
            room = None if order is None else order - sum(ea)
            for eb, vb, db in bs:
                if room is not None and db > room:
                    continue
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + va * vb
        return self._new(order, out)

    __rmul__ = __mul__

    def deriv(self, i: int) -> "Jet":
        out = {}
        for e, v in self.c.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = v * e[i]
        return self._new(None if self.order is None else self.order - 1, out)

    def truncate(self, order: int) -> "Jet":
        return self._new(_min_order(self.order, order), self.c)

    def value(self) -> Fraction:
        return self.c.get((0,) * self.d, Fraction(0))

    def is_zero(self) -> bool:
        return not self.c

    def compose(self, inner: Sequence["Jet"] | "Substitution") -> "Jet":
        """``self(inner_1, ..., inner_d)``; the inner jets must vanish at the origin."""
        sub = inner if isinstance(inner, Substitution) else Substitution(inner)
        if len(sub.inner) != self.d:
            raise ValueError("wrong number of inner jets")
        order = _min_order(self.order, sub.order)
        out: dict = {}
        for e, v in self.c.items():
            if order is not None and sum(e) > order:
                continue
            for k, w in sub.monomial(e).c.items():
                out[k] = out.get(k, 0) + v * w
        j = Jet.__new__(Jet)
        j.d, j.order = sub.e_out, order
        j.c = {k: v for k, v in out.items() if v and (order is None or sum(k) <= order)}
        return j

    # comparison ---------------------------------------------------------
    def agrees(self, other: "Jet", order: int) -> tuple | None:
        """First exponent (up to ``order``) where the two jets differ, or None."""
        for o in (self.order, other.order):
            if o is not None and o < order:
                raise ValueError(f"jet known only to order {o} < {order}")
        keys = sorted({e for e in itertools.chain(self.c, other.c) if sum(e) <= order})
        for e in keys:
            if self.c.get(e, 0) != other.c.get(e, 0):
                return e
        return None

    def __eq__(self, other):
        return isinstance(other, Jet) and self.c == other.c

    def __repr__(self):
        terms = sorted(self.c.items())
        return f"Jet(d={self.d}, order={self.order}, {dict(terms)})"


class Substitution:
    """Inner jets of a composition with memoized monomials in them."""

    def __init__(self, inner: Sequence[Jet]):
        if any(g.value() for g in inner):
            raise ValueError("inner jets must have zero constant term")
        self.inner = list(inner)
        self.e_out = inner[0].d
        self.order = None
        for g in inner:
            self.order = _min_order(self.order, g.order)
        self._mono: dict = {(0,) * len(inner): Jet.const(self.e_out, 1, self.order)}

    def monomial(self, e: tuple) -> Jet:
        got = self._mono.get(e)
        if got is None:
            i = max(k for k, x in enumerate(e) if x)
            prev = list(e)
            prev[i] -= 1
            got = self.monomial(tuple(prev)) * self.inner[i]
            self._mono[e] = got
        return got


# matrices of jets -----------------------------------------------------------

def mat_mul(a: Sequence[Sequence[Jet]], b: Sequence[Sequence[Jet]]) -> list[list[Jet]]:
    n, k, m = len(a), len(b), len(b[0])
    return [[sum((a[i][t] * b[t][j] for t in range(k)), Jet.zero(a[0][0].d)) for j in range(m)]
            for i in range(n)]


def const_inverse(a: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Exact inverse of a square rational matrix (Gauss-Jordan)."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def mat_inverse(a: Sequence[Sequence[Jet]], order: int) -> list[list[Jet]]:
    """Inverse of a jet matrix with invertible value, by the Neumann series to ``order``."""
    d = a[0][0].d
    n = len(a)
    a0inv = const_inverse([[x.value() for x in row] for row in a])
    a0inv_j = [[Jet.const(d, x, order) for x in row] for row in a0inv]
    # a = a0 (I + N) with N = a0^{-1} (a - a0) vanishing at the origin
    nil = mat_mul(a0inv_j, [[(a[i][j] - a[i][j].value()).truncate(order) for j in range(n)] for i in range(n)])
    ident = [[Jet.const(d, int(i == j), order) for j in range(n)] for i in range(n)]
    total, term = ident, ident
    for _ in range(order):
        term = [[-x for x in row] for row in mat_mul(term, nil)]
        total = [[total[i][j] + term[i][j] for j in range(n)] for i in range(n)]
    return mat_mul(total, a0inv_j)
