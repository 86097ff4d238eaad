"""Linear combinations of trees and the Christoffel-tree operad.

White (noise) vertices of an operadic tree carry distinct positive labels and
are addressed by label.  Partial composition ``t1 o_v t2`` replaces the white
vertex ``v`` by ``t2`` and re-grafts every incoming edge of ``v`` at every
vertex of ``t2``, black vertices included.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .trees import (ALPHA, DELTA, GAMMA, NOISE, THICK, THIN, Flat, Tree, TreeError, decode,
                    encode, from_flat, from_flat_signed, from_json, gamma, noise, relabel,
                    to_flat, to_json, vertices)


class LinComb(dict):
    """Finite rational linear combination ``{Tree: Fraction}`` with no zero entries."""

    def __init__(self, data: Mapping[Tree, object] | Iterable[tuple[Tree, object]] | None = None):
        super().__init__()
        if data is None:
            return
        items = data.items() if isinstance(data, Mapping) else data
        for t, c in items:
            self.add(t, c)

    @classmethod
    def of(cls, t: Tree, coeff=1) -> "LinComb":
        return cls({t: coeff})

    def add(self, t: Tree, coeff) -> None:
        if not coeff:
            return
        v = self.get(t, 0) + Fraction(coeff)
        if v:
            self[t] = v
        else:
            self.pop(t, None)

    def iadd(self, other: Mapping[Tree, object], scale=1) -> "LinComb":
        for t, c in other.items():
            self.add(t, c * scale)
        return self

    def __add__(self, other):
        return LinComb(self).iadd(other)

    def __sub__(self, other):
        return LinComb(self).iadd(other, -1)

    def __neg__(self):
        return LinComb({t: -c for t, c in self.items()})

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        if not scalar:
            return LinComb()
        return LinComb({t: c * scalar for t, c in self.items()})

    __rmul__ = __mul__

    def map(self, f: Callable[[Tree], Mapping[Tree, object]]) -> "LinComb":
        """Linear extension of ``f``."""
        out = LinComb()
        for t, c in self.items():
            out.iadd(f(t), c)
        return out

    def sorted_items(self) -> list[tuple[Tree, Fraction]]:
        return sorted(self.items(), key=lambda tc: encode(tc[0]))

    def __str__(self):
        if not self:
            return "0"
        parts = []
        for t, c in self.sorted_items():
            parts.append(f"{c}*{encode(t)}" if c != 1 else encode(t))
        return " + ".join(parts)

    def __repr__(self):
        return f"LinComb({str(self)!r})"

    def to_json(self) -> list[dict]:
        return [{"coefficient": str(c), "tree": to_json(t)} for t, c in self.sorted_items()]

    @classmethod
    def from_json(cls, data: Sequence[Mapping]) -> "LinComb":
        return cls((from_json(d["tree"]), Fraction(d["coefficient"])) for d in data)

    @classmethod
    def parse(cls, text: str) -> "LinComb":
        """Parse ``"c*tree + c*tree"`` using the compact tree encoding."""
        out = cls()
        text = text.replace("- ", "+ -")
        for part in text.split("+ "):
            part = part.strip()
            if not part or part == "0":
                continue
            sign = 1
            if part.startswith("-"):
                sign, part = -1, part[1:].strip()
            coeff, _, code = part.partition("*") if "*" in part.split("(")[0] else ("1", "", part)
            out.add(decode(code), sign * Fraction(coeff))
        return out


def as_lincomb(x) -> LinComb:
    if isinstance(x, LinComb):
        return x
    if isinstance(x, Tree):
        return LinComb.of(x)
    return LinComb(x)


# ---------------------------------------------------------------------------
# surgery on flat trees

Pattern = Sequence[tuple[int, int, int, int]]
"""Replacement pattern: ``(kind, color, parent, edge)`` per node, node 0 is the
pattern root (its parent/edge entries are ignored; it takes the place of the
replaced vertex)."""


def replace_vertex(flat: Flat, v: int, pattern: Pattern, structural: Mapping[int, tuple[int, int]] = None,
                   sites: Sequence[int] | None = None) -> Iterator[tuple[list, list, list, list]]:
    """Replace vertex ``v`` of ``flat`` by ``pattern``.

    Children of ``v`` listed in ``structural`` are re-attached to the given
    ``(pattern node, edge)``; every other child of ``v`` is grafted, keeping its
    edge, at one of ``sites`` (default: all pattern nodes), in all possible ways.
    Yields working arrays (kinds, colors, parents, edges).
    """
    structural = structural or {}
    n = len(flat)
    base_k = list(flat.kinds)
    base_c = list(flat.colors)
    base_p = list(flat.parents)
    base_e = list(flat.edges)
    # pattern node i -> array index
    where = [v] + list(range(n, n + len(pattern) - 1))
    k0, c0 = pattern[0][0], pattern[0][1]
    base_k[v], base_c[v] = k0, c0
    for kind, color, parent, edge in pattern[1:]:
        base_k.append(kind)
        base_c.append(color)
        base_p.append(where[parent])
        base_e.append(edge)
    for w, (node, edge) in structural.items():
        base_p[w] = where[node]
        base_e[w] = edge
    free = [w for w in range(n) if flat.parents[w] == v and w not in structural]
    site_idx = [where[s] for s in (sites if sites is not None else range(len(pattern)))]
    for choice in itertools.product(site_idx, repeat=len(free)):
        parents = list(base_p)
        for w, s in zip(free, choice):
            parents[w] = s
        yield base_k, base_c, parents, base_e


def graft_at(flat: Flat, w: int, sub: Flat, edge: int = THIN) -> tuple[list, list, list, list]:
    """Attach the root of ``sub`` below vertex ``w`` of ``flat``."""
    n = len(flat)
    kinds = list(flat.kinds) + list(sub.kinds)
    colors = list(flat.colors) + list(sub.colors)
    parents = list(flat.parents) + [p + n if p >= 0 else w for p in sub.parents]
    edges = list(flat.edges) + [e if i else edge for i, e in enumerate(sub.edges)]
    return kinds, colors, parents, edges


def graft_under(sub: Flat, root_kind: int, root_color: int = 0, edge: int = THIN):
    """New root vertex with ``sub`` attached below it."""
    kinds = [root_kind] + list(sub.kinds)
    colors = [root_color] + list(sub.colors)
    parents = [-1] + [p + 1 if p >= 0 else 0 for p in sub.parents]
    edges = [-1] + [e if i else edge for i, e in enumerate(sub.edges)]
    return kinds, colors, parents, edges


def grafting_sum(lower: Tree, upper: Tree) -> LinComb:
    """Sum over vertices ``w`` of ``lower`` of ``upper`` grafted thin at ``w``.

    ``lower`` keeps the root (this is the pre-Lie product ``lower <| upper``).
    """
    fl, fu = to_flat(lower), to_flat(upper)
    out = LinComb()
    for w in range(len(fl)):
        out.add(from_flat(*graft_at(fl, w, fu)), 1)
    return out


# ---------------------------------------------------------------------------
# operad structure

def white_labels(t: Tree) -> list[int]:
    return [v.color for v in vertices(t) if v.kind == NOISE]


def _vertex_of_label(flat: Flat, label: int) -> int:
    hits = [i for i, (k, c) in enumerate(zip(flat.kinds, flat.colors)) if k == NOISE and c == label]
    if len(hits) != 1:
        raise TreeError(f"label {label} occurs {len(hits)} times; composition needs a unique white vertex")
    return hits[0]


def insert(t1: Tree, v: int, t2: Tree) -> LinComb:
    """Partial composition ``t1 o_v t2`` at the white vertex labelled ``v``."""
    return LinComb(_insert(t1, v, t2))


@lru_cache(maxsize=200_000)
def _insert(t1: Tree, v: int, t2: Tree) -> LinComb:
    f1 = to_flat(t1)
    idx = _vertex_of_label(f1, v)
    others = {c for i, (k, c) in enumerate(zip(f1.kinds, f1.colors)) if k == NOISE and i != idx}
    if others & set(white_labels(t2)):
        raise TreeError("label sets of the composed trees are not disjoint")
    f2 = to_flat(t2)
    pattern = [(f2.kinds[0], f2.colors[0], -1, -1)] + [
        (f2.kinds[i], f2.colors[i], f2.parents[i], f2.edges[i]) for i in range(1, len(f2))]
    out = LinComb()
    for arrays in replace_vertex(f1, idx, pattern):
        out.add(from_flat(*arrays), 1)
    return out


def compose_lin(x, v: int, y) -> LinComb:
    """Bilinear extension of :func:`insert`."""
    x, y = as_lincomb(x), as_lincomb(y)
    out = LinComb()
    for t1, c1 in x.items():
        for t2, c2 in y.items():
            out.iadd(insert(t1, v, t2), c1 * c2)
    return out


def christoffel_corolla(labels: Sequence[int]) -> Tree:
    """Black vertex with thick inputs ``labels[0], labels[1]`` and thin inputs the rest."""
    if len(labels) < 2:
        raise ValueError("a Christoffel corolla needs at least two white inputs")
    return gamma(noise(labels[0]), noise(labels[1]), *(noise(c) for c in labels[2:]))


def corolla_from_binaries(k: int) -> tuple[LinComb, LinComb]:
    """Both sides of ``S o_1 T_{k-1} - sum_i T_{k-1} o_i S = T_k``.

    ``S`` is the two-vertex tree with root 1 and leaf ``k+2``; ``T_j`` is the
    Christoffel corolla on ``j+2`` white vertices.  Returns (left side, T_k).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    t_prev = christoffel_corolla(range(1, k + 2))
    s = noise(1, noise(k + 2))
    left = insert(s, 1, t_prev)
    for i in range(1, k + 2):
        left.iadd(insert(t_prev, i, noise(i, noise(k + 2))), -1)
    return left, LinComb.of(christoffel_corolla(range(1, k + 3)))


def evaluate_on_colors(x, assignment: Mapping[int, int] | Callable[[int], int]) -> LinComb:
    """Recolor labels (free-algebra component) and merge equal trees."""
    x = as_lincomb(x)
    out = LinComb()
    for t, c in x.items():
        out.add(relabel(t, assignment), c)
    return out


# ---------------------------------------------------------------------------
# operad axioms

def shift_labels(t: Tree, offset: int) -> Tree:
    return relabel(t, lambda c: c + offset)


def sequential_defect(t1: Tree, u: int, t2: Tree, v: int, t3: Tree) -> LinComb:
    """``(t1 o_u t2) o_v t3 - t1 o_u (t2 o_v t3)`` for ``v`` a label of ``t2``."""
    return compose_lin(insert(t1, u, t2), v, t3) - compose_lin(t1, u, insert(t2, v, t3))


def parallel_defect(t1: Tree, u: int, t2: Tree, v: int, t3: Tree) -> LinComb:
    """``(t1 o_u t2) o_v t3 - (t1 o_v t3) o_u t2`` for distinct labels ``u, v`` of ``t1``."""
    return compose_lin(insert(t1, u, t2), v, t3) - compose_lin(insert(t1, v, t3), u, t2)
