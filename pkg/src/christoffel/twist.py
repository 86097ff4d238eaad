"""Twisted differential on trees with odd Alpha vertices.

Alpha vertices are odd.  A tree with Alpha vertices stands for the oriented
element whose Alpha vertices are ordered by canonical preorder; working trees
carry explicit ranks and are brought to canonical orientation with the
permutation sign.  Every rule creates exactly one new Alpha, placed last.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .geoderiv import hat_phi_geo, vertex_rules
from .operad import LinComb, as_lincomb, graft_at, graft_under, replace_vertex
from .trees import (ALPHA, DELTA, GAMMA, NOISE, THICK, THIN, Tree, count_kind, from_flat_signed,
                    size, to_flat)

log = logging.getLogger(__name__)

_ALPHA_FLAT = to_flat(Tree(ALPHA, 0, ()))
NEW = 1 << 30  # rank of the Alpha created by a rule


def homological_degree(t: Tree) -> int:
    return -count_kind(t, ALPHA)


def _ranks(flat) -> list:
    ranks, r = [], 0
    for k in flat.kinds:
        if k == ALPHA:
            ranks.append(r)
            r += 1
        else:
            ranks.append(None)
    return ranks


def _emit(out: LinComb, arrays, ranks, coeff):
    t, sign = from_flat_signed(*arrays, ranks)
    if sign:
        out.add(t, coeff * sign)


def _d_tree(t: Tree, tw: bool, zero: bool) -> LinComb:
    flat = to_flat(t)
    n = len(flat)
    base = _ranks(flat)
    out = LinComb()
    for v in range(n):
        kind = flat.kinds[v]
        if kind == ALPHA:
            if not tw:
                continue
            # split into two Alphas: the lower one is new, the upper keeps the rank
            pattern = [(ALPHA, 0, -1, -1), (ALPHA, 0, 0, THIN)]
            ranks = base + [base[v]]
            ranks[v] = NEW
            for arrays in replace_vertex(flat, v, pattern):
                _emit(out, arrays, ranks, 1)
            continue
        rules = vertex_rules(flat, v, ALPHA, gamma_tail=zero, gamma_head=tw)
        if kind == NOISE and not tw:
            rules = []
        for coeff, pattern, structural in rules:
            ranks = list(base) + [NEW if p[0] == ALPHA else None for p in pattern[1:]]
            ranks[v] = NEW if pattern[0][0] == ALPHA else None
            for arrays in replace_vertex(flat, v, pattern, structural):
                _emit(out, arrays, ranks, coeff)
    if tw:
        # minus the tree under a new Alpha root, plus a new Alpha leaf everywhere
        _emit(out, graft_under(flat, ALPHA), [NEW] + base, -1)
        for w in range(n):
            _emit(out, graft_at(flat, w, _ALPHA_FLAT), base + [NEW], 1)
    return out


@lru_cache(maxsize=None)
def _cached(t: Tree, tw: bool, zero: bool) -> LinComb:
    return _d_tree(t, tw, zero)


def _apply(x, tw: bool, zero: bool) -> LinComb:
    return as_lincomb(x).map(lambda t: _cached(t, tw, zero))


def d_tw(x) -> LinComb:
    """Twisting part: vertex splittings plus the bracket with Alpha."""
    return _apply(x, True, False)


def d0(x) -> LinComb:
    """Derivation sending each thick corolla to -2 times the Alpha corolla on its inputs."""
    return _apply(x, False, True)


def d_full(x) -> LinComb:
    return _apply(x, True, True)


def alpha_to_delta(x) -> LinComb:
    out = LinComb()
    for t, c in as_lincomb(x).items():
        out.add(_rename(t), c)
    return out


def _rename(t: Tree) -> Tree:
    kind = DELTA if t.kind == ALPHA else t.kind
    return Tree(kind, t.color, tuple((e, _rename(s)) for e, s in t.children))


# ---------------------------------------------------------------------------
# exhaustive shape enumeration (one labelling per unlabelled shape)

_KINDS = (NOISE, GAMMA, ALPHA)


@lru_cache(maxsize=None)
def _shapes(n: int) -> tuple[Tree, ...]:
    """Unlabelled trees on exactly ``n`` vertices; noises carry the placeholder color 1."""
    out = set()
    for kind in _KINDS:
        if kind == GAMMA:
            for a in range(1, n - 1):
                for b in range(a, n - a):
                    rest = n - 1 - a - b
                    for ta in _shapes(a):
                        for tb in _shapes(b):
                            if a == b and tb < ta:
                                continue
                            for forest in _forests(rest, ()):
                                ch = sorted([(THICK, ta), (THICK, tb)] + [(THIN, s) for s in forest])
                                out.add(Tree(GAMMA, 0, tuple(ch)))
        else:
            for forest in _forests(n - 1, ()):
                out.add(Tree(kind, 1 if kind == NOISE else 0, tuple((THIN, s) for s in forest)))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _forests(m: int, lower) -> tuple[tuple[Tree, ...], ...]:
    """Multisets of trees of total size ``m`` listed in nondecreasing order, all ``>= lower``."""
    if m == 0:
        return ((),)
    out = []
    for k in range(1, m + 1):
        for s in _shapes(k):
            if lower and (k, s) < lower:
                continue
            for rest in _forests(m - k, (k, s)):
                out.append((s,) + rest)
    return tuple(out)


def _label(t: Tree) -> Tree:
    """Give noise vertices the distinct labels 1, 2, ... in preorder."""
    counter = iter(range(1, 10 ** 6))

    def go(node):
        color = next(counter) if node.kind == NOISE else 0
        return Tree(node.kind, color, tuple((e, go(s)) for e, s in node.children))

    flat = to_flat(go(t))
    out, _ = from_flat_signed(*flat, [0] * len(flat))
    return out


def dg_trees(max_vertices: int, max_alpha: int | None = None) -> list[Tree]:
    """One labelled representative per unlabelled tree with at most ``max_vertices`` vertices."""
    out = []
    for n in range(1, max_vertices + 1):
        for s in _shapes(n):
            if max_alpha is None or count_kind(s, ALPHA) <= max_alpha:
                out.append(_label(s))
    return out


# ---------------------------------------------------------------------------
# verification reports

@dataclass
class Report:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {"name": self.name, "checked": self.checked, "passed": self.ok,
                "failures": [str(f) for f in self.failures[:20]]}


def check_square_zero(trees: Iterable[Tree], name: str = "d_full^2 = 0") -> Report:
    rep = Report(name)
    for t in trees:
        rep.checked += 1
        dd = d_full(d_full(t))
        if dd:
            rep.failures.append((t, dd))
    return rep


def check_degree_shift(trees: Iterable[Tree]) -> Report:
    rep = Report("d_full adds exactly one Alpha")
    for t in trees:
        rep.checked += 1
        k = count_kind(t, ALPHA)
        if any(count_kind(s, ALPHA) != k + 1 for s in d_full(t)):
            rep.failures.append(t)
    return rep


def verify_degree0_correspondence(max_vertices: int = 4, trees: Sequence[Tree] | None = None) -> Report:
    """Compare ``d_full`` with the hatted derivation (Alpha renamed to Delta) on Alpha-free trees."""
    if trees is None:
        trees = [t for t in dg_trees(max_vertices, 0) if count_kind(t, NOISE)]
    rep = Report("degree-0 correspondence")
    for t in trees:
        rep.checked += 1
        a, b = alpha_to_delta(d_full(t)), hat_phi_geo(t)
        if a != b:
            rep.failures.append((t, a - b))
    return rep
