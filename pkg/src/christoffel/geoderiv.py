"""The geometric derivation, its kernel and covariant derivatives on trees."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from . import exactla
from .operad import LinComb, as_lincomb, grafting_sum, replace_vertex
from .trees import (ALPHA, DELTA, GAMMA, NOISE, THICK, THIN, EnumerationOverflow, Flat, Tree, TreeError,
                    color_canonical, count_kind, delta, enumerate_trees, from_flat, gamma,
                    noise, to_flat)

log = logging.getLogger(__name__)

HALF = Fraction(1, 2)


def vertex_rules(flat: Flat, v: int, new_kind: int, *, gamma_tail: bool = True,
                 gamma_head: bool = True):
    """Local replacement rules at vertex ``v`` as ``(coeff, pattern, structural)``.

    A noise vertex ``x`` becomes ``N(x) - x(N)`` where ``N`` is a new vertex of
    ``new_kind``.  A Gamma vertex with thick inputs ``a, b`` becomes
    ``N(G(a,b)) - G(a,b,N) - G(a,N(b)) - G(N(a),b)`` (the head, enabled by
    ``gamma_head``) ``- 2 N(a,b)`` (the tail, enabled by ``gamma_tail``).
    Free thin children of the vertex are spread over all pattern nodes.
    """
    kind = flat.kinds[v]
    color = flat.colors[v]
    if kind == NOISE:
        return [
            (1, [(new_kind, 0, -1, -1), (NOISE, color, 0, THIN)], {}),
            (-1, [(NOISE, color, -1, -1), (new_kind, 0, 0, THIN)], {}),
        ]
    if kind == GAMMA:
        a, b = [w for w in range(len(flat)) if flat.parents[w] == v and flat.edges[w] == THICK]
        rules = []
        if gamma_head:
            rules += [
                (1, [(new_kind, 0, -1, -1), (GAMMA, 0, 0, THIN)], {a: (1, THICK), b: (1, THICK)}),
                (-1, [(GAMMA, 0, -1, -1), (new_kind, 0, 0, THIN)], {a: (0, THICK), b: (0, THICK)}),
                (-1, [(GAMMA, 0, -1, -1), (new_kind, 0, 0, THICK)], {a: (0, THICK), b: (1, THIN)}),
                (-1, [(GAMMA, 0, -1, -1), (new_kind, 0, 0, THICK)], {b: (0, THICK), a: (1, THIN)}),
            ]
        if gamma_tail:
            rules.append((-2, [(new_kind, 0, -1, -1)], {a: (0, THIN), b: (0, THIN)}))
        return rules
    return []


def _check_plain(t: Tree):
    if count_kind(t, DELTA) or count_kind(t, ALPHA):
        raise TreeError(f"tree {t} already contains a Delta/Alpha vertex")


def phi_geo(t: Tree) -> LinComb:
    """Vertex-by-vertex image under the local rules, Delta as the new vertex."""
    _check_plain(t)
    flat = to_flat(t)
    out = LinComb()
    for v in range(len(flat)):
        for coeff, pattern, structural in vertex_rules(flat, v, DELTA):
            for arrays in replace_vertex(flat, v, pattern, structural):
                out.add(from_flat(*arrays), coeff)
    return out


def delta_bracket(t: Tree) -> LinComb:
    """``[t, Delta]``: ``t`` grafted on a Delta root minus Delta grafted on ``t``."""
    return LinComb.of(delta(t)) - grafting_sum(t, delta())


def hat_phi_geo(x) -> LinComb:
    """``phi_geo(x) - [x, Delta]``, extended linearly."""
    return as_lincomb(x).map(lambda t: phi_geo(t) - delta_bracket(t))


def nabla(x, y) -> LinComb:
    """Covariant derivative of ``y`` along ``x``: graft ``x`` on every vertex of ``y`` plus half the thick corolla."""
    x, y = as_lincomb(x), as_lincomb(y)
    out = LinComb()
    for t1, c1 in x.items():
        for t2, c2 in y.items():
            c = c1 * c2
            out.iadd(grafting_sum(t2, t1), c)
            out.add(gamma(t1, t2), c * HALF)
    return out


# ---------------------------------------------------------------------------
# nabla words: a leaf is a color, an inner node ``(x, y)`` stands for nabla_x y

def word_str(w) -> str:
    if isinstance(w, int):
        return str(w)
    return f"N({word_str(w[0])},{word_str(w[1])})"


def word_json(w):
    if isinstance(w, int):
        return w
    return {"nabla": [word_json(w[0]), word_json(w[1])]}


def parse_word(text: str):
    text = text.replace(" ", "")
    pos = 0

    def go():
        nonlocal pos
        if text.startswith("N(", pos):
            pos += 2
            a = go()
            assert text[pos] == ",", text
            pos += 1
            b = go()
            assert text[pos] == ")", text
            pos += 1
            return (a, b)
        j = pos
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        return int(text[j:pos])

    w = go()
    if pos != len(text):
        raise ValueError(f"trailing input in word {text!r}")
    return w


@lru_cache(maxsize=None)
def expand_word(w) -> LinComb:
    if isinstance(w, int):
        return LinComb.of(noise(w))
    return nabla(expand_word(w[0]), expand_word(w[1]))


def _shapes(n: int) -> list:
    """Ordered full binary trees with ``n`` leaves (leaves are ``None``)."""
    if n == 1:
        return [None]
    out = []
    for k in range(1, n):
        for left in _shapes(k):
            for right in _shapes(n - k):
                out.append((left, right))
    return out


def _fill(shape, leaves):
    it = iter(leaves)

    def go(s):
        return next(it) if s is None else (go(s[0]), go(s[1]))

    return go(shape)


def _leaf_sequences(md: Sequence[int]) -> list[tuple[int, ...]]:
    letters = [c + 1 for c, k in enumerate(md) for _ in range(k)]
    return sorted(set(itertools.permutations(letters)))


def nabla_words(md: Sequence[int]) -> Iterator:
    """All binary nabla-words whose leaf color multiset is ``md``."""
    n = sum(md)
    seqs = _leaf_sequences(md)
    for shape in _shapes(n):
        for seq in seqs:
            yield _fill(shape, seq)


# a covariant derivative family for four Gaussian noises (colors 1, 2)
V4_WORDS = [
    "N(1,1)",
    "N(2,N(1,N(2,1)))",
    "N(1,N(2,N(2,1)))",
    "N(2,N(2,N(1,1)))",
    "N(2,N(N(2,1),1))",
    "N(N(2,1),N(2,1))",
    "N(N(1,2),N(2,1))",
    "N(N(2,2),N(1,1))",
    "N(N(2,N(2,1)),1)",
    "N(N(2,N(1,1)),2)",
    "N(N(N(2,1),1),2)",
    "N(N(N(2,1),2),1)",
    "N(1,N(N(2,1),2))",
    "N(N(1,N(2,1)),2)",
    "N(N(N(1,1),2),2)",
    "N(2,N(N(1,1),2))",
]


# ---------------------------------------------------------------------------
# symmetrized kernel and covariant span

def default_blocks(md: Sequence[int]) -> list[list[int]]:
    """Colors with equal multiplicity are interchangeable."""
    blocks: dict[int, list[int]] = {}
    for c, k in enumerate(md):
        blocks.setdefault(k, []).append(c + 1)
    return list(blocks.values())


def symmetrize(x, blocks) -> LinComb:
    """Image in the coinvariants: every tree replaced by its color-orbit representative."""
    out = LinComb()
    for t, c in as_lincomb(x).items():
        out.add(color_canonical(t, blocks), c)
    return out


@dataclass
class KernelResult:
    multidegree: tuple
    blocks: list
    basis_trees: list
    dimension: int
    kernel: list = field(default_factory=list)
    image_rank: int = 0


def kernel_basis_geo(md: Sequence[int], blocks=None, *, max_noises: int = 6) -> KernelResult:
    """Kernel of the hatted derivation on the block-symmetrized tree space of ``md``."""
    md = tuple(md)
    if blocks is None:
        blocks = default_blocks(md)
    trees = enumerate_trees(md, max_noises=max_noises)
    reps = sorted({color_canonical(t, blocks) for t in trees})
    log.info("multidegree %s: %d trees, %d orbits", md, len(trees), len(reps))
    columns = [symmetrize(hat_phi_geo(t), blocks) for t in reps]
    mat, _ = exactla.SparseMat.from_columns(columns)
    kernel = exactla.kernel_basis(mat)
    basis = [LinComb({reps[j]: c for j, c in vec.items()}) for vec in kernel]
    return KernelResult(md, blocks, reps, len(basis), basis, len(reps) - len(basis))


@dataclass
class SpanResult:
    multidegree: tuple
    blocks: list
    dimension: int
    words: list
    generators: list
    independent: list


def covariant_span(md: Sequence[int], blocks=None, *, max_noises: int = 6) -> SpanResult:
    """Span of all iterated covariant derivatives with leaf multiset ``md``."""
    md = tuple(md)
    if sum(md) > max_noises:
        raise EnumerationOverflow(f"{sum(md)} noises exceed the bound {max_noises}")
    if blocks is None:
        blocks = default_blocks(md)
    words = list(nabla_words(md))
    gens = [symmetrize(expand_word(w), blocks) for w in words]
    indep = exactla.row_basis(gens)
    return SpanResult(md, blocks, len(indep), words, gens, indep)


def span_in_kernel(gens: Sequence[LinComb], blocks) -> bool:
    return all(not symmetrize(hat_phi_geo(g), blocks) for g in gens)
