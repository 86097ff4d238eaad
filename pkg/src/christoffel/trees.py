"""Decorated rooted trees: canonical form, statistics and enumeration.

A tree is an immutable ``Tree(kind, color, children)`` named tuple.  ``children``
is a tuple of ``(edge, subtree)`` pairs sorted increasingly, so two isomorphic
decorated trees are equal as Python objects and hash identically.  Thick edges
sort before thin ones, which puts the two distinguished inputs of a Gamma
vertex first.

Vertex kinds are small integers: noise (white, carries a positive color or
label), Gamma (black), Delta (the extra arity-zero generator) and Alpha (the
twisting element).  Non-noise vertices carry color 0.
"""
from __future__ import annotations

import itertools
import re
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, NamedTuple, Sequence

NOISE, GAMMA, DELTA, ALPHA = 0, 1, 2, 3
THICK, THIN = 0, 1

KIND_NAMES = {NOISE: "noise", GAMMA: "gamma", DELTA: "delta", ALPHA: "alpha"}
EDGE_NAMES = {THICK: "thick", THIN: "thin"}
_KIND_CODES = {v: k for k, v in KIND_NAMES.items()}
_EDGE_CODES = {v: k for k, v in EDGE_NAMES.items()}


class TreeError(ValueError):
    """Structurally invalid tree."""


class EnumerationOverflow(RuntimeError):
    """Requested enumeration exceeds the configured bounds."""


class Tree(NamedTuple):
    kind: int
    color: int
    children: tuple = ()

    def __str__(self) -> str:
        return encode(self)

    def __repr__(self) -> str:
        return f"Tree({encode(self)!r})"


def noise(color: int, *children) -> Tree:
    """Noise vertex; ``children`` are subtrees attached by thin edges."""
    return make(NOISE, color, [(THIN, c) for c in children])


def gamma(left: Tree, right: Tree, *thin) -> Tree:
    return make(GAMMA, 0, [(THICK, left), (THICK, right)] + [(THIN, c) for c in thin])


def delta(*children) -> Tree:
    return make(DELTA, 0, [(THIN, c) for c in children])


def alpha(*children) -> Tree:
    return make(ALPHA, 0, [(THIN, c) for c in children])


def make(kind: int, color: int, children: Iterable[tuple[int, Tree]]) -> Tree:
    """Build a tree from already canonical subtrees, checking local invariants."""
    children = tuple(sorted(children))
    _check_vertex(kind, color, children, "root")
    return Tree(kind, color, children)


def _check_vertex(kind, color, children, where):
    if kind not in KIND_NAMES:
        raise TreeError(f"unknown vertex kind {kind!r} at {where}")
    nthick = sum(1 for e, _ in children if e == THICK)
    if kind == GAMMA:
        if nthick != 2:
            raise TreeError(f"Gamma vertex at {where} has {nthick} thick children, expected 2")
        if color != 0:
            raise TreeError(f"Gamma vertex at {where} carries a color")
    else:
        if nthick:
            raise TreeError(f"{KIND_NAMES[kind]} vertex at {where} has thick children")
        if kind == NOISE and color <= 0:
            raise TreeError(f"noise vertex at {where} needs a positive color, got {color}")
        if kind != NOISE and color != 0:
            raise TreeError(f"{KIND_NAMES[kind]} vertex at {where} carries a color")


def canonicalize(raw, _path: str = "root") -> Tree:
    """Canonical representative of a raw tree.

    ``raw`` is ``(kind, color, children)`` with children an arbitrary iterable of
    ``(edge, raw_child)`` pairs.  Isomorphic raw trees give equal results.
    """
    kind, color, children = raw
    kids = []
    for i, (edge, child) in enumerate(children):
        if edge not in EDGE_NAMES:
            raise TreeError(f"unknown edge kind {edge!r} below {_path}")
        kids.append((edge, canonicalize(child, f"{_path}.{i}")))
    kids.sort()
    kids = tuple(kids)
    _check_vertex(kind, color, kids, _path)
    return Tree(kind, color, kids)


# ---------------------------------------------------------------------------
# flat, id-addressed working form

class Flat(NamedTuple):
    """Preorder arrays; vertex 0 is the root and ``parents[0] == -1``."""

    kinds: tuple
    colors: tuple
    parents: tuple
    edges: tuple

    def __len__(self):
        return len(self.kinds)

    def children(self, v: int) -> list[int]:
        return [w for w, p in enumerate(self.parents) if p == v]


def to_flat(t: Tree) -> Flat:
    """Preorder flattening of a canonical tree; vertex ids are canonical positions."""
    kinds, colors, parents, edges = [], [], [], []

    def walk(node, parent, edge):
        idx = len(kinds)
        kinds.append(node.kind)
        colors.append(node.color)
        parents.append(parent)
        edges.append(edge)
        for e, c in node.children:
            walk(c, idx, e)

    walk(t, -1, -1)
    return Flat(tuple(kinds), tuple(colors), tuple(parents), tuple(edges))


def from_flat(kinds: Sequence[int], colors: Sequence[int], parents: Sequence[int],
              edges: Sequence[int]) -> Tree:
    """Canonical tree from parent arrays (any vertex order, exactly one root)."""
    kids: list[list[int]] = [[] for _ in kinds]
    root = -1
    for v, p in enumerate(parents):
        if p < 0:
            if root >= 0:
                raise TreeError("flat tree has two roots")
            root = v
        else:
            kids[p].append(v)
    if root < 0:
        raise TreeError("flat tree has no root")

    def build(v):
        ch = tuple(sorted((edges[w], build(w)) for w in kids[v]))
        _check_vertex(kinds[v], colors[v], ch, f"vertex {v}")
        return Tree(kinds[v], colors[v], ch)

    return build(root)


def from_flat_signed(kinds, colors, parents, edges, alpha_rank) -> tuple[Tree, int]:
    """Canonical tree plus the orientation sign of its Alpha vertices.

    Alpha vertices are odd: ``alpha_rank[v]`` gives the position of Alpha vertex
    ``v`` in the working orientation.  The canonical orientation lists Alpha
    vertices in canonical preorder; the returned sign is that of the permutation
    between the two.  A tree with an odd automorphism of its Alpha vertices is
    zero and yields sign 0.
    """
    kids: list[list[int]] = [[] for _ in kinds]
    root = -1
    for v, p in enumerate(parents):
        if p < 0:
            root = v
        else:
            kids[p].append(v)
    odd_automorphism = False
    order: list[int] = []

    def build(v):
        nonlocal odd_automorphism
        built = []
        for w in kids[v]:
            sub, n_alpha, seq = build(w)
            built.append(((edges[w], sub), n_alpha, seq))
        built.sort(key=lambda x: x[0])
        for a, b in zip(built, built[1:]):
            if a[0] == b[0] and a[1] % 2 == 1:
                odd_automorphism = True
        ch = tuple(b[0] for b in built)
        _check_vertex(kinds[v], 0 if kinds[v] == ALPHA else colors[v], ch, f"vertex {v}")
        seq = [v] if kinds[v] == ALPHA else []
        n_alpha = len(seq)
        for b in built:
            seq.extend(b[2])
            n_alpha += b[1]
        return Tree(kinds[v], 0 if kinds[v] == ALPHA else colors[v], ch), n_alpha, seq

    tree, _, order = build(root)
    if odd_automorphism:
        return tree, 0
    return tree, permutation_sign([alpha_rank[v] for v in order])


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (distinct entries)."""
    sign = 1
    seen = sorted(range(len(seq)), key=lambda i: seq[i])
    visited = [False] * len(seq)
    for i in range(len(seq)):
        if visited[i]:
            continue
        j, length = i, 0
        while not visited[j]:
            visited[j] = True
            j = seen[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# ---------------------------------------------------------------------------
# statistics

def vertices(t: Tree) -> Iterable[Tree]:
    """Subtrees rooted at each vertex, in canonical preorder."""
    yield t
    for _, c in t.children:
        yield from vertices(c)


def size(t: Tree) -> int:
    return 1 + sum(size(c) for _, c in t.children)


def count_kind(t: Tree, kind: int) -> int:
    return (t.kind == kind) + sum(count_kind(c, kind) for _, c in t.children)


def edge_counts(t: Tree) -> tuple[int, int]:
    """(number of thick edges, number of thin edges)."""
    thick = thin = 0
    for v in vertices(t):
        for e, _ in v.children:
            if e == THICK:
                thick += 1
            else:
                thin += 1
    return thick, thin


def multidegree(t: Tree) -> dict[int, int]:
    """Occurrences of each noise color."""
    return dict(Counter(v.color for v in vertices(t) if v.kind == NOISE))


def symmetry_factor(t: Tree) -> int:
    """Order of the decorated automorphism group."""
    s = 1
    for v in vertices(t):
        for mult in Counter(v.children).values():
            s *= factorial(mult)
    return s


def degree(t: Tree, noise_degree=(Fraction(-3, 2), Fraction(-1))) -> tuple[Fraction, Fraction]:
    """Degree as an affine expression ``a + b*kappa``; thin edges weigh 2, thick 1."""
    if count_kind(t, DELTA) or count_kind(t, ALPHA):
        raise TreeError("degree is defined on noise/Gamma trees only")
    a0, b0 = (Fraction(x) for x in noise_degree)
    n = count_kind(t, NOISE)
    thick, thin = edge_counts(t)
    return a0 * n + 2 * thin + thick, b0 * n


def is_negative(deg: tuple[Fraction, Fraction]) -> bool:
    """Negativity for all small enough kappa > 0."""
    a, b = deg
    return a < 0 or (a == 0 and b < 0)


def relabel(t: Tree, mapping) -> Tree:
    """Apply ``mapping`` (dict or callable) to noise colors and re-canonicalize.

    Colors missing from a dict are kept.
    """
    f = mapping if callable(mapping) else (lambda c: mapping.get(c, c))

    def go(node):
        color = f(node.color) if node.kind == NOISE else 0
        return (node.kind, color, [(e, go(c)) for e, c in node.children])

    return canonicalize(go(t))


def color_canonical(t: Tree, blocks: Sequence[Sequence[int]] | None = None) -> Tree:
    """Minimal representative over color permutations preserving ``blocks``.

    Colors inside a block may be exchanged only when they occur equally often in
    ``t``.  With ``blocks=None`` all colors form one block.
    """
    md = multidegree(t)
    colors = sorted(md)
    if blocks is None:
        blocks = [colors]
    # refine each block by multiplicity: only same-multiplicity swaps are allowed
    groups = []
    for block in blocks:
        by_mult: dict[int, list[int]] = {}
        for c in block:
            if c in md:
                by_mult.setdefault(md[c], []).append(c)
        groups.extend(sorted(g) for g in by_mult.values() if len(g) > 1)
    if not groups:
        return t
    best = t
    for perms in itertools.product(*(itertools.permutations(g) for g in groups)):
        mapping = {}
        for g, p in zip(groups, perms):
            mapping.update(zip(g, p))
        cand = relabel(t, lambda c: mapping.get(c, c))
        if cand < best:
            best = cand
    return best


# ---------------------------------------------------------------------------
# text and JSON encodings

def encode(t: Tree) -> str:
    """Compact deterministic string, e.g. ``G(*1,*2,3)`` or ``1(2)``.

    Noise vertices print their color, Gamma ``G``, Delta ``D``, Alpha ``A``;
    thick children are prefixed with ``*``.
    """
    head = str(t.color) if t.kind == NOISE else "GDA"[t.kind - 1]
    if not t.children:
        return head
    inner = ",".join(("*" if e == THICK else "") + encode(c) for e, c in t.children)
    return f"{head}({inner})"


_TOKEN = re.compile(r"\s*(\d+|[GDA()*,])")


def decode(text: str) -> Tree:
    """Inverse of :func:`encode` (accepts any child order)."""
    tokens = _TOKEN.findall(text)
    if "".join(tokens) != re.sub(r"\s+", "", text):
        raise TreeError(f"cannot parse tree {text!r}")
    pos = 0

    def node():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        if tok.isdigit():
            kind, color = NOISE, int(tok)
        elif tok in "GDA":
            kind, color = {"G": GAMMA, "D": DELTA, "A": ALPHA}[tok], 0
        else:
            raise TreeError(f"unexpected {tok!r} in {text!r}")
        children = []
        if pos < len(tokens) and tokens[pos] == "(":
            pos += 1
            while True:
                edge = THIN
                if tokens[pos] == "*":
                    edge = THICK
                    pos += 1
                children.append((edge, node()))
                tok = tokens[pos]
                pos += 1
                if tok == ")":
                    break
                if tok != ",":
                    raise TreeError(f"unexpected {tok!r} in {text!r}")
        return (kind, color, children)

    try:
        raw = node()
    except IndexError:
        raise TreeError(f"unexpected end of {text!r}") from None
    if pos != len(tokens):
        raise TreeError(f"trailing input in {text!r}")
    return canonicalize(raw)


def to_json(t: Tree) -> dict:
    d = {"kind": KIND_NAMES[t.kind]}
    if t.kind == NOISE:
        d["color"] = t.color
    d["children"] = [{"edge": EDGE_NAMES[e], "node": to_json(c)} for e, c in t.children]
    return d


def from_json(d: dict) -> Tree:
    def go(n):
        kind = _KIND_CODES[n["kind"]]
        color = n.get("color", 0) if kind == NOISE else 0
        return (kind, color, [(_EDGE_CODES[c["edge"]], go(c["node"])) for c in n.get("children", [])])

    return canonicalize(go(d))


# ---------------------------------------------------------------------------
# enumeration

def _submultisets(m: tuple[int, ...]):
    for sub in itertools.product(*(range(k + 1) for k in m)):
        yield sub


def _minus(a, b):
    return tuple(x - y for x, y in zip(a, b))


@lru_cache(maxsize=None)
def _trees(m: tuple[int, ...]) -> tuple[Tree, ...]:
    if sum(m) == 0:
        return ()
    out = set()
    # white root
    for c, k in enumerate(m):
        if k:
            rest = list(m)
            rest[c] -= 1
            for forest in _forests(tuple(rest)):
                out.add(Tree(NOISE, c + 1, tuple((THIN, s) for s in forest)))
    # black root: unordered pair of thick subtrees plus a thin forest
    for p in _submultisets(m):
        if sum(p) < 2:
            continue
        pairs = _pairs(p)
        if not pairs:
            continue
        for forest in _forests(_minus(m, p)):
            thin = tuple((THIN, s) for s in forest)
            for a, b in pairs:
                out.add(Tree(GAMMA, 0, tuple(sorted(((THICK, a), (THICK, b)) + thin))))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _pairs(m: tuple[int, ...]) -> tuple[tuple[Tree, Tree], ...]:
    out = set()
    for a in _submultisets(m):
        if sum(a) == 0 or sum(a) == sum(m):
            continue
        b = _minus(m, a)
        for s in _trees(a):
            for t in _trees(b):
                out.add((s, t) if s <= t else (t, s))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _forests(m: tuple[int, ...]) -> tuple[tuple[Tree, ...], ...]:
    """All multisets of trees with total color content ``m`` (as sorted tuples)."""
    if sum(m) == 0:
        return ((),)
    # the first nonzero color goes into the tree listed first
    first = next(i for i, k in enumerate(m) if k)
    out = set()
    for a in _submultisets(m):
        if a[first] == 0:
            continue
        for t in _trees(a):
            for rest in _forests(_minus(m, a)):
                out.add(tuple(sorted((t,) + rest)))
    return tuple(sorted(out))


DEFAULT_MAX_NOISES = 7


def enumerate_trees(md, mode: str = "spde", *, max_noises: int = DEFAULT_MAX_NOISES,
                    negative_only: bool = False,
                    noise_degree=(Fraction(-3, 2), Fraction(-1))) -> list[Tree]:
    """All canonical trees whose noise multiset is ``md``.

    ``md`` is a sequence of multiplicities for colors 1, 2, ... (``mode="spde"``)
    or a number of distinct labels (``mode="operadic"``).
    """
    if mode == "operadic":
        md = (1,) * int(md)
    elif mode != "spde":
        raise ValueError(f"unknown mode {mode!r}")
    md = tuple(int(k) for k in md)
    if any(k < 0 for k in md):
        raise ValueError("multiplicities must be non-negative")
    if sum(md) > max_noises:
        raise EnumerationOverflow(f"{sum(md)} noises exceed the bound {max_noises}")
    out = list(_trees(md))
    if negative_only:
        out = [t for t in out if is_negative(degree(t, noise_degree))]
    return out


def count_labeled(n: int) -> int:
    """Number of Christoffel trees on ``n`` distinct labels, counted without listing.

    Follows the same white-root / black-root recursion as the enumerator, over
    label sets (only the set size matters).
    """
    from math import comb

    trees = [0] * (n + 1)
    forests = [1] + [0] * n  # forests on k labels

    for k in range(1, n + 1):
        white = k * forests[k - 1]
        black = 0
        # ordered pair of label sets of sizes (i, j), thin forest on the rest; halve
        for i in range(1, k):
            for j in range(1, k - i + 1):
                black += comb(k, i) * comb(k - i, j) * trees[i] * trees[j] * forests[k - i - j]
        trees[k] = white + black // 2
        # forest: block containing the smallest label
        forests[k] = sum(comb(k - 1, s - 1) * trees[s] * forests[k - s] for s in range(1, k + 1))
    return trees[n]


def gaussian_trees(max_pairs: int, *, negative_only: bool = True, identify: bool = True,
                   noise_degree=(Fraction(-3, 2), Fraction(-1))) -> list[Tree]:
    """Trees with every color occurring exactly twice, at most ``max_pairs`` colors."""
    out = []
    for k in range(1, max_pairs + 1):
        trees = enumerate_trees((2,) * k, negative_only=negative_only, noise_degree=noise_degree,
                                max_noises=max(2 * k, DEFAULT_MAX_NOISES))
        if identify:
            trees = sorted({color_canonical(t) for t in trees})
        out.extend(trees)
    return out
