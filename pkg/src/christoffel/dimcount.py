"""Invariant dimensions from the Lie-admissible character.

A component is described by blocks ``(j, n_j)``: ``n_j`` variables of degree
``j`` permuted by ``Sigma_{n_j}``.  For each tuple of cycle types we evaluate
the character at the twisted elementary values ``e_i(sigma a)`` and read off the
coefficient of the target monomial; averaging over the group gives the
dimension of the invariants.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .symfunc import Poly, SymFunc, class_size, evaluate_e, f_la, partitions, poly_mul

log = logging.getLogger(__name__)


class DimensionError(ArithmeticError):
    """Group average that is not a non-negative integer."""


@dataclass(frozen=True)
class BlockSpec:
    blocks: tuple  # ((j, n_j), ...) with j >= 2 in increasing order

    def __post_init__(self):
        blocks = tuple(sorted((int(j), int(n)) for j, n in self.blocks if n))
        if any(j < 1 for j, _ in blocks):
            raise ValueError("block degrees must be positive")
        if len({j for j, _ in blocks}) != len(blocks):
            raise ValueError("repeated block degree")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_parts(cls, parts: Sequence[int]) -> "BlockSpec":
        """``(2, 2, 3)`` means two degree-2 variables swapped by Sigma_2 and one degree-3 variable."""
        c = {}
        for j in parts:
            c[j] = c.get(j, 0) + 1
        return cls(tuple(c.items()))

    @classmethod
    def gaussian(cls, k: int) -> "BlockSpec":
        return cls(((2, k),))

    @property
    def k(self) -> int:
        return sum(n for _, n in self.blocks)

    @property
    def total(self) -> int:
        return sum(j * n for j, n in self.blocks)

    @property
    def target(self) -> tuple:
        return tuple(j for j, n in self.blocks for _ in range(n))

    @property
    def parts(self) -> tuple:
        return self.target

    @property
    def group_order(self) -> int:
        return math.prod(math.factorial(n) for _, n in self.blocks)

    def name(self) -> str:
        return "U_" + ",".join(map(str, self.parts))

    def class_tuples(self) -> Iterator[tuple]:
        return itertools.product(*(list(partitions(n)) for _, n in self.blocks))

    def cycles(self, classes: Sequence[tuple]) -> list[list[int]]:
        """Variable index cycles realizing the given per-block cycle types."""
        out, start = [], 0
        for (_, n), lam in zip(self.blocks, classes):
            if sum(lam) != n:
                raise ValueError(f"cycle type {lam} does not partition {n}")
            for part in lam:
                out.append(list(range(start, start + part)))
                start += part
        return out


def twisted_elementaries(cycles: Sequence[Sequence[int]], k: int) -> dict[int, Poly]:
    """``e_i(sigma a)`` from the characteristic polynomial ``prod_c (X^len - prod t)``."""
    # polynomial in X with coefficients in Poly
    charpoly: dict[int, Poly] = {0: {(0,) * k: Fraction(1)}}
    for cyc in cycles:
        mono = [0] * k
        for i in cyc:
            mono[i] += 1
        factor = {len(cyc): {(0,) * k: Fraction(1)}, 0: {tuple(mono): Fraction(-1)}}
        new: dict[int, Poly] = {}
        for da, pa in charpoly.items():
            for db, pb in factor.items():
                acc = new.setdefault(da + db, {})
                for e, c in poly_mul(pa, pb).items():
                    v = acc.get(e, 0) + c
                    if v:
                        acc[e] = v
                    else:
                        acc.pop(e, None)
        charpoly = new
    out = {}
    for i in range(1, k + 1):
        coeff = charpoly.get(k - i, {})
        out[i] = {e: (-1) ** i * c for e, c in coeff.items() if c}
    return out


def truncated_piece(F: SymFunc, spec: BlockSpec) -> SymFunc:
    n = spec.total
    if F.degree < n:
        raise ValueError(f"character truncated at degree {F.degree} < {n}")
    piece = F.to("e").homogeneous(n)
    return SymFunc("e", n, {lam: c for lam, c in piece.terms.items() if max(lam) <= spec.k})


def class_coefficient(F: SymFunc, spec: BlockSpec, classes: Sequence[tuple]) -> Fraction:
    piece = truncated_piece(F, spec)
    values = twisted_elementaries(spec.cycles(classes), spec.k)
    poly = evaluate_e(piece, values, spec.k, cap=spec.target)
    return poly.get(spec.target, Fraction(0))


@dataclass
class ComponentResult:
    spec: BlockSpec
    coefficients: list  # [(classes, class size, coefficient)]
    dimension: int

    def as_dict(self) -> dict:
        return {
            "component": self.spec.name(),
            "blocks": [list(b) for b in self.spec.blocks],
            "classes": [{"cycle_types": [list(c) for c in cl], "size": size, "coefficient": str(coeff)}
                        for cl, size, coeff in self.coefficients],
            "dimension": self.dimension,
        }


def invariant_component(F: SymFunc, spec: BlockSpec) -> ComponentResult:
    rows = []
    total = Fraction(0)
    for classes in spec.class_tuples():
        size = math.prod(class_size(lam) for lam in classes)
        coeff = class_coefficient(F, spec, classes)
        rows.append((classes, size, coeff))
        total += size * coeff
    avg = total / spec.group_order
    if avg.denominator != 1 or avg < 0:
        raise DimensionError(f"{spec.name()}: group average {avg} is not a non-negative integer")
    log.info("%s: %d", spec.name(), avg)
    return ComponentResult(spec, rows, int(avg))


def invariant_dim(F: SymFunc, spec: BlockSpec) -> int:
    return invariant_component(F, spec).dimension


def gaussian_components(n: int, F: SymFunc | None = None) -> list[ComponentResult]:
    F = F if F is not None else f_la(2 * n)
    return [invariant_component(F, BlockSpec.gaussian(k)) for k in range(1, n + 1)]


def gaussian_total(n: int) -> int:
    """Sum of the Sigma_k invariant dimensions for ``k = 1..n`` pairs."""
    return sum(c.dimension for c in gaussian_components(n))


def cumulant_specs(n: int) -> list[BlockSpec]:
    """All components with parts ``>= 2`` and total at most ``n``."""
    out = []
    for m in range(2, n + 1):
        for lam in partitions(m):
            if min(lam) >= 2:
                out.append(BlockSpec.from_parts(lam))
    return out


def cumulant_components(n: int, F: SymFunc | None = None) -> list[ComponentResult]:
    F = F if F is not None else f_la(n)
    return [invariant_component(F, spec) for spec in cumulant_specs(n)]


def cumulant_total(n: int) -> tuple[int, list[ComponentResult]]:
    comps = cumulant_components(n)
    return sum(c.dimension for c in comps), comps
