"""Truncated symmetric functions in the power-sum, elementary and monomial bases.

Everything is stored sparsely as ``{partition: Fraction}``.  The power-sum basis
is the hub: products and plethysm are computed there, and the other bases are
reached through Newton identities (``e``) and the transition counts ``L``
(``m``).
"""
from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping

Partition = tuple  # weakly decreasing positive ints
BASES = ("p", "e", "m")


def partition(parts) -> Partition:
    parts = tuple(sorted((int(x) for x in parts), reverse=True))
    if any(x <= 0 for x in parts):
        raise ValueError(f"partition parts must be positive: {parts}")
    return parts


def partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def z(lam: Partition) -> int:
    """Centralizer order of the cycle type ``lam``."""
    out = 1
    for part, mult in Counter(lam).items():
        out *= part ** mult * math.factorial(mult)
    return out


def class_size(lam: Partition) -> int:
    return math.factorial(sum(lam)) // z(lam)


# ---------------------------------------------------------------------------
# multiplicative-basis arithmetic on {partition: coeff}

def _merge(a: Partition, b: Partition) -> Partition:
    return tuple(sorted(a + b, reverse=True))


def _mul(a: Mapping, b: Mapping, degree: int) -> dict:
    out: dict = {}
    for la, ca in a.items():
        wa = sum(la)
        for lb, cb in b.items():
            if wa + sum(lb) > degree:
                continue
            key = _merge(la, lb)
            v = out.get(key, 0) + ca * cb
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def _add_into(out: dict, a: Mapping, scale=1) -> dict:
    for k, v in a.items():
        nv = out.get(k, 0) + v * scale
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


# ---------------------------------------------------------------------------
# transition data

@lru_cache(maxsize=None)
def _p_in_e(n: int) -> dict:
    """Newton: ``p_n = (-1)^(n-1) n e_n + sum_{i<n} (-1)^(i-1) e_i p_{n-i}``."""
    out = {(n,): Fraction((-1) ** (n - 1) * n)}
    for i in range(1, n):
        _add_into(out, _mul({(i,): Fraction(1)}, _p_in_e(n - i), n), (-1) ** (i - 1))
    return out


@lru_cache(maxsize=None)
def _e_in_p(n: int) -> dict:
    """``n e_n = sum_{i=1..n} (-1)^(i-1) e_{n-i} p_i``."""
    if n == 0:
        return {(): Fraction(1)}
    out: dict = {}
    for i in range(1, n + 1):
        _add_into(out, _mul(_e_in_p(n - i), {(i,): Fraction(1)}, n), Fraction((-1) ** (i - 1), n))
    return out


def _power_product(lam: Partition, single, degree: int) -> dict:
    out = {(): Fraction(1)}
    for part in lam:
        out = _mul(out, single(part), degree)
    return out


@lru_cache(maxsize=None)
def _p_to_m_row(mu: Partition) -> dict:
    """``p_mu = sum_lam L(mu, lam) m_lam`` over coarsenings ``lam`` of ``mu``."""
    out = {}
    for lam in partitions(sum(mu)):
        if len(lam) <= len(mu):
            n = _count_maps(mu, lam)
            if n:
                out[lam] = Fraction(n)
    return out


def _count_maps(mu: Partition, lam: Partition) -> int:
    """Number of maps f from the parts of ``mu`` to positions of ``lam`` with fibre sums ``lam``."""
    @lru_cache(maxsize=None)
    def go(i, rest):
        if i == len(mu):
            return 1 if not any(rest) else 0
        total = 0
        for j, r in enumerate(rest):
            if r >= mu[i]:
                total += go(i + 1, rest[:j] + (r - mu[i],) + rest[j + 1:])
        return total

    return go(0, lam)


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SymFunc:
    """Symmetric function truncated at total degree ``degree``."""
    basis: str
    degree: int
    terms: dict = field(default_factory=dict, hash=False, compare=False)

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"unknown basis {self.basis!r}")
        clean = {}
        for lam, c in self.terms.items():
            lam = partition(lam)
            c = Fraction(c)
            if c and sum(lam) <= self.degree:
                clean[lam] = clean.get(lam, 0) + c
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if v})

    # construction ---------------------------------------------------------
    @classmethod
    def gen(cls, basis: str, lam, degree: int, coeff=1) -> "SymFunc":
        return cls(basis, degree, {partition(lam if not isinstance(lam, int) else (lam,)): coeff})

    @classmethod
    def one(cls, degree: int) -> "SymFunc":
        return cls("p", degree, {(): 1})

    # conversion -----------------------------------------------------------
    def to(self, basis: str) -> "SymFunc":
        return convert(self, basis)

    # arithmetic (results in the p basis unless both operands share e/p) ---
    def _lift(self, other) -> tuple[dict, dict, str, int]:
        degree = min(self.degree, other.degree)
        if self.basis == other.basis and self.basis in ("p", "e"):
            return self.terms, other.terms, self.basis, degree
        return self.to("p").terms, other.to("p").terms, "p", degree

    def __add__(self, other: "SymFunc") -> "SymFunc":
        a, b, basis, d = (self.terms, other.terms, self.basis, min(self.degree, other.degree)) \
            if self.basis == other.basis else self._lift(other)
        return SymFunc(basis, d, _add_into(dict(a), b))

    def __neg__(self):
        return SymFunc(self.basis, self.degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SymFunc):
            a, b, basis, d = self._lift(other)
            return SymFunc(basis, d, _mul(a, b, d))
        other = Fraction(other)
        return SymFunc(self.basis, self.degree, {k: v * other for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        d = min(self.degree, other.degree)
        return self.to("p").truncate(d).terms == other.to("p").truncate(d).terms

    def truncate(self, degree: int) -> "SymFunc":
        return SymFunc(self.basis, min(degree, self.degree), self.terms)

    def homogeneous(self, n: int) -> "SymFunc":
        return SymFunc(self.basis, self.degree, {k: v for k, v in self.terms.items() if sum(k) == n})

    def coefficient(self, lam) -> Fraction:
        return self.terms.get(partition(lam), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def sorted_terms(self) -> list[tuple[Partition, Fraction]]:
        # by degree, then lexicographic (e_1^n first)
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for lam, c in self.sorted_terms():
            mono = _mono_str(self.basis, lam)
            if not mono:
                s = str(c)
            elif c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            else:
                s = f"{c}{mono}"
            out.append(s)
        return " + ".join(out).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"basis": self.basis, "degree": self.degree,
                "terms": [{"partition": list(lam), "coeff": str(c)} for lam, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, d: Mapping) -> "SymFunc":
        return cls(d["basis"], d["degree"], {tuple(t["partition"]): Fraction(t["coeff"]) for t in d["terms"]})


def _mono_str(basis: str, lam: Partition) -> str:
    if not lam:
        return ""
    if basis == "m":
        return "m_(" + ",".join(map(str, lam)) + ")"
    out = []
    for part, mult in sorted(Counter(lam).items(), reverse=True):
        out.append(f"{basis}_{part}" + (f"^{mult}" if mult > 1 else ""))
    return "".join(out)


_TERM = re.compile(r"([+-]?)(\d*/?\d*)((?:[a-z]_(?:\([\d,]+\)|\{?\d+\}?)(?:\^\{?\d+\}?)?)*)")
_FACTOR = re.compile(r"([a-z])_(?:\(([\d,]+)\)|\{?(\d+)\}?)(?:\^\{?(\d+)\}?)?")


def parse_symfunc(text: str, basis: str, degree: int) -> SymFunc:
    """Parse sums like ``40e_1^6-19e_2e_1^4`` or ``2m_(2,1)`` in the given basis."""
    text = text.replace(" ", "").replace("\\", "")
    terms: dict = {}
    pos = 0
    while pos < len(text):
        mt = _TERM.match(text, pos)
        sign, coeff, mono = mt.groups()
        if mt.end() == pos or not (coeff or mono):
            raise ValueError(f"cannot parse {text[pos:]!r}")
        pos = mt.end()
        c = Fraction(coeff) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        parts = []
        for b, group, idx, exp in _FACTOR.findall(mono):
            if b != basis:
                raise ValueError(f"monomial in basis {b!r}, expected {basis!r}")
            if group:
                parts += [int(x) for x in group.split(",")] * int(exp or 1)
            else:
                parts += [int(idx)] * int(exp or 1)
        key = partition(parts)
        terms[key] = terms.get(key, 0) + c
    return SymFunc(basis, degree, terms)


# ---------------------------------------------------------------------------
# basis change

def convert(f: SymFunc, basis: str) -> SymFunc:
    if basis not in BASES:
        raise ValueError(f"unknown basis {basis!r}")
    if f.basis == basis:
        return f
    p = _to_p(f)
    return p if basis == "p" else _from_p(p, basis)


def _to_p(f: SymFunc) -> SymFunc:
    if f.basis == "p":
        return f
    out: dict = {}
    if f.basis == "e":
        for lam, c in f.terms.items():
            _add_into(out, _power_product(lam, _e_in_p, f.degree), c)
    else:
        for lam, c in f.terms.items():
            _add_into(out, _m_in_p(lam), c)
    return SymFunc("p", f.degree, out)


def _from_p(f: SymFunc, basis: str) -> SymFunc:
    out: dict = {}
    if basis == "e":
        for lam, c in f.terms.items():
            _add_into(out, _power_product(lam, _p_in_e, f.degree), c)
    else:
        for lam, c in f.terms.items():
            _add_into(out, _p_to_m_row(lam), c)
    return SymFunc(basis, f.degree, out)


@lru_cache(maxsize=None)
def _m_in_p(lam: Partition) -> dict:
    """Invert the unitriangular-up-to-diagonal ``p -> m`` transition by recursion on coarseness."""
    row = _p_to_m_row(lam)
    # p_lam = L(lam,lam) m_lam + sum over strictly coarser mu of L(lam,mu) m_mu
    diag = row[lam]
    out = {lam: Fraction(1) / diag}
    for mu, c in row.items():
        if mu != lam:
            _add_into(out, _m_in_p(mu), -c / diag)
    return out


# ---------------------------------------------------------------------------
# plethysm and Koszul inversion

def _adams(f_terms: Mapping, k: int) -> dict:
    return {tuple(k * x for x in lam): c for lam, c in f_terms.items()}


def plethysm(f: SymFunc, g: SymFunc) -> SymFunc:
    """``f o g``: each ``p_n`` of ``f`` becomes ``g`` with every ``p_j`` replaced by ``p_{jn}``."""
    g = g.to("p")
    if g.constant_term():
        raise ValueError("plethysm needs an inner function without constant term")
    f = f.to("p")
    degree = min(f.degree, g.degree)
    return SymFunc("p", degree, _plethysm_terms(f.terms, g.terms, degree))


def _plethysm_terms(f_terms: Mapping, g_terms: Mapping, degree: int) -> dict:
    cache: dict = {}

    def adams(k):
        if k not in cache:
            cache[k] = {lam: c for lam, c in _adams(g_terms, k).items() if sum(lam) <= degree}
        return cache[k]

    out: dict = {}
    for lam, c in f_terms.items():
        prod = {(): Fraction(1)}
        for part in lam:
            prod = _mul(prod, adams(part), degree)
        _add_into(out, prod, c)
    return out


def la_dual_series(degree: int) -> SymFunc:
    """``1 - exp(-sum p_i/i) - (p_1^2 + p_2)/2``, the sign-twisted dual character."""
    # exp(-sum p_i/i) = sum_n (-1)^n e_n
    terms = {(n,): Fraction((-1) ** (n + 1)) for n in range(1, degree + 1)}
    g = SymFunc("e", degree, terms).to("p")
    return g - SymFunc("p", degree, {(1, 1): Fraction(1, 2), (2,): Fraction(1, 2)})


def koszul_inverse(g: SymFunc, maxdeg: int) -> SymFunc:
    """The ``F`` with ``F o g = p_1`` up to degree ``maxdeg``, solved degree by degree."""
    g = g.to("p").truncate(maxdeg)
    if g.constant_term():
        raise ValueError("series has a constant term")
    if g.homogeneous(1).terms != {(1,): 1}:
        raise ValueError("linear term must be p_1 for plethystic inversion")
    f: dict = {(1,): Fraction(1)}
    for n in range(2, maxdeg + 1):
        comp = _plethysm_terms(f, g.terms, n)
        for lam, c in comp.items():
            if sum(lam) == n:
                f[lam] = f.get(lam, 0) - c
    return SymFunc("p", maxdeg, f)


@lru_cache(maxsize=None)
def f_la(maxdeg: int) -> SymFunc:
    """Character of the Lie-admissible operad in the e basis."""
    return koszul_inverse(la_dual_series(maxdeg), maxdeg).to("e")


# ---------------------------------------------------------------------------
# specializations

Poly = dict  # {exponent tuple: Fraction}


def poly_mul(a: Poly, b: Poly, cap: tuple | None = None) -> Poly:
    """Product of sparse polynomials, dropping monomials that exceed ``cap`` in some variable."""
    out: Poly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if cap is not None and any(x > m for x, m in zip(e, cap)):
                continue
            v = out.get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def elementary_poly(i: int, k: int) -> Poly:
    import itertools
    out: Poly = {}
    for idx in itertools.combinations(range(k), i):
        e = [0] * k
        for j in idx:
            e[j] = 1
        out[tuple(e)] = Fraction(1)
    return out


def evaluate_e(f: SymFunc, values: Mapping[int, Poly], nvars: int, cap: tuple | None = None) -> Poly:
    """Substitute ``e_i -> values[i]`` (missing indices are zero)."""
    f = f.to("e")
    one = {(0,) * nvars: Fraction(1)}
    powers: dict = {}

    def power(i, m):
        key = (i, m)
        if key not in powers:
            powers[key] = one if m == 0 else poly_mul(power(i, m - 1), values[i], cap)
        return powers[key]

    out: Poly = {}
    for lam, c in f.terms.items():
        if any(not values.get(i) for i in lam):
            continue
        prod = one
        for i, m in sorted(Counter(lam).items()):
            prod = poly_mul(prod, power(i, m), cap)
            if not prod:
                break
        _add_into(out, prod, c)
    return out


def expand_in_variables(f: SymFunc, k: int) -> Poly:
    """Polynomial in ``t_1..t_k`` obtained from ``p_r = sum t_i^r``."""
    return evaluate_e(f, {i: elementary_poly(i, k) for i in range(1, k + 1)}, k)


def egf_specialize(f: SymFunc) -> list[Fraction]:
    """Coefficients of ``t^n`` after ``p_1 -> t`` and ``p_i -> 0`` for ``i >= 2``."""
    f = f.to("p")
    out = [Fraction(0)] * (f.degree + 1)
    for lam, c in f.terms.items():
        if all(x == 1 for x in lam):
            out[len(lam)] += c
    return out
