"""Elementary differentials of trees and their behaviour under changes of coordinates.

All fields are jets in local coordinates ``w = u - basepoint``.  A Gamma vertex
contributes ``2 Gamma^beta_{ab}`` (the two thick edges differentiate
``Gamma q q`` in ``q``), thin edges differentiate the factor of the vertex they
enter, Delta vertices contribute ``h``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Mapping, Sequence

from .geoderiv import hat_phi_geo
from .jets import Jet, Substitution, const_inverse, mat_inverse, mat_mul
from .operad import LinComb, as_lincomb
from .trees import ALPHA, DELTA, GAMMA, NOISE, THICK, Tree, size

Vector = list  # list of Jet, one per coordinate


@dataclass
class FieldData:
    d: int
    m: int
    gamma: list          # gamma[a][b][c] = Gamma^a_{bc}
    sigma: list          # sigma[i][a]
    h: list | None = None
    K: list | None = None  # K[a][b] = K^a_b
    basepoint: tuple = ()
    seed: int | None = None

    def __post_init__(self):
        if not self.basepoint:
            self.basepoint = (Fraction(0),) * self.d
        if len(self.sigma) != self.m or any(len(s) != self.d for s in self.sigma):
            raise ValueError("sigma must be m vector fields of dimension d")
        if len(self.gamma) != self.d:
            raise ValueError("gamma must be d x d x d")
        for a in range(self.d):
            for b in range(self.d):
                for c in range(b):
                    if self.gamma[a][b][c] != self.gamma[a][c][b]:
                        raise ValueError("Gamma must be symmetric in its lower indices")

    def truncate(self, order: int) -> "FieldData":
        t = lambda v: [x.truncate(order) for x in v]
        return replace(
            self,
            gamma=[[t(row) for row in block] for block in self.gamma],
            sigma=[t(s) for s in self.sigma],
            h=t(self.h) if self.h is not None else None,
            K=[t(row) for row in self.K] if self.K is not None else None,
        )


def _random_poly(rng: random.Random, d: int, degree: int, density: float) -> Jet:
    coeffs = {}
    for n in range(degree + 1):
        for e in itertools.product(range(n + 1), repeat=d):
            if sum(e) == n and rng.random() < density:
                num = rng.randint(-3, 3)
                if num:
                    coeffs[e] = Fraction(num, rng.choice((1, 1, 2)))
    return Jet(d, None, coeffs)


def random_data(d: int, m: int, seed: int, *, degree: int = 2, density: float = 0.6,
                with_h: bool = True, with_K: bool = False) -> FieldData:
    """Seeded random polynomial fields with small rational coefficients."""
    rng = random.Random(seed)
    poly = lambda: _random_poly(rng, d, degree, density)
    gamma = [[[None] * d for _ in range(d)] for _ in range(d)]
    for a in range(d):
        for b in range(d):
            for c in range(b, d):
                gamma[a][b][c] = gamma[a][c][b] = poly()
    sigma = [[poly() for _ in range(d)] for _ in range(m)]
    h = [poly() for _ in range(d)] if with_h else None
    K = [[poly() for _ in range(d)] for _ in range(d)] if with_K else None
    return FieldData(d, m, gamma, sigma, h, K, seed=seed)


# ---------------------------------------------------------------------------
# evaluation

def _deriv(f: Jet, a: int, cache: dict) -> Jet:
    key = (id(f), a)
    hit = cache.get(key)
    if hit is None:
        hit = cache[key] = (f, f.deriv(a))  # keep f alive so its id stays unique
    return hit[1]


def _contract(f: Jet, kids: Sequence[Vector], order: int, cache: dict) -> Jet:
    """``D^k f [X_1, ..., X_k]`` to ``order``, with only ``f`` differentiated."""
    if not kids:
        return f.truncate(order)
    out = Jet.zero(f.d, order)
    for a, xa in enumerate(kids[0]):
        if xa.is_zero():
            continue
        df = _deriv(f, a, cache)
        if df.is_zero():
            continue
        out = out + xa * _contract(df, kids[1:], order, cache)
    return out


def _eval(t: Tree, data: FieldData, colors: Mapping[int, int], order: int, cache: dict) -> Vector:
    d = data.d
    thin = [_eval(s, data, colors, order, cache) for e, s in t.children if e != THICK]
    if t.kind == NOISE:
        base = data.sigma[colors[t.color]]
        return [_contract(base[b], thin, order, cache) for b in range(d)]
    if t.kind == DELTA:
        if data.h is None:
            raise ValueError("tree has a Delta vertex but the data has no h")
        return [_contract(data.h[b], thin, order, cache) for b in range(d)]
    if t.kind == GAMMA:
        x, y = [_eval(s, data, colors, order, cache) for e, s in t.children if e == THICK]
        out = []
        for b in range(d):
            acc = Jet.zero(d, order)
            for p in range(d):
                if x[p].is_zero():
                    continue
                for q in range(d):
                    if y[q].is_zero():
                        continue
                    g = _contract(data.gamma[b][p][q], thin, order, cache)
                    if not g.is_zero():
                        acc = acc + g * x[p] * y[q]
            out.append(acc * 2)
        return out
    raise ValueError(f"cannot evaluate vertex kind {t.kind}")


def _colors(t: Tree) -> list[int]:
    out = set()
    stack = [t]
    while stack:
        n = stack.pop()
        if n.kind == NOISE:
            out.add(n.color)
        stack.extend(s for _, s in n.children)
    return sorted(out)


def upsilon(x, data: FieldData, *, order: int = 2, assignment: Mapping[int, int] | None = None) -> Vector:
    """Vector field of ``x`` as ``d`` jets known to ``order``.

    Without ``assignment`` the colors are summed over all maps to ``range(m)``.
    """
    x = as_lincomb(x)
    total = [Jet.zero(data.d, order) for _ in range(data.d)]
    cache: dict = {}
    for t, c in x.items():
        cols = _colors(t)
        maps = [assignment] if assignment is not None else \
            [dict(zip(cols, img)) for img in itertools.product(range(data.m), repeat=len(cols))]
        for colors in maps:
            v = _eval(t, data, colors, order, cache)
            total = [a + b * c for a, b in zip(total, v)]
    for j in total:
        if j.order is not None and j.order < order:
            raise ValueError(f"data known only to order {j.order}, {order} requested")
    return total


def covariant_vf(X: Vector, Y: Vector, gamma) -> Vector:
    """``X^b d_b Y^a + Gamma^a_{bc} X^b Y^c``."""
    d = len(X)
    out = []
    for a in range(d):
        acc = Jet.zero(X[0].d)
        for b in range(d):
            acc = acc + X[b] * Y[a].deriv(b)
            for c in range(d):
                acc = acc + gamma[a][b][c] * X[b] * Y[c]
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# diffeomorphisms

@dataclass
class Diffeo:
    """``phi(basepoint + w)`` as ``d`` jets in ``w``; usually exact polynomials."""
    comps: list

    @property
    def d(self) -> int:
        return len(self.comps)

    def target(self) -> tuple:
        return tuple(j.value() for j in self.comps)

    def jacobian(self) -> list[list[Jet]]:
        return [[f.deriv(b) for b in range(self.d)] for f in self.comps]

    def local(self) -> list[Jet]:
        """``phi(basepoint + w) - phi(basepoint)``."""
        return [f - f.value() for f in self.comps]

    def inverse_local(self, order: int) -> list[Jet]:
        """``psi`` with ``phi(basepoint + psi(w')) = phi(basepoint) + w'`` to ``order``."""
        d = self.d
        a = [[f.deriv(b).value() for b in range(d)] for f in self.comps]
        ainv = const_inverse(a)
        loc = [f.truncate(order) for f in self.local()]
        lin = [sum((Jet.var(d, b, order) * a[i][b] for b in range(d)), Jet.zero(d, order)) for i in range(d)]
        quad = [loc[i] - lin[i] for i in range(d)]
        ws = [Jet.var(d, i, order) for i in range(d)]
        psi = [sum((ws[b] * ainv[i][b] for b in range(d)), Jet.zero(d, order)) for i in range(d)]
        for _ in range(order):
            sub = Substitution(psi)
            qpsi = [q.compose(sub) for q in quad]
            rhs = [ws[i] - qpsi[i] for i in range(d)]
            psi = [sum((rhs[b] * ainv[i][b] for b in range(d)), Jet.zero(d, order)) for i in range(d)]
        return psi

    def then(self, other: "Diffeo") -> "Diffeo":
        """``other o self`` (``other`` based at this map's target)."""
        return Diffeo([g.compose(self.local()) for g in other.comps])


def identity_diffeo(d: int, basepoint=None) -> Diffeo:
    basepoint = basepoint or (0,) * d
    return Diffeo([Jet.var(d, i) + basepoint[i] for i in range(d)])


def random_diffeo(d: int, seed: int, *, degree: int = 2, scale=Fraction(1, 2)) -> Diffeo:
    """Identity plus seeded linear and quadratic perturbations (fixes the basepoint)."""
    rng = random.Random(10_000 + seed)
    comps = []
    for i in range(d):
        coeffs = {}
        for e in itertools.product(range(degree + 1), repeat=d):
            n = sum(e)
            if 1 <= n <= degree and rng.random() < 0.5:
                coeffs[e] = Fraction(rng.randint(-2, 2), 2) * scale
        f = Jet(d, None, coeffs) + Jet.var(d, i)
        comps.append(f)
    phi = Diffeo(comps)
    a = [[f.deriv(b).value() for b in range(d)] for f in comps]
    const_inverse(a)  # raises when singular
    return phi


def act_vector(phi: Diffeo, v: Vector, psi: list[Jet], order: int) -> Vector:
    jac = phi.jacobian()
    d = phi.d
    out = []
    for a in range(d):
        acc = sum((jac[a][b].truncate(order) * v[b] for b in range(d)), Jet.zero(d, order))
        out.append(acc.compose(psi))
    return out


def diffeo_act(phi: Diffeo, data: FieldData, order: int) -> FieldData:
    """Push the data forward along ``phi``; the result is known to ``order``."""
    d = data.d
    jac = [[x.truncate(order + 1) for x in row] for row in phi.jacobian()]
    try:
        minv = mat_inverse(jac, order)
    except ZeroDivisionError as exc:
        raise ValueError("Jacobian of the diffeomorphism is singular at the basepoint") from exc
    psi = Substitution(phi.inverse_local(order))
    sigma = [act_vector(phi, s, psi, order) for s in data.sigma]
    h = act_vector(phi, data.h, psi, order) if data.h is not None else None
    hess = [[[phi.comps[a].deriv(b).deriv(c).truncate(order) for c in range(d)] for b in range(d)]
            for a in range(d)]
    gamma = [[[None] * d for _ in range(d)] for _ in range(d)]
    for a in range(d):
        # T_{bc} = d_mu phi^a Gamma^mu_{bc} - d^2_{bc} phi^a
        tmat = [[sum((jac[a][mu] * data.gamma[mu][b][c] for mu in range(d)), Jet.zero(d, order)) - hess[a][b][c]
                 for c in range(d)] for b in range(d)]
        # contract with M on both lower indices
        left = mat_mul([[minv[b][e] for b in range(d)] for e in range(d)], tmat)
        full = mat_mul(left, minv)
        for e in range(d):
            for z in range(e, d):
                val = full[e][z].truncate(order).compose(psi)
                gamma[a][e][z] = gamma[a][z][e] = val
    K = None
    if data.K is not None:
        K = [[x.compose(psi) for x in row] for row in mat_mul(mat_mul(jac, data.K), minv)]
    return FieldData(d, data.m, gamma, sigma, h, K, basepoint=phi.target(), seed=data.seed)


# ---------------------------------------------------------------------------
# checks

@dataclass
class CheckResult:
    passed: bool
    witness: tuple | None = None
    info: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed


def _first_difference(lhs: Vector, rhs: Vector, order: int):
    for a, (x, y) in enumerate(zip(lhs, rhs)):
        e = x.agrees(y, order)
        if e is not None:
            return (a, e, x.c.get(e, 0), y.c.get(e, 0))
    return None


def derivative_depth(x) -> int:
    """Largest number of thin children at one vertex: the extra data order evaluation consumes."""
    def go(t):
        here = sum(1 for e, _ in t.children if e != THICK)
        return max([here] + [go(s) for _, s in t.children])
    return max((go(t) for t in as_lincomb(x)), default=0)


def chain_rule_check(x, data: FieldData, phi: Diffeo, order: int = 2, *,
                     moved: FieldData | None = None) -> CheckResult:
    """Compare ``phi . Upsilon[x]`` with ``Upsilon`` of the transformed data up to ``order``.

    ``moved`` may carry a precomputed ``diffeo_act(phi, data, ...)`` of high enough order.
    """
    x = as_lincomb(x)
    if not x:
        return CheckResult(True)
    inner = order + derivative_depth(x)
    lhs_field = upsilon(x, data, order=order)
    psi = Substitution(phi.inverse_local(order))
    lhs = act_vector(phi, lhs_field, psi, order)
    if moved is None:
        moved = diffeo_act(phi, data, inner)
    rhs = upsilon(x, moved, order=order)
    w = _first_difference(lhs, rhs, order)
    return CheckResult(w is None, w, {"order": order, "seed": data.seed})


def infinitesimal_check(x, data: FieldData, order: int = 1) -> CheckResult:
    """True iff the elementary differential of the hatted derivation of ``x`` vanishes to ``order``."""
    x = as_lincomb(x)
    if not x:
        return CheckResult(True)
    image = hat_phi_geo(x)
    if not image:
        return CheckResult(True, info={"seed": data.seed})
    val = upsilon(image, data, order=order)
    zero = [Jet.zero(data.d, order) for _ in range(data.d)]
    w = _first_difference(val, zero, order)
    return CheckResult(w is None, w, {"order": order, "seed": data.seed})
