from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from christoffel.jets import Jet, Substitution, const_inverse, mat_inverse, mat_mul

from strategies import rationals

D = 2


def jets(order=None, min_deg=0):
    exps = [(a, b) for a in range(4) for b in range(4) if min_deg <= a + b <= 3]
    return st.dictionaries(st.sampled_from(exps), rationals, max_size=5).map(lambda c: Jet(D, order, c))


@given(jets(), jets(), jets())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert (a - a).is_zero()


@given(jets(), jets())
def test_leibniz(a, b):
    for i in range(D):
        assert (a * b).deriv(i) == a.deriv(i) * b + a * b.deriv(i)


@given(jets(order=3), jets(order=3))
def test_truncated_product_is_truncation_of_exact(a, b):
    exact = Jet(D, None, a.c) * Jet(D, None, b.c)
    assert (a * b) == exact.truncate(3)


@given(jets())
def test_compose_with_identity(a):
    ident = [Jet.var(D, i) for i in range(D)]
    assert a.compose(ident) == a


@given(jets(), jets(min_deg=1), jets(min_deg=1), jets(min_deg=1), jets(min_deg=1))
def test_composition_associative(f, g1, g2, h1, h2):
    order = 4
    g = [g1.truncate(order), g2.truncate(order)]
    h = Substitution([h1.truncate(order), h2.truncate(order)])
    lhs = f.truncate(order).compose(g).compose(h)
    rhs = f.truncate(order).compose([x.compose(h) for x in g])
    assert lhs.agrees(rhs, order) is None


def test_compose_rejects_constant_inner():
    with pytest.raises(ValueError):
        Jet.var(D, 0).compose([Jet.const(D, 1), Jet.var(D, 1)])


def test_agrees_needs_enough_order():
    with pytest.raises(ValueError):
        Jet.var(D, 0, 1).agrees(Jet.var(D, 0, 3), 2)


def test_const_inverse():
    a = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    assert const_inverse(a) == [[1, -1], [-1, 2]]
    with pytest.raises(ZeroDivisionError):
        const_inverse([[1, 2], [2, 4]])


@given(jets(min_deg=1), jets(min_deg=1), jets(min_deg=1), jets(min_deg=1))
def test_mat_inverse(a, b, c, e):
    order = 3
    m = [[a + 2, b], [c, e + 1]]
    inv = mat_inverse(m, order)
    prod = mat_mul(m, inv)
    for i in range(2):
        for j in range(2):
            assert prod[i][j].agrees(Jet.const(D, int(i == j)), order) is None
