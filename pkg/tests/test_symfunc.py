from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from christoffel.symfunc import (
    SymFunc, class_size, convert, egf_specialize, evaluate_e, expand_in_variables, f_la, koszul_inverse,
    la_dual_series, parse_symfunc, partitions, plethysm, poly_mul, z,
)

from strategies import rationals

BASES = ["p", "e", "m"]


def symfuncs(basis=None, degree=4, positive=False):
    parts = [lam for n in range(1 if positive else 0, degree + 1) for lam in partitions(n)]
    b = st.sampled_from(BASES) if basis is None else st.just(basis)
    return st.builds(lambda bs, terms: SymFunc(bs, degree, terms), b,
                     st.dictionaries(st.sampled_from(parts), rationals, max_size=5))


@pytest.mark.parametrize("n,count", [(0, 1), (1, 1), (4, 5), (8, 22), (12, 77)])
def test_partition_counts(n, count):
    assert len(list(partitions(n))) == count


@pytest.mark.parametrize("n", range(1, 8))
def test_class_sizes_sum_to_factorial(n):
    assert sum(class_size(lam) for lam in partitions(n)) == factorial(n)
    assert all(factorial(n) == z(lam) * class_size(lam) for lam in partitions(n))


@pytest.mark.parametrize("src,basis,expected", [
    ("e_2", "p", "1/2p_1^2 - 1/2p_2"),
    ("e_3", "p", "1/6p_1^3 - 1/2p_2p_1 + 1/3p_3"),
    ("m_(1,1)", "e", "e_2"),
    ("p_2", "m", "m_(2)"),
    ("p_1^2", "m", "2m_(1,1) + m_(2)"),
])
def test_conversions(src, basis, expected):
    f = parse_symfunc(src, src[0], 4)
    g = convert(f, basis)
    assert g.basis == basis
    assert str(g) == expected


@given(symfuncs())
def test_conversion_roundtrip(f):
    for b in BASES:
        g = f.to(b)
        assert g == f
        assert g.to(f.basis).terms == f.terms


@given(symfuncs())
def test_str_parse_roundtrip(f):
    assert parse_symfunc(str(f), f.basis, f.degree).terms == f.terms
    assert SymFunc.from_json(f.to_json()).terms == f.terms


@given(symfuncs(), symfuncs())
def test_product_commutes_across_bases(f, g):
    assert f * g == g * f
    assert (f * g).to("e") == f.to("e") * g.to("e")


def test_plethysm_examples():
    p = lambda *lam: SymFunc.gen("p", lam, 6)
    assert plethysm(p(2), p(3)) == p(6)
    assert plethysm(p(1), p(2, 1)) == p(2, 1)
    assert plethysm(p(1, 1), p(1) + p(2)) == p(1, 1) + p(2, 1) * 2 + p(2, 2)
    # h_2[h_2] = h_4 + h_2 h_2 - ... ; check via e_2[p_1] = e_2
    e2 = SymFunc.gen("e", 2, 6)
    assert plethysm(e2, p(1)) == e2


@settings(max_examples=20)
@given(symfuncs(degree=4), symfuncs("p", degree=4, positive=True), symfuncs("p", degree=4, positive=True))
def test_plethysm_associative(f, g, h):
    assert plethysm(plethysm(f, g), h) == plethysm(f, plethysm(g, h))


def test_plethysm_rejects_constant():
    with pytest.raises(ValueError):
        plethysm(SymFunc.gen("p", 1, 3), SymFunc.one(3))


@pytest.mark.parametrize("deg", [3, 5, 7])
def test_koszul_inverse_is_inverse(deg):
    g = la_dual_series(deg)
    f = koszul_inverse(g, deg)
    assert plethysm(f, g) == SymFunc.gen("p", 1, deg)


def test_f_la_low_degrees():
    assert str(f_la(4)) == "e_1 + e_1^2 + 2e_1^3 - e_3 + 5e_1^4 - e_2e_1^2 - 2e_3e_1 + e_4"


def test_egf_specialization():
    # f(1 - e^{-t} - t^2/2) = t as series
    n = 8
    coeffs = egf_specialize(f_la(n))
    inner = [Fraction(0)] + [Fraction((-1) ** (k + 1), factorial(k)) for k in range(1, n + 1)]
    inner[2] -= Fraction(1, 2)
    total = [Fraction(0)] * (n + 1)
    power = [Fraction(1)] + [Fraction(0)] * n
    for k in range(1, n + 1):
        power = [sum(power[i] * inner[j - i] for i in range(j + 1)) for j in range(n + 1)]
        total = [a + coeffs[k] * b for a, b in zip(total, power)]
    assert total == [0, 1] + [0] * (n - 1)
    # arity 2: one commutative and one Lie operation
    assert coeffs[2] * 2 == 2


@pytest.mark.parametrize("n,dim", [(1, 1), (2, 2), (3, 11), (4, 101)])
def test_multilinear_dimensions(n, dim):
    # coefficient of t1...tn equals the arity-n dimension
    poly = expand_in_variables(f_la(n).homogeneous(n), n)
    assert poly.get((1,) * n, 0) == dim


def test_poly_mul_cap():
    a = {(1, 0): 1, (0, 1): 1}
    full = poly_mul(a, a)
    capped = poly_mul(a, a, cap=(1, 1))
    assert full == {(2, 0): 1, (1, 1): 2, (0, 2): 1}
    assert capped == {(1, 1): 2}


def test_evaluate_e_on_swap():
    # e_1 -> 0, e_2 -> -t1 t2 for the transposition acting on two variables
    f = f_la(4).homogeneous(4)
    poly = evaluate_e(f, {1: {}, 2: {(1, 1): -1}}, 2, cap=(2, 2))
    assert poly.get((2, 2), 0) == 0
