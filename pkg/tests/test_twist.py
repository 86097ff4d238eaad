import pytest
from hypothesis import given, settings

from christoffel.geoderiv import hat_phi_geo
from christoffel.operad import LinComb
from christoffel.trees import ALPHA, alpha, count_kind, decode, noise
from christoffel.twist import (
    alpha_to_delta, check_degree_shift, check_square_zero, d0, d_full, d_tw, dg_trees,
    homological_degree, verify_degree0_correspondence,
)

from strategies import plain_trees


@pytest.mark.parametrize("code,image", [
    ("A", "A(A)"),
    ("1(2)", "A(1,2)"),
    ("1", "0"),
    ("1(2,3)", "A(1(2),3) + A(1(3),2) + A(1,2,3) - 1(A(2,3))"),
])
def test_d_full_examples(code, image):
    assert d_full(decode(code)) == LinComb.parse(image)


def test_gamma_corolla_split():
    g = decode("G(*1,*2)")
    assert not d_tw(g)
    assert d0(g) == LinComb.parse("-2*A(1,2)")
    assert d_full(g) == d_tw(g) + d0(g)


def test_homological_degree():
    assert homological_degree(decode("A(A,1)")) == -2
    assert homological_degree(decode("1")) == 0


@pytest.mark.parametrize("n,count", [(1, 2), (2, 6), (3, 21), (4, 73)])
def test_shape_counts(n, count):
    assert len(dg_trees(n, 2)) == count


def test_square_zero_small():
    rep = check_square_zero(dg_trees(4, 2))
    assert rep.ok, rep.failures[:3]
    assert rep.checked == 73


def test_degree_shift():
    assert check_degree_shift(dg_trees(4, 2)).ok


def test_correspondence_small():
    rep = verify_degree0_correspondence(3)
    assert rep.ok and rep.checked > 0


@settings(max_examples=25)
@given(plain_trees())
def test_square_zero_property(t):
    assert not d_full(d_full(t))


@settings(max_examples=25)
@given(plain_trees())
def test_correspondence_property(t):
    assert alpha_to_delta(d_full(t)) == hat_phi_geo(t)


def test_d_on_two_alphas_is_signed():
    x = d_full(alpha(alpha()))
    assert all(count_kind(t, ALPHA) == 3 for t in x)
    assert not d_full(x)
