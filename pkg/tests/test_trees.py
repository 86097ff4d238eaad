from fractions import Fraction

import pytest
from hypothesis import given

from christoffel.trees import (
    ALPHA, DELTA, GAMMA, NOISE, THICK, THIN, EnumerationOverflow, TreeError, alpha, canonicalize,
    color_canonical, count_kind, count_labeled, decode, degree, delta, encode, enumerate_trees,
    from_flat, from_json, gamma, gaussian_trees, is_negative, multidegree, noise, permutation_sign,
    relabel, size, symmetry_factor, to_flat, to_json,
)

from strategies import plain_trees


@pytest.mark.parametrize("code", ["1", "1(2)", "G(*1,*2)", "G(*1,*2,3)", "1(G(*1,*2,2))",
                                  "D(1,1)", "A(A)", "A(1,2)", "2(1(3),G(*1,*1))"])
def test_encode_decode_roundtrip(code):
    t = decode(code)
    assert decode(encode(t)) == t
    assert from_json(to_json(t)) == t


def test_child_order_is_irrelevant():
    assert decode("1(3,2)") == decode("1(2,3)")
    assert gamma(noise(2), noise(1)) == gamma(noise(1), noise(2))
    assert noise(1, gamma(noise(2), noise(1), noise(2))) == decode("1(G(*1,*2,2))")


@pytest.mark.parametrize("bad", ["G(*1)", "G(*1,*2,*3)", "1(", "1)", "X", "1(*2)", "D(*1)"])
def test_malformed_trees_rejected(bad):
    with pytest.raises(TreeError):
        decode(bad)


@given(plain_trees())
def test_roundtrip_property(t):
    assert decode(encode(t)) == t
    assert from_json(to_json(t)) == t
    f = to_flat(t)
    assert from_flat(f.kinds, f.colors, f.parents, f.edges) == t
    assert canonicalize(t) == t


@given(plain_trees())
def test_edge_count_identity(t):
    # every non-root vertex has one parent edge; each Gamma has two thick children
    thick = sum(1 for v in to_flat(t).edges if v == THICK)
    assert thick == 2 * count_kind(t, GAMMA)
    assert size(t) == count_kind(t, NOISE) + count_kind(t, GAMMA)


@given(plain_trees())
def test_relabel_identity_and_canonical_idempotent(t):
    assert relabel(t, {}) == t
    c = color_canonical(t)
    assert color_canonical(c) == c


def test_degree_of_xi4ca1():
    t = decode("1(G(*1,*2,2))")
    assert degree(t) == (Fraction(0), Fraction(-4))
    assert is_negative(degree(t))
    assert multidegree(t) == {1: 2, 2: 2}


@pytest.mark.parametrize("code,expected", [("1", 1), ("G(*1,*1)", 2), ("1(2,2)", 2),
                                           ("1(2(3),2(3))", 2), ("G(*1,*2)", 1)])
def test_symmetry_factor(code, expected):
    assert symmetry_factor(decode(code)) == expected


@pytest.mark.parametrize("n,count", [(1, 1), (2, 3), (3, 24), (4, 319)])
def test_labeled_counts_match_enumeration(n, count):
    assert count_labeled(n) == count
    assert len(enumerate_trees(n, mode="operadic")) == count


def test_gaussian_54():
    trees = gaussian_trees(2)
    assert len(trees) == 54
    assert len(set(trees)) == 54
    assert all(is_negative(degree(t)) for t in trees)


def test_enumeration_bound():
    with pytest.raises(EnumerationOverflow):
        enumerate_trees((2, 2, 2), max_noises=5)


def test_degree_rejects_twisted_vertices():
    with pytest.raises(TreeError):
        degree(alpha(noise(1)))
    with pytest.raises(TreeError):
        degree(delta(noise(1)))


@pytest.mark.parametrize("seq,sign", [((0, 1, 2), 1), ((1, 0, 2), -1), ((2, 0, 1), 1), ((2, 1, 0), -1)])
def test_permutation_sign(seq, sign):
    assert permutation_sign(seq) == sign


def test_kind_constants():
    assert (NOISE, GAMMA, DELTA, ALPHA, THICK, THIN) == (0, 1, 2, 3, 0, 1)
