from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from christoffel.operad import (
    LinComb, as_lincomb, christoffel_corolla, compose_lin, corolla_from_binaries, evaluate_on_colors,
    grafting_sum, insert, parallel_defect, sequential_defect, shift_labels, white_labels,
)
from christoffel.trees import TreeError, decode, enumerate_trees, noise, size, to_flat, THIN

LABELED = [t for n in (1, 2, 3) for t in enumerate_trees(n, mode="operadic")]
labeled = st.sampled_from(LABELED)


def test_insert_examples():
    assert insert(decode("1(2)"), 1, decode("3(4)")) == LinComb.parse("3(2,4) + 3(4(2))")
    assert insert(decode("1(2)"), 2, decode("G(*3,*4)")) == LinComb.of(decode("1(G(*3,*4))"))
    # thick children stay attached to the Gamma vertex
    assert insert(decode("G(*1,*2)"), 1, decode("3(4)")) == LinComb.of(decode("G(*2,*3(4))"))


@given(labeled, labeled)
def test_insert_term_count(t1, t2):
    t2 = shift_labels(t2, 10)
    f1 = to_flat(t1)
    for u in white_labels(t1):
        idx = f1.colors.index(u)
        thin = sum(1 for c in f1.children(idx) if f1.edges[c] == THIN)
        res = insert(t1, u, t2)
        assert sum(res.values()) == size(t2) ** thin
        assert all(c > 0 for c in res.values())


@given(labeled, labeled, labeled)
def test_sequential_axiom(t1, t2, t3):
    t2, t3 = shift_labels(t2, 10), shift_labels(t3, 20)
    for u in white_labels(t1):
        for v in white_labels(t2):
            assert not sequential_defect(t1, u, t2, v, t3)


@given(labeled, labeled, labeled)
def test_parallel_axiom(t1, t2, t3):
    t2, t3 = shift_labels(t2, 10), shift_labels(t3, 20)
    for u in white_labels(t1):
        for v in white_labels(t1):
            if u != v:
                assert not parallel_defect(t1, u, t2, v, t3)


@given(labeled, labeled)
def test_unit(t1, t2):
    for u in white_labels(t1):
        assert insert(noise(u), u, t1) == LinComb.of(t1)
        assert insert(t1, u, noise(u)) == LinComb.of(t1)


def test_compose_is_bilinear():
    x = LinComb.parse("1(2) - 2*G(*1,*2)")
    y = LinComb.parse("1/2*3(4) + 3")
    left = compose_lin(x, 1, y)
    right = LinComb()
    for t1, c1 in x.items():
        for t2, c2 in y.items():
            right.iadd(insert(t1, 1, t2), c1 * c2)
    assert left == right
    assert compose_lin(x * 3, 1, y) == left * 3


def test_label_clash():
    with pytest.raises(TreeError):
        insert(decode("1(2)"), 1, decode("2"))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_corolla_from_binaries(k):
    left, right = corolla_from_binaries(k)
    assert left == right


def test_corolla_needs_two_inputs():
    with pytest.raises(ValueError):
        christoffel_corolla([1])


def test_grafting_sum():
    assert grafting_sum(decode("1"), decode("2")) == LinComb.of(decode("1(2)"))
    assert grafting_sum(decode("G(*1,*2)"), decode("3")) == LinComb.parse(
        "G(*1,*2,3) + G(*1(3),*2) + G(*1,*2(3))")


def test_evaluate_on_colors_merges():
    x = LinComb.parse("1(2) + 2(1)")
    assert evaluate_on_colors(x, {2: 1}) == LinComb({decode("1(1)"): 2})


def test_lincomb_parse_and_arithmetic():
    x = LinComb.parse("1/2*1(2) - 3*G(*1,*2)")
    assert x[decode("1(2)")] == Fraction(1, 2)
    assert (x - x) == LinComb()
    assert LinComb.from_json(x.to_json()) == x
    assert as_lincomb(decode("1")) == LinComb.of(decode("1"))
