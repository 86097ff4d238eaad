import pytest
from hypothesis import given

from christoffel import exactla
from christoffel.geoderiv import (
    V4_WORDS, covariant_span, default_blocks, expand_word, hat_phi_geo, kernel_basis_geo, nabla,
    nabla_words, parse_word, phi_geo, span_in_kernel, symmetrize, word_json, word_str,
)
from christoffel.operad import LinComb
from christoffel.trees import EnumerationOverflow, TreeError, decode, delta, noise

from strategies import plain_trees


def test_phi_geo_on_noise():
    assert phi_geo(decode("1")) == LinComb.parse("D(1) - 1(D)")
    assert not hat_phi_geo(decode("1"))


def test_phi_geo_on_corolla():
    assert phi_geo(decode("G(*1,*2)")) == LinComb.parse(
        "D(G(*1,*2)) - G(*1,*2,D) - G(*1(D),*2) - G(*1,*2(D)) - 2*D(1,2)")


def test_nabla_expansion():
    assert nabla(noise(1), noise(2)) == LinComb.parse("2(1) + 1/2*G(*1,*2)")


@pytest.mark.parametrize("word", ["N(1,2)", "N(1,N(2,3))", "N(N(1,2),3)", "N(N(1,1),N(2,2))"])
def test_nabla_is_geometric(word):
    assert not hat_phi_geo(expand_word(parse_word(word)))


def test_non_geometric_trees():
    for code in ["1(2)", "G(*1,*2)", "1(G(*1,*2,2))"]:
        assert hat_phi_geo(decode(code))


@given(plain_trees(), plain_trees())
def test_hat_phi_geo_linear(s, t):
    x = LinComb.of(s, 2) + LinComb.of(t, -3)
    assert hat_phi_geo(x) == hat_phi_geo(s) * 2 - hat_phi_geo(t) * 3


@given(plain_trees())
def test_hat_phi_geo_raises_delta_count(t):
    for u in hat_phi_geo(t):
        assert sum(1 for c in str(u) if c == "D") == 1


def test_phi_geo_rejects_delta():
    with pytest.raises(TreeError):
        phi_geo(delta(noise(1)))


@pytest.mark.parametrize("text", ["1", "N(1,2)", "N(N(2,1),N(1,1))"])
def test_word_roundtrip(text):
    w = parse_word(text)
    assert word_str(w) == text
    assert isinstance(word_json(w), (int, dict))


@pytest.mark.parametrize("md,count", [((2,), 1), ((1, 1), 2), ((3,), 2), ((2, 1), 6)])
def test_nabla_word_count(md, count):
    # Catalan(n-1) shapes times distinct leaf orders
    assert len(list(nabla_words(md))) == count


def test_default_blocks():
    assert default_blocks((2, 2)) == [[1, 2]]
    assert default_blocks((2, 3)) == [[1], [2]]


def test_four_noise_family():
    gens = [symmetrize(expand_word(parse_word(w)), [[1, 2]]) for w in V4_WORDS]
    assert len(V4_WORDS) == 16
    assert len(exactla.row_basis(gens)) == 15
    assert span_in_kernel(gens, [[1, 2]])


@pytest.mark.parametrize("md,dim", [((2,), 1), ((2, 2), 14), ((3,), 2), ((1, 1), 1)])
def test_kernel_equals_span(md, dim):
    kern = kernel_basis_geo(md)
    span = covariant_span(md)
    assert kern.dimension == span.dimension == dim
    assert span_in_kernel([span.generators[i] for i in span.independent], span.blocks)
    for v in kern.kernel:
        assert not symmetrize(hat_phi_geo(v), kern.blocks)


def test_trivial_blocks():
    assert kernel_basis_geo((1, 1), [[1], [2]]).dimension == 2
    assert covariant_span((1, 1), [[1], [2]]).dimension == 2


def test_span_bound():
    with pytest.raises(EnumerationOverflow):
        covariant_span((4, 4))
