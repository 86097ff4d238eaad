"""Hypothesis strategies for small trees and symmetric functions."""
from fractions import Fraction

from hypothesis import strategies as st

from christoffel.trees import gamma, noise


def plain_trees(max_color=3, max_depth=3):
    """Christoffel trees (noise and Gamma vertices only), small."""
    leaf = st.integers(1, max_color).map(noise)

    def extend(children):
        thin = st.lists(children, max_size=2)
        return st.one_of(
            st.tuples(st.integers(1, max_color), thin).map(lambda a: noise(a[0], *a[1])),
            st.tuples(children, children, st.lists(children, max_size=1)).map(
                lambda a: gamma(a[0], a[1], *a[2])),
        )
    return st.recursive(leaf, extend, max_leaves=5)


rationals = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))
