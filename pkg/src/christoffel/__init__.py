"""Christoffel trees, geometric counter-terms and their dimension counts."""

from .trees import (Tree, alpha, canonicalize, decode, delta, encode, enumerate_trees, gamma,
                    gaussian_trees, count_labeled, noise)
from .operad import LinComb, compose_lin, insert
from .geoderiv import covariant_span, hat_phi_geo, kernel_basis_geo, nabla, phi_geo
from .twist import d0, d_full, d_tw
from .symfunc import SymFunc, f_la, koszul_inverse, plethysm
from .dimcount import BlockSpec, cumulant_total, gaussian_total, invariant_dim

__version__ = "0.1.0"
