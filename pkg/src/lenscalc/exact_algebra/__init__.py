"""Exact rational, cyclotomic and integer-lattice arithmetic."""

from .abelian import FinAbGroup, factorize, fin_ab_from_orders
from .cyclotomic import CycloElem, cyclotomic_polynomial, euler_phi
from .intlin import (
    Lattice,
    SmithForm,
    contains,
    det,
    identity,
    is_sublattice,
    lattice_from_generators,
    lattice_kernel,
    lattice_preimage,
    matmul,
    quotient_group,
    rank,
    snf,
    transpose,
)

__all__ = [
    "CycloElem",
    "FinAbGroup",
    "Lattice",
    "SmithForm",
    "contains",
    "cyclotomic_polynomial",
    "det",
    "euler_phi",
    "factorize",
    "fin_ab_from_orders",
    "identity",
    "is_sublattice",
    "lattice_from_generators",
    "lattice_kernel",
    "lattice_preimage",
    "matmul",
    "quotient_group",
    "rank",
    "snf",
    "transpose",
]
