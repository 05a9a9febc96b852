"""Exact Davydov–Yetter cohomology with coalgebra coefficients in the center.

Two concrete models of the complex C^n = Nat(U ⊗ F^n, F^n) are provided:
``VecGBackend`` (identity functor of Vec_G) and ``HopfBackend`` (forgetful
functor of H-mod).  Generic structure, checkers and cohomology live in
:mod:`dycoh.comp` and :mod:`dycoh.cohomology`.
"""

from .backend import Cochain, ComplexBackend, MemoryCapError
from .cohomology import (
    CohomologySlice,
    betti_numbers,
    check_gerstenhaber_equivariant,
    check_graded_commutativity,
    cobar_oracle,
    cohomology,
    group_cohomology_oracle,
    in_coboundaries,
    is_coboundary,
)
from .comp import (
    bracket,
    check_complex,
    check_derivation,
    check_dga,
    check_equivariant,
    check_recovery,
    check_weak_comp,
    diamond,
    equivariant_basis,
)
from .groups import FiniteGroup, cyclic, dihedral, direct_product, klein_four, make_group, symmetric
from .hopf import HopfBackend, HopfData, YDCoalgebra, group_algebra, sweedler, trivial_yd
from .linalg import GF, QQ, Field, Matrix
from .report import CheckReport
from .vecg import (
    CenterCoalgebra,
    VecGBackend,
    convolution_coefficient,
    grouplike_coefficient,
    skew_primitive_coefficient,
    unit_coefficient,
)

__version__ = "0.1.0"
