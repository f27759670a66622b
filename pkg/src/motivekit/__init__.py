"""Exact Poincare polynomials, J-invariants and motivic decompositions of
twisted flag varieties."""

from .algebra import Polynomial, RationalProduct, exact_div, expand_rational_product
from .errors import MotiveKitError
from .jinv import JProfile, enumerate_admissible, j_profile, ring_poincare, upper_poincare
from .motive import TwistMultiset, decompose, decompose_group, verify_decomposition
from .poincare import GroupSpec, SimpleFactor, borel_poincare, flag_poincare
from .rootsys import DynkinType, invariant_degrees, outer_degree_data, torsion_primes
from .weyl import CosetSpec, coset_gen_function, weyl_enumerate

__version__ = "0.1.0"

__all__ = [
    "CosetSpec", "DynkinType", "GroupSpec", "JProfile", "MotiveKitError", "Polynomial",
    "RationalProduct", "SimpleFactor", "TwistMultiset", "borel_poincare", "coset_gen_function",
    "decompose", "decompose_group", "enumerate_admissible", "exact_div", "expand_rational_product",
    "flag_poincare", "invariant_degrees", "j_profile", "outer_degree_data", "ring_poincare",
    "torsion_primes", "upper_poincare", "verify_decomposition", "weyl_enumerate",
]
