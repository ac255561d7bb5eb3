"""
Admissible Cubes Python Library

Exact computations with cubes of finitely presented modules over ZZ, QQ,
GF(p) and ZZ/m: total complexes, admissibility and fiberedness, cube
adjugates, double cubes, lattice conditions and the exactness criterion.
"""

__version__ = "0.1.0"

from typing import List, Optional, Sequence

from .adjugates import (
    CubeAdjugate,
    cofactor_adjugate,
    main_theorem_check,
    typical_adjugate,
    verify_adjugate,
)
from .bue import BeMode, BeReport, be_check, fitting_ideal, grade
from .complexes import ChainComplex, is_spherical
from .config import Limits
from .cubes import (
    AdmissibilityMethod,
    Cube,
    build_cube,
    fib_of_family,
    is_admissible,
    is_fibered,
    koszul_complex,
    total_complex,
    typical_cube,
)
from .doublecubes import DctVariant, DoubleCube, dct_check, patch
from .exceptions import (
    AdjugateError,
    CubeAlgebraError,
    IllDefinedMorphismError,
    LatticeError,
    LatticeOverflowError,
    LimitExceededError,
    NotAChainComplexError,
    PatchingError,
    RingMismatchError,
    SchemaError,
    ShapeError,
    ValidationError,
)
from .lattices import TableLattice, is_modular, sequence_conditions
from .linalg import Matrix, smith_normal_form
from .modules import FPModule, ModuleMorphism, Subobject
from .rings import RingDescriptor, RingElement
from .selftest import SelftestReport, selftest

# Export both class-based and functional APIs
__all__ = [
    "RingDescriptor",
    "Matrix",
    "FPModule",
    "ModuleMorphism",
    "Subobject",
    "ChainComplex",
    "Cube",
    "DoubleCube",
    "CubeAdjugate",
    "TableLattice",
    "Limits",
    "AdmissibilityMethod",
    "DctVariant",
    "BeMode",
    "BeReport",
    "SelftestReport",
    "CubeAlgebraError",
    "ValidationError",
    "SchemaError",
    "RingMismatchError",
    "ShapeError",
    "LimitExceededError",
    "IllDefinedMorphismError",
    "NotAChainComplexError",
    "PatchingError",
    "AdjugateError",
    "LatticeError",
    "LatticeOverflowError",
    "smith_normal_form",
    "build_cube",
    "typical_cube",
    "koszul_complex",
    "fib_of_family",
    "total_complex",
    "is_admissible",
    "is_fibered",
    "is_spherical",
    "typical_adjugate",
    "cofactor_adjugate",
    "verify_adjugate",
    "main_theorem_check",
    "patch",
    "dct_check",
    "fitting_ideal",
    "grade",
    "be_check",
    "is_modular",
    "sequence_conditions",
    "selftest",
    # Functional API
    "koszul_homology",
    "is_x_sequence",
    "exactness_criterion",
]


# Functional API - integer inputs, no need to build rings and modules by hand
def koszul_homology(elements: Sequence[int], ring: str = "ZZ") -> List[List[str]]:
    """
    Homology of the Koszul complex of ``elements`` on the free module of rank one.

    Args:
        elements: Ring elements, as integers or strings
        ring: Ring name, one of ``ZZ``, ``QQ``, ``GF(p)`` or ``Z/m``

    Returns:
        Invariant factors of ``H_k`` for ``k = 0 .. len(elements)``

    Example:
        >>> koszul_homology([2, 2])
        [['2'], ['2'], []]
    """
    descriptor = RingDescriptor.parse(ring)
    one = FPModule.free(descriptor, 1)
    complex_ = koszul_complex([descriptor.element(f) for f in elements], one)
    return [[descriptor.format(d) for d in complex_.homology(k).invariant_factors]
            for k in complex_.degrees()]


def is_x_sequence(elements: Sequence[int], ring: str = "ZZ") -> bool:
    """
    Whether ``elements`` is a regular sequence on the ring, read off the
    admissibility of its typical cube.

    Args:
        elements: Ring elements, as integers or strings
        ring: Ring name

    Returns:
        True when the typical cube is admissible

    Example:
        >>> is_x_sequence([2, 3])
        True
        >>> is_x_sequence([2, 4])
        False
    """
    descriptor = RingDescriptor.parse(ring)
    one = FPModule.free(descriptor, 1)
    cube = typical_cube([descriptor.element(f) for f in elements], one)
    return is_admissible(cube).admissible


def exactness_criterion(complex_: ChainComplex, limits: Optional[Limits] = None) -> bool:
    """
    Evaluate ``grade I_{r_i}(phi_i) >= i`` for every boundary of a free complex.

    Args:
        complex_: Free complex ``F_s -> ... -> F_0``
        limits: Optional computation caps

    Returns:
        True when the criterion holds
    """
    return be_check(complex_, BeMode.CRITERION_ONLY, limits).criterion
