"""
Tests for chain complexes, homology and mapping cones.
"""

import pytest

from admissible_cubes.complexes import (
    ChainComplex,
    ChainMap,
    concentrated,
    direct_sum_complex,
    is_spherical,
    mapping_cone,
)
from admissible_cubes.exceptions import NotAChainComplexError, ShapeError
from admissible_cubes.linalg import Matrix
from admissible_cubes.modules import FPModule, ModuleMorphism
from admissible_cubes.rings import RingDescriptor

Z = RingDescriptor.integers()
ONE = FPModule.free(Z, 1)
TWO = FPModule.free(Z, 2)


def koszul_23():
    """``0 <- Z <- Z^2 <- Z <- 0`` with ``d_1 = [2 3]`` and ``d_2 = (3, -2)^T``."""
    return concentrated(Z, [ONE, TWO, ONE], [
        Matrix.from_rows(Z, [[2, 3]]),
        Matrix.from_rows(Z, [[3], [-2]]),
    ])


def scalar_complex(n):
    """``Z <-n- Z`` in degrees 0 and 1."""
    return concentrated(Z, [ONE, ONE], [Matrix.from_rows(Z, [[n]])])


class TestChainComplex:
    """Construction checks."""

    def test_boundaries_must_compose_to_zero(self):
        with pytest.raises(NotAChainComplexError):
            concentrated(Z, [ONE, TWO, ONE], [
                Matrix.from_rows(Z, [[2, 3]]),
                Matrix.from_rows(Z, [[1], [1]]),
            ])

    def test_boundary_count_checked(self):
        with pytest.raises(ShapeError):
            ChainComplex(Z, 0, (ONE, ONE), ())

    def test_degrees_and_padding(self):
        c = koszul_23()
        assert list(c.degrees()) == [0, 1, 2]
        assert c.hi == 2
        assert c.module(5).is_zero
        assert c.boundary(0).is_zero_map()
        assert c.is_free


class TestHomology:
    """Homology and sphericity."""

    def test_koszul_of_coprime_pair(self):
        """Only ``H_0 = Z/(2, 3) = 0`` could survive, and it vanishes as well."""
        c = koszul_23()
        assert c.homology_invariants() == {0: (), 1: (), 2: ()}
        assert is_spherical(c, 0).spherical

    def test_scalar_homology(self):
        c = scalar_complex(4)
        assert c.homology(0).invariant_factors == (4,)
        assert c.homology(1).is_zero

    def test_zero_map_keeps_everything(self):
        c = scalar_complex(0)
        assert c.homology(0).invariant_factors == (0,)
        assert c.homology(1).invariant_factors == (0,)
        report = is_spherical(c, 0)
        assert not report.spherical
        assert report.failing_degree == 1
        assert report.invariants == (0,)

    def test_direct_sum(self):
        c = direct_sum_complex(scalar_complex(2), scalar_complex(3))
        assert c.homology(0).invariant_factors == (6,)
        assert c.homology(1).is_zero


class TestMappingCone:
    """Cones of chain maps."""

    def test_cone_of_identity_is_acyclic(self):
        c = scalar_complex(3)
        identity = ChainMap(c, c, {k: ModuleMorphism.identity(c.module(k)) for k in c.degrees()})
        cone = mapping_cone(identity)
        assert all(cone.homology(k).is_zero for k in cone.degrees())

    def test_non_chain_map_rejected(self):
        """Multiplying degree 0 only by 2 does not commute with ``d_1 = 3``."""
        c = scalar_complex(3)
        bad = ChainMap(c, c, {0: ModuleMorphism.scalar(ONE, 2)})
        with pytest.raises(NotAChainComplexError):
            mapping_cone(bad)


if __name__ == "__main__":
    pytest.main([__file__])
