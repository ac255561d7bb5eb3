"""
Tests for the package-level functional API.
"""

import pytest

import admissible_cubes
from admissible_cubes import (
    exactness_criterion,
    is_x_sequence,
    koszul_complex,
    koszul_homology,
)
from admissible_cubes.exceptions import ValidationError
from admissible_cubes.modules import FPModule
from admissible_cubes.rings import RingDescriptor


class TestFunctionalAPI:
    """Integer-input wrappers."""

    def test_koszul_homology(self):
        assert koszul_homology([2, 2]) == [["2"], ["2"], []]
        assert koszul_homology([2, 3]) == [[], [], []]

    def test_koszul_homology_over_a_field(self):
        """Every nonzero element of GF(5) is a unit."""
        assert koszul_homology([2, 3], ring="GF(5)") == [[], [], []]

    def test_is_x_sequence(self):
        assert is_x_sequence([2, 3])
        assert not is_x_sequence([2, 4])
        assert is_x_sequence([2], ring="GF(5)")

    def test_exactness_criterion(self):
        one = FPModule.free(RingDescriptor.integers(), 1)
        assert exactness_criterion(koszul_complex([2, 3], one))
        assert not exactness_criterion(koszul_complex([2, 2], one))

    def test_unknown_ring(self):
        with pytest.raises(ValidationError):
            koszul_homology([2], ring="R")

    def test_exports(self):
        assert admissible_cubes.__version__
        for name in admissible_cubes.__all__:
            assert hasattr(admissible_cubes, name)


if __name__ == "__main__":
    pytest.main([__file__])
