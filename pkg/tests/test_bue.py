"""
Tests for Fitting ideals, grade and the exactness criterion.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from admissible_cubes.adjugates import typical_adjugate
from admissible_cubes.bue import (
    BeMode,
    GradeValue,
    IdealRep,
    be_check,
    expected_ranks,
    fitting_ideal,
    grade,
    relation_with_be,
)
from admissible_cubes.complexes import concentrated
from admissible_cubes.config import Limits
from admissible_cubes.cubes import koszul_complex
from admissible_cubes.exceptions import ValidationError
from admissible_cubes.linalg import Matrix
from admissible_cubes.modules import FPModule, ModuleMorphism
from admissible_cubes.rings import RingDescriptor

Z = RingDescriptor.integers()
ONE = FPModule.free(Z, 1)
THREE = FPModule.free(Z, 3)


def diag_2_3_0():
    return ModuleMorphism(THREE, THREE, Matrix.diagonal(Z, [2, 3, 0]))


class TestIdeals:
    """Ideal representations."""

    def test_canonical_generator(self):
        ideal = IdealRep.of(Z, [4, 6])
        assert ideal.canonical == 2
        assert ideal.contains(10)
        assert not ideal.contains(3)
        assert str(ideal) == "(2)"

    def test_unit_and_zero(self):
        assert IdealRep.unit(Z).is_unit
        assert IdealRep.zero(Z).is_zero
        assert IdealRep.of(Z, [0, 0]).is_zero


class TestFittingIdeals:
    """Ideals of minors."""

    def test_diagonal_map(self):
        phi = diag_2_3_0()
        assert fitting_ideal(phi, 0).is_unit
        assert fitting_ideal(phi, 1).canonical == 1
        assert fitting_ideal(phi, 2).canonical == 6
        assert fitting_ideal(phi, 3).is_zero
        assert fitting_ideal(phi, 4).is_zero

    def test_many_minors_keep_the_divisor(self):
        ideal = fitting_ideal(diag_2_3_0(), 2, Limits(max_listed_minors=1))
        assert ideal.generators == (6,)

    def test_invalid_arguments(self):
        with pytest.raises(ValidationError):
            fitting_ideal(diag_2_3_0(), -1)
        torsion = FPModule.cyclic(Z, 4)
        with pytest.raises(ValidationError):
            fitting_ideal(ModuleMorphism.scalar(torsion, 1), 1)


class TestGrade:
    """Depth of an ideal on the ring."""

    def test_grades_over_integers(self):
        assert grade(IdealRep.of(Z, [4, 6])) == GradeValue(1)
        assert grade(IdealRep.zero(Z)) == GradeValue(0)
        assert grade(IdealRep.unit(Z)).is_infinite
        assert grade(IdealRep.of(Z, [2, 3])).is_infinite

    def test_canonical_generator_past_the_cap(self):
        ideal = IdealRep.of(Z, [4, 6, 10])
        assert grade(ideal, Limits(max_koszul_generators=1)) == GradeValue(1)

    def test_grade_over_a_field(self):
        """Every nonzero ideal of a field is the unit ideal."""
        q = RingDescriptor.rationals()
        assert grade(IdealRep.of(q, [2])).is_infinite

    @settings(max_examples=40, deadline=None)
    @given(
        st.sampled_from(["ZZ", "Z/12", "GF(5)"]),
        st.lists(st.integers(-20, 20), min_size=1, max_size=3),
        st.lists(st.integers(-5, 5), min_size=3, max_size=3),
    )
    def test_redundant_generator_keeps_the_grade(self, name, gens, coefficients):
        """Appending a combination of the generators does not change the ideal."""
        ring = RingDescriptor.parse(name)
        combination = sum(c * g for c, g in zip(coefficients, gens))
        assert grade(IdealRep.of(ring, gens)) == grade(IdealRep.of(ring, gens + [combination]))

    def test_formatting(self):
        assert str(GradeValue.infinite()) == "inf"
        assert GradeValue(2).at_least(2)
        assert not GradeValue(1).at_least(2)


class TestCriterion:
    """Ranks, Fitting ideals and exactness."""

    def test_expected_ranks(self):
        assert expected_ranks([1, 2, 1]) == [1, 1]
        assert expected_ranks([1, 3, 3, 1]) == [1, 2, 1]

    def test_exact_koszul_complex(self):
        report = be_check(koszul_complex([2, 3], ONE))
        assert report.r == (1, 1)
        assert [str(i) for i in report.fitting] == ["(1)", "(1)"]
        assert [str(g) for g in report.grades] == ["inf", "inf"]
        assert report.criterion and report.spherical
        assert report.passed

    def test_inexact_koszul_complex(self):
        report = be_check(koszul_complex([2, 2], ONE))
        assert report.fitting[1].canonical == 2
        assert report.grades[1] == GradeValue(1)
        assert report.witness == 2
        assert not report.criterion
        assert not report.spherical
        assert report.passed

    def test_criterion_only_mode(self):
        report = be_check(koszul_complex([2, 2], ONE), BeMode.CRITERION_ONLY)
        assert not report.passed

    def test_negative_rank(self):
        """``Z <- 0 <- Z`` has ``r_1 = -1``."""
        zero = FPModule.free(Z, 0)
        complex_ = concentrated(Z, [ONE, zero, ONE],
                                [Matrix.zeros(Z, 1, 0), Matrix.zeros(Z, 0, 1)])
        report = be_check(complex_)
        assert report.negative_rank
        assert report.witness == 1
        assert not report.spherical
        assert report.equivalent

    def test_mode_must_be_a_member(self):
        with pytest.raises(ValidationError):
            be_check(koszul_complex([2, 3], ONE), "criterion")

    def test_torsion_module_rejected(self):
        torsion = FPModule.cyclic(Z, 2)
        complex_ = concentrated(Z, [torsion, torsion], [Matrix.identity(Z, 1)])
        with pytest.raises(ValidationError):
            be_check(complex_)


class TestRelationWithCubes:
    """Regular adjugates satisfy the grade condition on the total complex."""

    def test_regular_adjugate(self):
        x, adj = typical_adjugate([2, 3], [5, 7], ONE)
        report = relation_with_be(x, adj)
        assert report.applicable and report.criterion
        assert report.implication_ok

    def test_irregular_adjugate(self):
        x, adj = typical_adjugate([2, 3], [2, 2], ONE)
        report = relation_with_be(x, adj)
        assert not report.applicable
        assert report.implication_ok


if __name__ == "__main__":
    pytest.main([__file__])
