"""
Tests for cubes, total complexes, admissibility and fiberedness.
"""

import pytest

from admissible_cubes.cubes import (
    EMPTY,
    AdmissibilityMethod,
    CoCube,
    CubeIndex,
    FiberedMethod,
    SequenceMode,
    attach,
    build_cube,
    dual,
    fib_of_family,
    h0_direction,
    h0_step,
    h0_total_distributivity,
    is_admissible,
    is_fibered,
    koszul_complex,
    ordering_check,
    parse_subset_key,
    sequence_check,
    subobject_family_cube,
    subset_key,
    tot_calculation_check,
    total_complex,
    totisom_check,
    typical_cube,
)
from admissible_cubes.exceptions import LimitExceededError, ShapeError, ValidationError
from admissible_cubes.linalg import Matrix
from admissible_cubes.modules import FPModule, ModuleMorphism, Subobject
from admissible_cubes.rings import RingDescriptor

Z = RingDescriptor.integers()
ONE = FPModule.free(Z, 1)


def ideal(n):
    return Subobject.image(ModuleMorphism.scalar(ONE, n))


def lines_in_plane():
    """The x-axis, the y-axis and the diagonal of ``Z^2``."""
    plane = FPModule.free(Z, 2)
    members = {
        "a": Subobject.of(plane, Matrix.from_rows(Z, [[1], [0]])),
        "b": Subobject.of(plane, Matrix.from_rows(Z, [[0], [1]])),
        "c": Subobject.of(plane, Matrix.from_rows(Z, [[1], [1]])),
    }
    return plane, members


def twisted_square():
    """A 2-cube whose only square does not commute: ``2 * 1 != 3 * 1``."""
    values = {("a", "a"): 2, ("b", "b"): 3, ("a,b", "a"): 1, ("a,b", "b"): 1}
    return build_cube(
        ["a", "b"],
        lambda s: ONE,
        lambda s, t: ModuleMorphism.scalar(ONE, values[(subset_key(s), t)]),
    )


class TestCubeIndex:
    """Labels and subsets."""

    def test_labels_are_sorted(self):
        index = CubeIndex(("c", "a", "b"))
        assert index.labels == ("a", "b", "c")
        assert index.position("b") == 2
        assert len(index.subsets()) == 8

    def test_invalid_labels(self):
        for labels in (("a", "a"), ("a|b",), ("",), ("a,b",)):
            with pytest.raises(ValidationError):
                CubeIndex(labels)

    def test_subset_keys(self):
        assert subset_key(frozenset({"b", "a"})) == "a,b"
        assert subset_key(EMPTY) == ""
        assert parse_subset_key("a,b") == frozenset({"a", "b"})
        assert parse_subset_key("") == EMPTY

    def test_label_cap(self):
        with pytest.raises(LimitExceededError):
            typical_cube([2] * 6, ONE)


class TestCubeStructure:
    """Validation, restriction and duality."""

    def test_typical_cube_is_valid_and_monic(self):
        report = typical_cube([2, 3], ONE).validate()
        assert report.valid
        assert report.is_monic

    def test_failing_square(self):
        report = twisted_square().validate()
        assert not report.valid
        assert report.failing_square == ("a,b", "a", "b")
        with pytest.raises(ValidationError):
            is_admissible(twisted_square())

    def test_missing_arrow(self):
        x = typical_cube([2], ONE)
        with pytest.raises(ShapeError):
            type(x)(x.index, x.vertices, {})

    def test_faces(self):
        x = typical_cube([2, 3, 5], ONE)
        front = x.frontside_face("b")
        assert front.labels == ("a", "c")
        assert front.boundary(frozenset({"c"}), "c").matrix[0, 0] == 5
        back = x.backside_face("b")
        assert back.vertex(EMPTY) == ONE

    def test_dual_round_trip(self):
        x = typical_cube([2, 3], ONE)
        cocube = dual(x)
        assert isinstance(cocube, CoCube)
        assert cocube.validate().valid
        assert dual(cocube) == x

    def test_map_between(self):
        x = typical_cube([2, 3], ONE)
        assert x.map_between(frozenset({"a", "b"}), EMPTY).matrix[0, 0] == 6

    def test_attach_post_composes(self):
        x = attach(typical_cube([2], ONE), ModuleMorphism.scalar(ONE, 3))
        assert x.boundary(frozenset({"a"}), "a").matrix[0, 0] == 6


class TestTotalComplex:
    """Signs and homology of ``Tot``."""

    def test_koszul_boundaries(self):
        tot = total_complex(typical_cube([2, 3], ONE))
        assert tot.boundary(1).matrix.to_rows() == [[2, 3]]
        assert tot.boundary(2).matrix.to_rows() == [[3], [-2]]

    def test_koszul_homology(self):
        k = koszul_complex([2, 2], ONE)
        assert k.homology(0).invariant_factors == (2,)
        assert k.homology(1).invariant_factors == (2,)
        assert k.homology(2).is_zero

    def test_coprime_koszul_is_acyclic(self):
        k = koszul_complex([2, 3, 5], ONE)
        assert all(k.homology(i).is_zero for i in k.degrees())

    def test_direction_homology(self):
        x = typical_cube([2, 3], ONE)
        step = h0_step(x, "a")
        assert step.cube.labels == ("b",)
        assert step.cube.vertex(EMPTY).invariant_factors == (2,)
        assert h0_direction(x, ["a", "b"]).vertex(EMPTY).is_zero
        assert ordering_check(typical_cube([4, 6], ONE), ["a", "b"])

    def test_tot_isomorphism(self):
        comparison = totisom_check(typical_cube([2, 3], ONE))
        assert comparison.applicable
        assert comparison.agree

    def test_tot_calculation(self):
        comparison = tot_calculation_check(typical_cube([2, 3], ONE), "a")
        assert comparison.applicable
        assert comparison.agree


class TestAdmissibility:
    """The three admissibility methods agree."""

    @pytest.mark.parametrize("method", list(AdmissibilityMethod))
    def test_regular_sequence_is_admissible(self, method):
        assert is_admissible(typical_cube([2, 3], ONE), method).admissible

    @pytest.mark.parametrize("method", list(AdmissibilityMethod))
    def test_zero_divisor_is_not_admissible(self, method):
        report = is_admissible(typical_cube([2, 4], ONE), method)
        assert not report.admissible
        assert report.witness

    def test_faces_are_tested_by_sphericity(self):
        """Dropping ``c`` leaves ``Typ(2, 4)``, whose ``H_1`` is ``Z/2``."""
        report = is_admissible(typical_cube([2, 4, 3], ONE), AdmissibilityMethod.FACES_SPHERICAL)
        assert report.witness == "frontside face without c: Tot x has H_1 = [2]"

    def test_non_monic_cube(self):
        report = is_admissible(typical_cube([2, 0], ONE))
        assert not report.admissible
        assert "not mono" in report.witness

    def test_fib_of_two_ideals_is_admissible(self):
        fib = subobject_family_cube(ONE, {"a": ideal(4), "b": ideal(6)}).cube
        assert fib.validate().is_monic
        assert is_admissible(fib).admissible
        assert fib.vertex(frozenset({"a", "b"})).invariant_factors == (0,)

    @pytest.mark.parametrize("method", list(AdmissibilityMethod))
    def test_three_lines_are_not_admissible(self, method):
        plane, members = lines_in_plane()
        fib = subobject_family_cube(plane, members).cube
        assert not is_admissible(fib, method).admissible


class TestFiberedness:
    """Cartesian squares and the comparison map."""

    @pytest.mark.parametrize("method", list(FiberedMethod))
    def test_coprime_typical_cube_is_fibered(self, method):
        assert is_fibered(typical_cube([2, 3], ONE), method).fibered

    @pytest.mark.parametrize("method", list(FiberedMethod))
    def test_common_factor_breaks_fiberedness(self, method):
        report = is_fibered(typical_cube([2, 4], ONE), method)
        assert not report.fibered
        assert report.witness

    def test_fib_cube_is_fibered(self):
        _, members = lines_in_plane()
        maps = {s: m.to_module().structure_map for s, m in members.items()}
        assert is_fibered(fib_of_family(maps).cube).fibered


class TestSequences:
    """Regular sequences in one order and in every order."""

    def test_regular_sequences(self):
        assert sequence_check([2, 3], ONE).is_sequence
        assert not sequence_check([2, 4], ONE).is_sequence
        assert not sequence_check([1, 2], ONE).is_sequence

    def test_every_order(self):
        report = sequence_check([6, 10, 15], ONE, SequenceMode.X_SEQUENCE)
        assert not report.is_sequence
        assert report.witness.startswith("order")

    def test_residue_ring(self):
        """Over Z/12 the element 5 is a unit and 2 is a zero divisor."""
        ring = RingDescriptor.integers_mod(12)
        one = FPModule.free(ring, 1)
        assert not sequence_check([2], one).is_sequence
        assert not sequence_check([5], one).is_sequence


class TestMethodArguments:
    """Methods and modes are enum members, not their values."""

    def test_strings_are_rejected(self):
        x = typical_cube([2, 3], ONE)
        with pytest.raises(ValidationError):
            is_admissible(x, "recursive")
        with pytest.raises(ValidationError):
            is_fibered(x, "squares")
        with pytest.raises(ValidationError):
            sequence_check([2, 3], ONE, "regular")


class TestH0Total:
    """Monicity of ``H_0 Tot`` along one direction."""

    def test_regular_pair(self):
        report = h0_total_distributivity(typical_cube([2, 3], ONE), "a")
        assert report.mono and report.vertex_form and report.distributive

    def test_zero_divisor_pair(self):
        """``H_0`` of both faces is ``Z/4`` and ``2`` kills ``2``."""
        report = h0_total_distributivity(typical_cube([2, 4], ONE), "a")
        assert not report.mono
        assert not report.vertex_form
        assert report.distributive


if __name__ == "__main__":
    pytest.main([__file__])
