"""
Tests for double cubes, reindexing, patching and the double cube theorem checks.
"""

import pytest

from admissible_cubes.adjugates import patching_family_of, typical_adjugate
from admissible_cubes.cubes import EMPTY, CubeIndex, typical_cube
from admissible_cubes.doublecubes import (
    DctVariant,
    DisjointSystem,
    ReindexOp,
    chain_double_cube,
    dct_check,
    double_subposet,
    e_map,
    fiber_description_check,
    fibered_conditions,
    grade_key,
    grade_of,
    lowered,
    pair_of,
    parse_grade_key,
    patch,
    pullback_two,
    reindex,
    total_functor,
    unpatch,
)
from admissible_cubes.exceptions import PatchingError, ShapeError, ValidationError
from admissible_cubes.modules import FPModule, ModuleMorphism
from admissible_cubes.rings import RingDescriptor

Z = RingDescriptor.integers()
ONE = FPModule.free(Z, 1)
AB = CubeIndex(("a", "b"))
A, B = frozenset({"a"}), frozenset({"b"})


def chain_2_3():
    """``Z <-2- Z <-3- Z`` on the label ``a``."""
    return chain_double_cube([ModuleMorphism.scalar(ONE, 2), ModuleMorphism.scalar(ONE, 3)])


def patched_typical():
    """The patched double cube of ``Typ(2, 3)`` with reverse maps ``5, 7``."""
    x, adj = typical_adjugate([2, 3], [5, 7], ONE)
    return patching_family_of(x, adj)


class TestGrades:
    """Grades, keys and index maps."""

    def test_grade_and_pair(self):
        grade = grade_of(AB, A, B)
        assert grade == (1, 2)
        assert pair_of(AB, grade) == (A, B)
        assert grade_key(AB, grade) == "a=1,b=2"
        assert parse_grade_key(AB, "a=1,b=2") == grade

    def test_invalid_grade_keys(self):
        for key in ("a=3,b=0", "a=1", "a=1,a=2,b=0", "a=1,b=0,c=0"):
            with pytest.raises(ShapeError):
                parse_grade_key(AB, key)

    def test_overlapping_sets_rejected(self):
        with pytest.raises(ValidationError):
            grade_of(AB, A, A)

    def test_lowering(self):
        assert lowered(AB, (1, 2), "b") == (1, 1)
        with pytest.raises(ValidationError):
            lowered(AB, (0, 2), "a")

    def test_e_map(self):
        """``e_T(U) = chi_U + chi_T``."""
        assert e_map(AB, A)(frozenset({"a", "b"})) == (2, 1)
        assert e_map(AB, EMPTY)(B) == (0, 1)


class TestTotalFunctor:
    """The order isomorphism between subsets and double subsets."""

    def test_double_subposet_sizes(self):
        assert len(double_subposet(A, EMPTY, EMPTY)) == 3
        assert len(double_subposet(A, A, EMPTY)) == 2
        assert len(double_subposet(A, EMPTY, A)) == 2

    def test_every_tot_a_is_an_isomorphism(self):
        index = CubeIndex(("a", "b", "c"))
        for a in index.subsets():
            assert total_functor(index, a).is_isomorphism()

    def test_reindex_returns_index_map(self):
        tot = reindex(chain_2_3(), ReindexOp.TOT_A, A)
        assert tot(EMPTY) == (A, EMPTY)
        assert tot(A) == (EMPTY, A)

    def test_overlap_rejected(self):
        with pytest.raises(ValidationError):
            total_functor(AB, A, A)

    def test_disjoint_system_checked(self):
        with pytest.raises(ValidationError):
            DisjointSystem(t_set=A, c=A).check(AB)


class TestDoubleCube:
    """Construction and composite maps."""

    def test_chain(self):
        x = chain_2_3()
        assert x.validate().valid
        assert x.is_monic()
        assert x.map_between((2,), (0,)).matrix[0, 0] == 6

    def test_chain_needs_composable_maps(self):
        two = FPModule.free(Z, 2)
        with pytest.raises(ShapeError):
            chain_double_cube([ModuleMorphism.scalar(ONE, 2), ModuleMorphism.scalar(two, 3)])

    def test_map_between_checks_order(self):
        with pytest.raises(ValidationError):
            chain_2_3().map_between((0,), (2,))

    def test_two_pullback(self):
        cube = pullback_two(chain_2_3())
        assert cube.boundary(A, "a").matrix[0, 0] == 6


class TestPatching:
    """Gluing patching families into double cubes."""

    def test_patch_inverts_unpatch(self):
        x = chain_2_3()
        assert patch(unpatch(x)) == x

    def test_incompatible_family(self):
        family = {EMPTY: typical_cube([2], ONE), A: typical_cube([2], FPModule.cyclic(Z, 5))}
        with pytest.raises(PatchingError):
            patch(family)

    def test_missing_member(self):
        with pytest.raises(ShapeError):
            patch({EMPTY: typical_cube([2], ONE)})

    def test_adjugate_family_patches(self):
        patching = patched_typical()
        assert all(patching.identities.values())
        assert patching.double is not None
        assert unpatch(patching.double) == patching.family


class TestFiberedDoubleCubes:
    """Equivalent fiberedness conditions and the meet description."""

    def test_conditions_agree(self):
        conditions = fibered_conditions(patched_typical().double)
        assert conditions.agree
        assert conditions.i

    def test_fiber_description(self):
        description = fiber_description_check(patched_typical().double)
        assert description.applicable
        assert description.holds


class TestDoubleCubeTheorem:
    """Hypotheses imply admissibility of the top pullback."""

    @pytest.mark.parametrize("variant", list(DctVariant))
    def test_patched_typical_cube(self, variant):
        report = dct_check(patched_typical().double, variant)
        assert report.hypotheses["two_admissible"]
        assert report.hypotheses["monic"]
        assert report.conclusion
        assert report.implication_ok

    @pytest.mark.parametrize("variant", list(DctVariant))
    def test_failed_hypotheses(self, variant):
        """``Z <-2- Z <-0- Z`` is neither monic nor has an admissible ``2^*``."""
        chain = chain_double_cube([ModuleMorphism.scalar(ONE, 2), ModuleMorphism.scalar(ONE, 0)])
        report = dct_check(chain, variant)
        assert not report.hypotheses["two_admissible"]
        assert not report.hypotheses["monic"]
        assert not report.conclusion
        assert report.implication_ok

    def test_variant_must_be_a_member(self):
        with pytest.raises(ValidationError):
            dct_check(patched_typical().double, "dct")


if __name__ == "__main__":
    pytest.main([__file__])
