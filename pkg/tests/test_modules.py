"""
Tests for finitely presented modules, morphisms and subobjects.
"""

import pytest

from admissible_cubes.exceptions import IllDefinedMorphismError, ShapeError, ValidationError
from admissible_cubes.linalg import Matrix
from admissible_cubes.modules import (
    FPModule,
    ModuleMorphism,
    Subobject,
    cokernel_of,
    cyclic_subobjects,
    fiber_product,
    image_of,
    is_epi,
    is_mono,
    kernel_of,
    lift_through_mono,
    morphism_class,
    pullback,
    quotient_by_scalars,
    short_exact_check,
)
from admissible_cubes.rings import RingDescriptor

Z = RingDescriptor.integers()
ONE = FPModule.free(Z, 1)


def ideal(n):
    return Subobject.image(ModuleMorphism.scalar(ONE, n))


class TestFPModule:
    """Presentations and invariants."""

    def test_invariant_factors(self):
        m = FPModule.from_invariants(Z, [2, 3])
        assert m.invariant_factors == (6,)
        assert FPModule.from_invariants(Z, [0, 1]).invariant_factors == (0,)
        assert FPModule.free(Z, 2).is_free
        assert FPModule.zero(Z).is_zero

    def test_isomorphic_ignores_presentation(self):
        assert FPModule.from_invariants(Z, [2, 3]).isomorphic(FPModule.cyclic(Z, 6))
        assert not FPModule.cyclic(Z, 4).isomorphic(FPModule.from_invariants(Z, [2, 2]))

    def test_relation_rows_must_match(self):
        with pytest.raises(ShapeError):
            FPModule(Z, 2, Matrix.from_rows(Z, [[1]]))

    def test_quotient_by_scalars(self):
        assert quotient_by_scalars(ONE, [4, 6]).invariant_factors == (2,)
        assert quotient_by_scalars(ONE, [2, 3]).is_zero


class TestMorphisms:
    """Well-definedness, subquotients and classification."""

    def test_ill_defined_map_detected(self):
        """``Z/2 -> Z/3`` sending 1 to 1 ignores the relation."""
        f = ModuleMorphism(FPModule.cyclic(Z, 2), FPModule.cyclic(Z, 3), Matrix.identity(Z, 1))
        assert not f.is_well_defined()
        with pytest.raises(IllDefinedMorphismError):
            kernel_of(f)

    def test_multiplication_by_two(self):
        two = ModuleMorphism.scalar(ONE, 2)
        assert kernel_of(two).module.is_zero
        assert cokernel_of(two).module.invariant_factors == (2,)
        assert image_of(two).module.invariant_factors == (0,)
        cls = morphism_class(two)
        assert cls.is_mono and not cls.is_epi and not cls.is_iso

    def test_torsion_kills_injectivity(self):
        """Over Z/4 multiplication by 2 has kernel Z/2."""
        ring = RingDescriptor.integers_mod(4)
        f = ModuleMorphism.scalar(FPModule.free(ring, 1), 2)
        assert not is_mono(f)
        assert kernel_of(f).module.invariant_factors == (2,)

    def test_projection_is_epi(self):
        f = ModuleMorphism(ONE, FPModule.cyclic(Z, 5), Matrix.identity(Z, 1))
        assert is_epi(f)
        assert not is_mono(f)

    def test_lift_through_mono(self):
        two = ModuleMorphism.scalar(ONE, 2)
        six = ModuleMorphism.scalar(ONE, 6)
        u = lift_through_mono(two, six)
        assert (two @ u).same_map(six)
        with pytest.raises(IllDefinedMorphismError):
            lift_through_mono(six, two)


class TestLimits:
    """Fiber products and pullbacks."""

    def test_pullback_of_coprime_scalars(self):
        p = pullback(ModuleMorphism.scalar(ONE, 2), ModuleMorphism.scalar(ONE, 3))
        assert p.module.invariant_factors == (0,)
        composite_f = ModuleMorphism.scalar(ONE, 2) @ p.to_source_f
        composite_g = ModuleMorphism.scalar(ONE, 3) @ p.to_source_g
        assert composite_f.same_map(composite_g)

    def test_fiber_product_of_one_map(self):
        f = ModuleMorphism.scalar(ONE, 5)
        result = fiber_product([f])
        assert result.module == ONE

    def test_targets_must_agree(self):
        with pytest.raises(ShapeError):
            pullback(ModuleMorphism.scalar(ONE, 2),
                     ModuleMorphism(ONE, FPModule.free(Z, 2), Matrix.from_rows(Z, [[1], [0]])))


class TestSubobjects:
    """Canonical subobjects and their lattice operations."""

    def test_equality_is_canonical(self):
        a = Subobject.of(ONE, Matrix.from_rows(Z, [[4, 6]]))
        assert a == ideal(2)

    def test_join_and_meet(self):
        assert ideal(4).join(ideal(6)) == ideal(2)
        assert ideal(4).meet(ideal(6)) == ideal(12)
        assert ideal(12).leq(ideal(4))
        assert not ideal(4).leq(ideal(12))

    def test_zero_and_whole(self):
        assert Subobject.zero(ONE).is_zero
        assert Subobject.whole(ONE) == ideal(1)
        assert ideal(3).to_module().module.invariant_factors == (0,)

    def test_foreign_ambients_rejected(self):
        other = Subobject.whole(FPModule.free(Z, 2))
        with pytest.raises(ValidationError):
            ideal(2).join(other)

    def test_cyclic_subobjects_of_klein_group(self):
        """``Z/2 + Z/2`` has four cyclic subgroups: zero and three of order two."""
        _, subs = cyclic_subobjects(FPModule.from_invariants(Z, [2, 2]))
        assert len(subs) == 4

    def test_short_exact_sequence(self):
        """The section sequence is exact for ideals of the integers."""
        report = short_exact_check(ideal(12), ideal(4), ideal(18), ideal(6))
        assert report.exact


if __name__ == "__main__":
    pytest.main([__file__])
