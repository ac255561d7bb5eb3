"""
Tests for adjugates of cubes, patching families and the main theorem checks.
"""

import pytest

from admissible_cubes.adjugates import (
    CubeAdjugate,
    cofactor_adjugate,
    corollary_check,
    dual_adjugate,
    family_adjugate,
    family_cube,
    fib_adjugate,
    induced_adjugate,
    main_theorem_check,
    patching_family_of,
    restrict_adjugate,
    search_cofactors,
    typical_adjugate,
    verify_adjugate,
)
from admissible_cubes.cubes import EMPTY, build_cube, typical_cube
from admissible_cubes.exceptions import AdjugateError, ValidationError
from admissible_cubes.linalg import Matrix
from admissible_cubes.modules import FPModule, ModuleMorphism
from admissible_cubes.rings import RingDescriptor

Z = RingDescriptor.integers()
ONE = FPModule.free(Z, 1)
TWO = FPModule.free(Z, 2)
A, B = frozenset({"a"}), frozenset({"b"})


def scalar(n):
    return ModuleMorphism.scalar(ONE, n)


def diagonal_cube():
    """A free 2-cube on ``Z^2`` with ``diag(2, 3)`` and ``diag(5, 1)`` boundaries."""
    entries = {"a": [2, 3], "b": [5, 1]}
    return build_cube(
        ["a", "b"],
        lambda s: TWO,
        lambda s, t: ModuleMorphism(TWO, TWO, Matrix.diagonal(Z, entries[t])),
    )


def cofactor_adjugate_pair():
    x = diagonal_cube()
    return x, cofactor_adjugate(x)


class TestVerification:
    """The two axioms and regularity."""

    def test_typical_adjugate_is_valid(self):
        x, adj = typical_adjugate([2, 3], [5, 7], ONE)
        report = verify_adjugate(x, adj, regular=True)
        assert report.valid
        assert report.axiom_i and report.axiom_ii
        assert report.regular
        assert adj.scalars == {"a": 10, "b": 21}

    def test_wrong_scalar_breaks_first_axiom(self):
        x, adj = typical_adjugate([2, 3], [5, 7], ONE)
        bad = CubeAdjugate({"a": 11, "b": 21}, adj.stars)
        report = verify_adjugate(x, bad)
        assert not report.valid
        assert not report.axiom_i
        assert "a_a" in report.witness

    def test_missing_reverse_map(self):
        x, adj = typical_adjugate([2, 3], [5, 7], ONE)
        with pytest.raises(AdjugateError):
            verify_adjugate(x, CubeAdjugate(adj.scalars, {}))

    def test_irregular_scalars(self):
        """``h = (4, 6)`` shares the factor 2."""
        x, adj = typical_adjugate([2, 3], [2, 2], ONE)
        report = verify_adjugate(x, adj, regular=True)
        assert report.axiom_i and report.axiom_ii
        assert report.regular is False
        assert not report.valid

    def test_length_mismatch(self):
        with pytest.raises(ValidationError):
            typical_adjugate([2, 3], [5], ONE)


class TestCofactorAdjugate:
    """Adjugates from matrix adjugates of the boundaries."""

    def test_scalar_cube(self):
        adj = cofactor_adjugate(typical_cube([2, 3], ONE))
        assert adj.scalars == {"a": 2, "b": 3}
        assert adj.star(A, "a").matrix[0, 0] == 1

    def test_diagonal_cube(self):
        x = diagonal_cube()
        adj = cofactor_adjugate(x)
        assert adj.scalars == {"a": 6, "b": 5}
        assert verify_adjugate(x, adj).valid

    def test_singular_boundary(self):
        with pytest.raises(AdjugateError):
            cofactor_adjugate(typical_cube([2, 0], ONE))

    def test_torsion_vertex(self):
        with pytest.raises(AdjugateError):
            cofactor_adjugate(typical_cube([2], FPModule.cyclic(Z, 5)))


class TestInducedAdjugates:
    """Adjugates pulled back along maps and onto fiber products."""

    def test_induced_adjugate(self):
        result = induced_adjugate(scalar(2), scalar(3), 6, scalar(5))
        assert (result.f_prime @ result.f_prime_star).same_map(scalar(6))
        assert (result.phi_prime @ result.f_prime_star).same_map(scalar(15))

    def test_not_an_adjugate(self):
        with pytest.raises(AdjugateError):
            induced_adjugate(scalar(2), scalar(2), 6, scalar(5))

    def test_fib_adjugate(self):
        """``4 * 3 = 6 * 2 = 12`` lifts to the fiber product of ``4Z`` and ``6Z``."""
        fib, adj = fib_adjugate({"a": scalar(4), "b": scalar(6)},
                                {"a": scalar(3), "b": scalar(2)},
                                {"a": 12, "b": 12})
        assert verify_adjugate(fib.cube, adj).valid


class TestDerivedAdjugates:
    """Duals, restrictions and patching family members."""

    def test_dual_adjugate(self):
        x, adj = typical_adjugate([2, 3], [5, 7], ONE)
        y, dual_adj = dual_adjugate(x, adj)
        assert y.boundary(A, "a").matrix[0, 0] == 5
        assert verify_adjugate(y, dual_adj).valid

    def test_restricted_adjugate(self):
        x, adj = typical_adjugate([2, 3], [5, 7], ONE)
        restricted = restrict_adjugate(adj, A, B)
        assert restricted.scalars == {"a": 10}
        assert verify_adjugate(x.restrict(A, B), restricted).valid

    def test_family_member(self):
        x, adj = typical_adjugate([2, 3], [5, 7], ONE)
        member = family_cube(x, adj, A)
        assert member.boundary(A, "a").matrix[0, 0] == 5
        assert member.boundary(B, "b").matrix[0, 0] == 3
        assert verify_adjugate(member, family_adjugate(x, adj, A)).valid

    def test_patching_identities(self):
        x, adj = cofactor_adjugate_pair()
        patching = patching_family_of(x, adj)
        assert patching.family[EMPTY] == x
        assert all(patching.identities.values())

    def test_patching_needs_valid_adjugate(self):
        x, adj = typical_adjugate([2, 3], [5, 7], ONE)
        with pytest.raises(AdjugateError):
            patching_family_of(x, CubeAdjugate({"a": 11, "b": 21}, adj.stars))


class TestMainTheorem:
    """Regular adjugates make every patching family member admissible."""

    def test_typical_cube(self):
        x, adj = typical_adjugate([2, 3], [5, 7], ONE)
        report = main_theorem_check(x, adj)
        assert report.regular and report.monic
        assert len(report.admissible) == 4
        assert all(report.admissible.values())
        assert report.implication_ok

    def test_diagonal_cube(self):
        x, adj = cofactor_adjugate_pair()
        assert main_theorem_check(x, adj).implication_ok

    def test_irregular_adjugate_is_vacuous(self):
        x, adj = typical_adjugate([2, 3], [2, 2], ONE)
        report = main_theorem_check(x, adj)
        assert not report.regular
        assert report.implication_ok


class TestCorollary:
    """Factors of a regular sequence form a regular sequence."""

    def test_factors_of_regular_sequence(self):
        report = corollary_check([2, 3], [5, 7], Z)
        assert report.hs == (10, 21)
        assert report.hypotheses
        assert report.f_sequence
        assert report.implication_ok

    def test_unit_factor_is_vacuous(self):
        report = corollary_check([2, 1], [3, 5], Z)
        assert not report.f_nonunits
        assert report.implication_ok

    def test_search_cofactors(self):
        report = search_cofactors([2, 3], [1, 2], Z)
        assert report is not None
        assert report.gs == (1, 1)
        assert search_cofactors([2, 4], [1, 3], Z) is None


if __name__ == "__main__":
    pytest.main([__file__])
