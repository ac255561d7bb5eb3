"""
Tests for the seeded generators and the self-test runner.
"""

import random
from math import gcd

import pytest

from admissible_cubes.adjugates import verify_adjugate
from admissible_cubes.cubes import koszul_complex
from admissible_cubes.exceptions import ValidationError
from admissible_cubes.generators import (
    coprime_sequence,
    cube_corpus,
    modular_lattice,
    random_family,
    random_upper,
    scale_mutation,
    typical_pair,
)
from admissible_cubes.lattices import is_modular
from admissible_cubes.modules import FPModule
from admissible_cubes.rings import RingDescriptor
from admissible_cubes.selftest import SUITE_NAMES, run_suite, selftest


class TestGenerators:
    """Recipes produce what they promise."""

    def test_coprime_sequence(self):
        rng = random.Random(7)
        for _ in range(20):
            values = coprime_sequence(rng, 3)
            assert all(abs(v) >= 2 for v in values)
            assert all(gcd(a, b) == 1 for i, a in enumerate(values) for b in values[i + 1:])

    def test_same_seed_same_corpus(self):
        first = cube_corpus(random.Random("s"), 6)
        second = cube_corpus(random.Random("s"), 6)
        assert first == second
        assert len(first) == 6

    def test_regular_typical_pair(self):
        rng = random.Random(1)
        for _ in range(5):
            x, adj = typical_pair(rng, 2)
            assert verify_adjugate(x, adj, regular=True).valid

    def test_modular_lattices(self):
        rng = random.Random(2)
        for _ in range(5):
            assert is_modular(modular_lattice(rng)).modular

    def test_upper_family_dominates(self):
        rng = random.Random(3)
        lattice = modular_lattice(rng)
        family = random_family(rng, lattice, 3)
        upper = random_upper(rng, family)
        assert all(lattice.leq(family.members[s], upper.members[s]) for s in family.labels)

    def test_scale_mutation_keeps_a_complex(self):
        one = FPModule.free(RingDescriptor.integers(), 1)
        mutant = scale_mutation(random.Random(4), koszul_complex([2, 3, 5], one))
        assert mutant.modules == koszul_complex([2, 3, 5], one).modules


class TestRunner:
    """Suite selection, seeding and reports."""

    def test_linear_algebra_suite(self):
        report = selftest(seed=0, size="small", suites=[10])
        assert report.passed
        assert report.results[0].name == SUITE_NAMES[10]
        assert report.results[0].cases > 0

    @pytest.mark.parametrize("suite", sorted(SUITE_NAMES))
    def test_suite_passes(self, suite):
        result = run_suite(suite, seed=0, size="small")
        assert result.passed, result.to_dict()
        assert result.cases > 0

    def test_corollary_suite(self):
        assert run_suite(9, seed=5).passed

    def test_runs_are_reproducible(self):
        first = run_suite(1, seed=11).to_dict()
        second = run_suite(1, seed=11).to_dict()
        assert first == second

    def test_report_summary(self):
        data = selftest(seed=0, suites=[1]).to_dict()
        assert data["seed"] == 0
        assert data["failures"] == 0
        assert [s["suite"] for s in data["suites"]] == [1]

    @pytest.mark.parametrize("suite, size", [(0, "small"), (11, "small"), (1, "huge")])
    def test_invalid_selection(self, suite, size):
        with pytest.raises(ValidationError):
            run_suite(suite, size=size)


if __name__ == "__main__":
    pytest.main([__file__])
