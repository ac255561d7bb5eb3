"""
Tests for the exact coefficient rings.
"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from admissible_cubes.exceptions import RingMismatchError, ValidationError
from admissible_cubes.rings import ArithOp, ElementClass, RingDescriptor, RingKind


class TestRingParsing:
    """Ring names and descriptors."""

    def test_known_names(self):
        """Every supported name parses to the expected kind."""
        test_cases = [
            ("ZZ", RingKind.INTEGERS, 0),
            ("QQ", RingKind.RATIONALS, 0),
            ("GF(7)", RingKind.PRIME_FIELD, 7),
            ("Z/12", RingKind.INTEGERS_MOD, 12),
            ("ZZ/8", RingKind.INTEGERS_MOD, 8),
        ]
        for text, kind, modulus in test_cases:
            ring = RingDescriptor.parse(text)
            assert ring.kind is kind
            assert ring.modulus == modulus

    def test_names_round_trip(self):
        """The printed name parses back to the same ring."""
        for text in ("ZZ", "QQ", "GF(5)", "Z/6"):
            ring = RingDescriptor.parse(text)
            assert RingDescriptor.parse(str(ring)) == ring

    def test_invalid_names(self):
        """Unknown names and composite prime fields are rejected."""
        for text in ("", "R", "GF(6)", "Z/1", "GF()"):
            with pytest.raises(ValidationError):
                RingDescriptor.parse(text)


class TestElements:
    """Canonical forms and membership."""

    def test_residues_are_reduced(self):
        ring = RingDescriptor.integers_mod(12)
        assert ring.element(-1) == 11
        assert ring.element("26") == 2

    def test_rationals_are_fractions(self):
        ring = RingDescriptor.rationals()
        assert ring.element("3/4") == Fraction(3, 4)
        assert ring.element(2) == Fraction(2)

    def test_non_integral_values_rejected(self):
        """A fraction is not an integer and a boolean is not an element."""
        with pytest.raises(ValidationError):
            RingDescriptor.integers().element("1/2")
        with pytest.raises(ValidationError):
            RingDescriptor.integers().element(True)

    def test_checked_arithmetic_rejects_foreign_operands(self):
        ring = RingDescriptor.prime_field(5)
        with pytest.raises(RingMismatchError):
            ring.arith(ArithOp.ADD, 7, 1)
        assert ring.arith(ArithOp.MUL, 3, 4) == 2


class TestUnitsAndDivisibility:
    """Unit classification, divisibility and ideal generators."""

    def test_classification(self):
        z = RingDescriptor.integers()
        assert z.classify(0).kind is ElementClass.ZERO
        assert z.classify(-1).kind is ElementClass.UNIT
        assert z.classify(6).kind is ElementClass.NON_UNIT
        z12 = RingDescriptor.integers_mod(12)
        assert z12.is_unit(5)
        assert not z12.is_unit(4)
        assert z12.inverse(5) == 5

    def test_divides_in_residue_ring(self):
        """``a | b`` in Z/m exactly when gcd(a, m) divides b."""
        ring = RingDescriptor.integers_mod(12)
        assert ring.divides(8, 4)
        assert not ring.divides(8, 2)
        assert ring.mul(8, ring.exact_div(4, 8)) == 4

    def test_ideal_generator(self):
        assert RingDescriptor.integers().ideal_generator([4, 6]) == 2
        assert RingDescriptor.integers().ideal_generator([]) == 0
        assert RingDescriptor.integers_mod(12).ideal_generator([8]) == 4
        assert RingDescriptor.rationals().ideal_generator([Fraction(0), Fraction(3)]) == 1

    def test_gcd_lcm_undefined_over_composite_modulus(self):
        with pytest.raises(ValidationError):
            RingDescriptor.integers_mod(6).gcd_lcm(2, 3)
        assert RingDescriptor.integers().gcd_lcm(4, 6) == (2, 12)

    @given(st.integers(-50, 50), st.integers(-50, 50).filter(lambda v: v != 0))
    def test_integer_division(self, a, b):
        """Euclidean division reconstructs its dividend."""
        z = RingDescriptor.integers()
        q, r = z.quotient_remainder(a, b)
        assert q * b + r == a

    @given(st.integers(0, 11), st.integers(0, 11))
    def test_exact_division_in_residue_ring(self, a, b):
        ring = RingDescriptor.integers_mod(12)
        if ring.divides(a, b):
            assert ring.mul(a, ring.exact_div(b, a)) == b
        else:
            with pytest.raises(ValidationError):
                ring.exact_div(b, a)


if __name__ == "__main__":
    pytest.main([__file__])
