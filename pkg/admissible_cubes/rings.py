"""
Exact coefficient rings.

Four rings are supported: the integers, the rationals, prime fields and the
residue rings Z/m for composite m. Elements are plain Python values: ``int``
for the integers and for residues (canonical representative in ``[0, m)``),
``fractions.Fraction`` for the rationals.
"""

import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Tuple, Union

from sympy import isprime

from .exceptions import RingMismatchError, ValidationError

RingElement = Union[int, Fraction]


class RingKind(Enum):
    INTEGERS = "ZZ"
    RATIONALS = "QQ"
    PRIME_FIELD = "GF"
    INTEGERS_MOD = "ZMOD"


class ElementClass(Enum):
    ZERO = "zero"
    UNIT = "unit"
    NON_UNIT = "non-unit"


class ArithOp(Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    NEG = "neg"


@dataclass(frozen=True)
class Classification:
    """Result of :meth:`RingDescriptor.classify`."""

    kind: ElementClass
    inverse: Optional[RingElement] = None


_RING_PATTERNS = (
    (re.compile(r"^(ZZ|Z)$"), RingKind.INTEGERS),
    (re.compile(r"^(QQ|Q)$"), RingKind.RATIONALS),
    (re.compile(r"^(GF|F)\((\d+)\)$"), RingKind.PRIME_FIELD),
    (re.compile(r"^(ZZ|Z)/(\d+)$"), RingKind.INTEGERS_MOD),
)


@dataclass(frozen=True)
class RingDescriptor:
    """
    One of the exact coefficient rings.

    Args:
        kind: Which ring family
        modulus: The prime p for ``PRIME_FIELD``, the modulus m for
            ``INTEGERS_MOD``, and 0 otherwise

    Example:
        >>> ring = RingDescriptor.parse("Z/6")
        >>> ring.mul(2, 3)
        0
    """

    kind: RingKind
    modulus: int = 0

    def __post_init__(self) -> None:
        if self.kind in (RingKind.PRIME_FIELD, RingKind.INTEGERS_MOD):
            if not isinstance(self.modulus, int) or self.modulus < 2:
                raise ValidationError(f"Invalid modulus: {self.modulus!r}")
            if self.kind is RingKind.PRIME_FIELD and not isprime(self.modulus):
                raise ValidationError(f"Invalid prime field: {self.modulus} is not prime")
        elif self.modulus != 0:
            raise ValidationError(f"{self.kind.value} takes no modulus")

    # Constructors

    @classmethod
    def integers(cls) -> "RingDescriptor":
        return cls(RingKind.INTEGERS)

    @classmethod
    def rationals(cls) -> "RingDescriptor":
        return cls(RingKind.RATIONALS)

    @classmethod
    def prime_field(cls, p: int) -> "RingDescriptor":
        return cls(RingKind.PRIME_FIELD, p)

    @classmethod
    def integers_mod(cls, m: int) -> "RingDescriptor":
        return cls(RingKind.INTEGERS_MOD, m)

    @classmethod
    def parse(cls, text: str) -> "RingDescriptor":
        """Parse ``ZZ``, ``QQ``, ``GF(p)`` or ``Z/m``."""
        if not text:
            raise ValidationError("Ring name is required")
        compact = text.replace(" ", "")
        for pattern, kind in _RING_PATTERNS:
            match = pattern.match(compact)
            if match:
                if kind in (RingKind.PRIME_FIELD, RingKind.INTEGERS_MOD):
                    return cls(kind, int(match.group(2)))
                return cls(kind)
        raise ValidationError(f"Invalid ring name: {text!r}")

    @property
    def name(self) -> str:
        if self.kind is RingKind.PRIME_FIELD:
            return f"GF({self.modulus})"
        if self.kind is RingKind.INTEGERS_MOD:
            return f"Z/{self.modulus}"
        return self.kind.value

    def __str__(self) -> str:
        return self.name

    @property
    def is_field(self) -> bool:
        return self.kind in (RingKind.RATIONALS, RingKind.PRIME_FIELD)

    @property
    def is_residue_ring(self) -> bool:
        return self.kind in (RingKind.PRIME_FIELD, RingKind.INTEGERS_MOD)

    @property
    def is_euclidean(self) -> bool:
        """True for the rings the Smith form runs on directly."""
        return self.kind is not RingKind.INTEGERS_MOD

    @property
    def zero(self) -> RingElement:
        return Fraction(0) if self.kind is RingKind.RATIONALS else 0

    @property
    def one(self) -> RingElement:
        return Fraction(1) if self.kind is RingKind.RATIONALS else 1

    # Membership and canonical forms

    def contains(self, a: object) -> bool:
        if self.kind is RingKind.RATIONALS:
            return isinstance(a, Fraction)
        if not isinstance(a, int) or isinstance(a, bool):
            return False
        if self.is_residue_ring:
            return 0 <= a < self.modulus
        return True

    def check(self, *values: object) -> None:
        """Raise :class:`RingMismatchError` unless every value is an element."""
        for value in values:
            if not self.contains(value):
                raise RingMismatchError(f"{value!r} is not an element of {self.name}")

    def reduce(self, value: RingElement) -> RingElement:
        """Canonical form of a value already known to live in this ring's lift."""
        if self.is_residue_ring:
            return value % self.modulus  # type: ignore[operator]
        return value

    def element(self, value: Union[int, Fraction, str]) -> RingElement:
        """
        Convert a Python value or its text encoding into a canonical element.

        Raises:
            ValidationError: If the value has no meaning in this ring
        """
        if isinstance(value, bool):
            raise ValidationError(f"Invalid element: {value!r}")
        if isinstance(value, str):
            value = self._parse_text(value)
        if self.kind is RingKind.RATIONALS:
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            raise ValidationError(f"Invalid rational: {value!r}")
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise ValidationError(f"Invalid element of {self.name}: {value}")
            value = value.numerator
        if not isinstance(value, int):
            raise ValidationError(f"Invalid element of {self.name}: {value!r}")
        return self.reduce(value)

    def _parse_text(self, text: str) -> RingElement:
        try:
            if "/" in text:
                return Fraction(text.strip())
            return int(text.strip())
        except ValueError as e:
            raise ValidationError(f"Invalid element text {text!r}: {e}")

    def format(self, a: RingElement) -> str:
        return str(a)

    def lift(self, a: RingElement) -> int:
        """Integer representative; only defined away from the rationals."""
        if self.kind is RingKind.RATIONALS:
            raise ValidationError("Rationals have no integer lift")
        return int(a)

    # Arithmetic

    def add(self, a: RingElement, b: RingElement) -> RingElement:
        return self.reduce(a + b)

    def sub(self, a: RingElement, b: RingElement) -> RingElement:
        return self.reduce(a - b)

    def mul(self, a: RingElement, b: RingElement) -> RingElement:
        return self.reduce(a * b)

    def neg(self, a: RingElement) -> RingElement:
        return self.reduce(-a)

    def arith(self, op: ArithOp, a: RingElement,
              b: Optional[RingElement] = None) -> RingElement:
        """Checked arithmetic; raises :class:`RingMismatchError` on foreign operands."""
        if op is ArithOp.NEG:
            self.check(a)
            return self.neg(a)
        if b is None:
            raise ValidationError(f"{op.value} needs two operands")
        self.check(a, b)
        if op is ArithOp.ADD:
            return self.add(a, b)
        if op is ArithOp.SUB:
            return self.sub(a, b)
        return self.mul(a, b)

    def power(self, a: RingElement, n: int) -> RingElement:
        if self.is_residue_ring:
            return pow(int(a), n, self.modulus)
        return a ** n

    def product(self, values: Iterable[RingElement]) -> RingElement:
        result = self.one
        for value in values:
            result = self.mul(result, value)
        return result

    # Units and divisibility

    def classify(self, a: RingElement) -> Classification:
        if a == 0:
            return Classification(ElementClass.ZERO)
        if self.kind is RingKind.INTEGERS:
            if a in (1, -1):
                return Classification(ElementClass.UNIT, a)
            return Classification(ElementClass.NON_UNIT)
        if self.kind is RingKind.RATIONALS:
            return Classification(ElementClass.UNIT, 1 / Fraction(a))
        if math.gcd(int(a), self.modulus) == 1:
            return Classification(ElementClass.UNIT, pow(int(a), -1, self.modulus))
        return Classification(ElementClass.NON_UNIT)

    def is_unit(self, a: RingElement) -> bool:
        return self.classify(a).kind is ElementClass.UNIT

    def inverse(self, a: RingElement) -> RingElement:
        result = self.classify(a)
        if result.inverse is None:
            raise ValidationError(f"{a} is not a unit of {self.name}")
        return result.inverse

    def divides(self, a: RingElement, b: RingElement) -> bool:
        """Whether ``a`` divides ``b``."""
        if self.is_field:
            return a != 0 or b == 0
        if self.kind is RingKind.INTEGERS:
            return b == 0 if a == 0 else b % a == 0
        return int(b) % math.gcd(int(a), self.modulus) == 0

    def exact_div(self, b: RingElement, a: RingElement) -> RingElement:
        """
        An element ``c`` with ``a * c == b``.

        Raises:
            ValidationError: If ``a`` does not divide ``b``
        """
        if not self.divides(a, b):
            raise ValidationError(f"{a} does not divide {b} in {self.name}")
        if self.kind is RingKind.INTEGERS:
            return 0 if a == 0 else b // a  # type: ignore[operator]
        if self.is_field:
            return self.zero if b == 0 else self.mul(b, self.inverse(a))
        g = math.gcd(int(a), self.modulus)
        cofactor = self.modulus // g
        k = (int(a) // g) % cofactor
        return (int(b) // g) * pow(k, -1, cofactor) % cofactor if cofactor > 1 else 0

    def normalize(self, a: RingElement) -> RingElement:
        """The canonical associate of ``a``."""
        if a == 0:
            return self.zero
        if self.kind is RingKind.INTEGERS:
            return abs(a)  # type: ignore[arg-type]
        if self.is_field:
            return self.one
        return math.gcd(int(a), self.modulus)

    def ideal_generator(self, values: Iterable[RingElement]) -> RingElement:
        """Canonical generator of the ideal generated by ``values``."""
        if self.is_field:
            return self.one if any(v != 0 for v in values) else self.zero
        g = 0
        for value in values:
            g = math.gcd(g, int(value))
        if self.kind is RingKind.INTEGERS:
            return g
        return math.gcd(g, self.modulus) % self.modulus

    def gcd_lcm(self, a: RingElement, b: RingElement) -> Tuple[RingElement, RingElement]:
        """
        Greatest common divisor and least common multiple.

        Over fields the gcd is 0 or 1 and the lcm follows the same convention.

        Raises:
            ValidationError: For Z/m with composite m
        """
        if self.kind is RingKind.INTEGERS_MOD and not isprime(self.modulus):
            raise ValidationError(f"gcd/lcm is not defined over {self.name}")
        if self.kind is RingKind.INTEGERS:
            g = math.gcd(a, b)  # type: ignore[arg-type]
            return g, (abs(a * b) // g if g else 0)  # type: ignore[operator]
        g = self.zero if a == 0 and b == 0 else self.one
        lcm = self.zero if a == 0 or b == 0 else self.one
        return g, lcm

    def quotient_remainder(self, a: RingElement,
                           b: RingElement) -> Tuple[RingElement, RingElement]:
        """Euclidean division ``a = q*b + r`` for the integers and fields."""
        if b == 0:
            raise ValidationError("Division by zero")
        if self.kind is RingKind.INTEGERS:
            return divmod(a, b)  # type: ignore[return-value]
        if self.is_field:
            return self.mul(a, self.inverse(b)), self.zero
        raise ValidationError(f"{self.name} is not Euclidean")

    def size(self, a: RingElement) -> int:
        """Euclidean size used for pivot choice."""
        if a == 0:
            return 0
        if self.kind is RingKind.INTEGERS:
            return abs(int(a))
        return 1
