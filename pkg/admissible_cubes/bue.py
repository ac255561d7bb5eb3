"""
Fitting ideals, grade and the Buchsbaum-Eisenbud exactness criterion.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from math import comb
from typing import List, Optional, Sequence, Tuple

from .adjugates import CubeAdjugate, is_regular
from .complexes import ChainComplex, is_spherical
from .config import Limits, resolve
from .cubes import Cube, koszul_complex, total_complex
from .exceptions import ValidationError
from .linalg import determinantal_divisor, minors
from .modules import FPModule, ModuleMorphism
from .rings import RingDescriptor, RingElement, RingKind

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IdealRep:
    """
    A finitely generated ideal with its canonical generator.

    Example:
        >>> z = RingDescriptor.integers()
        >>> IdealRep.of(z, [4, 6]).canonical
        2
    """

    ring: RingDescriptor
    generators: Tuple[RingElement, ...]
    canonical: RingElement

    @classmethod
    def of(cls, ring: RingDescriptor, generators: Sequence[RingElement]) -> "IdealRep":
        values = tuple(ring.element(g) for g in generators)
        return cls(ring, values, ring.ideal_generator(values))

    @classmethod
    def unit(cls, ring: RingDescriptor) -> "IdealRep":
        return cls(ring, (ring.one,), ring.one)

    @classmethod
    def zero(cls, ring: RingDescriptor) -> "IdealRep":
        return cls(ring, (), ring.zero)

    @property
    def is_zero(self) -> bool:
        return self.canonical == self.ring.zero

    @property
    def is_unit(self) -> bool:
        return self.ring.is_unit(self.canonical)

    def contains(self, a: RingElement) -> bool:
        return self.ring.divides(self.canonical, self.ring.element(a))

    def describe(self) -> List[str]:
        return [self.ring.format(g) for g in self.generators]

    def __str__(self) -> str:
        return f"({self.ring.format(self.canonical)})"


@dataclass(frozen=True)
class GradeValue:
    """A grade: a non-negative integer, or ``None`` for infinity."""

    value: Optional[int]

    @classmethod
    def infinite(cls) -> "GradeValue":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def at_least(self, n: int) -> bool:
        return self.value is None or self.value >= n

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)


def _require_free(module: FPModule, what: str) -> None:
    if not module.is_free:
        raise ValidationError(f"Invalid {what}: a free module is required")


def fitting_ideal(phi: ModuleMorphism, t: int, limits: Optional[Limits] = None) -> IdealRep:
    """
    The ideal ``I_t(phi)`` of ``t``-minors of a map between free modules.

    ``I_0`` is the unit ideal and ``I_t`` is zero past the matrix size. When
    there are more than ``Limits.max_listed_minors`` minors only the
    determinantal divisor is kept as generator.

    Args:
        phi: A morphism between free modules
        t: Minor size, non-negative

    Returns:
        The ideal with its canonical generator

    Raises:
        ValidationError: If a module is not free or ``t`` is negative
    """
    _require_free(phi.source, "source")
    _require_free(phi.target, "target")
    if t < 0:
        raise ValidationError(f"Invalid minor size t={t}")
    ring = phi.source.ring
    matrix = phi.matrix
    if t == 0:
        return IdealRep.unit(ring)
    if t > min(matrix.rows, matrix.cols):
        return IdealRep.zero(ring)
    count = comb(matrix.rows, t) * comb(matrix.cols, t)
    if count > resolve(limits).max_listed_minors:
        divisor = determinantal_divisor(matrix, t)
        return IdealRep(ring, (divisor,), divisor)
    return IdealRep.of(ring, minors(matrix, t))


def _closed_form_grade(ideal: IdealRep) -> GradeValue:
    if ideal.is_zero:
        return GradeValue(0)
    if ideal.is_unit:
        return GradeValue.infinite()
    return GradeValue(1)


def grade(ideal: IdealRep, limits: Optional[Limits] = None) -> GradeValue:
    """
    Grade of an ideal on the ring itself.

    The zero ideal has grade 0 and the unit ideal has grade infinity. Otherwise
    the grade is ``n - max{i : H_i(Koszul(g_1..g_n)) != 0}`` on the listed
    generators, or on the canonical generator when there are more than
    ``Limits.max_koszul_generators`` of them. Over the integers the result is
    compared with the closed form (1 for proper nonzero ideals).

    Example:
        >>> z = RingDescriptor.integers()
        >>> str(grade(IdealRep.of(z, [4, 6])))
        '1'
    """
    ring = ideal.ring
    if ideal.is_zero:
        return GradeValue(0)
    if ideal.is_unit:
        return GradeValue.infinite()
    gens = [g for g in ideal.generators if g != ring.zero]
    if len(gens) > resolve(limits).max_koszul_generators:
        gens = [ideal.canonical]
    complex_ = koszul_complex(gens, FPModule.free(ring, 1))
    top = max(k for k in complex_.degrees() if not complex_.homology(k).is_zero)
    value = GradeValue(len(gens) - top)
    if ring.kind is RingKind.INTEGERS and value != _closed_form_grade(ideal):
        logger.warning("Koszul grade %s disagrees with the closed form for %s", value, ideal)
    return value


class BeMode(Enum):
    CRITERION_ONLY = "criterion"
    EQUIVALENCE_TEST = "equivalence"


@dataclass(frozen=True)
class BeReport:
    """
    Outcome of the exactness criterion on a free complex ``F_s -> ... -> F_0``.

    ``criterion`` is ``grade I_{r_i}(phi_i) >= i`` for every ``i``; ``witness``
    is the first failing ``i``. ``negative_rank`` flags an ``r_i < 0``, which
    counts as a failure.
    """

    r: Tuple[int, ...]
    fitting: Tuple[IdealRep, ...]
    grades: Tuple[GradeValue, ...]
    spherical: bool
    criterion: bool
    mode: BeMode
    witness: Optional[int] = None
    negative_rank: bool = False

    @property
    def equivalent(self) -> bool:
        return self.spherical == self.criterion

    @property
    def passed(self) -> bool:
        if self.mode is BeMode.EQUIVALENCE_TEST:
            return self.equivalent
        return self.criterion


def expected_ranks(ranks: Sequence[int]) -> List[int]:
    """``r_i = sum_{j>=i} (-1)^{j-i} rank F_j`` for ``i = 1..s``."""
    s = len(ranks) - 1
    return [sum((-1) ** (j - i) * ranks[j] for j in range(i, s + 1)) for i in range(1, s + 1)]


def be_check(complex_: ChainComplex, mode: BeMode = BeMode.EQUIVALENCE_TEST,
             limits: Optional[Limits] = None) -> BeReport:
    """
    Evaluate both sides of the Buchsbaum-Eisenbud criterion.

    Args:
        complex_: A complex of free modules starting in degree 0
        mode: ``CRITERION_ONLY`` judges the grade condition, while
            ``EQUIVALENCE_TEST`` judges whether it agrees with 0-sphericity

    Returns:
        The ranks ``r_i``, the ideals ``I_{r_i}(phi_i)``, their grades and both verdicts

    Raises:
        ValidationError: If a module is not free or the complex starts below 0
    """
    if not isinstance(mode, BeMode):
        raise ValidationError(f"Invalid criterion mode: {mode!r}")
    if complex_.lo < 0:
        raise ValidationError("Invalid complex: degrees must be non-negative")
    for k in complex_.degrees():
        _require_free(complex_.module(k), f"module in degree {k}")
    ranks = [complex_.module(k).gens for k in range(complex_.hi + 1)]
    r = expected_ranks(ranks)
    fitting: List[IdealRep] = []
    grades: List[GradeValue] = []
    witness: Optional[int] = None
    negative = False
    ring = complex_.ring
    for i, r_i in enumerate(r, start=1):
        if r_i < 0:
            negative = True
            ideal = IdealRep.zero(ring)
            value = GradeValue(0)
            ok = False
        else:
            ideal = fitting_ideal(complex_.boundary(i), r_i, limits)
            value = grade(ideal, limits)
            ok = value.at_least(i)
        fitting.append(ideal)
        grades.append(value)
        if not ok and witness is None:
            witness = i
    spherical = is_spherical(complex_, 0).spherical
    report = BeReport(tuple(r), tuple(fitting), tuple(grades), spherical,
                      witness is None, mode, witness, negative)
    logger.info("BE criterion %s, spherical %s", report.criterion, spherical)
    return report


@dataclass(frozen=True)
class RelationReport:
    applicable: bool
    criterion: bool
    witness: Optional[str] = None

    @property
    def implication_ok(self) -> bool:
        return not self.applicable or self.criterion


def relation_with_be(x: Cube, adj: CubeAdjugate,
                     limits: Optional[Limits] = None) -> RelationReport:
    """
    On a cube of free modules of one rank with a regular adjugate, the grade
    condition holds on ``Tot x``.
    """
    vertices = [x.vertex(s) for s in x.index.subsets()]
    ranks = {v.gens for v in vertices}
    free = all(v.is_free for v in vertices)
    regular, why = is_regular(x, adj, limits)
    if not (free and len(ranks) == 1 and regular):
        reason = why if not regular else "vertices are not free of equal rank"
        return RelationReport(False, False, reason)
    report = be_check(total_complex(x), BeMode.CRITERION_ONLY, limits)
    witness = None if report.criterion else f"grade fails at i={report.witness}"
    return RelationReport(True, report.criterion, witness)
