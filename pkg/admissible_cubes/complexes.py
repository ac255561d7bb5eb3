"""
Chain complexes of finitely presented modules, homological convention.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .exceptions import NotAChainComplexError, ShapeError, ValidationError
from .linalg import Matrix, block_diagonal, hstack, vstack
from .modules import FPModule, ModuleMorphism, cokernel_of, direct_sum, kernel_of, lift_through_mono
from .rings import RingDescriptor, RingElement

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChainComplex:
    """
    ``C_lo <- C_lo+1 <- ... <- C_hi`` with ``boundaries[i] = d_{lo+i+1}``.

    Degrees outside ``[lo, hi]`` hold zero modules. Construction checks that
    every boundary is well defined and that consecutive boundaries compose
    to zero.
    """

    ring: RingDescriptor
    lo: int
    modules: Tuple[FPModule, ...]
    boundaries: Tuple[ModuleMorphism, ...]

    def __post_init__(self) -> None:
        if not self.modules:
            raise ValidationError("A complex needs at least one module")
        if len(self.boundaries) != len(self.modules) - 1:
            raise ShapeError(
                f"{len(self.modules)} modules need {len(self.modules) - 1} boundaries"
            )
        for i, d in enumerate(self.boundaries):
            if d.source != self.modules[i + 1] or d.target != self.modules[i]:
                raise ShapeError(f"Boundary d_{self.lo + i + 1} does not match its modules")
            d.check()
        for i in range(1, len(self.boundaries)):
            if not (self.boundaries[i - 1] @ self.boundaries[i]).is_zero_map():
                raise NotAChainComplexError(
                    f"d_{self.lo + i} d_{self.lo + i + 1} is not zero"
                )

    @property
    def hi(self) -> int:
        return self.lo + len(self.modules) - 1

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def module(self, k: int) -> FPModule:
        if self.lo <= k <= self.hi:
            return self.modules[k - self.lo]
        return FPModule.zero(self.ring)

    def boundary(self, k: int) -> ModuleMorphism:
        """``d_k: C_k -> C_{k-1}``, the zero map outside the stored range."""
        if self.lo < k <= self.hi:
            return self.boundaries[k - self.lo - 1]
        return ModuleMorphism.zero(self.module(k), self.module(k - 1))

    @property
    def is_free(self) -> bool:
        return all(m.is_free for m in self.modules)

    def homology(self, k: int) -> FPModule:
        """``ker d_k / im d_{k+1}`` in minimal presentation."""
        cycles = kernel_of(self.boundary(k))
        if cycles.module.gens == 0:
            return cycles.module
        incoming = lift_through_mono(cycles.structure_map, self.boundary(k + 1))
        return cokernel_of(incoming).module

    def homology_invariants(self) -> Dict[int, Tuple[RingElement, ...]]:
        return {k: self.homology(k).invariant_factors for k in self.degrees()}


def homology(complex_: ChainComplex, k: int) -> FPModule:
    return complex_.homology(k)


@dataclass(frozen=True)
class SphericityReport:
    spherical: bool
    degree: int
    failing_degree: Optional[int] = None
    invariants: Tuple[RingElement, ...] = ()


def is_spherical(complex_: ChainComplex, n: int) -> SphericityReport:
    """
    Whether homology vanishes outside degree ``n``.

    The witness is the first degree with nonzero homology and its
    invariant factors.
    """
    for k in complex_.degrees():
        if k == n:
            continue
        h = complex_.homology(k)
        if not h.is_zero:
            logger.debug("Complex is not %d-spherical: H_%d = %s", n, k, h.describe())
            return SphericityReport(False, n, k, h.invariant_factors)
    return SphericityReport(True, n)


def concentrated(ring: RingDescriptor, modules: Sequence[FPModule],
                 matrices: Sequence[Matrix], lo: int = 0) -> ChainComplex:
    """Build a complex from modules and boundary matrices ``d_{lo+1}, ...``."""
    boundaries = tuple(
        ModuleMorphism(modules[i + 1], modules[i], matrix) for i, matrix in enumerate(matrices)
    )
    return ChainComplex(ring, lo, tuple(modules), boundaries)


def direct_sum_complex(first: ChainComplex, second: ChainComplex) -> ChainComplex:
    ring = first.ring
    lo = min(first.lo, second.lo)
    hi = max(first.hi, second.hi)
    modules = [direct_sum(ring, [first.module(k), second.module(k)]) for k in range(lo, hi + 1)]
    boundaries = []
    for k in range(lo + 1, hi + 1):
        matrix = block_diagonal(ring, [first.boundary(k).matrix, second.boundary(k).matrix])
        boundaries.append(ModuleMorphism(modules[k - lo], modules[k - lo - 1], matrix))
    return ChainComplex(ring, lo, tuple(modules), tuple(boundaries))


@dataclass(frozen=True)
class ChainMap:
    """Degreewise morphisms ``f_k: a_k -> b_k``; missing degrees are zero."""

    source: ChainComplex
    target: ChainComplex
    components: Dict[int, ModuleMorphism] = field(default_factory=dict)

    def component(self, k: int) -> ModuleMorphism:
        if k in self.components:
            return self.components[k]
        return ModuleMorphism.zero(self.source.module(k), self.target.module(k))

    def degrees(self) -> range:
        return range(min(self.source.lo, self.target.lo), max(self.source.hi, self.target.hi) + 1)

    def check(self) -> "ChainMap":
        for k, f in self.components.items():
            if f.source != self.source.module(k) or f.target != self.target.module(k):
                raise ShapeError(f"Component f_{k} does not match the complexes")
            f.check()
        for k in range(min(self.source.lo, self.target.lo), max(self.source.hi, self.target.hi) + 2):
            left = self.target.boundary(k) @ self.component(k)
            right = self.component(k - 1) @ self.source.boundary(k)
            if not left.same_map(right):
                raise NotAChainComplexError(f"Chain map does not commute in degree {k}")
        return self


def mapping_cone(f: ChainMap) -> ChainComplex:
    """
    ``Cone(f)_n = a_{n-1} + b_n`` with boundary ``[[-d^a, 0], [-f, d^b]]``.

    Raises:
        NotAChainComplexError: If ``f`` is not a chain map
    """
    f.check()
    a, b = f.source, f.target
    ring = a.ring
    lo = min(a.lo + 1, b.lo)
    hi = max(a.hi + 1, b.hi)
    modules = [direct_sum(ring, [a.module(n - 1), b.module(n)]) for n in range(lo, hi + 1)]
    boundaries: List[ModuleMorphism] = []
    for n in range(lo + 1, hi + 1):
        da = a.boundary(n - 1).matrix
        db = b.boundary(n).matrix
        fn = f.component(n - 1).matrix
        top = hstack(ring, da.rows, [-da, Matrix.zeros(ring, da.rows, db.cols)])
        bottom = hstack(ring, db.rows, [-fn, db])
        matrix = vstack(ring, da.cols + db.cols, [top, bottom])
        boundaries.append(ModuleMorphism(modules[n - lo], modules[n - lo - 1], matrix))
    return ChainComplex(ring, lo, tuple(modules), tuple(boundaries))
