"""
Finitely presented modules and their morphisms.

A module is ``A^g / colspan(R)``; a morphism is a matrix whose columns are the
images of the source generators. Kernels, images, cokernels, pullbacks and
subobject arithmetic all reduce to Smith forms and kernels of block matrices.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .exceptions import IllDefinedMorphismError, RingMismatchError, ShapeError, ValidationError
from .linalg import (
    Matrix,
    block_diagonal,
    column_span_form,
    hstack,
    in_column_span,
    kernel,
    smith_normal_form,
    solve,
    vstack,
)
from .rings import RingDescriptor, RingElement, RingKind

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FPModule:
    """
    Finitely presented module ``A^gens / colspan(relations)``.

    Two modules compare equal only when their presentations are identical;
    use :meth:`isomorphic` to compare invariant factors.

    Example:
        >>> z = RingDescriptor.integers()
        >>> FPModule.cyclic(z, 2).invariant_factors
        (2,)
    """

    ring: RingDescriptor
    gens: int
    relations: Matrix

    def __post_init__(self) -> None:
        if self.relations.ring != self.ring:
            raise RingMismatchError(f"Relations over {self.relations.ring}, module over {self.ring}")
        if self.relations.rows != self.gens:
            raise ShapeError(
                f"Relation matrix has {self.relations.rows} rows for {self.gens} generators"
            )

    @classmethod
    def free(cls, ring: RingDescriptor, n: int) -> "FPModule":
        return cls(ring, n, Matrix.zeros(ring, n, 0))

    @classmethod
    def zero(cls, ring: RingDescriptor) -> "FPModule":
        return cls.free(ring, 0)

    @classmethod
    def cyclic(cls, ring: RingDescriptor, d: RingElement) -> "FPModule":
        """The module ``A/(d)``."""
        return cls(ring, 1, Matrix(ring, 1, 1, (ring.element(d),)))

    @classmethod
    def from_invariants(cls, ring: RingDescriptor,
                        invariants: Sequence[RingElement]) -> "FPModule":
        """``A/(d_1) + ... + A/(d_k)`` with zero entries giving free summands."""
        values = [ring.element(d) for d in invariants]
        nonzero = [i for i, d in enumerate(values) if d != 0]
        data = [[values[i] if i == j else ring.zero for j in nonzero] for i in range(len(values))]
        return cls(ring, len(values), Matrix._from_lists(ring, data, len(nonzero)))

    @cached_property
    def invariant_factors(self) -> Tuple[RingElement, ...]:
        """Non-unit Smith invariants, zeros standing for free summands."""
        diagonal = smith_normal_form(self.relations).diagonal
        padded = list(diagonal) + [self.ring.zero] * (self.gens - len(diagonal))
        return tuple(d for d in padded[:self.gens] if not self.ring.is_unit(d))

    @property
    def is_zero(self) -> bool:
        return not self.invariant_factors

    @property
    def is_free(self) -> bool:
        """True when the presentation has no nonzero relations."""
        return self.relations.is_zero

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d == 0)

    def isomorphic(self, other: "FPModule") -> bool:
        return self.ring == other.ring and self.invariant_factors == other.invariant_factors

    def describe(self) -> List[str]:
        return [self.ring.format(d) for d in self.invariant_factors]

    def __repr__(self) -> str:
        return f"FPModule[{self.ring}](gens={self.gens}, invariants={self.describe()})"


def direct_sum(ring: RingDescriptor, modules: Sequence[FPModule]) -> FPModule:
    """Direct sum in input order."""
    for module in modules:
        if module.ring != ring:
            raise RingMismatchError(f"{module.ring} module in a sum over {ring}")
    relations = block_diagonal(ring, [m.relations for m in modules])
    return FPModule(ring, sum(m.gens for m in modules), relations)


@dataclass(frozen=True)
class ModuleMorphism:
    """
    A map ``source -> target`` given on generators.

    Dataclass equality compares matrices exactly; :meth:`same_map` compares
    the induced maps, i.e. modulo the target relations.
    """

    source: FPModule
    target: FPModule
    matrix: Matrix

    def __post_init__(self) -> None:
        ring = self.source.ring
        if self.target.ring != ring or self.matrix.ring != ring:
            raise RingMismatchError("Morphism data over different rings")
        if self.matrix.shape != (self.target.gens, self.source.gens):
            raise ShapeError(
                f"Morphism matrix {self.matrix.shape} does not fit "
                f"{self.source.gens} -> {self.target.gens} generators"
            )

    @property
    def ring(self) -> RingDescriptor:
        return self.source.ring

    @classmethod
    def identity(cls, module: FPModule) -> "ModuleMorphism":
        return cls(module, module, Matrix.identity(module.ring, module.gens))

    @classmethod
    def zero(cls, source: FPModule, target: FPModule) -> "ModuleMorphism":
        return cls(source, target, Matrix.zeros(source.ring, target.gens, source.gens))

    @classmethod
    def scalar(cls, module: FPModule, a: RingElement) -> "ModuleMorphism":
        """The map ``a_x``: multiplication by ``a``."""
        return cls(module, module, Matrix.scalar(module.ring, module.gens, module.ring.element(a)))

    def is_well_defined(self) -> bool:
        return in_column_span(self.target.relations, self.matrix @ self.source.relations)

    def check(self) -> "ModuleMorphism":
        if not self.is_well_defined():
            raise IllDefinedMorphismError(f"Matrix {self.matrix!r} does not respect the relations")
        return self

    def __matmul__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        """``self`` after ``other``."""
        if other.target != self.source:
            raise ShapeError("Composition of morphisms with mismatched modules")
        return ModuleMorphism(other.source, self.target, self.matrix @ other.matrix)

    def _parallel(self, other: "ModuleMorphism") -> None:
        if self.source != other.source or self.target != other.target:
            raise ShapeError("Morphisms have different sources or targets")

    def __add__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        self._parallel(other)
        return ModuleMorphism(self.source, self.target, self.matrix + other.matrix)

    def __neg__(self) -> "ModuleMorphism":
        return ModuleMorphism(self.source, self.target, -self.matrix)

    def __sub__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        return self + (-other)

    def scaled(self, a: RingElement) -> "ModuleMorphism":
        return ModuleMorphism(self.source, self.target, self.matrix.scaled(a))

    def is_zero_map(self) -> bool:
        return in_column_span(self.target.relations, self.matrix)

    def same_map(self, other: "ModuleMorphism") -> bool:
        self._parallel(other)
        return in_column_span(self.target.relations, self.matrix - other.matrix)


# Presentations and subquotients


@dataclass(frozen=True)
class Pruned:
    """
    A minimal diagonal presentation of a module.

    ``to_pruned`` and ``from_pruned`` change generators in both directions;
    their product ``to_pruned @ from_pruned`` is the identity.
    """

    module: FPModule
    to_pruned: Matrix
    from_pruned: Matrix


@lru_cache(maxsize=8192)
def prune(module: FPModule) -> Pruned:
    """Drop generators killed by unit invariants and diagonalize the relations."""
    ring = module.ring
    snf = smith_normal_form(module.relations)
    diagonal = snf.diagonal
    kept = [i for i in range(module.gens)
            if i >= len(diagonal) or not ring.is_unit(diagonal[i])]
    relation_columns = []
    for p, i in enumerate(kept):
        if i < len(diagonal) and diagonal[i] != 0:
            column = [ring.zero] * len(kept)
            column[p] = diagonal[i]
            relation_columns.append(column)
    pruned = FPModule(ring, len(kept), Matrix.from_columns(ring, relation_columns, len(kept)))
    to_pruned = snf.u.submatrix(kept, range(module.gens))
    from_pruned = snf.u_inv.submatrix(range(module.gens), kept)
    return Pruned(pruned, to_pruned, from_pruned)


class SubquotientKind(Enum):
    KERNEL = "kernel"
    IMAGE = "image"
    COKERNEL = "cokernel"


@dataclass(frozen=True)
class Subquotient:
    """
    A kernel, image or cokernel together with its structure map.

    For cokernels ``section`` maps generators of the cokernel back to
    generators of the target; composing it with the projection is the
    identity on the cokernel.
    """

    module: FPModule
    structure_map: ModuleMorphism
    section: Optional[Matrix] = None


def _kernel_generators(f: ModuleMorphism) -> Matrix:
    """Vectors in the source generating the kernel (as elements of the source module)."""
    combined = hstack(f.ring, f.target.gens, [f.matrix, f.target.relations])
    return kernel(combined).take_rows(0, f.source.gens)


def subquotient(f: ModuleMorphism, which: SubquotientKind) -> Subquotient:
    """
    Kernel, image or cokernel of ``f``.

    Args:
        f: A well-defined morphism
        which: The subquotient to build

    Returns:
        The module in minimal presentation with its mono or epi

    Raises:
        IllDefinedMorphismError: If ``f`` does not respect the relations
    """
    f.check()
    ring = f.ring
    if which is SubquotientKind.KERNEL:
        generators = _kernel_generators(f)
        syzygies = kernel(hstack(ring, f.source.gens, [generators, f.source.relations]))
        raw = FPModule(ring, generators.cols, syzygies.take_rows(0, generators.cols))
        pruned = prune(raw)
        mono = ModuleMorphism(pruned.module, f.source, generators @ pruned.from_pruned)
        return Subquotient(pruned.module, mono)
    if which is SubquotientKind.IMAGE:
        syzygies = _kernel_generators(f)
        raw = FPModule(ring, f.source.gens, syzygies)
        pruned = prune(raw)
        mono = ModuleMorphism(pruned.module, f.target, f.matrix @ pruned.from_pruned)
        return Subquotient(pruned.module, mono)
    raw = FPModule(ring, f.target.gens,
                   hstack(ring, f.target.gens, [f.target.relations, f.matrix]))
    pruned = prune(raw)
    epi = ModuleMorphism(f.target, pruned.module, pruned.to_pruned)
    return Subquotient(pruned.module, epi, pruned.from_pruned)


def kernel_of(f: ModuleMorphism) -> Subquotient:
    return subquotient(f, SubquotientKind.KERNEL)


def image_of(f: ModuleMorphism) -> Subquotient:
    return subquotient(f, SubquotientKind.IMAGE)


def cokernel_of(f: ModuleMorphism) -> Subquotient:
    return subquotient(f, SubquotientKind.COKERNEL)


def induced_on_cokernels(f: ModuleMorphism, source: Subquotient,
                         target: Subquotient) -> ModuleMorphism:
    """The map between cokernels induced by ``f``; assumes ``f`` respects the images."""
    if source.section is None or target.section is None:
        raise ValidationError("Induced maps need cokernel data")
    matrix = target.structure_map.matrix @ f.matrix @ source.section
    return ModuleMorphism(source.module, target.module, matrix)


@dataclass(frozen=True)
class MorphismClass:
    is_mono: bool
    is_epi: bool

    @property
    def is_iso(self) -> bool:
        return self.is_mono and self.is_epi


def is_mono(f: ModuleMorphism) -> bool:
    f.check()
    return in_column_span(f.source.relations, _kernel_generators(f))


def is_epi(f: ModuleMorphism) -> bool:
    f.check()
    combined = hstack(f.ring, f.target.gens, [f.target.relations, f.matrix])
    return in_column_span(combined, Matrix.identity(f.ring, f.target.gens))


def morphism_class(f: ModuleMorphism) -> MorphismClass:
    """
    Mono/epi/iso flags of a morphism.

    Example:
        >>> z = RingDescriptor.integers()
        >>> morphism_class(ModuleMorphism.scalar(FPModule.free(z, 1), 2)).is_mono
        True
    """
    return MorphismClass(is_mono(f), is_epi(f))


def lift_through_mono(mono: ModuleMorphism, f: ModuleMorphism) -> ModuleMorphism:
    """
    The morphism ``u`` with ``mono @ u == f``.

    Raises:
        IllDefinedMorphismError: If ``f`` does not land in the image of ``mono``
    """
    if mono.target != f.target:
        raise ShapeError("Lifting needs a common target")
    ring = f.ring
    combined = hstack(ring, mono.target.gens, [mono.matrix, mono.target.relations])
    solution = solve(combined, f.matrix)
    if solution is None:
        raise IllDefinedMorphismError("Morphism does not factor through the monomorphism")
    return ModuleMorphism(f.source, mono.source, solution.take_rows(0, mono.source.gens))


# Limits


@dataclass(frozen=True)
class FiberProduct:
    """
    The iterated fiber product of maps into a common target.

    ``inclusion`` is the mono into the direct sum of the sources and
    ``projections`` its components.
    """

    module: FPModule
    projections: Tuple[ModuleMorphism, ...]
    inclusion: ModuleMorphism

    def mediate(self, maps: Sequence[ModuleMorphism]) -> ModuleMorphism:
        """The unique map into the fiber product with the given components."""
        if len(maps) != len(self.projections):
            raise ShapeError("One component per factor is required")
        source = maps[0].source
        ring = source.ring
        stacked = vstack(ring, source.gens, [m.matrix for m in maps])
        cone = ModuleMorphism(source, self.inclusion.target, stacked)
        return lift_through_mono(self.inclusion, cone)


def fiber_product(maps: Sequence[ModuleMorphism]) -> FiberProduct:
    """
    Fiber product of ``maps`` over their common target.

    Raises:
        ShapeError: If the targets differ
    """
    if not maps:
        raise ValidationError("At least one map is required")
    target = maps[0].target
    ring = target.ring
    for f in maps:
        if f.target != target:
            raise ShapeError("Fiber product of maps with different targets")
        f.check()
    if len(maps) == 1:
        identity = ModuleMorphism.identity(maps[0].source)
        return FiberProduct(maps[0].source, (identity,), identity)
    sources = [f.source for f in maps]
    total = direct_sum(ring, sources)
    differences = direct_sum(ring, [target] * (len(maps) - 1))
    blocks = []
    for i in range(1, len(maps)):
        row = []
        for j, f in enumerate(maps):
            if j == 0:
                row.append(f.matrix)
            elif j == i:
                row.append(-f.matrix)
            else:
                row.append(Matrix.zeros(ring, target.gens, f.source.gens))
        blocks.append(hstack(ring, target.gens, row))
    h = ModuleMorphism(total, differences, vstack(ring, total.gens, blocks))
    result = kernel_of(h)
    inclusion = result.structure_map
    projections = []
    offset = 0
    for source in sources:
        component = inclusion.matrix.take_rows(offset, offset + source.gens)
        projections.append(ModuleMorphism(result.module, source, component))
        offset += source.gens
    return FiberProduct(result.module, tuple(projections), inclusion)


@dataclass(frozen=True)
class Pullback:
    module: FPModule
    to_source_f: ModuleMorphism
    to_source_g: ModuleMorphism
    fibers: FiberProduct

    def mediate(self, a: ModuleMorphism, b: ModuleMorphism) -> ModuleMorphism:
        return self.fibers.mediate([a, b])


def pullback(f: ModuleMorphism, g: ModuleMorphism) -> Pullback:
    """
    Pullback of ``f`` and ``g`` with its two projections.

    Example:
        >>> z = RingDescriptor.integers()
        >>> one = FPModule.free(z, 1)
        >>> p = pullback(ModuleMorphism.scalar(one, 2), ModuleMorphism.scalar(one, 3))
        >>> p.module.invariant_factors
        (0,)
    """
    if f.target != g.target:
        raise ShapeError("Pullback needs a common target")
    fibers = fiber_product([f, g])
    return Pullback(fibers.module, fibers.projections[0], fibers.projections[1], fibers)


def quotient_by_scalars(x: FPModule, fs: Sequence[RingElement]) -> FPModule:
    """The module ``x/(f_1, ..., f_q)x``."""
    if not fs:
        return x
    ring = x.ring
    blocks = [Matrix.scalar(ring, x.gens, ring.element(f)) for f in fs]
    relations = hstack(ring, x.gens, [x.relations] + blocks)
    return prune(FPModule(ring, x.gens, relations)).module


# Subobjects


@dataclass(frozen=True)
class Subobject:
    """
    A submodule of ``ambient`` in canonical form.

    Build instances with :meth:`of`; the stored generators are the canonical
    span form of ``[generators | relations]``, so dataclass equality is
    equality of submodules.
    """

    ambient: FPModule
    generators: Matrix

    @classmethod
    def of(cls, ambient: FPModule, generators: Matrix) -> "Subobject":
        if generators.rows != ambient.gens:
            raise ShapeError(
                f"Generators have {generators.rows} rows, ambient has {ambient.gens} generators"
            )
        combined = hstack(ambient.ring, ambient.gens, [generators, ambient.relations])
        return cls(ambient, column_span_form(combined))

    @classmethod
    def whole(cls, ambient: FPModule) -> "Subobject":
        return cls.of(ambient, Matrix.identity(ambient.ring, ambient.gens))

    @classmethod
    def zero(cls, ambient: FPModule) -> "Subobject":
        return cls.of(ambient, Matrix.zeros(ambient.ring, ambient.gens, 0))

    @classmethod
    def image(cls, f: ModuleMorphism) -> "Subobject":
        return cls.of(f.target, f.matrix)

    def _same_ambient(self, other: "Subobject") -> None:
        if self.ambient != other.ambient:
            raise ValidationError("Subobjects of different ambient modules")

    def join(self, other: "Subobject") -> "Subobject":
        self._same_ambient(other)
        return Subobject.of(self.ambient, hstack(
            self.ambient.ring, self.ambient.gens, [self.generators, other.generators]))

    def meet(self, other: "Subobject") -> "Subobject":
        self._same_ambient(other)
        ring = self.ambient.ring
        combined = hstack(ring, self.ambient.gens, [self.generators, -other.generators])
        coefficients = kernel(combined).take_rows(0, self.generators.cols)
        return Subobject.of(self.ambient, self.generators @ coefficients)

    def leq(self, other: "Subobject") -> bool:
        self._same_ambient(other)
        return in_column_span(other.generators, self.generators)

    def __le__(self, other: "Subobject") -> bool:
        return self.leq(other)

    @property
    def is_zero(self) -> bool:
        return in_column_span(self.ambient.relations, self.generators)

    def coordinates(self, vectors: Matrix) -> Matrix:
        """Coefficients expressing ``vectors`` through the generators, modulo relations."""
        ring = self.ambient.ring
        combined = hstack(ring, self.ambient.gens, [self.generators, self.ambient.relations])
        solution = solve(combined, vectors)
        if solution is None:
            raise ValidationError("Vectors do not lie in the subobject")
        return solution.take_rows(0, self.generators.cols)

    def to_module(self) -> Subquotient:
        """The subobject as a module with its inclusion."""
        inclusion = ModuleMorphism(
            FPModule.free(self.ambient.ring, self.generators.cols), self.ambient, self.generators)
        return image_of(inclusion)


def sub_lattice(op: str, a: Subobject, b: Subobject) -> object:
    """Dispatch ``join``, ``meet``, ``eq`` or ``leq`` on two subobjects."""
    a._same_ambient(b)
    if op == "join":
        return a.join(b)
    if op == "meet":
        return a.meet(b)
    if op == "eq":
        return a == b
    if op == "leq":
        return a.leq(b)
    raise ValidationError(f"Invalid lattice operation: {op!r}")


@dataclass(frozen=True)
class SectionQuotient:
    """The module ``upper/lower`` for subobjects ``lower <= upper``."""

    upper: Subobject
    lower: Subobject
    module: FPModule
    to_module: Matrix
    from_module: Matrix

    @classmethod
    def of(cls, upper: Subobject, lower: Subobject) -> "SectionQuotient":
        if not lower.leq(upper):
            raise ValidationError("Quotient needs lower <= upper")
        ring = upper.ambient.ring
        rows = upper.ambient.gens
        syzygies = kernel(hstack(ring, rows, [upper.generators, lower.generators]))
        raw = FPModule(ring, upper.generators.cols,
                       syzygies.take_rows(0, upper.generators.cols))
        pruned = prune(raw)
        return cls(upper, lower, pruned.module, pruned.to_pruned, pruned.from_pruned)

    def classes(self, vectors: Matrix) -> Matrix:
        """Images in the quotient of ambient vectors lying in ``upper``."""
        return self.to_module @ self.upper.coordinates(vectors)

    def representatives(self) -> Matrix:
        """Ambient vectors representing the generators of the quotient."""
        return self.upper.generators @ self.from_module


@dataclass(frozen=True)
class ExactnessReport:
    injective: bool
    surjective: bool
    complex: bool
    exact_middle: bool
    outer_invariants: Tuple[RingElement, ...]
    middle_invariants: Tuple[RingElement, ...]

    @property
    def exact(self) -> bool:
        return self.injective and self.surjective and self.complex and self.exact_middle


def short_exact_check(a: Subobject, b: Subobject, c: Subobject, d: Subobject) -> ExactnessReport:
    """
    Check ``0 -> (b^d)/(a^c) -> b/a + d/c -> (bvd)/(avc) -> 0`` for ``a <= b``, ``c <= d``.

    The first map is the diagonal, the second the difference.
    """
    ring = a.ambient.ring
    left = SectionQuotient.of(b.meet(d), a.meet(c))
    first = SectionQuotient.of(b, a)
    second = SectionQuotient.of(d, c)
    right = SectionQuotient.of(b.join(d), a.join(c))
    middle = direct_sum(ring, [first.module, second.module])
    reps = left.representatives()
    f = ModuleMorphism(left.module, middle, vstack(ring, left.module.gens, [
        first.classes(reps), second.classes(reps)]))
    g = ModuleMorphism(middle, right.module, hstack(ring, right.module.gens, [
        right.classes(first.representatives()), -right.classes(second.representatives())]))
    composite = g @ f
    exact_middle = Subobject.image(f) == Subobject.image(kernel_of(g).structure_map)
    outer = direct_sum(ring, [left.module, right.module])
    return ExactnessReport(
        injective=is_mono(f),
        surjective=is_epi(g),
        complex=composite.is_zero_map(),
        exact_middle=exact_middle,
        outer_invariants=outer.invariant_factors,
        middle_invariants=middle.invariant_factors,
    )


# Finite modules


def coordinate_orders(module: FPModule) -> Tuple[FPModule, List[int]]:
    """
    Minimal presentation of a finite module and the order of each coordinate.

    Raises:
        ValidationError: If the module is infinite
    """
    ring = module.ring
    pruned = prune(module).module
    orders = []
    for i in range(pruned.gens):
        column = next((j for j in range(pruned.relations.cols)
                       if pruned.relations[i, j] != 0), None)
        value = pruned.relations[i, column] if column is not None else ring.zero
        if ring.kind is RingKind.INTEGERS:
            if value == 0:
                raise ValidationError("Module has a free integer summand")
            orders.append(abs(int(value)))
        elif ring.kind is RingKind.RATIONALS:
            raise ValidationError("Nonzero rational vector spaces are infinite")
        else:
            orders.append(int(value) if value != 0 else ring.modulus)
    return pruned, orders


def finite_elements(module: FPModule) -> Tuple[FPModule, List[Tuple[int, ...]]]:
    """All elements of a finite module as coordinate tuples of its minimal presentation."""
    pruned, orders = coordinate_orders(module)
    return pruned, list(product(*(range(n) for n in orders)))


def cyclic_subobjects(module: FPModule) -> Tuple[FPModule, List[Subobject]]:
    """The distinct cyclic submodules of a finite module."""
    pruned, elements = finite_elements(module)
    ring = module.ring
    seen: Dict[Subobject, None] = {}
    for element in elements:
        generator = Matrix.from_columns(ring, [[ring.element(v) for v in element]], pruned.gens)
        seen.setdefault(Subobject.of(pruned, generator), None)
    return pruned, list(seen)
