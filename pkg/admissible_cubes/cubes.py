"""
S-cubes of finitely presented modules.

A cube on a label set S assigns a module ``x_T`` to every subset T of S and
a boundary ``d^t_T: x_T -> x_{T-t}`` to every ``t`` in T. Cocubes carry the
arrows the other way. This module builds cubes, validates them, takes faces,
total complexes and direction homology, and decides admissibility and
fiberedness.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, permutations
from typing import Callable, Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple, Union

from .complexes import ChainComplex, ChainMap, is_spherical, mapping_cone
from .config import resolve
from .exceptions import LimitExceededError, ShapeError, ValidationError
from .linalg import Matrix, block_diagonal
from .modules import (
    FiberProduct,
    FPModule,
    ModuleMorphism,
    Subobject,
    cokernel_of,
    fiber_product,
    induced_on_cokernels,
    is_mono,
    kernel_of,
    morphism_class,
    pullback,
    quotient_by_scalars,
)
from .rings import RingDescriptor, RingElement

logger = logging.getLogger(__name__)

Subset = FrozenSet[str]
EMPTY: Subset = frozenset()

_FORBIDDEN = set(",|= ")


def subset_key(subset: Subset) -> str:
    """Comma-joined sorted labels; the empty set is the empty string."""
    return ",".join(sorted(subset))


def parse_subset_key(key: str) -> Subset:
    return frozenset(part for part in key.split(",") if part)


def default_labels(n: int) -> Tuple[str, ...]:
    if n > 26:
        raise LimitExceededError("At most 26 default labels")
    return tuple("abcdefghijklmnopqrstuvwxyz"[:n])


@dataclass(frozen=True)
class CubeIndex:
    """
    The label set S, kept sorted.

    The sort order is the bijection S -> {1..n} that fixes total-complex signs.
    """

    labels: Tuple[str, ...]

    def __post_init__(self) -> None:
        for label in self.labels:
            if not isinstance(label, str) or not label or _FORBIDDEN & set(label):
                raise ValidationError(f"Invalid label: {label!r}")
        if len(set(self.labels)) != len(self.labels):
            raise ValidationError(f"Labels must be distinct: {self.labels}")
        object.__setattr__(self, "labels", tuple(sorted(self.labels)))

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> Subset:
        return frozenset(self.labels)

    def subsets_of_size(self, k: int) -> List[Subset]:
        return [frozenset(c) for c in combinations(self.labels, k)]

    def subsets(self) -> List[Subset]:
        """All subsets, by size and then lexicographically."""
        return [s for k in range(self.size + 1) for s in self.subsets_of_size(k)]

    def subsets_of(self, subset: Subset) -> List[Subset]:
        members = sorted(subset)
        return [frozenset(c) for k in range(len(members) + 1) for c in combinations(members, k)]

    def position(self, label: str) -> int:
        return self.labels.index(label) + 1

    def characteristic(self, subset: Subset) -> Tuple[int, ...]:
        return tuple(1 if label in subset else 0 for label in self.labels)

    def check_subset(self, subset: Subset) -> Subset:
        unknown = set(subset) - set(self.labels)
        if unknown:
            raise ValidationError(f"Unknown labels: {sorted(unknown)}")
        return frozenset(subset)

    def restricted(self, subset: Subset) -> "CubeIndex":
        return CubeIndex(tuple(sorted(self.check_subset(subset))))


def _as_index(labels: Union[CubeIndex, Sequence[str]]) -> CubeIndex:
    return labels if isinstance(labels, CubeIndex) else CubeIndex(tuple(labels))


@dataclass(frozen=True)
class CubeValidation:
    valid: bool
    is_monic: bool
    ill_defined: Optional[str] = None
    failing_square: Optional[Tuple[str, str, str]] = None


@dataclass(frozen=True)
class _Diagram:
    index: CubeIndex
    vertices: Mapping[Subset, FPModule]
    arrows: Mapping[Tuple[Subset, str], ModuleMorphism]

    def __post_init__(self) -> None:
        limits = resolve(None)
        if self.index.size > limits.max_labels:
            raise LimitExceededError(
                f"{self.index.size} labels exceed the cap of {limits.max_labels}"
            )
        ring = None
        for subset in self.index.subsets():
            if subset not in self.vertices:
                raise ShapeError(f"Missing vertex {subset_key(subset)!r}")
            module = self.vertices[subset]
            ring = ring or module.ring
            if module.ring != ring:
                raise ShapeError("Vertices over different rings")
            for label in sorted(subset):
                if (subset, label) not in self.arrows:
                    raise ShapeError(f"Missing arrow {subset_key(subset)}|{label}")
                source, target = self._ends(subset, label)
                arrow = self.arrows[(subset, label)]
                if arrow.source != source or arrow.target != target:
                    raise ShapeError(
                        f"Arrow {subset_key(subset)}|{label} does not match its vertices"
                    )

    def _ends(self, subset: Subset, label: str) -> Tuple[FPModule, FPModule]:
        raise NotImplementedError

    @property
    def ring(self) -> RingDescriptor:
        return self.vertices[EMPTY].ring

    @property
    def labels(self) -> Tuple[str, ...]:
        return self.index.labels

    def vertex(self, subset: Subset) -> FPModule:
        return self.vertices[frozenset(subset)]

    def arrow(self, subset: Subset, label: str) -> ModuleMorphism:
        return self.arrows[(frozenset(subset), label)]

    def arrow_items(self) -> List[Tuple[Subset, str, ModuleMorphism]]:
        return [(s, t, self.arrows[(s, t)]) for s in self.index.subsets() for t in sorted(s)]


class Cube(_Diagram):
    """
    Contravariant functor on the power set of S.

    Example:
        >>> z = RingDescriptor.integers()
        >>> x = typical_cube([2, 3], FPModule.free(z, 1))
        >>> x.validate().valid
        True
    """

    def _ends(self, subset: Subset, label: str) -> Tuple[FPModule, FPModule]:
        return self.vertices[subset], self.vertices[subset - {label}]

    def boundary(self, subset: Subset, label: str) -> ModuleMorphism:
        """``d^label_subset: x_T -> x_{T-label}``."""
        return self.arrow(subset, label)

    def map_between(self, upper: Subset, lower: Subset) -> ModuleMorphism:
        """The structure map ``x_upper -> x_lower`` for ``lower`` inside ``upper``."""
        upper, lower = frozenset(upper), frozenset(lower)
        if not lower <= upper:
            raise ValidationError("map_between needs lower inside upper")
        result = ModuleMorphism.identity(self.vertex(upper))
        current = upper
        for label in sorted(upper - lower):
            result = self.boundary(current, label) @ result
            current = current - {label}
        return result

    def validate(self) -> CubeValidation:
        """Well-definedness of every boundary and commutativity of every square."""
        for subset, label, d in self.arrow_items():
            if not d.is_well_defined():
                return CubeValidation(False, False, ill_defined=f"{subset_key(subset)}|{label}")
        for subset in self.index.subsets():
            for a, b in combinations(sorted(subset), 2):
                left = self.boundary(subset - {a}, b) @ self.boundary(subset, a)
                right = self.boundary(subset - {b}, a) @ self.boundary(subset, b)
                if not left.same_map(right):
                    logger.debug("Square %s (%s, %s) does not commute", subset_key(subset), a, b)
                    return CubeValidation(False, False,
                                          failing_square=(subset_key(subset), a, b))
        return CubeValidation(True, self.is_monic())

    def is_monic(self) -> bool:
        return all(is_mono(d) for _, _, d in self.arrow_items())

    def first_non_mono(self) -> Optional[Tuple[Subset, str]]:
        for subset, label, d in self.arrow_items():
            if not is_mono(d):
                return subset, label
        return None

    def require_valid(self) -> "Cube":
        report = self.validate()
        if not report.valid:
            raise ValidationError(
                f"Invalid cube: square {report.failing_square} / map {report.ill_defined}"
            )
        return self

    def restrict(self, upper: Subset, fixed: Subset = EMPTY) -> "Cube":
        """
        The restriction ``x|_U^V``: vertex ``A`` is ``x_{A+V}`` for ``A`` inside ``U``.

        Raises:
            ValidationError: If ``U`` and ``V`` overlap or use unknown labels
        """
        upper = self.index.check_subset(upper)
        fixed = self.index.check_subset(fixed)
        if upper & fixed:
            raise ValidationError("Restriction sets must be disjoint")
        index = self.index.restricted(upper)
        vertices = {a: self.vertex(a | fixed) for a in index.subsets()}
        arrows = {(a, t): self.boundary(a | fixed, t) for a in index.subsets() for t in a}
        return Cube(index, vertices, arrows)

    def backside_face(self, label: str) -> "Cube":
        return self.restrict(self.index.full - {label}, frozenset({label}))

    def frontside_face(self, label: str) -> "Cube":
        return self.restrict(self.index.full - {label}, EMPTY)


class CoCube(_Diagram):
    """Covariant functor on the power set; arrow ``(T, t)`` is ``x_{T-t} -> x_T``."""

    def _ends(self, subset: Subset, label: str) -> Tuple[FPModule, FPModule]:
        return self.vertices[subset - {label}], self.vertices[subset]

    def coboundary(self, subset: Subset, label: str) -> ModuleMorphism:
        return self.arrow(subset, label)

    def validate(self) -> CubeValidation:
        for subset, label, d in self.arrow_items():
            if not d.is_well_defined():
                return CubeValidation(False, False, ill_defined=f"{subset_key(subset)}|{label}")
        for subset in self.index.subsets():
            for a, b in combinations(sorted(subset), 2):
                left = self.coboundary(subset, b) @ self.coboundary(subset - {b}, a)
                right = self.coboundary(subset, a) @ self.coboundary(subset - {a}, b)
                if not left.same_map(right):
                    return CubeValidation(False, False,
                                          failing_square=(subset_key(subset), a, b))
        return CubeValidation(True, all(is_mono(d) for _, _, d in self.arrow_items()))


def build_cube(labels: Union[CubeIndex, Sequence[str]],
               vertex: Callable[[Subset], FPModule],
               boundary: Callable[[Subset, str], ModuleMorphism]) -> Cube:
    index = _as_index(labels)
    vertices = {s: vertex(s) for s in index.subsets()}
    arrows = {(s, t): boundary(s, t) for s in index.subsets() for t in sorted(s)}
    return Cube(index, vertices, arrows)


def dual(diagram: Union[Cube, CoCube]) -> Union[Cube, CoCube]:
    """
    Swap the roles of ``T`` and ``S - T``; a cube becomes a cocube and back.

    ``dual(dual(x))`` reproduces ``x`` exactly.
    """
    index = diagram.index
    full = index.full
    vertices = {s: diagram.vertex(full - s) for s in index.subsets()}
    arrows = {(s, t): diagram.arrow((full - s) | {t}, t)
              for s in index.subsets() for t in sorted(s)}
    if isinstance(diagram, Cube):
        return CoCube(index, vertices, arrows)
    return Cube(index, vertices, arrows)


# Standard cubes


def _labelled(values: Union[Sequence[RingElement], Mapping[str, RingElement]],
              labels: Optional[Sequence[str]]) -> Dict[str, RingElement]:
    if isinstance(values, Mapping):
        return dict(values)
    names = tuple(labels) if labels is not None else default_labels(len(values))
    if len(names) != len(values):
        raise ValidationError(f"{len(values)} values for {len(names)} labels")
    return dict(zip(names, values))


def typical_cube(fs: Union[Sequence[RingElement], Mapping[str, RingElement]],
                 x: FPModule, labels: Optional[Sequence[str]] = None) -> Cube:
    """
    ``Typ(f_S; x)``: every vertex is ``x``, direction ``t`` multiplies by ``f_t``.

    Args:
        fs: Ring elements, as a list (labelled a, b, ...) or a label mapping
        x: The module at every vertex
        labels: Optional labels for a list ``fs``
    """
    family = _labelled(fs, labels)
    maps = {t: ModuleMorphism.scalar(x, f) for t, f in family.items()}
    return build_cube(tuple(family), lambda s: x, lambda s, t: maps[t])


def koszul_complex(fs: Union[Sequence[RingElement], Mapping[str, RingElement]],
                   x: FPModule) -> ChainComplex:
    """The Koszul complex of ``fs`` on ``x``, i.e. ``Tot Typ(fs; x)``."""
    return total_complex(typical_cube(fs, x))


@dataclass(frozen=True)
class FibCube:
    """The cube of iterated fiber products and the fiber product data per vertex."""

    cube: Cube
    fibers: Dict[Subset, FiberProduct]


def fib_of_family(fx: Union[Sequence[ModuleMorphism], Mapping[str, ModuleMorphism]],
                  labels: Optional[Sequence[str]] = None) -> FibCube:
    """
    The cube ``Fib(fx)``: vertex ``T`` is the fiber product of ``{x_s : s in T}``.

    The empty vertex is the common target and singleton vertices are the
    sources themselves, so a single map yields a 1-cube equal to it.

    Raises:
        ShapeError: If the maps have different targets
    """
    family = _labelled(fx, labels)  # type: ignore[arg-type]
    if not family:
        raise ValidationError("At least one map is required")
    index = CubeIndex(tuple(family))
    target = next(iter(family.values())).target
    for f in family.values():
        if f.target != target:
            raise ShapeError("Family maps must share a target")
    fibers = {s: fiber_product([family[t] for t in sorted(s)])
              for s in index.subsets() if s}

    def vertex(s: Subset) -> FPModule:
        return fibers[s].module if s else target

    def boundary(s: Subset, t: str) -> ModuleMorphism:
        rest = s - {t}
        if not rest:
            return family[t]
        members = sorted(s)
        projections = [fibers[s].projections[members.index(u)] for u in sorted(rest)]
        if len(rest) == 1:
            return projections[0]
        return fibers[rest].mediate(projections)

    return FibCube(build_cube(index, vertex, boundary), fibers)


def subobject_family_cube(ambient: FPModule,
                          members: Mapping[str, Subobject]) -> FibCube:
    """``Fib`` of the inclusions of a family of subobjects."""
    maps = {s: member.to_module().structure_map for s, member in members.items()}
    for member in members.values():
        if member.ambient != ambient:
            raise ValidationError("Subobjects of different ambient modules")
    return fib_of_family(maps)


def vertex_subobject(x: Cube, subset: Subset) -> Subobject:
    """Image of ``x_T`` in ``x_empty``."""
    return Subobject.image(x.map_between(subset, EMPTY))


def compose(x: Cube, y: Cube, s: str,
            alpha: Mapping[Subset, ModuleMorphism]) -> Cube:
    """
    Glue ``x`` and ``y`` along ``alpha: x|^0_{S-s} -> y|^s_{S-s}``.

    Vertices containing ``s`` come from ``x``, the others from ``y``; the new
    ``s``-boundary is ``d^{s,y}`` after ``alpha`` after ``d^{s,x}``.

    Raises:
        ValidationError: If ``alpha`` is not natural
    """
    if x.index != y.index:
        raise ValidationError("Composed cubes need the same labels")
    if s not in x.labels:
        raise ValidationError(f"Unknown label {s!r}")
    rest = x.index.full - {s}
    for t_set in x.index.subsets_of(rest):
        a = alpha.get(t_set)
        if a is None:
            raise ShapeError(f"alpha is missing at {subset_key(t_set)!r}")
        if a.source != x.vertex(t_set) or a.target != y.vertex(t_set | {s}):
            raise ShapeError(f"alpha at {subset_key(t_set)!r} has the wrong ends")
        for t in sorted(t_set):
            left = y.boundary(t_set | {s}, t) @ a
            right = alpha[t_set - {t}] @ x.boundary(t_set, t)
            if not left.same_map(right):
                raise ValidationError(f"alpha is not natural at {subset_key(t_set)}|{t}")

    def vertex(u: Subset) -> FPModule:
        return x.vertex(u) if s in u else y.vertex(u)

    def boundary(u: Subset, t: str) -> ModuleMorphism:
        if t == s:
            rest_u = u - {s}
            return y.boundary(u, s) @ alpha[rest_u] @ x.boundary(u, s)
        return x.boundary(u, t) if s in u else y.boundary(u, t)

    return build_cube(x.index, vertex, boundary)


def attach(x: Cube, f: ModuleMorphism) -> Cube:
    """Replace ``x_empty`` by the target of ``f`` and post-compose the maps into it."""
    if f.source != x.vertex(EMPTY):
        raise ShapeError("Attached morphism must start at the empty vertex")

    def vertex(u: Subset) -> FPModule:
        return f.target if not u else x.vertex(u)

    def boundary(u: Subset, t: str) -> ModuleMorphism:
        d = x.boundary(u, t)
        return f @ d if len(u) == 1 else d

    return build_cube(x.index, vertex, boundary)


# Total complex and homology cubes


def tot_sign(index: CubeIndex, subset: Subset, label: str) -> int:
    """``(-1)`` to the number of elements of ``subset`` after ``label``."""
    after = sum(1 for t in subset if t > label)
    return -1 if after % 2 else 1


def total_complex(x: Cube) -> ChainComplex:
    """
    ``Tot x``: degree k is the sum of ``x_T`` over ``|T| = k`` in lexicographic order.

    Example:
        >>> z = RingDescriptor.integers()
        >>> tot = total_complex(typical_cube([2, 3], FPModule.free(z, 1)))
        >>> tot.boundary(2).matrix.to_rows()
        [[3], [-2]]
    """
    index = x.index
    ring = x.ring
    n = index.size
    layers = [index.subsets_of_size(k) for k in range(n + 1)]
    offsets: List[Dict[Subset, int]] = []
    modules = []
    for layer in layers:
        position = 0
        table = {}
        for subset in layer:
            table[subset] = position
            position += x.vertex(subset).gens
        offsets.append(table)
        modules.append(_sum_of(ring, [x.vertex(s) for s in layer]))
    boundaries = []
    for k in range(1, n + 1):
        source, target = modules[k], modules[k - 1]
        data = [[ring.zero] * source.gens for _ in range(target.gens)]
        for subset in layers[k]:
            col0 = offsets[k][subset]
            for label in sorted(subset):
                block = x.boundary(subset, label).matrix
                if tot_sign(index, subset, label) < 0:
                    block = -block
                row0 = offsets[k - 1][subset - {label}]
                for i in range(block.rows):
                    for j in range(block.cols):
                        data[row0 + i][col0 + j] = block[i, j]
        boundaries.append(ModuleMorphism(source, target,
                                         Matrix._from_lists(ring, data, source.gens)))
    return ChainComplex(ring, 0, tuple(modules), tuple(boundaries))


def _sum_of(ring: RingDescriptor, modules: Sequence[FPModule]) -> FPModule:
    relations = block_diagonal(ring, [m.relations for m in modules])
    return FPModule(ring, sum(m.gens for m in modules), relations)


@dataclass(frozen=True)
class H0Step:
    """``H_0^k(x)`` with the projections ``x_T -> H_0^k(x)_T``."""

    cube: Cube
    projections: Dict[Subset, ModuleMorphism]


def h0_step(x: Cube, k: str) -> H0Step:
    """Cokernels of the ``k``-boundaries, as a cube on ``S - k``."""
    if k not in x.labels:
        raise ValidationError(f"Unknown label {k!r}")
    index = x.index.restricted(x.index.full - {k})
    cokernels = {t: cokernel_of(x.boundary(t | {k}, k)) for t in index.subsets()}

    def boundary(t_set: Subset, t: str) -> ModuleMorphism:
        return induced_on_cokernels(x.boundary(t_set, t), cokernels[t_set], cokernels[t_set - {t}])

    cube = build_cube(index, lambda t: cokernels[t].module, boundary)
    return H0Step(cube, {t: c.structure_map for t, c in cokernels.items()})


def h0_direction(x: Cube, ks: Sequence[str]) -> Cube:
    """Iterated direction homology ``H_0^{k_n}(... H_0^{k_1}(x))``."""
    if len(set(ks)) != len(ks):
        raise ValidationError("Directions must be distinct")
    result = x
    for k in ks:
        result = h0_step(result, k).cube
    return result


class AdmissibilityMethod(Enum):
    RECURSIVE = "recursive"
    FACES_SPHERICAL = "faces0spherical"
    ALL_RESTRICTIONS = "allrestrictions"


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    method: AdmissibilityMethod
    witness: Optional[str] = None


def _recursive_witness(x: Cube, path: Tuple[str, ...]) -> Optional[str]:
    bad = x.first_non_mono()
    if bad is not None:
        prefix = f"H0[{','.join(path)}] " if path else ""
        return f"{prefix}boundary {subset_key(bad[0])}|{bad[1]} is not mono"
    if x.index.size <= 1:
        return None
    for k in x.labels:
        witness = _recursive_witness(h0_step(x, k).cube, path + (k,))
        if witness is not None:
            return witness
    return None


def _faces_spherical_witness(x: Cube,
                             seen: Optional[Dict[FrozenSet[str], Optional[str]]] = None
                             ) -> Optional[str]:
    """Frontside faces decided by the same test, down to the empty cube."""
    seen = {} if seen is None else seen
    key = frozenset(x.labels)
    if key in seen:
        return seen[key]
    witness = None
    if x.index.size > 0:
        for k in x.labels:
            inner = _faces_spherical_witness(x.frontside_face(k), seen)
            if inner is not None:
                witness = f"frontside face without {k}: {inner}"
                break
        if witness is None:
            report = is_spherical(total_complex(x), 0)
            if not report.spherical:
                witness = f"Tot x has H_{report.failing_degree} = {list(report.invariants)}"
    seen[key] = witness
    return witness


def _all_restrictions_witness(x: Cube) -> Optional[str]:
    for subset in x.index.subsets():
        if not subset:
            continue
        report = is_spherical(total_complex(x.restrict(subset)), 0)
        if not report.spherical:
            return (f"restriction to {subset_key(subset)} has "
                    f"H_{report.failing_degree} = {list(report.invariants)}")
    return None


def is_admissible(x: Cube,
                  method: AdmissibilityMethod = AdmissibilityMethod.RECURSIVE) -> AdmissibilityReport:
    """
    Decide admissibility.

    Args:
        x: A valid cube
        method: ``RECURSIVE`` follows the definition (monic and every
            direction homology admissible); ``FACES_SPHERICAL`` checks that the
            frontside faces are admissible, by the same test, and ``Tot x``
            is 0-spherical;
            ``ALL_RESTRICTIONS`` checks that every restriction ``x|_T`` is
            0-spherical

    Raises:
        ValidationError: If the cube is invalid
    """
    if not isinstance(method, AdmissibilityMethod):
        raise ValidationError(f"Invalid admissibility method: {method!r}")
    x.require_valid()
    if method is AdmissibilityMethod.RECURSIVE:
        witness = _recursive_witness(x, ())
    elif method is AdmissibilityMethod.FACES_SPHERICAL:
        witness = _faces_spherical_witness(x)
    else:
        witness = _all_restrictions_witness(x)
    logger.debug("Admissibility (%s): %s", method.value, witness or "admissible")
    return AdmissibilityReport(witness is None, method, witness)


class FiberedMethod(Enum):
    SQUARES = "squares"
    COMPARISON = "comparison"


@dataclass(frozen=True)
class FiberedReport:
    fibered: bool
    method: FiberedMethod
    witness: Optional[str] = None


def comparison_morphism(x: Cube) -> Dict[Subset, ModuleMorphism]:
    """The canonical map ``C(x)_T: x_T -> Fib(Ux)_T`` into the cube of the singleton vertices."""
    singles = {t: x.boundary(frozenset({t}), t) for t in x.labels}
    fib = fib_of_family(singles)
    result = {}
    for subset in x.index.subsets():
        if len(subset) <= 1:
            result[subset] = ModuleMorphism.identity(x.vertex(subset))
            continue
        parts = [x.map_between(subset, frozenset({t})) for t in sorted(subset)]
        result[subset] = fib.fibers[subset].mediate(parts)
    return result


def is_fibered(x: Cube, method: FiberedMethod = FiberedMethod.SQUARES) -> FiberedReport:
    """
    Whether every square of ``x`` is Cartesian.

    ``COMPARISON`` tests instead that the canonical comparison map into the
    cube of iterated fiber products is an isomorphism at every vertex.
    """
    if not isinstance(method, FiberedMethod):
        raise ValidationError(f"Invalid fiberedness method: {method!r}")
    x.require_valid()
    if method is FiberedMethod.COMPARISON:
        for subset, c in comparison_morphism(x).items():
            if not morphism_class(c).is_iso:
                return FiberedReport(False, method, f"comparison map at {subset_key(subset)}")
        return FiberedReport(True, method)
    for s, t in combinations(x.labels, 2):
        for base in x.index.subsets_of(x.index.full - {s, t}):
            top = base | {s, t}
            p = pullback(x.boundary(base | {s}, s), x.boundary(base | {t}, t))
            mediating = p.mediate(x.boundary(top, t), x.boundary(top, s))
            if not morphism_class(mediating).is_iso:
                return FiberedReport(False, method, f"square ({s}, {t}) over {subset_key(base)!r}")
    return FiberedReport(True, method)


# Sequences


class SequenceMode(Enum):
    REGULAR_ORDERED = "regular"
    X_SEQUENCE = "xsequence"


@dataclass(frozen=True)
class SequenceReport:
    is_sequence: bool
    mode: SequenceMode
    witness: Optional[str] = None


class _QuotientCache:
    """Quotient modules ``x/(f_i : i in I)`` keyed by the index set I."""

    def __init__(self, x: FPModule, fs: Sequence[RingElement]):
        self.x = x
        self.fs = list(fs)
        self._quotients: Dict[FrozenSet[int], FPModule] = {}
        self._injective: Dict[Tuple[FrozenSet[int], int], bool] = {}

    def quotient(self, used: FrozenSet[int]) -> FPModule:
        if used not in self._quotients:
            self._quotients[used] = quotient_by_scalars(self.x, [self.fs[i] for i in sorted(used)])
        return self._quotients[used]

    def injective(self, used: FrozenSet[int], i: int) -> bool:
        key = (used, i)
        if key not in self._injective:
            q = self.quotient(used)
            self._injective[key] = is_mono(ModuleMorphism.scalar(q, self.fs[i]))
        return self._injective[key]


def _ordered_witness(cache: _QuotientCache, order: Sequence[int]) -> Optional[str]:
    ring = cache.x.ring
    used: FrozenSet[int] = frozenset()
    for i in order:
        if ring.is_unit(cache.fs[i]):
            return f"f_{i + 1} = {cache.fs[i]} is a unit"
        if not cache.injective(used, i):
            return f"f_{i + 1} = {cache.fs[i]} is a zero divisor after {sorted(j + 1 for j in used)}"
        used = used | {i}
    return None


def sequence_check(fs: Sequence[RingElement], x: FPModule,
                   mode: SequenceMode = SequenceMode.REGULAR_ORDERED) -> SequenceReport:
    """
    Whether ``fs`` is an ``x``-regular sequence in the given order, or in every order.

    Example:
        >>> z = RingDescriptor.integers()
        >>> sequence_check([2, 3], FPModule.free(z, 1)).is_sequence
        True
    """
    if not isinstance(mode, SequenceMode):
        raise ValidationError(f"Invalid sequence mode: {mode!r}")
    values = [x.ring.element(f) for f in fs]
    cache = _QuotientCache(x, values)
    orders = [tuple(range(len(values)))]
    if mode is SequenceMode.X_SEQUENCE:
        orders = list(permutations(range(len(values))))
    for order in orders:
        witness = _ordered_witness(cache, order)
        if witness is not None:
            if mode is SequenceMode.X_SEQUENCE:
                witness = f"order {[i + 1 for i in order]}: {witness}"
            return SequenceReport(False, mode, witness)
    return SequenceReport(True, mode)


# Homology consequences


def h0_total(x: Cube) -> FPModule:
    return cokernel_of(total_complex(x).boundary(1)).module


def h0_total_map(x: Cube, s: str) -> ModuleMorphism:
    """``H_0 Tot d^{s,x}: H_0 Tot x|^s_{S-s} -> H_0 Tot x|^0_{S-s}``."""
    back = cokernel_of(total_complex(x.backside_face(s)).boundary(1))
    front = cokernel_of(total_complex(x.frontside_face(s)).boundary(1))
    return induced_on_cokernels(x.boundary(frozenset({s}), s), back, front)


@dataclass(frozen=True)
class H0TotReport:
    """
    Three views of ``H_0 Tot d^{s,x}`` being mono for a monic cube.

    ``mono`` is computed on homology, ``vertex_form`` compares
    ``(join x_t) meet x_s`` with the join of the images of ``x_{s,t}``, and
    ``distributive`` is the distributive-pair condition on the images.
    The first two always agree on monic cubes; all three agree on fibered ones.
    """

    mono: bool
    vertex_form: bool
    distributive: bool


def h0_total_distributivity(x: Cube, s: str) -> H0TotReport:
    ambient = x.vertex(EMPTY)
    others = [t for t in x.labels if t != s]
    images = {t: vertex_subobject(x, frozenset({t})) for t in x.labels}
    joined = Subobject.zero(ambient)
    pair_meets = Subobject.zero(ambient)
    corners = Subobject.zero(ambient)
    for t in others:
        joined = joined.join(images[t])
        pair_meets = pair_meets.join(images[t].meet(images[s]))
        corners = corners.join(vertex_subobject(x, frozenset({s, t})))
    left = joined.meet(images[s])
    return H0TotReport(
        mono=is_mono(h0_total_map(x, s)),
        vertex_form=left == corners,
        distributive=left == pair_meets,
    )


def _face_chain_map(x: Cube, s: str) -> ChainMap:
    back = total_complex(x.backside_face(s))
    front = total_complex(x.frontside_face(s))
    index = x.index.restricted(x.index.full - {s})
    ring = x.ring
    components = {}
    for k in range(index.size + 1):
        blocks = [x.boundary(t | {s}, s).matrix for t in index.subsets_of_size(k)]
        components[k] = ModuleMorphism(back.module(k), front.module(k), block_diagonal(ring, blocks))
    return ChainMap(back, front, components)


@dataclass(frozen=True)
class HomologyComparison:
    applicable: bool
    agree: bool
    left: Dict[int, Tuple[RingElement, ...]] = field(default_factory=dict)
    right: Dict[int, Tuple[RingElement, ...]] = field(default_factory=dict)


def cone_consistency(x: Cube, s: str) -> HomologyComparison:
    """Compare the homology of ``Cone(Tot d^{s,x})`` with that of ``Tot x``."""
    cone = mapping_cone(_face_chain_map(x, s))
    tot = total_complex(x)
    degrees = range(min(cone.lo, tot.lo), max(cone.hi, tot.hi) + 1)
    left = {k: cone.homology(k).invariant_factors for k in degrees}
    right = {k: tot.homology(k).invariant_factors for k in degrees}
    return HomologyComparison(True, left == right, left, right)


def tot_calculation_check(x: Cube, s: str) -> HomologyComparison:
    """
    When the frontside ``s``-face is 0-spherical, ``H_* Tot x`` is read off
    from ``H_0 Tot d^{s,x}`` and the backside face.
    """
    front = x.frontside_face(s)
    if not is_spherical(total_complex(front), 0).spherical:
        return HomologyComparison(False, True)
    h = h0_total_map(x, s)
    tot = total_complex(x)
    back = total_complex(x.backside_face(s))
    expected = {0: cokernel_of(h).module.invariant_factors,
                1: kernel_of(h).module.invariant_factors}
    for p in range(2, x.index.size + 1):
        expected[p] = back.homology(p - 1).invariant_factors
    actual = {k: tot.homology(k).invariant_factors for k in range(x.index.size + 1)}
    return HomologyComparison(True, expected == actual, expected, actual)


def totisom_check(x: Cube) -> HomologyComparison:
    """For admissible ``x``: ``Tot x`` is acyclic above 0 and ``H_0 Tot x = H_0^S(x)``."""
    if not is_admissible(x).admissible:
        return HomologyComparison(False, True)
    tot = total_complex(x)
    actual = {k: tot.homology(k).invariant_factors for k in tot.degrees()}
    corner = h0_direction(x, x.labels).vertex(EMPTY)
    expected = {k: () for k in tot.degrees()}
    expected[0] = corner.invariant_factors
    return HomologyComparison(True, expected == actual, expected, actual)


def ordering_check(x: Cube, directions: Sequence[str]) -> bool:
    """Iterated direction homology is independent of the order, vertex by vertex."""
    reference: Optional[Dict[Subset, Tuple[RingElement, ...]]] = None
    for order in permutations(directions):
        y = h0_direction(x, order)
        invariants = {s: y.vertex(s).invariant_factors for s in y.index.subsets()}
        if reference is None:
            reference = invariants
        elif invariants != reference:
            return False
    return True
