"""
Double S-cubes: functors on ``[2]^S``.

A grade is a tuple of values in ``{0, 1, 2}`` aligned with the sorted labels;
the pair ``(U, V)`` of disjoint subsets corresponds to the grade that is 1 on
``U`` and 2 on ``V``. Boundary ``(J, s)`` lowers coordinate ``s`` by one.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, product
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .config import resolve
from .cubes import (
    EMPTY,
    Cube,
    CubeIndex,
    CubeValidation,
    Subset,
    build_cube,
    fib_of_family,
    h0_total_map,
    is_admissible,
    is_fibered,
    subset_key,
)
from .exceptions import LimitExceededError, PatchingError, ShapeError, ValidationError
from .modules import FPModule, ModuleMorphism, Subobject, fiber_product, is_mono, morphism_class
from .rings import RingDescriptor

logger = logging.getLogger(__name__)

Grade = Tuple[int, ...]
Pair = Tuple[Subset, Subset]


# Index combinatorics


def grade_of(index: CubeIndex, u: Subset, v: Subset) -> Grade:
    """``chi_U + 2 chi_V`` for disjoint ``U`` and ``V``."""
    if u & v:
        raise ValidationError("Double index needs disjoint sets")
    index.check_subset(u | v)
    return tuple(2 if label in v else 1 if label in u else 0 for label in index.labels)


def pair_of(index: CubeIndex, grade: Grade) -> Pair:
    u = frozenset(label for label, g in zip(index.labels, grade) if g == 1)
    v = frozenset(label for label, g in zip(index.labels, grade) if g == 2)
    return u, v


def grade_key(index: CubeIndex, grade: Grade) -> str:
    return ",".join(f"{label}={g}" for label, g in zip(index.labels, grade))


def parse_grade_key(index: CubeIndex, key: str) -> Grade:
    """
    Parse ``a=0,b=2``.

    Raises:
        ShapeError: If the key does not assign every label once
    """
    values: Dict[str, int] = {}
    for part in (p for p in key.split(",") if p):
        label, _, value = part.partition("=")
        if value not in ("0", "1", "2") or label in values:
            raise ShapeError(f"Invalid grade key: {key!r}")
        values[label] = int(value)
    if set(values) != set(index.labels):
        raise ShapeError(f"Invalid grade key: {key!r}")
    return tuple(values[label] for label in index.labels)


def all_grades(index: CubeIndex) -> List[Grade]:
    return [tuple(g) for g in product(range(3), repeat=index.size)]


def grade_leq(lower: Grade, upper: Grade) -> bool:
    return all(a <= b for a, b in zip(lower, upper))


def lowered(index: CubeIndex, grade: Grade, label: str) -> Grade:
    i = index.labels.index(label)
    if grade[i] == 0:
        raise ValidationError(f"Coordinate {label} is already 0")
    return grade[:i] + (grade[i] - 1,) + grade[i + 1:]


def unit_grade(index: CubeIndex, label: str, value: int) -> Grade:
    return tuple(value if t == label else 0 for t in index.labels)


def e_map(index: CubeIndex, t_set: Subset) -> Callable[[Subset], Grade]:
    """``e_T(U) = chi_U + chi_T``, i.e. the pair ``(U sym T, U & T)``."""
    t_set = index.check_subset(t_set)
    return lambda u: tuple(int(label in u) + int(label in t_set) for label in index.labels)


def two_map(index: CubeIndex) -> Callable[[Subset], Grade]:
    """``U -> 2 chi_U``."""
    return lambda u: tuple(2 if label in u else 0 for label in index.labels)


@dataclass(frozen=True)
class DisjointSystem:
    """
    Four pairwise disjoint sets with ``A, B`` inside ``T`` and ``C, D`` outside it.
    """

    t_set: Subset
    a: Subset = EMPTY
    b: Subset = EMPTY
    c: Subset = EMPTY
    d: Subset = EMPTY

    def check(self, index: CubeIndex) -> "DisjointSystem":
        parts = [self.a, self.b, self.c, self.d]
        index.check_subset(self.t_set.union(*parts))
        for first, second in combinations(parts, 2):
            if first & second:
                raise ValidationError("Invalid disjoint system: parts overlap")
        if not (self.a | self.b) <= self.t_set:
            raise ValidationError("Invalid disjoint system: A, B must lie in T")
        if (self.c | self.d) & self.t_set:
            raise ValidationError("Invalid disjoint system: C, D must avoid T")
        return self


def double_subposet(t_set: Subset, a: Subset, b: Subset) -> List[Pair]:
    """``DP_(A,B)(T) = {(U, V) : A inside U+V, B & V empty}``."""
    labels = sorted(t_set)
    result = []
    for values in product(range(3), repeat=len(labels)):
        u = frozenset(l for l, g in zip(labels, values) if g == 1)
        v = frozenset(l for l, g in zip(labels, values) if g == 2)
        if a <= (u | v) and not (b & v):
            result.append((u, v))
    return result


@dataclass(frozen=True)
class TotalFunctor:
    """
    ``Tot_(A,B): P(S) -> DP_(A,B)(S)``, ``T -> ((A - T) + (B & T), T - B)``.

    When ``B`` is the complement of ``A`` this is an order isomorphism with
    inverse ``(U, V) -> (U - A) + V``.
    """

    index: CubeIndex
    a: Subset
    b: Subset = EMPTY

    def __call__(self, t_set: Subset) -> Pair:
        return (self.a - t_set) | (self.b & t_set), t_set - self.b

    def inverse(self, pair: Pair) -> Subset:
        u, v = pair
        return (u - self.a) | v

    def image(self) -> List[Pair]:
        return [self(t) for t in self.index.subsets()]

    def is_isomorphism(self) -> bool:
        """Bijective onto ``DP_(A,B)(S)`` and inverted by :meth:`inverse`."""
        targets = self.image()
        expected = set(double_subposet(self.index.full, self.a, self.b))
        return (len(set(targets)) == len(targets) and set(targets) == expected
                and all(self.inverse(self(t)) == t for t in self.index.subsets()))


def total_functor(index: CubeIndex, a: Subset, b: Optional[Subset] = None) -> TotalFunctor:
    """``Tot_(A,B)``; ``b=None`` means ``Tot_A = Tot_(A, S - A)``."""
    a = index.check_subset(a)
    b = index.full - a if b is None else index.check_subset(b)
    if a & b:
        raise ValidationError("Total functor needs disjoint A and B")
    return TotalFunctor(index, a, b)


# Double cubes


@dataclass(frozen=True)
class DoubleCube:
    """
    A contravariant functor on ``[2]^S`` with ``3^|S|`` vertices.

    Example:
        >>> z = RingDescriptor.integers()
        >>> one = FPModule.free(z, 1)
        >>> x = chain_double_cube([ModuleMorphism.scalar(one, 2), ModuleMorphism.scalar(one, 3)])
        >>> x.vertex((2,)) == one
        True
    """

    index: CubeIndex
    vertices: Mapping[Grade, FPModule]
    boundaries: Mapping[Tuple[Grade, str], ModuleMorphism]

    def __post_init__(self) -> None:
        limits = resolve(None)
        if self.index.size > limits.max_double_labels:
            raise LimitExceededError(
                f"{self.index.size} labels exceed the double cube cap of "
                f"{limits.max_double_labels}"
            )
        for grade in all_grades(self.index):
            if grade not in self.vertices:
                raise ShapeError(f"Missing vertex {grade_key(self.index, grade)!r}")
            for label in self.step_labels(grade):
                d = self.boundaries.get((grade, label))
                if d is None:
                    raise ShapeError(f"Missing boundary {grade_key(self.index, grade)}|{label}")
                target = self.vertices[lowered(self.index, grade, label)]
                if d.source != self.vertices[grade] or d.target != target:
                    raise ShapeError(
                        f"Boundary {grade_key(self.index, grade)}|{label} does not match"
                    )

    @property
    def ring(self) -> RingDescriptor:
        return self.vertices[tuple(0 for _ in self.index.labels)].ring

    @property
    def origin(self) -> Grade:
        return tuple(0 for _ in self.index.labels)

    def step_labels(self, grade: Grade) -> List[str]:
        return [label for label, g in zip(self.index.labels, grade) if g >= 1]

    def vertex(self, grade: Grade) -> FPModule:
        return self.vertices[tuple(grade)]

    def vertex_at(self, u: Subset, v: Subset) -> FPModule:
        return self.vertex(grade_of(self.index, u, v))

    def boundary(self, grade: Grade, label: str) -> ModuleMorphism:
        return self.boundaries[(tuple(grade), label)]

    def boundary_items(self) -> List[Tuple[Grade, str, ModuleMorphism]]:
        return [(g, s, self.boundaries[(g, s)])
                for g in all_grades(self.index) for s in self.step_labels(g)]

    def map_between(self, upper: Grade, lower: Grade) -> ModuleMorphism:
        """``x(lower <= upper)``: unit steps, labels in order."""
        upper, lower = tuple(upper), tuple(lower)
        if not grade_leq(lower, upper):
            raise ValidationError(
                f"{grade_key(self.index, lower)} is not below {grade_key(self.index, upper)}"
            )
        result = ModuleMorphism.identity(self.vertex(upper))
        current = upper
        for i, label in enumerate(self.index.labels):
            for _ in range(upper[i] - lower[i]):
                result = self.boundary(current, label) @ result
                current = lowered(self.index, current, label)
        return result

    def validate(self) -> CubeValidation:
        for grade, label, d in self.boundary_items():
            if not d.is_well_defined():
                return CubeValidation(False, False,
                                      ill_defined=f"{grade_key(self.index, grade)}|{label}")
        for grade in all_grades(self.index):
            for a, b in combinations(self.step_labels(grade), 2):
                left = self.boundary(lowered(self.index, grade, a), b) @ self.boundary(grade, a)
                right = self.boundary(lowered(self.index, grade, b), a) @ self.boundary(grade, b)
                if not left.same_map(right):
                    return CubeValidation(False, False,
                                          failing_square=(grade_key(self.index, grade), a, b))
        return CubeValidation(True, self.is_monic())

    def is_monic(self) -> bool:
        """
        Whether every unit step is mono.

        Every comparable pair factors through unit steps, so this is the same
        as all structure maps being mono.
        """
        return all(is_mono(d) for _, _, d in self.boundary_items())

    def require_valid(self) -> "DoubleCube":
        report = self.validate()
        if not report.valid:
            raise ValidationError(
                f"Invalid double cube: square {report.failing_square} / map {report.ill_defined}"
            )
        return self


def build_double_cube(labels: Union[CubeIndex, Sequence[str]],
                      vertex: Callable[[Grade], FPModule],
                      boundary: Callable[[Grade, str], ModuleMorphism]) -> DoubleCube:
    index = labels if isinstance(labels, CubeIndex) else CubeIndex(tuple(labels))
    grades = all_grades(index)
    vertices = {g: vertex(g) for g in grades}
    boundaries = {(g, s): boundary(g, s)
                  for g in grades for s, v in zip(index.labels, g) if v >= 1}
    return DoubleCube(index, vertices, boundaries)


def chain_double_cube(steps: Sequence[ModuleMorphism], label: str = "a") -> DoubleCube:
    """
    The double cube on one label given by ``x_0 <- x_1 <- x_2``.

    Args:
        steps: ``[x_1 -> x_0, x_2 -> x_1]``
    """
    if len(steps) != 2 or steps[1].target != steps[0].source:
        raise ShapeError("A chain needs two composable maps")
    modules = {(0,): steps[0].target, (1,): steps[0].source, (2,): steps[1].source}
    return build_double_cube((label,), lambda g: modules[g], lambda g, s: steps[g[0] - 1])


# Reindexing


def pullback_cube(x: DoubleCube, labels: Union[CubeIndex, Sequence[str]],
                  embed: Callable[[Subset], Grade]) -> Cube:
    """
    ``f^* x`` for an order-preserving ``f: P(T) -> [2]^S``.

    Raises:
        ValidationError: If ``embed`` does not preserve the order
    """
    index = labels if isinstance(labels, CubeIndex) else CubeIndex(tuple(labels))
    grades = {u: tuple(embed(u)) for u in index.subsets()}
    return build_cube(index, lambda u: x.vertex(grades[u]),
                      lambda u, t: x.map_between(grades[u], grades[u - {t}]))


def pullback_et(x: DoubleCube, t_set: Subset) -> Cube:
    """``e_T^* x``: vertex ``U`` is ``x`` at ``(U sym T, U & T)``."""
    return pullback_cube(x, x.index, e_map(x.index, t_set))


def pullback_two(x: DoubleCube) -> Cube:
    """``2^* x``: vertex ``U`` is ``x`` at ``2 chi_U``."""
    return pullback_cube(x, x.index, two_map(x.index))


def restrict_double(x: DoubleCube, system: DisjointSystem) -> Cube:
    """
    ``x|_(T,(A,B))^(C,D)`` pulled back along ``Tot_(A,B)`` to a cube on ``T``.

    Vertex ``W`` of the result sits at ``(U + C, V + D)`` where
    ``(U, V) = Tot_(A,B)(W)``.
    """
    system.check(x.index)
    sub_index = x.index.restricted(system.t_set)
    tot = TotalFunctor(sub_index, system.a, system.b)

    def embed(w: Subset) -> Grade:
        u, v = tot(w)
        return grade_of(x.index, u | system.c, v | system.d)

    return pullback_cube(x, sub_index, embed)


class ReindexOp(Enum):
    PULLBACK_ET = "pullback_et"
    PULLBACK_TWO = "pullback_two"
    RESTRICT_DOUBLE = "restrict_double"
    TOT_A = "tot_a"


def reindex(x: DoubleCube, op: ReindexOp, subset: Subset = EMPTY,
            system: Optional[DisjointSystem] = None) -> Union[Cube, TotalFunctor]:
    """Dispatch the reindexing operations; ``TOT_A`` returns the index map."""
    if op is ReindexOp.PULLBACK_ET:
        return pullback_et(x, subset)
    if op is ReindexOp.PULLBACK_TWO:
        return pullback_two(x)
    if op is ReindexOp.TOT_A:
        return total_functor(x.index, subset)
    if system is None:
        raise ValidationError("A disjoint system is required")
    return restrict_double(x, system)


# Patching


def _first_difference(left: Cube, right: Cube) -> str:
    for u in left.index.subsets():
        if left.vertex(u) != right.vertex(u):
            return f"vertex {subset_key(u)!r}"
        for t in sorted(u):
            if left.boundary(u, t) != right.boundary(u, t):
                return f"boundary {subset_key(u)}|{t}"
    return "index"


def check_patching(family: Mapping[Subset, Cube]) -> CubeIndex:
    """
    Verify ``x^T|^0_(S-t) == x^(T-t)|^t_(S-t)`` exactly for all ``T`` and ``t``.

    Raises:
        PatchingError: With the offending subset, label and key
    """
    if EMPTY not in family:
        raise ShapeError("Patching family needs the empty subset")
    index = family[EMPTY].index
    for t_set in index.subsets():
        cube = family.get(t_set)
        if cube is None:
            raise ShapeError(f"Patching family is missing {subset_key(t_set)!r}")
        if cube.index != index:
            raise ShapeError("Patching family cubes need the same labels")
    for t_set in index.subsets():
        for t in sorted(t_set):
            front = family[t_set].frontside_face(t)
            back = family[t_set - {t}].backside_face(t)
            if front != back:
                key = _first_difference(front, back)
                raise PatchingError(
                    f"Patching condition fails at T={subset_key(t_set)!r}, t={t}: {key}",
                    subset=tuple(sorted(t_set)), label=t, key=key,
                )
    return index


def patch(family: Mapping[Subset, Cube]) -> DoubleCube:
    """
    Glue a patching family into the double cube ``Pat`` with ``e_T^* Pat = x^T``.

    Vertex ``(U, V)`` is ``x^(U+V)_V``.
    """
    index = check_patching(family)

    def vertex(grade: Grade) -> FPModule:
        u, v = pair_of(index, grade)
        return family[u | v].vertex(v)

    def boundary(grade: Grade, s: str) -> ModuleMorphism:
        u, v = pair_of(index, grade)
        if s in v:
            return family[u | v].boundary(v, s)
        return family[(u | v) - {s}].boundary(v | {s}, s)

    return build_double_cube(index, vertex, boundary)


def unpatch(x: DoubleCube) -> Dict[Subset, Cube]:
    """The patching family ``{e_T^* x}``."""
    return {t: pullback_et(x, t) for t in x.index.subsets()}


# Fiberedness


def _comparison_iso(x: DoubleCube, grade: Grade) -> bool:
    """Whether ``C(x)`` is an iso at ``grade``: ``x_J`` against the fiber product of its axes."""
    support = [(label, g) for label, g in zip(x.index.labels, grade) if g >= 1]
    if len(support) <= 1:
        return True
    axes = [unit_grade(x.index, label, g) for label, g in support]
    fibers = fiber_product([x.map_between(axis, x.origin) for axis in axes])
    mediating = fibers.mediate([x.map_between(grade, axis) for axis in axes])
    return morphism_class(mediating).is_iso


@dataclass(frozen=True)
class FiberedConditions:
    """The five equivalent formulations of a fibered double cube (for ``|S| >= 2``)."""

    i: bool
    ii: bool
    iii: bool
    iv: bool
    v: bool

    @property
    def agree(self) -> bool:
        return len({self.i, self.ii, self.iii, self.iv, self.v}) == 1

    def as_dict(self) -> Dict[str, bool]:
        return {"i": self.i, "ii": self.ii, "iii": self.iii, "iv": self.iv, "v": self.v}


def fibered_conditions(x: DoubleCube) -> FiberedConditions:
    x.require_valid()
    index = x.index
    proper = [t for t in index.subsets() if t != index.full]
    cached: Dict[Grade, bool] = {}

    def iso_at(grade: Grade) -> bool:
        if grade not in cached:
            cached[grade] = _comparison_iso(x, grade)
        return cached[grade]

    def fibered(cube: Cube) -> bool:
        return is_fibered(cube).fibered

    def pulled_iso(embed: Callable[[Subset], Grade]) -> bool:
        return all(iso_at(embed(u)) for u in index.subsets())

    condition_i = all(fibered(pullback_et(x, t)) for t in index.subsets())
    condition_ii = fibered(pullback_two(x)) and all(fibered(pullback_et(x, t)) for t in proper)
    condition_iii = all(iso_at(g) for g in all_grades(index))
    condition_iv = all(pulled_iso(e_map(index, t)) for t in index.subsets())
    condition_v = pulled_iso(two_map(index)) and all(pulled_iso(e_map(index, t)) for t in proper)
    return FiberedConditions(condition_i, condition_ii, condition_iii, condition_iv, condition_v)


@dataclass(frozen=True)
class FiberDescription:
    applicable: bool
    holds: bool
    witness: Optional[str] = None


def fiber_description_check(x: DoubleCube) -> FiberDescription:
    """
    For monic ``x`` with ``2^* x`` and the proper ``e_T^* x`` fibered, vertex
    ``(U, V)`` is the meet of ``a_u`` over ``U`` and ``b_v`` over ``V`` inside ``x_(0,0)``.
    """
    x.require_valid()
    index = x.index
    proper = [t for t in index.subsets() if t != index.full]
    applicable = (x.is_monic() and is_fibered(pullback_two(x)).fibered
                  and all(is_fibered(pullback_et(x, t)).fibered for t in proper))
    if not applicable:
        return FiberDescription(False, True)
    ambient = x.vertex(x.origin)
    a = {s: Subobject.image(x.map_between(unit_grade(index, s, 1), x.origin)) for s in index.labels}
    b = {s: Subobject.image(x.map_between(unit_grade(index, s, 2), x.origin)) for s in index.labels}
    for grade in all_grades(index):
        u, v = pair_of(index, grade)
        expected = Subobject.whole(ambient)
        for s in sorted(u):
            expected = expected.meet(a[s])
        for s in sorted(v):
            expected = expected.meet(b[s])
        if Subobject.image(x.map_between(grade, x.origin)) != expected:
            return FiberDescription(True, False, grade_key(index, grade))
    return FiberDescription(True, True)


# Double cube theorem checkers


class DctVariant(Enum):
    DCT = "dct"
    BIG_ADM = "bigadm"


@dataclass(frozen=True)
class DctReport:
    variant: DctVariant
    hypotheses: Dict[str, bool]
    conclusion: bool
    witness: Optional[str] = None

    @property
    def implication_ok(self) -> bool:
        return not all(self.hypotheses.values()) or self.conclusion


def _faces_admissible(cube: Cube) -> bool:
    for k in cube.labels:
        for face in (cube.frontside_face(k), cube.backside_face(k)):
            if not is_admissible(face).admissible:
                return False
    return True


@dataclass(frozen=True)
class BigAdmTuple:
    """One instance ``(W, U, V, s, v)`` of the monomorphism condition."""

    w: Subset
    u: Subset
    v: Subset
    s: str
    removed: str

    def describe(self) -> str:
        return (f"W={subset_key(self.w)!r} U={subset_key(self.u)!r} "
                f"V={subset_key(self.v)!r} s={self.s} v={self.removed}")


def big_adm_tuples(index: CubeIndex) -> List[BigAdmTuple]:
    """
    Every ``(W, U, V, s, v)`` with ``U, V`` nonempty and disjoint, ``W + U != S``,
    ``s`` outside ``W + U + (V - v)`` and ``v`` in ``V`` different from ``s``.
    """
    subsets = index.subsets()
    result = []
    for w in subsets:
        for u in subsets:
            if not u or (w | u) == index.full:
                continue
            for v in subsets:
                if not v or (u & v):
                    continue
                for s in sorted(index.full - (w | u)):
                    for removed in sorted(v):
                        if s in v:
                            continue
                        result.append(BigAdmTuple(w, u, v, s, removed))
    return result


def big_adm_family(x: DoubleCube, item: BigAdmTuple) -> Dict[str, ModuleMorphism]:
    """The maps into ``x_(W - V', V')`` whose ``Fib`` enters the monomorphism condition."""
    index = x.index
    rest = item.v - {item.removed}
    base = grade_of(index, item.w - rest, rest)
    family = {}
    for k in sorted(item.u):
        upper = grade_of(index, item.w - (item.v | {k}), item.v | {k})
        family[k] = x.map_between(upper, base)
    family[item.s] = x.boundary(grade_of(index, (item.w | {item.s}) - rest, rest), item.s)
    return family


def big_adm_condition(x: DoubleCube) -> Tuple[bool, Optional[str]]:
    for item in big_adm_tuples(x.index):
        fib = fib_of_family(big_adm_family(x, item)).cube
        if not is_mono(h0_total_map(fib, item.s)):
            return False, item.describe()
    return True, None


def dct_check(x: DoubleCube, variant: DctVariant = DctVariant.DCT) -> DctReport:
    """
    Evaluate the hypotheses and conclusion of a double cube theorem on ``x``.

    Args:
        x: A valid double cube
        variant: ``DCT`` checks admissibility of ``2^* x``, monicity and
            admissible faces of the proper ``e_T^* x``; ``BIG_ADM`` checks
            admissibility of ``2^* x``, monicity, fiberedness of the proper
            ``e_T^* x`` and the monomorphism condition on fiber products

    Returns:
        The hypothesis flags and whether ``e_S^* x`` is admissible
    """
    if not isinstance(variant, DctVariant):
        raise ValidationError(f"Invalid double cube theorem variant: {variant!r}")
    x.require_valid()
    index = x.index
    proper = [t for t in index.subsets() if t != index.full]
    hypotheses = {
        "two_admissible": is_admissible(pullback_two(x)).admissible,
        "monic": x.is_monic(),
    }
    witness = None
    if variant is DctVariant.DCT:
        if index.size >= 3:
            hypotheses["faces_admissible"] = all(
                _faces_admissible(pullback_et(x, t)) for t in proper)
        else:
            hypotheses["faces_admissible"] = True
    else:
        hypotheses["proper_fibered"] = all(
            is_fibered(pullback_et(x, t)).fibered for t in proper)
        hypotheses["fiber_monomorphisms"], witness = big_adm_condition(x)
    conclusion = is_admissible(pullback_et(x, index.full)).admissible
    report = DctReport(variant, hypotheses, conclusion, witness)
    logger.info("%s check: hypotheses %s, conclusion %s", variant.value, hypotheses, conclusion)
    return report
