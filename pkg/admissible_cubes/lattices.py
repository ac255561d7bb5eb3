"""
Finite lattices, families of lattice elements and the admissibility
conditions on them.

Every check runs on a :class:`TableLattice` whose elements are the integers
``0..n-1`` with precomputed join and meet tables. Subobject lattices of a
module are materialized into a table by closing a family of submodules under
sum and intersection.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from itertools import combinations, product
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .config import Limits, resolve
from .cubes import (
    SequenceMode,
    fib_of_family,
    is_admissible,
    is_fibered,
    sequence_check,
    typical_cube,
)
from .exceptions import LatticeError, LatticeOverflowError, ValidationError
from .modules import FPModule, ModuleMorphism, Subobject, cyclic_subobjects, is_mono
from .rings import RingElement

logger = logging.getLogger(__name__)


class TableLattice:
    """
    A finite lattice given by its order, with computed join and meet tables.

    Example:
        >>> n5 = TableLattice.pentagon()
        >>> n5.name(n5.join(n5.index("a"), n5.index("b")))
        '1'
    """

    def __init__(self, names: Sequence[str], leq: Sequence[Sequence[bool]],
                 join: Optional[Sequence[Sequence[int]]] = None,
                 meet: Optional[Sequence[Sequence[int]]] = None):
        if not names:
            raise ValidationError("A lattice needs at least one element")
        if len(set(names)) != len(names):
            raise ValidationError("Lattice element names must be distinct")
        n = len(names)
        if len(leq) != n or any(len(row) != n for row in leq):
            raise ValidationError(f"Order table must be {n}x{n}")
        self.names: Tuple[str, ...] = tuple(names)
        self._leq = tuple(tuple(bool(v) for v in row) for row in leq)
        self._check_order()
        self._join = tuple(tuple(row) for row in join) if join else self._bounds(upper=True)
        self._meet = tuple(tuple(row) for row in meet) if meet else self._bounds(upper=False)
        self._index = {name: i for i, name in enumerate(self.names)}
        self._top = reduce(self.join, self.elements())
        self._bottom = reduce(self.meet, self.elements())

    def _check_order(self) -> None:
        n = len(self.names)
        for i in range(n):
            if not self._leq[i][i]:
                raise ValidationError(f"Order is not reflexive at {self.names[i]!r}")
        for i, j in product(range(n), repeat=2):
            if i != j and self._leq[i][j] and self._leq[j][i]:
                raise ValidationError(
                    f"Order is not antisymmetric: {self.names[i]!r}, {self.names[j]!r}")
        for i, j, k in product(range(n), repeat=3):
            if self._leq[i][j] and self._leq[j][k] and not self._leq[i][k]:
                raise ValidationError("Order is not transitive")

    def _bounds(self, upper: bool) -> Tuple[Tuple[int, ...], ...]:
        n = len(self.names)
        leq = self._leq
        table = []
        for a in range(n):
            row = []
            for b in range(n):
                if upper:
                    bounds = [c for c in range(n) if leq[a][c] and leq[b][c]]
                    best = [c for c in bounds if all(leq[c][d] for d in bounds)]
                else:
                    bounds = [c for c in range(n) if leq[c][a] and leq[c][b]]
                    best = [c for c in bounds if all(leq[d][c] for d in bounds)]
                if not best:
                    kind = "join" if upper else "meet"
                    raise LatticeError(
                        f"The {kind} of {self.names[a]!r} and {self.names[b]!r} does not exist")
                row.append(best[0])
            table.append(tuple(row))
        return tuple(table)

    # Element access

    @property
    def size(self) -> int:
        return len(self.names)

    def elements(self) -> range:
        return range(len(self.names))

    def index(self, name: str) -> int:
        if name not in self._index:
            raise ValidationError(f"Unknown lattice element: {name!r}")
        return self._index[name]

    def name(self, element: int) -> str:
        return self.names[element]

    def leq(self, a: int, b: int) -> bool:
        return self._leq[a][b]

    def join(self, a: int, b: int) -> int:
        return self._join[a][b]

    def meet(self, a: int, b: int) -> int:
        return self._meet[a][b]

    def join_all(self, values: Iterable[int]) -> int:
        return reduce(self.join, values, self.bottom)

    def meet_all(self, values: Iterable[int]) -> int:
        return reduce(self.meet, values, self.top)

    @property
    def top(self) -> int:
        return self._top

    @property
    def bottom(self) -> int:
        return self._bottom

    def order_table(self) -> List[List[bool]]:
        return [list(row) for row in self._leq]

    def __repr__(self) -> str:
        return f"TableLattice(size={self.size})"

    # Factories

    @classmethod
    def from_order(cls, names: Sequence[str], leq: Callable[[int, int], bool]) -> "TableLattice":
        n = len(names)
        return cls(names, [[leq(i, j) for j in range(n)] for i in range(n)])

    @classmethod
    def chain(cls, n: int) -> "TableLattice":
        return cls.from_order([str(i) for i in range(n)], lambda i, j: i <= j)

    @classmethod
    def boolean(cls, k: int) -> "TableLattice":
        """Subsets of ``{0..k-1}`` named by their bit strings."""
        names = [format(mask, f"0{k}b") if k else "0" for mask in range(2 ** k)]
        return cls.from_order(names, lambda i, j: i & j == i)

    @classmethod
    def divisors(cls, n: int) -> "TableLattice":
        if n < 1:
            raise ValidationError("divisors needs a positive integer")
        values = [d for d in range(1, n + 1) if n % d == 0]
        return cls.from_order([str(d) for d in values], lambda i, j: values[j] % values[i] == 0)

    @classmethod
    def pentagon(cls) -> "TableLattice":
        """``N5``: ``0 < a < c < 1`` and ``0 < b < 1``."""
        names = ["0", "a", "b", "c", "1"]
        below = {("0", x) for x in names} | {("a", "c"), ("a", "1"), ("b", "1"), ("c", "1")}
        return cls.from_order(names, lambda i, j: i == j or (names[i], names[j]) in below)

    @classmethod
    def diamond(cls) -> "TableLattice":
        """``M3``: three atoms between ``0`` and ``1``."""
        names = ["0", "a", "b", "c", "1"]
        return cls.from_order(
            names, lambda i, j: i == j or names[i] == "0" or names[j] == "1")

    @classmethod
    def product(cls, first: "TableLattice", second: "TableLattice") -> "TableLattice":
        pairs = list(product(first.elements(), second.elements()))
        names = [f"({first.name(a)},{second.name(b)})" for a, b in pairs]
        return cls.from_order(names, lambda i, j: first.leq(pairs[i][0], pairs[j][0])
                              and second.leq(pairs[i][1], pairs[j][1]))

    @classmethod
    def from_lattice(cls, names: Sequence[str], join: Sequence[Sequence[int]],
                     meet: Sequence[Sequence[int]]) -> "TableLattice":
        """Materialize a lattice known through its operation tables."""
        n = len(names)
        leq = [[join[i][j] == j for j in range(n)] for i in range(n)]
        return cls(names, leq, join, meet)


# Subobject lattices


class SubobjectLattice:
    """
    The sublattice of ``P(ambient)`` generated by a family of submodules,
    together with ``0`` and the whole module.

    Raises:
        LatticeOverflowError: If the closure grows past ``Limits.lattice_cap``
    """

    def __init__(self, ambient: FPModule, generators: Sequence[Subobject],
                 limits: Optional[Limits] = None, meets: bool = True):
        self.ambient = ambient
        self.cap = resolve(limits).lattice_cap
        self.elements: List[Subobject] = []
        self._positions: Dict[Subobject, int] = {}
        for element in [Subobject.zero(ambient), Subobject.whole(ambient), *generators]:
            if element.ambient != ambient:
                raise ValidationError("Subobjects of different ambient modules")
            self._add(element)
        self._close(meets)
        self.table = self._materialize()

    def _add(self, element: Subobject) -> int:
        if element not in self._positions:
            if len(self.elements) >= self.cap:
                raise LatticeOverflowError(
                    f"Subobject lattice closure exceeds {self.cap} elements")
            self._positions[element] = len(self.elements)
            self.elements.append(element)
        return self._positions[element]

    def _close(self, meets: bool) -> None:
        self._join: Dict[Tuple[int, int], int] = {}
        self._meet: Dict[Tuple[int, int], int] = {}
        i = 0
        while i < len(self.elements):
            for j in range(i + 1):
                a, b = self.elements[i], self.elements[j]
                self._join[(i, j)] = self._join[(j, i)] = self._add(a.join(b))
                if meets:
                    self._meet[(i, j)] = self._meet[(j, i)] = self._add(a.meet(b))
            i += 1
        if not meets:
            n = len(self.elements)
            for i, j in product(range(n), repeat=2):
                if (i, j) not in self._meet:
                    k = self._positions[self.elements[i].meet(self.elements[j])]
                    self._meet[(i, j)] = self._meet[(j, i)] = k
        logger.debug("Subobject lattice closed with %d elements", len(self.elements))

    def _materialize(self) -> TableLattice:
        n = len(self.elements)
        join = [[self._join[(i, j)] for j in range(n)] for i in range(n)]
        meet = [[self._meet[(i, j)] for j in range(n)] for i in range(n)]
        return TableLattice.from_lattice([f"e{i}" for i in range(n)], join, meet)

    def position(self, element: Subobject) -> int:
        if element not in self._positions:
            raise ValidationError("Subobject is not in the lattice")
        return self._positions[element]

    def subobject(self, element: int) -> Subobject:
        return self.elements[element]


def subgroup_lattice(module: FPModule, limits: Optional[Limits] = None) -> SubobjectLattice:
    """
    All submodules of a finite module: the join closure of its cyclic submodules.

    The lattice lives on the minimal presentation of ``module``.
    """
    pruned, cyclic = cyclic_subobjects(module)
    return SubobjectLattice(pruned, cyclic, limits, meets=False)


# Families


@dataclass(frozen=True)
class ElementFamily:
    """Labelled elements ``x_s`` of a table lattice."""

    lattice: TableLattice
    members: Mapping[str, int]

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(sorted(self.members))

    @property
    def values(self) -> List[int]:
        return [self.members[s] for s in self.labels]

    def __len__(self) -> int:
        return len(self.members)

    def sub(self, labels: Iterable[str]) -> "ElementFamily":
        """The subfamily ``x_T``."""
        return ElementFamily(self.lattice, {s: self.members[s] for s in labels})

    def meet_with(self, y: int) -> "ElementFamily":
        """``x ^ y = {x_s ^ y}``."""
        return ElementFamily(self.lattice,
                             {s: self.lattice.meet(v, y) for s, v in self.members.items()})

    def join_with(self, y: int) -> "ElementFamily":
        return ElementFamily(self.lattice,
                             {s: self.lattice.join(v, y) for s, v in self.members.items()})

    def join_over(self, labels: Iterable[str]) -> int:
        chosen = list(labels)
        if not chosen:
            raise ValidationError("Join over an empty set of labels")
        return self.lattice.join_all(self.members[s] for s in chosen)

    def meet_over(self, labels: Iterable[str]) -> int:
        """``x^{^T}``; the empty meet is the top element."""
        return self.lattice.meet_all(self.members[s] for s in labels)


def table_family(lattice: TableLattice, members: Mapping[str, str]) -> ElementFamily:
    """A family given by element names."""
    return ElementFamily(lattice, {s: lattice.index(name) for s, name in members.items()})


@dataclass(frozen=True)
class SubobjectFamily:
    """A family of submodules and its materialized lattice."""

    lattice: SubobjectLattice
    family: ElementFamily
    extras: Tuple[int, ...] = ()


def subobject_family(ambient: FPModule, members: Mapping[str, Subobject],
                     extras: Sequence[Subobject] = (),
                     limits: Optional[Limits] = None) -> SubobjectFamily:
    """
    Materialize ``P(x)`` generated by ``members`` and ``extras``.

    Example:
        >>> z = RingDescriptor.integers()
        >>> one = FPModule.free(z, 1)
        >>> ideal = lambda n: Subobject.image(ModuleMorphism.scalar(one, n))
        >>> data = subobject_family(one, {"a": ideal(4), "b": ideal(6)})
        >>> data.lattice.subobject(data.family.join_over(["a", "b"])) == ideal(2)
        True
    """
    lattice = SubobjectLattice(ambient, [*members.values(), *extras], limits)
    family = ElementFamily(lattice.table, {s: lattice.position(m) for s, m in members.items()})
    return SubobjectFamily(lattice, family, tuple(lattice.position(e) for e in extras))


class FamilyOp(Enum):
    JOIN_OVER = "join_over"
    MEET_OVER = "meet_over"
    MEET_WITH = "meet_with"


def family_ops(family: ElementFamily, op: FamilyOp, labels: Iterable[str] = (),
               y: Optional[int] = None) -> object:
    """Dispatch ``JOIN_OVER``, ``MEET_OVER`` or ``MEET_WITH``."""
    if op is FamilyOp.JOIN_OVER:
        return family.join_over(labels)
    if op is FamilyOp.MEET_OVER:
        return family.meet_over(labels)
    if op is FamilyOp.MEET_WITH:
        if y is None:
            raise ValidationError("meet_with needs an element")
        return family.meet_with(y)
    raise ValidationError(f"Invalid family operation: {op!r}")


def is_distributive_pair(lattice: TableLattice, values: Sequence[int], y: int) -> bool:
    """``(join x) ^ y <= join (x ^ y)``; the reverse inequality always holds."""
    if not values:
        raise ValidationError("A distributive pair needs a nonempty family")
    left = lattice.meet(lattice.join_all(values), y)
    right = lattice.join_all(lattice.meet(v, y) for v in values)
    return lattice.leq(left, right)


def pardist_inequalities(family: ElementFamily, y: int) -> bool:
    """The two one-sided distributive inequalities, true in every lattice."""
    lattice = family.lattice
    values = family.values
    vee = lattice.leq(lattice.join_all(lattice.meet(v, y) for v in values),
                      lattice.meet(lattice.join_all(values), y))
    wedge = lattice.leq(lattice.join(lattice.meet_all(values), y),
                        lattice.meet_all(lattice.join(v, y) for v in values))
    return vee and wedge


# Family classes


class FamilyMode(Enum):
    STRICTLY_DISTRIBUTIVE = "strictly_distributive"
    ADMISSIBLE = "admissible"
    UNIVERSALLY_ADMISSIBLE = "universally_admissible"
    REGULAR_SEQUENCE = "regular_sequence"


@dataclass(frozen=True)
class ClassReport:
    holds: bool
    mode: FamilyMode
    witness: Optional[Tuple[Tuple[str, ...], Tuple[str, ...]]] = None


def _admissible_witness(lattice: TableLattice, values: Sequence[int]) -> Optional[Tuple[int, int]]:
    """First ``(mask, t)`` with ``(x_mask, x_t)`` not distributive, by subset dynamic programming."""
    n = len(values)
    if n <= 1:
        return None
    size = 1 << n
    joins = [lattice.bottom] * size
    for mask in range(1, size):
        low = (mask & -mask).bit_length() - 1
        joins[mask] = lattice.join(joins[mask & (mask - 1)], values[low])
    for t in range(n):
        partial = [lattice.bottom] * size
        cut = [lattice.meet(v, values[t]) for v in values]
        for mask in range(1, size):
            low = (mask & -mask).bit_length() - 1
            partial[mask] = lattice.join(partial[mask & (mask - 1)], cut[low])
            if mask >> t & 1 or mask == size - 1:
                continue
            left = lattice.meet(joins[mask], values[t])
            if not lattice.leq(left, partial[mask]):
                return mask, t
    return None


def _labels_of(labels: Sequence[str], mask: int) -> Tuple[str, ...]:
    return tuple(s for i, s in enumerate(labels) if mask >> i & 1)


def _nonempty_subsets(labels: Sequence[str]) -> List[Tuple[str, ...]]:
    return [c for k in range(1, len(labels) + 1) for c in combinations(labels, k)]


def family_class(family: ElementFamily, mode: FamilyMode = FamilyMode.ADMISSIBLE,
                 ordering: Optional[Sequence[str]] = None) -> ClassReport:
    """
    Decide one of the family conditions by brute force.

    Args:
        family: The family ``x_S``
        mode: One of the ``FamilyMode`` members
        ordering: Label order for ``REGULAR_SEQUENCE`` (sorted by default)

    Returns:
        The verdict and, on failure, the offending ``(T, (t,))`` or ``(U, V)``
    """
    lattice = family.lattice
    labels = family.labels
    if mode is FamilyMode.STRICTLY_DISTRIBUTIVE:
        if len(labels) >= 2:
            for t in labels:
                rest = tuple(s for s in labels if s != t)
                if not is_distributive_pair(lattice, family.sub(rest).values, family.members[t]):
                    return ClassReport(False, mode, (rest, (t,)))
        return ClassReport(True, mode)
    if mode is FamilyMode.ADMISSIBLE:
        found = _admissible_witness(lattice, family.values)
        if found is None:
            return ClassReport(True, mode)
        mask, t = found
        return ClassReport(False, mode, (_labels_of(labels, mask), (labels[t],)))
    if mode is FamilyMode.UNIVERSALLY_ADMISSIBLE:
        for u in _nonempty_subsets(labels):
            rest = [s for s in labels if s not in u]
            for v in _nonempty_subsets(rest):
                y = family.meet_over(v)
                if not is_distributive_pair(lattice, family.sub(u).values, y):
                    return ClassReport(False, mode, (u, v))
        return ClassReport(True, mode)
    if mode is FamilyMode.REGULAR_SEQUENCE:
        order = tuple(ordering) if ordering is not None else labels
        if sorted(order) != list(labels):
            raise ValidationError("Ordering must list every label once")
        for i in range(1, len(order)):
            head = [family.members[s] for s in order[:i]]
            if not is_distributive_pair(lattice, head, family.members[order[i]]):
                return ClassReport(False, mode, (order[:i], (order[i],)))
        return ClassReport(True, mode)
    raise ValidationError(f"Invalid family mode: {mode!r}")


def is_admissible_family(family: ElementFamily) -> bool:
    return family_class(family, FamilyMode.ADMISSIBLE).holds


def is_universally_admissible(family: ElementFamily) -> bool:
    return family_class(family, FamilyMode.UNIVERSALLY_ADMISSIBLE).holds


# Lattice laws


@dataclass(frozen=True)
class ModularityReport:
    modular: bool
    witness: Optional[Tuple[str, str, str]] = None
    cancellation: bool = True

    @property
    def agree(self) -> bool:
        return self.modular == self.cancellation


def semimodular_check(lattice: TableLattice) -> bool:
    """``a v (b ^ c) <= (a v b) ^ c`` whenever ``a <= c``."""
    for a, b, c in product(lattice.elements(), repeat=3):
        if lattice.leq(a, c):
            left = lattice.join(a, lattice.meet(b, c))
            if not lattice.leq(left, lattice.meet(lattice.join(a, b), c)):
                return False
    return True


def is_modular(lattice: TableLattice) -> ModularityReport:
    """
    The modular law, with the cancellation form as a cross-check.

    Example:
        >>> is_modular(TableLattice.pentagon()).witness
        ('a', 'b', 'c')
    """
    witness = None
    for a, b, c in product(lattice.elements(), repeat=3):
        if not lattice.leq(a, c):
            continue
        if lattice.join(a, lattice.meet(b, c)) != lattice.meet(lattice.join(a, b), c):
            witness = (lattice.name(a), lattice.name(b), lattice.name(c))
            break
    cancellation = True
    for a, b, c in product(lattice.elements(), repeat=3):
        if (a != b and lattice.leq(a, b) and lattice.join(a, c) == lattice.join(b, c)
                and lattice.meet(a, c) == lattice.meet(b, c)):
            cancellation = False
            break
    return ModularityReport(witness is None, witness, cancellation)


def is_distributive(lattice: TableLattice, elements: Optional[Sequence[int]] = None) -> bool:
    """``a ^ (b v c) = (a ^ b) v (a ^ c)`` over ``elements`` (all by default)."""
    pool = list(lattice.elements()) if elements is None else list(elements)
    for a, b, c in product(pool, repeat=3):
        left = lattice.meet(a, lattice.join(b, c))
        if left != lattice.join(lattice.meet(a, b), lattice.meet(a, c)):
            return False
    return True


def distributive_law_check(lattice: TableLattice) -> bool:
    """Distributivity in the family form: every ``(x_{S-s}, x_s)`` over all finite subsets of size 2 and 3."""
    elements = list(lattice.elements())
    for k in (2, 3):
        for chosen in combinations(elements, k):
            for i in range(k):
                rest = [v for j, v in enumerate(chosen) if j != i]
                if not is_distributive_pair(lattice, rest, chosen[i]):
                    return False
    return True


def generated_sublattice(lattice: TableLattice, generators: Iterable[int],
                         limits: Optional[Limits] = None) -> List[int]:
    """The closure of ``generators`` under join and meet, sorted."""
    cap = resolve(limits).lattice_cap
    found = set(generators)
    frontier = list(found)
    while frontier:
        fresh = []
        current = list(found)
        for a in frontier:
            for b in current:
                for c in (lattice.join(a, b), lattice.meet(a, b)):
                    if c not in found:
                        found.add(c)
                        fresh.append(c)
                        if len(found) > cap:
                            raise LatticeOverflowError(f"Sublattice exceeds {cap} elements")
        frontier = fresh
    return sorted(found)


# Ideals of the power set


def _antichains(items: Sequence[int], leq: Callable[[int, int], bool]) -> List[Tuple[int, ...]]:
    result: List[Tuple[int, ...]] = []

    def extend(start: int, chosen: Tuple[int, ...]) -> None:
        result.append(chosen)
        for i in range(start, len(items)):
            item = items[i]
            if all(not leq(item, c) and not leq(c, item) for c in chosen):
                extend(i + 1, chosen + (item,))

    extend(0, ())
    return result


def power_set_ideals(n: int) -> List[int]:
    """
    Up-closed subsets of ``P({0..n-1})`` as bit masks over the ``2^n`` subsets.

    Subset ``V`` (itself a bit mask) is in ideal ``I`` when bit ``V`` of ``I`` is set.
    """
    subsets = list(range(1 << n))
    result = []
    for chain in _antichains(subsets, lambda a, b: a & b == a):
        ideal = 0
        for v in subsets:
            if any(c & v == c for c in chain):
                ideal |= 1 << v
        result.append(ideal)
    return sorted(set(result))


@dataclass(frozen=True)
class IdealMapReport:
    assertion1: bool
    assertion2: bool
    assertion3: bool
    universally_admissible: bool

    @property
    def implications_ok(self) -> bool:
        return (self.assertion1 == self.assertion2
                and (not self.assertion2 or self.assertion3)
                and (not self.assertion3 or self.universally_admissible))


def ideal_map_check(family: ElementFamily, limits: Optional[Limits] = None) -> IdealMapReport:
    """
    Evaluate, for ``x_S``: (1) the generated sublattice is distributive,
    (2) ``I -> join of x^{^V} over V in I`` preserves meets of ideals,
    (3) ``{x^{^V} : V in P(S)}`` is admissible.
    """
    limits = resolve(limits)
    labels = family.labels
    n = len(labels)
    if n > limits.ideal_map_labels:
        raise ValidationError(f"ideal_map_check is capped at {limits.ideal_map_labels} labels")
    lattice = family.lattice
    sub = generated_sublattice(lattice, family.values, limits)
    assertion1 = is_distributive(lattice, sub)
    meets = [family.meet_over(_labels_of(labels, v)) for v in range(1 << n)]

    def image(ideal: int) -> int:
        return lattice.join_all(meets[v] for v in range(1 << n) if ideal >> v & 1)

    ideals = power_set_ideals(n)
    images = {ideal: image(ideal) for ideal in ideals}
    assertion2 = all(images[i & j] == lattice.meet(images[i], images[j])
                     for i, j in combinations(ideals, 2))
    distinct = sorted(set(meets))
    assertion3 = _admissible_witness(lattice, distinct) is None
    return IdealMapReport(assertion1, assertion2, assertion3, is_universally_admissible(family))


# Transfer statements


class TransferVariant(Enum):
    PROP = "prop_adm_seq_lem"
    COR = "cor_adm_seq_cor"
    COR_REMARK = "cor_with_remark"


@dataclass(frozen=True)
class TransferReport:
    variant: TransferVariant
    universal: bool
    hypotheses: Dict[str, bool]
    conclusion: bool
    relaxed_by_modularity: bool = False

    @property
    def implication_ok(self) -> bool:
        return not all(self.hypotheses.values()) or self.conclusion

    @property
    def vacuous(self) -> bool:
        return not all(self.hypotheses.values())


def _disjoint_pairs(labels: Sequence[str]) -> List[Tuple[Tuple[str, ...], Tuple[str, ...]]]:
    pairs = []
    for u in _nonempty_subsets(labels):
        rest = [s for s in labels if s not in u]
        for v in _nonempty_subsets(rest):
            pairs.append((u, v))
    return pairs


def _prop_hypothesis(family: ElementFamily, y: int, universal: bool) -> bool:
    lattice = family.lattice
    labels = family.labels
    if len(labels) < 2:
        return True
    if not universal:
        for s in labels:
            others = [t for t in labels if t != s]
            for u in _nonempty_subsets(others):
                values = [lattice.meet(family.members[k], family.members[s]) for k in u]
                if not is_distributive_pair(lattice, values, y):
                    return False
        return True
    for u, v in _disjoint_pairs(labels):
        if len(v) < 2:
            continue
        meet_v = family.meet_over(v)
        values = [lattice.meet(family.members[k], meet_v) for k in u]
        for removed in v:
            target = lattice.meet(family.meet_over([t for t in v if t != removed]), y)
            if not is_distributive_pair(lattice, values, target):
                return False
    return True


def _cor_hypothesis(a: ElementFamily, b: ElementFamily, universal: bool,
                    remark: bool, modular: bool) -> bool:
    lattice = b.lattice
    labels = b.labels
    if len(labels) < 2:
        return True
    proper = [w for k in range(len(labels)) for w in combinations(labels, k)]
    if not universal:
        for w in proper:
            meet_w = a.meet_over(w)
            outside = [s for s in labels if s not in w]
            for u in _nonempty_subsets(labels):
                if len(u) < 2:
                    continue
                for pivot in u:
                    base = lattice.meet(b.members[pivot], meet_w)
                    values = [lattice.meet(b.members[k], base) for k in u if k != pivot]
                    for s in outside:
                        if remark and s == pivot:
                            continue
                        if not is_distributive_pair(lattice, values, a.members[s]):
                            return False
        return True
    for w in proper:
        meet_w = a.meet_over(w)
        outside = [s for s in labels if s not in w]
        for u, v in _disjoint_pairs(labels):
            if len(v) < 2:
                continue
            if remark and modular and set(w) | set(u) == set(labels):
                continue
            base = lattice.meet(b.meet_over(v), meet_w)
            values = [lattice.meet(b.members[k], base) for k in u]
            for s in outside:
                if remark and modular and s in u:
                    continue
                meet_ws = a.meet_over(tuple(w) + (s,))
                for removed in v:
                    if remark and s == removed:
                        continue
                    target = lattice.meet(b.meet_over([t for t in v if t != removed]), meet_ws)
                    if not is_distributive_pair(lattice, values, target):
                        return False
    return True


def transfer_check(variant: TransferVariant, family: ElementFamily, y: Optional[int] = None,
                   upper: Optional[ElementFamily] = None,
                   universal: bool = False) -> TransferReport:
    """
    Evaluate a transfer statement on concrete families.

    Args:
        variant: ``PROP`` takes ``family`` and ``y`` and concludes
            that ``x ^ y`` is (universally) admissible; ``COR``
            takes ``family`` as ``b`` and ``upper`` as ``a`` with
            ``a_s >= b_s`` and concludes that ``b ^ a^{^S}`` is (universally)
            admissible; ``COR_REMARK`` is the corollary with the relaxed
            quantifiers, further relaxed when the lattice is modular
        family: The family ``x`` (or ``b``)
        y: The element for the proposition
        upper: The family ``a`` for the corollaries
        universal: Check the universally admissible version

    Raises:
        ValidationError: On arity mismatch or ``a_s < b_s``
    """
    check = is_universally_admissible if universal else is_admissible_family
    lattice = family.lattice
    if variant is TransferVariant.PROP:
        if y is None:
            raise ValidationError("The proposition needs an element y")
        hypotheses = {"family": check(family), "pairs": _prop_hypothesis(family, y, universal)}
        conclusion = check(family.meet_with(y))
        return TransferReport(variant, universal, hypotheses, conclusion)
    if variant not in (TransferVariant.COR, TransferVariant.COR_REMARK):
        raise ValidationError(f"Invalid transfer variant: {variant!r}")
    if upper is None or upper.labels != family.labels or upper.lattice is not lattice:
        raise ValidationError("Arity mismatch between the families a and b")
    for s in family.labels:
        if not lattice.leq(family.members[s], upper.members[s]):
            raise ValidationError(f"a_{s} is not above b_{s}")
    remark = variant is TransferVariant.COR_REMARK
    modular = remark and universal and is_modular(lattice).modular
    hypotheses = {
        "family": check(family),
        "pairs": _cor_hypothesis(upper, family, universal, remark, modular),
    }
    conclusion = check(family.meet_with(upper.meet_over(upper.labels)))
    return TransferReport(variant, universal, hypotheses, conclusion, modular)


# Remarks and bridges


def remark_checks(family: ElementFamily) -> Dict[str, bool]:
    """
    The four remarks on universal admissibility, each reported as "holds":
    restriction, small families, the recursive characterization and the
    three-element case.
    """
    labels = family.labels
    admissible = is_admissible_family(family)
    universal = is_universally_admissible(family)
    restriction = True
    for t in _nonempty_subsets(labels):
        sub = family.sub(t)
        if admissible and not is_admissible_family(sub):
            restriction = False
        if universal and not is_universally_admissible(sub):
            restriction = False
    small = len(labels) > 2 or universal
    recursive = True
    if len(labels) >= 3:
        parts = all(
            is_universally_admissible(
                family.sub([t for t in labels if t != s]).meet_with(family.members[s]))
            for s in labels)
        recursive = universal == (admissible and parts)
    three = len(labels) != 3 or universal == admissible
    return {"restriction": restriction, "small": small, "recursive": recursive, "three": three}


@dataclass(frozen=True)
class BridgeReport:
    pairwise_regular: bool
    lattice_regular: bool
    module_regular: bool

    @property
    def agree(self) -> bool:
        return not self.pairwise_regular or self.lattice_regular == self.module_regular


def regular_sequence_bridge(module: FPModule, fs: Sequence[RingElement],
                            limits: Optional[Limits] = None) -> BridgeReport:
    """
    Compare regularity of ``f_1 M, ..., f_r M`` in ``P(M)`` with ``M``-regularity
    of ``f_1, ..., f_r``, under pairwise regularity of the elements.
    """
    values = [module.ring.element(f) for f in fs]
    pairwise = all(
        sequence_check([values[i], values[j]], module, SequenceMode.REGULAR_ORDERED).is_sequence
        for i, j in product(range(len(values)), repeat=2) if i != j)
    labels = [f"f{i + 1}" for i in range(len(values))]
    members = {label: Subobject.image(ModuleMorphism.scalar(module, f))
               for label, f in zip(labels, values)}
    family = subobject_family(module, members, limits=limits).family
    lattice_regular = family_class(family, FamilyMode.REGULAR_SEQUENCE, labels).holds
    module_regular = sequence_check(values, module, SequenceMode.REGULAR_ORDERED).is_sequence
    return BridgeReport(pairwise, lattice_regular, module_regular)


@dataclass(frozen=True)
class FibBridgeReport:
    fib_admissible: bool
    universally_admissible: bool

    @property
    def agree(self) -> bool:
        return self.fib_admissible == self.universally_admissible


def fib_admissibility_bridge(ambient: FPModule, members: Mapping[str, Subobject],
                             limits: Optional[Limits] = None) -> FibBridgeReport:
    """``Fib`` of a family of submodules is admissible iff the family is universally admissible."""
    maps = {s: m.to_module().structure_map for s, m in members.items()}
    fib = fib_of_family(maps).cube
    family = subobject_family(ambient, members, limits=limits).family
    return FibBridgeReport(is_admissible(fib).admissible, is_universally_admissible(family))


@dataclass(frozen=True)
class SequenceConditions:
    """
    Four equivalent views of an ``x``-sequence ``f_S``.

    The lattice views read the family ``{f_s x}`` inside the intersection
    cube, so they also require ``Typ(f; x)`` to be fibered.
    """

    typical_admissible: bool
    x_sequence: bool
    admissible: bool
    universally_admissible: bool
    fibered: bool = True

    @property
    def agree(self) -> bool:
        return len({self.typical_admissible, self.x_sequence,
                    self.admissible, self.universally_admissible}) == 1


def sequence_conditions(fs: Sequence[RingElement], module: FPModule,
                        limits: Optional[Limits] = None) -> SequenceConditions:
    """
    ``Typ(f; x)`` admissible, ``f`` an ``x``-sequence, and every ``(f_s)_x``
    mono, ``Typ(f; x)`` fibered and ``{f_s x}`` admissible, respectively
    universally admissible, in ``P(x)``.
    """
    values = [module.ring.element(f) for f in fs]
    typical = typical_cube(values, module)
    maps = {s: ModuleMorphism.scalar(module, f) for s, f in zip(typical.labels, values)}
    monic = all(is_mono(f) for f in maps.values())
    fibered = monic and is_fibered(typical).fibered
    admissible = universal = False
    if fibered:
        members = {s: Subobject.image(f) for s, f in maps.items()}
        family = subobject_family(module, members, limits=limits).family
        admissible = is_admissible_family(family)
        universal = is_universally_admissible(family)
    return SequenceConditions(
        typical_admissible=is_admissible(typical).admissible,
        x_sequence=sequence_check(values, module, SequenceMode.X_SEQUENCE).is_sequence,
        admissible=admissible,
        universally_admissible=universal,
        fibered=fibered,
    )
