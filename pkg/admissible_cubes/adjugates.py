"""
Adjugates of cubes.

An adjugate of a cube ``x`` is a family of scalars ``a_s`` and reverse maps
``d^{t*}_T: x_{T-t} -> x_T`` such that each ``d^t_T`` and ``d^{t*}_T``
compose to multiplication by ``a_t`` both ways and the reverse maps commute
with the boundaries.
"""

import logging
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .config import Limits, resolve
from .cubes import (
    EMPTY,
    CoCube,
    Cube,
    CubeIndex,
    FibCube,
    SequenceMode,
    Subset,
    build_cube,
    default_labels,
    dual,
    fib_of_family,
    is_admissible,
    sequence_check,
    subset_key,
    typical_cube,
)
from .doublecubes import DoubleCube, patch, pullback_two
from .exceptions import AdjugateError, IllDefinedMorphismError, LimitExceededError, ValidationError
from .linalg import adjugate, determinant, vstack
from .modules import FPModule, ModuleMorphism, direct_sum, lift_through_mono, pullback
from .rings import RingDescriptor, RingElement, RingKind

logger = logging.getLogger(__name__)

StarKey = Tuple[Subset, str]


@dataclass(frozen=True)
class CubeAdjugate:
    """Scalars ``a_s`` and reverse maps ``d^{t*}_T`` keyed by ``(T, t)``."""

    scalars: Mapping[str, RingElement]
    stars: Mapping[StarKey, ModuleMorphism]

    def star(self, subset: Subset, label: str) -> ModuleMorphism:
        return self.stars[(frozenset(subset), label)]

    def scalar_list(self, labels: Sequence[str]) -> List[RingElement]:
        return [self.scalars[s] for s in labels]


def check_shape(x: Cube, adj: CubeAdjugate) -> None:
    """
    Raises:
        AdjugateError: If a scalar or reverse map is missing or has the wrong ends
    """
    if set(adj.scalars) != set(x.labels):
        raise AdjugateError(f"Scalars {sorted(adj.scalars)} do not match labels {list(x.labels)}")
    for subset, label, d in x.arrow_items():
        star = adj.stars.get((subset, label))
        if star is None:
            raise AdjugateError(f"Missing reverse map {subset_key(subset)}|{label}")
        if star.source != d.target or star.target != d.source:
            raise AdjugateError(f"Reverse map {subset_key(subset)}|{label} has the wrong ends")


@dataclass(frozen=True)
class AdjugateReport:
    valid: bool
    axiom_i: bool
    axiom_ii: bool
    regular: Optional[bool] = None
    witness: Optional[str] = None


def _axiom_i_witness(x: Cube, adj: CubeAdjugate) -> Optional[str]:
    for subset, t, d in x.arrow_items():
        star = adj.star(subset, t)
        a = adj.scalars[t]
        if not (d @ star).same_map(ModuleMorphism.scalar(d.target, a)):
            return f"d d* != a_{t} at {subset_key(subset)}|{t}"
        if not (star @ d).same_map(ModuleMorphism.scalar(d.source, a)):
            return f"d* d != a_{t} at {subset_key(subset)}|{t}"
    return None


def _axiom_ii_witness(x: Cube, adj: CubeAdjugate) -> Optional[str]:
    for subset in x.index.subsets():
        for a, b in permutations(sorted(subset), 2):
            left = x.boundary(subset, b) @ adj.star(subset, a)
            right = adj.star(subset - {b}, a) @ x.boundary(subset - {a}, b)
            if not left.same_map(right):
                return f"d^{b} d^{a}* differs at {subset_key(subset)}"
    return None


def is_regular(x: Cube, adj: CubeAdjugate, limits: Optional[Limits] = None) -> Tuple[bool, Optional[str]]:
    """
    Whether the scalars form an ``x_T``-sequence for every ``T``.

    Raises:
        LimitExceededError: Past ``Limits.regularity_labels`` labels
    """
    limits = resolve(limits)
    if x.index.size > limits.regularity_labels:
        raise LimitExceededError(
            f"Regularity checks are capped at {limits.regularity_labels} labels"
        )
    scalars = adj.scalar_list(x.labels)
    for subset in x.index.subsets():
        report = sequence_check(scalars, x.vertex(subset), SequenceMode.X_SEQUENCE)
        if not report.is_sequence:
            return False, f"not an x_T-sequence at T={subset_key(subset)!r}: {report.witness}"
    return True, None


def verify_adjugate(x: Cube, adj: CubeAdjugate, regular: bool = False,
                    limits: Optional[Limits] = None) -> AdjugateReport:
    """
    Check the two adjugate axioms, and regularity when asked.

    Both orders of every pair are tested in the second axiom.

    Example:
        >>> z = RingDescriptor.integers()
        >>> x, adj = typical_adjugate([2, 3], [5, 7], FPModule.free(z, 1))
        >>> verify_adjugate(x, adj).valid
        True
    """
    x.require_valid()
    check_shape(x, adj)
    witness_i = _axiom_i_witness(x, adj)
    witness_ii = _axiom_ii_witness(x, adj)
    witness = witness_i or witness_ii
    regular_flag = None
    if regular:
        regular_flag, regular_witness = is_regular(x, adj, limits)
        witness = witness or regular_witness
    valid = witness_i is None and witness_ii is None and regular_flag is not False
    logger.debug("Adjugate verification: %s", witness or "valid")
    return AdjugateReport(valid, witness_i is None, witness_ii is None, regular_flag, witness)


# Constructions


def typical_adjugate(fs: Sequence[RingElement], gs: Sequence[RingElement], x: FPModule,
                     labels: Optional[Sequence[str]] = None) -> Tuple[Cube, CubeAdjugate]:
    """``Typ(f; x)`` with reverse maps ``g_t`` and scalars ``h_t = f_t g_t``."""
    if len(fs) != len(gs):
        raise ValidationError("fs and gs must have the same length")
    names = tuple(labels) if labels is not None else default_labels(len(fs))
    cube = typical_cube(fs, x, names)
    ring = x.ring
    g = dict(zip(names, (ring.element(v) for v in gs)))
    f = dict(zip(names, (ring.element(v) for v in fs)))
    scalars = {t: ring.mul(f[t], g[t]) for t in cube.labels}
    stars = {(subset, t): ModuleMorphism.scalar(x, g[t])
             for subset, t, _ in cube.arrow_items()}
    return cube, CubeAdjugate(scalars, stars)


def cofactor_adjugate(x: Cube) -> CubeAdjugate:
    """
    The adjugate built from matrix adjugates of the boundaries.

    ``a_s`` is the lcm of the determinants of the ``s``-boundaries over the
    integers and the rationals, and their product elsewhere; each reverse
    map is ``(a_s / det) * adj``.

    Raises:
        AdjugateError: On non-free vertices, unequal ranks, non-square or
            singular boundaries
    """
    ring = x.ring
    ranks = set()
    for subset in x.index.subsets():
        vertex = x.vertex(subset)
        if not vertex.is_free:
            raise AdjugateError(f"Vertex {subset_key(subset)!r} is not free")
        ranks.add(vertex.gens)
    if len(ranks) > 1:
        raise AdjugateError(f"Vertices have different ranks: {sorted(ranks)}")
    dets: Dict[StarKey, RingElement] = {}
    for subset, t, d in x.arrow_items():
        if not d.matrix.is_square:
            raise AdjugateError(f"Boundary {subset_key(subset)}|{t} is not square")
        value = determinant(d.matrix)
        if value == 0:
            raise AdjugateError(f"Boundary {subset_key(subset)}|{t} has zero determinant")
        dets[(subset, t)] = value
    use_lcm = ring.kind in (RingKind.INTEGERS, RingKind.RATIONALS)
    scalars: Dict[str, RingElement] = {}
    multipliers: Dict[StarKey, RingElement] = {}
    for s in x.labels:
        keys = [k for k in dets if k[1] == s]
        if use_lcm:
            a = ring.one
            for k in keys:
                a = ring.gcd_lcm(a, dets[k])[1]
            for k in keys:
                multipliers[k] = ring.exact_div(a, dets[k])
        else:
            a = ring.product(dets[k] for k in keys)
            for k in keys:
                multipliers[k] = ring.product(dets[j] for j in keys if j != k)
        scalars[s] = a
    stars = {}
    for subset, t, d in x.arrow_items():
        matrix = adjugate(d.matrix).scaled(multipliers[(subset, t)])
        stars[(subset, t)] = ModuleMorphism(d.target, d.source, matrix)
    return CubeAdjugate(scalars, stars)


@dataclass(frozen=True)
class InducedAdjugate:
    """``f'`` and ``phi'`` from the pullback of ``f`` along ``phi``, and ``f'*``."""

    f_prime: ModuleMorphism
    phi_prime: ModuleMorphism
    f_prime_star: ModuleMorphism


def _require_pair(f: ModuleMorphism, f_star: ModuleMorphism, a: RingElement) -> None:
    if f_star.source != f.target or f_star.target != f.source:
        raise AdjugateError("f* must reverse f")
    if not (f_star @ f).same_map(ModuleMorphism.scalar(f.source, a)):
        raise AdjugateError("f* f is not multiplication by a")
    if not (f @ f_star).same_map(ModuleMorphism.scalar(f.target, a)):
        raise AdjugateError("f f* is not multiplication by a")


def induced_adjugate(f: ModuleMorphism, f_star: ModuleMorphism, a: RingElement,
                     phi: ModuleMorphism) -> InducedAdjugate:
    """
    The adjugate of ``f'`` induced from ``f*`` along ``phi``.

    Args:
        f: A map ``x -> y``
        f_star: Its adjugate ``y -> x`` with scalar ``a``
        a: The scalar
        phi: A map ``y' -> y``

    Returns:
        The pulled-back ``f': x' -> y'``, ``phi': x' -> x`` and the unique
        ``f'*`` with ``phi' f'* = f* phi`` and ``f' f'* = a``

    Raises:
        AdjugateError: If ``(f*, a)`` is not an adjugate of ``f``
    """
    a = f.ring.element(a)
    _require_pair(f, f_star, a)
    p = pullback(f, phi)
    try:
        star = p.mediate(f_star @ phi, ModuleMorphism.scalar(phi.source, a))
    except IllDefinedMorphismError as e:
        raise AdjugateError(f"Induced adjugate does not exist: {e}")
    return InducedAdjugate(p.to_source_g, p.to_source_f, star)


def fib_adjugate(fx: Mapping[str, ModuleMorphism], stars: Mapping[str, ModuleMorphism],
                 scalars: Mapping[str, RingElement]) -> Tuple[FibCube, CubeAdjugate]:
    """
    Equip ``Fib(fx)`` of a family of monos with an adjugate.

    Singleton reverse maps are the given ones; larger ones are the induced
    adjugates along the Cartesian squares of the fiber-product cube.
    """
    fib = fib_of_family(fx)
    x = fib.cube
    ring = x.ring
    for s in x.labels:
        _require_pair(fx[s], stars[s], ring.element(scalars[s]))
    result: Dict[StarKey, ModuleMorphism] = {}
    for subset in x.index.subsets():
        for t in sorted(subset):
            if len(subset) == 1:
                result[(subset, t)] = stars[t]
                continue
            s = min(subset - {t})
            d_s = x.boundary(subset, s)
            d_t = x.boundary(subset, t)
            top = direct_sum(ring, [d_s.target, d_t.target])
            stacked = ModuleMorphism(d_s.source, top,
                                     vstack(ring, d_s.source.gens, [d_s.matrix, d_t.matrix]))
            first = result[(subset - {s}, t)] @ x.boundary(subset - {t}, s)
            second = ModuleMorphism.scalar(d_t.target, ring.element(scalars[t]))
            wanted = ModuleMorphism(d_t.target, top, vstack(
                ring, d_t.target.gens, [first.matrix, second.matrix]))
            try:
                result[(subset, t)] = lift_through_mono(stacked, wanted)
            except IllDefinedMorphismError as e:
                raise AdjugateError(f"Cannot lift the adjugate at {subset_key(subset)}|{t}: {e}")
    adj = CubeAdjugate({s: ring.element(scalars[s]) for s in x.labels}, result)
    return fib, adj


# Cocubes, duals and patching families


def adjugate_cocube(x: Cube, adj: CubeAdjugate) -> CoCube:
    """``x*``: vertices of ``x`` with the reverse maps as coboundaries."""
    check_shape(x, adj)
    return CoCube(x.index, dict(x.vertices), dict(adj.stars))


def dual_adjugate(x: Cube, adj: CubeAdjugate) -> Tuple[Cube, CubeAdjugate]:
    """
    The cube ``dual(x*)`` with its dual adjugate: same scalars, the
    boundaries of ``x`` as reverse maps.
    """
    y = dual(adjugate_cocube(x, adj))
    assert isinstance(y, Cube)
    full = x.index.full
    stars = {(subset, t): x.boundary((full - subset) | {t}, t)
             for subset in x.index.subsets() for t in sorted(subset)}
    return y, CubeAdjugate(dict(adj.scalars), stars)


def restrict_adjugate(adj: CubeAdjugate, upper: Subset, fixed: Subset = EMPTY) -> CubeAdjugate:
    """``A|_U^V``: scalars on ``U`` and the reverse maps ``d^{t*}_{V+T}``."""
    upper, fixed = frozenset(upper), frozenset(fixed)
    if upper & fixed:
        raise ValidationError("Restriction sets must be disjoint")
    index = CubeIndex(tuple(sorted(upper)))
    stars = {(subset, t): adj.star(subset | fixed, t)
             for subset in index.subsets() for t in sorted(subset)}
    return CubeAdjugate({u: adj.scalars[u] for u in upper}, stars)


def family_cube(x: Cube, adj: CubeAdjugate, t_set: Subset) -> Cube:
    """
    ``x^{A,T}``: vertex ``U`` is ``x_{U sym T}``; direction ``u`` uses the
    boundary of ``x`` outside ``T`` and the reverse map inside it.
    """
    t_set = x.index.check_subset(t_set)

    def boundary(u_set: Subset, u: str) -> ModuleMorphism:
        moved = u_set ^ t_set
        if u in t_set:
            return adj.star(moved | {u}, u)
        return x.boundary(moved, u)

    return build_cube(x.index, lambda u_set: x.vertex(u_set ^ t_set), boundary)


def family_adjugate(x: Cube, adj: CubeAdjugate, t_set: Subset) -> CubeAdjugate:
    """The adjugate ``A^T`` of ``x^{A,T}``."""
    stars = {}
    for u_set in x.index.subsets():
        moved = u_set ^ t_set
        for u in sorted(u_set):
            if u in t_set:
                stars[(u_set, u)] = x.boundary(moved | {u}, u)
            else:
                stars[(u_set, u)] = adj.star(moved, u)
    return CubeAdjugate(dict(adj.scalars), stars)


@dataclass(frozen=True)
class AdjugatePatching:
    """The patching family of an adjugate, its double cube and the identity checks."""

    family: Dict[Subset, Cube]
    double: Optional[DoubleCube]
    identities: Dict[str, bool] = field(default_factory=dict)


def restriction_compatible(x: Cube, adj: CubeAdjugate) -> bool:
    """
    ``x^{A,T}|_U^V == (x|_U^V)^{A|_U^V, T & U}`` whenever ``T`` lies in ``U``.

    When ``V`` lies in ``T`` and ``V = S - U`` the fixed labels cancel against
    ``T``, so the right side is taken with ``V`` empty.
    """
    index = x.index
    full = index.full
    for upper in index.subsets():
        for fixed in index.subsets_of(full - upper):
            for t_set in index.subsets():
                if t_set <= upper:
                    inner = fixed
                elif fixed <= t_set and fixed == full - upper:
                    inner = EMPTY
                else:
                    continue
                restricted = x.restrict(upper, inner)
                restricted_adj = restrict_adjugate(adj, upper, inner)
                left = family_cube(x, adj, t_set).restrict(upper, fixed)
                right = family_cube(restricted, restricted_adj, t_set & upper)
                if left != right:
                    logger.debug("Restriction mismatch U=%s V=%s T=%s",
                                 subset_key(upper), subset_key(fixed), subset_key(t_set))
                    return False
    return True


def two_pullback_check(x: Cube, adj: CubeAdjugate) -> bool:
    """
    ``2^*`` of the double cube patched from the dual adjugate is ``Typ(a; x_S)``:
    equal vertices, maps equal modulo relations.
    """
    y, dual_adj = dual_adjugate(x, adj)
    double = patch({t: family_cube(y, dual_adj, t) for t in x.index.subsets()})
    pulled = pullback_two(double)
    expected = typical_cube({s: adj.scalars[s] for s in x.labels}, x.vertex(x.index.full))
    for subset in x.index.subsets():
        if pulled.vertex(subset) != expected.vertex(subset):
            return False
    return all(d.same_map(expected.boundary(subset, t))
               for subset, t, d in pulled.arrow_items())


def patching_family_of(x: Cube, adj: CubeAdjugate, double: bool = True) -> AdjugatePatching:
    """
    Build ``{x^{A,T}}`` and, for at most three labels, its patched double cube.

    Raises:
        ValidationError: If ``x`` is not monic
        AdjugateError: If ``adj`` is not an adjugate of ``x``
    """
    report = verify_adjugate(x, adj)
    if not report.valid:
        raise AdjugateError(f"Adjugate verification failed: {report.witness}")
    if not x.is_monic():
        raise ValidationError("Patching families need a monic cube")
    family = {t: family_cube(x, adj, t) for t in x.index.subsets()}
    patched = None
    if double and x.index.size <= resolve(None).max_double_labels:
        patched = patch(family)
    y, dual_adj = dual_adjugate(x, adj)
    back = dual(adjugate_cocube(y, dual_adj))
    identities = {
        "empty_is_x": family[EMPTY] == x,
        "full_is_dual": family[x.index.full] == y,
        "dual_involution": back == x,
        "restriction": restriction_compatible(x, adj),
        "cocube_commutes": adjugate_cocube(x, adj).validate().valid,
    }
    if patched is not None:
        identities["two_pullback_typical"] = two_pullback_check(x, adj)
    return AdjugatePatching(family, patched, identities)


# Main theorem


@dataclass(frozen=True)
class MainTheoremReport:
    adjugate_valid: bool
    regular: bool
    monic: bool
    admissible: Dict[str, bool] = field(default_factory=dict)
    witness: Optional[str] = None

    @property
    def implication_ok(self) -> bool:
        """A regular adjugate forces a monic cube and admissible ``x^{A,T}``."""
        if not (self.adjugate_valid and self.regular):
            return True
        return self.monic and all(self.admissible.values())


def main_theorem_check(x: Cube, adj: CubeAdjugate,
                       limits: Optional[Limits] = None) -> MainTheoremReport:
    """
    Evaluate the statement "a regular adjugate makes every ``x^{A,T}`` admissible".

    Example:
        >>> z = RingDescriptor.integers()
        >>> x, adj = typical_adjugate([2, 3], [5, 7], FPModule.free(z, 1))
        >>> main_theorem_check(x, adj).implication_ok
        True
    """
    report = verify_adjugate(x, adj, regular=True, limits=limits)
    monic = x.is_monic()
    admissible: Dict[str, bool] = {}
    if report.axiom_i and report.axiom_ii and monic:
        for t_set in x.index.subsets():
            admissible[subset_key(t_set)] = is_admissible(family_cube(x, adj, t_set)).admissible
    result = MainTheoremReport(
        adjugate_valid=report.axiom_i and report.axiom_ii,
        regular=bool(report.regular),
        monic=monic,
        admissible=admissible,
        witness=report.witness,
    )
    logger.info("Main theorem check: regular=%s monic=%s admissible=%s",
                result.regular, monic, admissible)
    return result


@dataclass(frozen=True)
class CorollaryReport:
    fs: Tuple[RingElement, ...]
    gs: Tuple[RingElement, ...]
    hs: Tuple[RingElement, ...]
    h_sequence: bool
    f_nonunits: bool
    f_sequence: bool

    @property
    def hypotheses(self) -> bool:
        return self.h_sequence and self.f_nonunits

    @property
    def implication_ok(self) -> bool:
        return not self.hypotheses or self.f_sequence


def corollary_check(fs: Sequence[RingElement], gs: Sequence[RingElement],
                    ring: RingDescriptor) -> CorollaryReport:
    """
    If ``h_s = f_s g_s`` is an ``A``-sequence and no ``f_s`` is a unit, then
    ``f`` is an ``A``-sequence.
    """
    f = tuple(ring.element(v) for v in fs)
    g = tuple(ring.element(v) for v in gs)
    if len(f) != len(g):
        raise ValidationError("fs and gs must have the same length")
    h = tuple(ring.mul(a, b) for a, b in zip(f, g))
    free = FPModule.free(ring, 1)
    return CorollaryReport(
        fs=f, gs=g, hs=h,
        h_sequence=sequence_check(h, free, SequenceMode.X_SEQUENCE).is_sequence,
        f_nonunits=not any(ring.is_unit(v) for v in f),
        f_sequence=sequence_check(f, free, SequenceMode.X_SEQUENCE).is_sequence,
    )


def search_cofactors(fs: Sequence[RingElement], candidates: Sequence[RingElement],
                     ring: RingDescriptor) -> Optional[CorollaryReport]:
    """
    The first ``g`` drawn from ``candidates`` making ``h = f g`` an ``A``-sequence,
    or None when no sampled ``g`` satisfies the hypotheses.
    """
    for gs in product(candidates, repeat=len(fs)):
        report = corollary_check(fs, gs, ring)
        if report.h_sequence:
            return report
    return None
