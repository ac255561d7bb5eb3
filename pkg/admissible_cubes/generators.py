"""
Seeded instance recipes for the self-test suites and the tests.

Every recipe takes a ``random.Random`` so that a master seed reproduces the
whole corpus.
"""

import logging
import random
from typing import Dict, List, Optional, Sequence, Tuple

from .adjugates import CubeAdjugate, patching_family_of, typical_adjugate
from .complexes import ChainComplex, direct_sum_complex
from .cubes import (
    Cube,
    build_cube,
    default_labels,
    fib_of_family,
    koszul_complex,
    total_complex,
    typical_cube,
)
from .doublecubes import DoubleCube
from .exceptions import CubeAlgebraError
from .lattices import ElementFamily, TableLattice, subgroup_lattice
from .linalg import Matrix, determinant
from .modules import FPModule, ModuleMorphism, Subobject
from .rings import RingDescriptor, RingElement

logger = logging.getLogger(__name__)

INTEGERS = RingDescriptor.integers()

RING_CHOICES = ("ZZ", "QQ", "GF(5)", "GF(7)", "Z/12", "Z/8")


def random_ring(rng: random.Random) -> RingDescriptor:
    return RingDescriptor.parse(rng.choice(RING_CHOICES))


def random_element(rng: random.Random, ring: RingDescriptor, bound: int = 9) -> RingElement:
    return ring.element(rng.randint(-bound, bound))


def random_matrix(rng: random.Random, ring: RingDescriptor, rows: int, cols: int,
                  bound: int = 9) -> Matrix:
    return Matrix(ring, rows, cols,
                  tuple(random_element(rng, ring, bound) for _ in range(rows * cols)))


def random_nonunits(rng: random.Random, n: int, bound: int = 30,
                    zero: bool = False) -> List[int]:
    """Integers with ``2 <= |f| <= bound``, occasionally 0 when ``zero`` is set."""
    values = []
    for _ in range(n):
        if zero and rng.random() < 0.05:
            values.append(0)
        else:
            values.append(rng.choice((-1, 1)) * rng.randint(2, bound))
    return values


def coprime_sequence(rng: random.Random, n: int, bound: int = 30) -> List[int]:
    """Pairwise coprime non-units, hence an integer sequence in every order."""
    primes = [p for p in range(2, bound + 1) if all(p % q for q in range(2, p))]
    chosen = rng.sample(primes, n)
    result = []
    for p in chosen:
        power = p
        while power * p <= bound and rng.random() < 0.3:
            power *= p
        result.append(power * rng.choice((-1, 1)))
    return result


def integer_family(rng: random.Random, n: int, bound: int = 30) -> List[int]:
    """Half coprime sequences, half arbitrary non-units."""
    if rng.random() < 0.5:
        return coprime_sequence(rng, n, bound)
    return random_nonunits(rng, n, bound, zero=True)


# Subgroups and cubes


def random_subgroup(rng: random.Random, ambient: FPModule, gens: int = 1,
                    bound: int = 3) -> Subobject:
    matrix = random_matrix(rng, ambient.ring, ambient.gens, gens, bound)
    return Subobject.of(ambient, matrix)


def subgroup_family(rng: random.Random, rank: int, labels: Sequence[str],
                    bound: int = 3) -> Tuple[FPModule, Dict[str, Subobject]]:
    """Nonzero subgroups of ``Z^rank``, one per label."""
    ambient = FPModule.free(INTEGERS, rank)
    members = {}
    for label in labels:
        sub = random_subgroup(rng, ambient, rng.randint(1, rank), bound)
        while sub.is_zero:
            sub = random_subgroup(rng, ambient, rng.randint(1, rank), bound)
        members[label] = sub
    return ambient, members


def monic_cube(rng: random.Random, size: int, rank: int = 2) -> Cube:
    """``Fib`` of a random subgroup family: always monic, often not admissible."""
    _, members = subgroup_family(rng, rank, default_labels(size))
    maps = {s: m.to_module().structure_map for s, m in members.items()}
    return fib_of_family(maps).cube


def typical_integer_cube(rng: random.Random, size: int) -> Cube:
    return typical_cube(integer_family(rng, size), FPModule.free(INTEGERS, 1))


def non_monic_cube(rng: random.Random, size: int) -> Cube:
    """A typical cube with a zero scalar, or over a ring with zero divisors."""
    if rng.random() < 0.5:
        fs = random_nonunits(rng, size)
        fs[rng.randrange(size)] = 0
        return typical_cube(fs, FPModule.free(INTEGERS, 1))
    ring = RingDescriptor.integers_mod(12)
    fs = [rng.choice((2, 3, 4, 6)) for _ in range(size)]
    return typical_cube(fs, FPModule.free(ring, 1))


def cube_corpus(rng: random.Random, count: int, max_labels: int = 3) -> List[Cube]:
    """Admissible, monic non-admissible and non-monic cubes in turn."""
    cubes = []
    for i in range(count):
        size = rng.randint(1, max_labels)
        kind = i % 3
        if kind == 0:
            cubes.append(typical_integer_cube(rng, size))
        elif kind == 1:
            cubes.append(monic_cube(rng, size))
        else:
            cubes.append(non_monic_cube(rng, size))
    return cubes


# Adjugates


def typical_pair(rng: random.Random, size: int,
                 regular: bool = True) -> Tuple[Cube, CubeAdjugate]:
    """A typical integer cube with scalar reverse maps; ``h = f g`` coprime when ``regular``."""
    if regular:
        hs = coprime_sequence(rng, size)
        fs, gs = [], []
        for h in hs:
            divisors = [d for d in range(1, abs(h) + 1) if h % d == 0]
            f = rng.choice(divisors[1:]) * (1 if h > 0 else -1)
            fs.append(f)
            gs.append(h // f)
    else:
        fs = random_nonunits(rng, size)
        gs = random_nonunits(rng, size)
    return typical_adjugate(fs, gs, FPModule.free(INTEGERS, 1))


def _matrix_cube(labels: Sequence[str], rank: int, boundaries: Dict[str, Matrix]) -> Cube:
    vertex = FPModule.free(INTEGERS, rank)
    return build_cube(labels, lambda s: vertex,
                      lambda s, t: ModuleMorphism(vertex, vertex, boundaries[t]))


def diagonal_cube(rng: random.Random, size: int, rank: int) -> Cube:
    """Commuting nonsingular diagonal boundaries, one per direction."""
    labels = default_labels(size)
    boundaries = {}
    for t in labels:
        values = [INTEGERS.element(v) for v in random_nonunits(rng, rank, bound=12)]
        boundaries[t] = Matrix.diagonal(INTEGERS, values)
    return _matrix_cube(labels, rank, boundaries)


def polynomial_cube(rng: random.Random, size: int, rank: int) -> Optional[Cube]:
    """Boundaries ``c_0 + c_1 M`` in one random matrix ``M``, so they commute."""
    labels = default_labels(size)
    m = random_matrix(rng, INTEGERS, rank, rank, bound=3)
    identity = Matrix.identity(INTEGERS, rank)
    boundaries = {}
    for t in labels:
        c0, c1 = rng.randint(-5, 5), rng.randint(1, 3)
        d = identity.scaled(c0) + m.scaled(c1)
        if determinant(d) == 0:
            return None
        boundaries[t] = d
    return _matrix_cube(labels, rank, boundaries)


def cofactor_cube(rng: random.Random, size: int, rank: int) -> Cube:
    if rng.random() < 0.5:
        cube = polynomial_cube(rng, size, rank)
        if cube is not None:
            return cube
    return diagonal_cube(rng, size, rank)


def patched_double(rng: random.Random, size: int,
                   regular: bool = True) -> Optional[Tuple[Cube, CubeAdjugate, DoubleCube]]:
    """The patched double cube of a typical adjugate; None when ``x`` is not monic."""
    x, adj = typical_pair(rng, size, regular)
    try:
        patching = patching_family_of(x, adj)
    except CubeAlgebraError as e:
        logger.debug("Skipping patched double cube: %s", e)
        return None
    if patching.double is None:
        return None
    return x, adj, patching.double


# Complexes


def scale_mutation(rng: random.Random, complex_: ChainComplex) -> ChainComplex:
    """
    Scale one row of the lowest boundary or one column of the highest by a
    random factor; ``d d = 0`` survives either change.
    """
    if not complex_.boundaries:
        return complex_
    factor = INTEGERS.element(rng.choice((0, 2, 3, -1)))
    boundaries = list(complex_.boundaries)
    if rng.random() < 0.5:
        d = boundaries[0]
        rows = d.matrix.to_rows()
        if not rows:
            return complex_
        i = rng.randrange(len(rows))
        rows[i] = [complex_.ring.mul(factor, v) for v in rows[i]]
        boundaries[0] = ModuleMorphism(d.source, d.target,
                                       Matrix.from_rows(complex_.ring, rows, d.matrix.cols))
    else:
        d = boundaries[-1]
        if d.matrix.cols == 0:
            return complex_
        j = rng.randrange(d.matrix.cols)
        rows = [[complex_.ring.mul(factor, v) if c == j else v for c, v in enumerate(row)]
                for row in d.matrix.to_rows()]
        boundaries[-1] = ModuleMorphism(d.source, d.target,
                                        Matrix.from_rows(complex_.ring, rows, d.matrix.cols))
    return ChainComplex(complex_.ring, complex_.lo, complex_.modules, tuple(boundaries))


def be_corpus(rng: random.Random, count: int) -> List[ChainComplex]:
    """Koszul complexes, totals of cofactor cubes, direct sums and mutants."""
    one = FPModule.free(INTEGERS, 1)
    corpus: List[ChainComplex] = []
    while len(corpus) < count:
        roll = len(corpus) % 4
        if roll == 0:
            corpus.append(koszul_complex(integer_family(rng, rng.randint(1, 3)), one))
        elif roll == 1:
            corpus.append(total_complex(cofactor_cube(rng, rng.randint(1, 2), rng.randint(1, 2))))
        elif roll == 2:
            left = koszul_complex(integer_family(rng, 2), one)
            right = koszul_complex(integer_family(rng, 2), one)
            corpus.append(direct_sum_complex(left, right))
        else:
            base = koszul_complex(integer_family(rng, rng.randint(2, 3)), one)
            corpus.append(scale_mutation(rng, base))
    return corpus


# Lattices


SMALL_GROUPS = ((2, 4), (4, 4), (2, 2, 2), (2, 6), (3, 9), (8,), (12,))


def modular_lattice(rng: random.Random) -> TableLattice:
    """A modular lattice of at most 24 elements."""
    roll = rng.randrange(5)
    if roll == 0:
        invariants = rng.choice(SMALL_GROUPS)
        return subgroup_lattice(FPModule.from_invariants(INTEGERS, list(invariants))).table
    if roll == 1:
        return TableLattice.chain(rng.randint(2, 6))
    if roll == 2:
        return TableLattice.product(TableLattice.chain(rng.randint(2, 4)),
                                    TableLattice.chain(rng.randint(2, 4)))
    if roll == 3:
        return TableLattice.diamond()
    return TableLattice.divisors(rng.choice((12, 24, 30, 36, 60, 72)))


def random_family(rng: random.Random, lattice: TableLattice, size: int) -> ElementFamily:
    labels = default_labels(size)
    return ElementFamily(lattice, {s: rng.randrange(lattice.size) for s in labels})


def random_upper(rng: random.Random, family: ElementFamily) -> ElementFamily:
    """A family ``a`` with ``a_s >= b_s``."""
    lattice = family.lattice
    members = {}
    for s, b in family.members.items():
        above = [e for e in lattice.elements() if lattice.leq(b, e)]
        members[s] = rng.choice(above)
    return ElementFamily(lattice, members)


def small_integer_pairs(rng: random.Random, size: int,
                        bound: int = 12) -> Tuple[List[int], List[int]]:
    """``(f, g)`` with non-unit ``f`` and nonzero ``g``."""
    fs = random_nonunits(rng, size, bound)
    gs = [rng.choice((-1, 1)) * rng.randint(1, bound) for _ in range(size)]
    return fs, gs

