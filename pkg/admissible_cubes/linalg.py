"""
Exact matrix algebra over the supported rings.

The engine behind every homology computation is :func:`smith_normal_form`.
Over the integers and over fields it runs a Euclidean elimination with the
smallest nonzero pivot; over Z/m it runs the integer algorithm on canonical
lifts and reduces the result.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import sympy

from .exceptions import RingMismatchError, ShapeError, ValidationError
from .rings import RingDescriptor, RingElement, RingKind

logger = logging.getLogger(__name__)

INTEGERS = RingDescriptor.integers()


@dataclass(frozen=True)
class Matrix:
    """
    Immutable dense matrix with canonical entries in ``ring``.

    Zero dimensions are legal: a ``0 x n`` or ``n x 0`` matrix describes the
    unique map to or from the zero module.
    """

    ring: RingDescriptor
    rows: int
    cols: int
    entries: Tuple[RingElement, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ShapeError(f"Invalid dimensions: {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError(
                f"Expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    # Constructors

    @classmethod
    def from_rows(cls, ring: RingDescriptor,
                  rows: Sequence[Sequence[Union[int, Fraction, str]]],
                  cols: Optional[int] = None) -> "Matrix":
        """
        Build a matrix from nested rows, converting every entry.

        Args:
            ring: Coefficient ring
            rows: Row lists
            cols: Column count; required when ``rows`` is empty

        Example:
            >>> Matrix.from_rows(RingDescriptor.integers(), [[4, 6]]).cols
            2
        """
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        entries: List[RingElement] = []
        for row in rows:
            if len(row) != width:
                raise ShapeError(f"Row of length {len(row)} in a matrix of width {width}")
            entries.extend(ring.element(value) for value in row)
        return cls(ring, len(rows), width, tuple(entries))

    @classmethod
    def from_columns(cls, ring: RingDescriptor,
                     columns: Sequence[Sequence[RingElement]], rows: int) -> "Matrix":
        """Build from canonical column vectors of length ``rows``."""
        for column in columns:
            if len(column) != rows:
                raise ShapeError(f"Column of length {len(column)}, expected {rows}")
        entries = tuple(columns[j][i] for i in range(rows) for j in range(len(columns)))
        return cls(ring, rows, len(columns), entries)

    @classmethod
    def _from_lists(cls, ring: RingDescriptor, rows: Sequence[Sequence[RingElement]],
                    cols: int) -> "Matrix":
        return cls(ring, len(rows), cols, tuple(v for row in rows for v in row))

    @classmethod
    def zeros(cls, ring: RingDescriptor, rows: int, cols: int) -> "Matrix":
        return cls(ring, rows, cols, (ring.zero,) * (rows * cols))

    @classmethod
    def identity(cls, ring: RingDescriptor, n: int) -> "Matrix":
        return cls.scalar(ring, n, ring.one)

    @classmethod
    def scalar(cls, ring: RingDescriptor, n: int, a: RingElement) -> "Matrix":
        return cls.diagonal(ring, [a] * n)

    @classmethod
    def diagonal(cls, ring: RingDescriptor, values: Sequence[RingElement],
                 rows: Optional[int] = None, cols: Optional[int] = None) -> "Matrix":
        r = len(values) if rows is None else rows
        c = len(values) if cols is None else cols
        if len(values) > min(r, c):
            raise ShapeError("Too many diagonal entries")
        data = [[ring.zero] * c for _ in range(r)]
        for i, value in enumerate(values):
            data[i][i] = ring.reduce(value)
        return cls._from_lists(ring, data, c)

    # Access

    def __getitem__(self, key: Tuple[int, int]) -> RingElement:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) outside a {self.rows}x{self.cols} matrix")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[RingElement, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Tuple[RingElement, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> List[List[RingElement]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> List[Tuple[RingElement, ...]]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v in self.entries)

    def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "Matrix":
        return Matrix._from_lists(
            self.ring,
            [[self[i, j] for j in col_indices] for i in row_indices],
            len(col_indices),
        )

    def take_rows(self, start: int, stop: int) -> "Matrix":
        return self.submatrix(range(start, stop), range(self.cols))

    def take_columns(self, start: int, stop: int) -> "Matrix":
        return self.submatrix(range(self.rows), range(start, stop))

    def transpose(self) -> "Matrix":
        return Matrix._from_lists(self.ring, self.columns(), self.rows)

    def lift(self) -> "Matrix":
        """Integer matrix of canonical representatives (residue rings only)."""
        if self.ring.kind is RingKind.RATIONALS:
            raise ValidationError("Rational matrices have no integer lift")
        return Matrix(INTEGERS, self.rows, self.cols, tuple(int(v) for v in self.entries))

    def reduce_to(self, ring: RingDescriptor) -> "Matrix":
        """Reduce an integer matrix into ``ring``."""
        return Matrix(ring, self.rows, self.cols,
                      tuple(ring.element(int(v)) for v in self.entries))

    # Arithmetic

    def _same_ring(self, other: "Matrix") -> None:
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} matrix combined with {other.ring} matrix")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._same_ring(other)
        if self.cols != other.rows:
            raise ShapeError(f"Cannot multiply {self.shape} by {other.shape}")
        ring = self.ring
        other_columns = other.columns()
        data = []
        for i in range(self.rows):
            row = self.row(i)
            data.append([
                ring.reduce(sum((a * b for a, b in zip(row, column) if a and b), ring.zero))
                for column in other_columns
            ])
        return Matrix._from_lists(ring, data, other.cols)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_ring(other)
        if self.shape != other.shape:
            raise ShapeError(f"Cannot add {self.shape} and {other.shape}")
        add = self.ring.add
        return Matrix(self.ring, self.rows, self.cols,
                      tuple(add(a, b) for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        neg = self.ring.neg
        return Matrix(self.ring, self.rows, self.cols, tuple(neg(a) for a in self.entries))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scaled(self, a: RingElement) -> "Matrix":
        mul = self.ring.mul
        return Matrix(self.ring, self.rows, self.cols,
                      tuple(mul(a, v) for v in self.entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(v) for v in self.row(i)) for i in range(self.rows))
        return f"Matrix[{self.ring}]({self.rows}x{self.cols}: {body})"


def hstack(ring: RingDescriptor, rows: int, blocks: Sequence[Matrix]) -> Matrix:
    """Concatenate blocks side by side; ``rows`` fixes the height of an empty stack."""
    for block in blocks:
        if block.rows != rows:
            raise ShapeError(f"Block with {block.rows} rows in a stack of height {rows}")
    data = [[v for block in blocks for v in block.row(i)] for i in range(rows)]
    return Matrix._from_lists(ring, data, sum(b.cols for b in blocks))


def vstack(ring: RingDescriptor, cols: int, blocks: Sequence[Matrix]) -> Matrix:
    for block in blocks:
        if block.cols != cols:
            raise ShapeError(f"Block with {block.cols} columns in a stack of width {cols}")
    data = [list(block.row(i)) for block in blocks for i in range(block.rows)]
    return Matrix._from_lists(ring, data, cols)


def block_diagonal(ring: RingDescriptor, blocks: Sequence[Matrix]) -> Matrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    data = [[ring.zero] * cols for _ in range(rows)]
    r0 = c0 = 0
    for block in blocks:
        for i in range(block.rows):
            data[r0 + i][c0:c0 + block.cols] = block.row(i)
        r0 += block.rows
        c0 += block.cols
    return Matrix._from_lists(ring, data, cols)


# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    """
    ``u @ a @ v == d`` with ``u``, ``v`` invertible and ``d`` diagonal.

    ``u_inv`` is the inverse of ``u``; it is carried along because changing
    generators of a presentation needs both directions.
    """

    u: Matrix
    d: Matrix
    v: Matrix
    u_inv: Matrix

    def __iter__(self) -> Iterator[Matrix]:
        return iter((self.u, self.d, self.v))

    @property
    def diagonal(self) -> Tuple[RingElement, ...]:
        return tuple(self.d[i, i] for i in range(min(self.d.rows, self.d.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for value in self.diagonal if value != 0)


class _Elimination:
    """Mutable working state for the Euclidean Smith reduction."""

    def __init__(self, ring: RingDescriptor, a: Matrix):
        self.ring = ring
        self.m = a.rows
        self.n = a.cols
        self.d = a.to_rows()
        self.u = Matrix.identity(ring, self.m).to_rows()
        self.ui = Matrix.identity(ring, self.m).to_rows()
        self.v = Matrix.identity(ring, self.n).to_rows()

    def row_add(self, target: int, source: int, factor: RingElement) -> None:
        # row_target += factor * row_source
        if factor == 0:
            return
        red = self.ring.reduce
        for mat in (self.d, self.u):
            rt, rs = mat[target], mat[source]
            for k in range(len(rt)):
                if rs[k]:
                    rt[k] = red(rt[k] + factor * rs[k])
        for row in self.ui:
            if row[target]:
                row[source] = red(row[source] - factor * row[target])

    def row_swap(self, i: int, j: int) -> None:
        if i == j:
            return
        for mat in (self.d, self.u):
            mat[i], mat[j] = mat[j], mat[i]
        for row in self.ui:
            row[i], row[j] = row[j], row[i]

    def row_scale(self, i: int, unit: RingElement) -> None:
        red = self.ring.reduce
        inverse = self.ring.inverse(unit)
        for mat in (self.d, self.u):
            mat[i] = [red(unit * x) for x in mat[i]]
        for row in self.ui:
            row[i] = red(row[i] * inverse)

    def col_add(self, target: int, source: int, factor: RingElement) -> None:
        if factor == 0:
            return
        red = self.ring.reduce
        for mat in (self.d, self.v):
            for row in mat:
                if row[source]:
                    row[target] = red(row[target] + factor * row[source])

    def col_swap(self, i: int, j: int) -> None:
        if i == j:
            return
        for mat in (self.d, self.v):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    def _smallest(self, cells: Sequence[Tuple[int, int]]) -> Optional[Tuple[int, int]]:
        best = None
        best_size = 0
        for i, j in cells:
            value = self.d[i][j]
            if value != 0:
                size = self.ring.size(value)
                if best is None or size < best_size:
                    best, best_size = (i, j), size
        return best

    def run(self) -> None:
        ring = self.ring
        d = self.d
        for t in range(min(self.m, self.n)):
            pivot = self._smallest(
                [(i, j) for i in range(t, self.m) for j in range(t, self.n)]
            )
            if pivot is None:
                break
            self.row_swap(t, pivot[0])
            self.col_swap(t, pivot[1])
            while True:
                for i in range(t + 1, self.m):
                    if d[i][t] != 0:
                        q, _ = ring.quotient_remainder(d[i][t], d[t][t])
                        self.row_add(i, t, ring.neg(q))
                for j in range(t + 1, self.n):
                    if d[t][j] != 0:
                        q, _ = ring.quotient_remainder(d[t][j], d[t][t])
                        self.col_add(j, t, ring.neg(q))
                remainder = self._smallest(
                    [(i, t) for i in range(t + 1, self.m)]
                    + [(t, j) for j in range(t + 1, self.n)]
                )
                if remainder is not None:
                    # a remainder smaller than the pivot becomes the new pivot
                    if remainder[1] == t:
                        self.row_swap(t, remainder[0])
                    else:
                        self.col_swap(t, remainder[1])
                    continue
                offender = next(
                    ((i, j) for i in range(t + 1, self.m) for j in range(t + 1, self.n)
                     if not ring.divides(d[t][t], d[i][j])),
                    None,
                )
                if offender is None:
                    break
                self.row_add(t, offender[0], ring.one)
            if ring.kind is RingKind.INTEGERS and d[t][t] < 0:
                self.row_scale(t, -1)
            elif ring.is_field and d[t][t] != ring.one:
                self.row_scale(t, ring.inverse(d[t][t]))

    def result(self) -> SmithForm:
        ring = self.ring
        return SmithForm(
            u=Matrix._from_lists(ring, self.u, self.m),
            d=Matrix._from_lists(ring, self.d, self.n),
            v=Matrix._from_lists(ring, self.v, self.n),
            u_inv=Matrix._from_lists(ring, self.ui, self.m),
        )


def _unit_cofactor(value: int, modulus: int) -> int:
    """A unit ``u`` of Z/m with ``value == u * gcd(value, m)`` modulo m."""
    g = math.gcd(value, modulus)
    step = modulus // g
    k = value // g
    for i in range(g):
        candidate = (k + i * step) % modulus
        if math.gcd(candidate, modulus) == 1:
            return candidate
    raise ValidationError(f"No unit cofactor for {value} modulo {modulus}")


def _residue_smith(a: Matrix) -> SmithForm:
    ring = a.ring
    integral = smith_normal_form(a.lift())
    work = _Elimination(ring, Matrix.zeros(ring, 0, 0))
    work.m, work.n = a.rows, a.cols
    work.d = integral.d.reduce_to(ring).to_rows()
    work.u = integral.u.reduce_to(ring).to_rows()
    work.ui = integral.u_inv.reduce_to(ring).to_rows()
    work.v = integral.v.reduce_to(ring).to_rows()
    for t in range(min(a.rows, a.cols)):
        value = int(work.d[t][t])
        if value and math.gcd(value, ring.modulus) != value:
            unit = _unit_cofactor(value, ring.modulus)
            work.row_scale(t, ring.inverse(unit))
    return work.result()


@lru_cache(maxsize=8192)
def smith_normal_form(a: Matrix) -> SmithForm:
    """
    Smith normal form ``U·A·V = D``.

    The diagonal satisfies ``d_1 | d_2 | ...``; entries are nonnegative over
    the integers, 0 or 1 over fields, and divisors of m over Z/m.

    Example:
        >>> ring = RingDescriptor.integers()
        >>> smith_normal_form(Matrix.from_rows(ring, [[2, 0], [0, 3]])).diagonal
        (1, 6)
    """
    if a.ring.kind is RingKind.INTEGERS_MOD:
        return _residue_smith(a)
    work = _Elimination(a.ring, a)
    work.run()
    return work.result()


def invariant_diagonal(a: Matrix) -> Tuple[RingElement, ...]:
    return smith_normal_form(a).diagonal


# Kernels and linear systems


@dataclass(frozen=True)
class LinearSolution:
    """Kernel generators and, when requested and possible, one particular solution."""

    kernel: Matrix
    solution: Optional[Matrix]

    @property
    def solvable(self) -> bool:
        return self.solution is not None


def _kernel_from_smith(a: Matrix, snf: SmithForm) -> Matrix:
    ring = a.ring
    diagonal = snf.diagonal
    rank = snf.rank
    columns = [snf.v.column(j) for j in range(rank, a.cols)]
    if ring.kind is RingKind.INTEGERS_MOD:
        for i in range(rank):
            g = int(diagonal[i])
            if g != 1:
                factor = ring.modulus // g
                columns.append(tuple(ring.mul(factor, x) for x in snf.v.column(i)))
    return Matrix.from_columns(ring, columns, a.cols)


def _solve_from_smith(a: Matrix, snf: SmithForm, b: Matrix) -> Optional[Matrix]:
    ring = a.ring
    c = snf.u @ b
    diagonal = snf.diagonal
    rank = snf.rank
    solutions = []
    for k in range(b.cols):
        y = [ring.zero] * a.cols
        for i in range(a.rows):
            value = c[i, k]
            if i < rank:
                if not ring.divides(diagonal[i], value):
                    return None
                y[i] = ring.exact_div(value, diagonal[i])
            elif value != 0:
                return None
        solutions.append(y)
    y_matrix = Matrix.from_columns(ring, solutions, a.cols)
    return snf.v @ y_matrix


def kernel_and_solve(a: Matrix, b: Optional[Matrix] = None) -> LinearSolution:
    """
    Generators of ``{x : A x = 0}`` and, if ``b`` is given, one ``x`` with ``A x = b``.

    An unsolvable system is reported as ``solution=None``.

    Example:
        >>> ring = RingDescriptor.integers()
        >>> result = kernel_and_solve(Matrix.from_rows(ring, [[4, 6]]),
        ...                           Matrix.from_rows(ring, [[2]]))
        >>> result.solvable
        True
    """
    if b is not None:
        a._same_ring(b)
        if b.rows != a.rows:
            raise ShapeError(f"Right-hand side has {b.rows} rows, expected {a.rows}")
    snf = smith_normal_form(a)
    solution = None if b is None else _solve_from_smith(a, snf, b)
    return LinearSolution(_kernel_from_smith(a, snf), solution)


def kernel(a: Matrix) -> Matrix:
    return _kernel_from_smith(a, smith_normal_form(a))


def solve(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """One solution of ``A x = b`` or ``None``."""
    return kernel_and_solve(a, b).solution


def in_column_span(a: Matrix, b: Matrix) -> bool:
    """Whether every column of ``b`` is a combination of columns of ``a``."""
    if b.cols == 0 or b.is_zero:
        return True
    if a.cols == 0:
        return False
    return solve(a, b) is not None


# Determinantal data


def _to_sympy(a: Matrix) -> sympy.Matrix:
    if a.ring.kind is RingKind.RATIONALS:
        values = [sympy.Rational(v.numerator, v.denominator) for v in a.entries]
    else:
        values = [sympy.Integer(int(v)) for v in a.entries]
    return sympy.Matrix(a.rows, a.cols, values)


def _from_sympy(ring: RingDescriptor, value: sympy.Expr) -> RingElement:
    rational = sympy.Rational(value)
    if ring.kind is RingKind.RATIONALS:
        return Fraction(int(rational.p), int(rational.q))
    return ring.element(int(rational))


def determinant(a: Matrix) -> RingElement:
    """Fraction-free (Bareiss) determinant; the empty matrix has determinant 1."""
    if not a.is_square:
        raise ShapeError(f"Determinant of a non-square {a.shape} matrix")
    if a.rows == 0:
        return a.ring.one
    if a.rows == 1:
        return a.entries[0]
    return _from_sympy(a.ring, _to_sympy(a).det(method="bareiss"))


def adjugate(a: Matrix) -> Matrix:
    """Classical adjugate: entry (i, j) is ``(-1)^(i+j) det A_{j,i}``."""
    if not a.is_square:
        raise ShapeError(f"Adjugate of a non-square {a.shape} matrix")
    if a.rows <= 1:
        return Matrix.identity(a.ring, a.rows)
    adj = _to_sympy(a).adjugate(method="bareiss")
    return Matrix(a.ring, a.rows, a.cols,
                  tuple(_from_sympy(a.ring, adj[i, j])
                        for i in range(a.rows) for j in range(a.cols)))


def minors(a: Matrix, t: int) -> Tuple[RingElement, ...]:
    """All ``t x t`` minors, row subsets outer and column subsets inner, both lexicographic."""
    if t < 1 or t > min(a.rows, a.cols):
        raise ValidationError(f"Invalid minor size t={t} for a {a.rows}x{a.cols} matrix")
    result = []
    for row_subset in combinations(range(a.rows), t):
        for col_subset in combinations(range(a.cols), t):
            result.append(determinant(a.submatrix(row_subset, col_subset)))
    return tuple(result)


def determinantal_divisor(a: Matrix, t: int) -> RingElement:
    """
    Canonical generator of the ideal of ``t``-minors.

    Computed as the product of the first ``t`` Smith invariants of an integer
    lift, which generates the same ideal as the minors themselves.
    """
    ring = a.ring
    if t < 0:
        raise ValidationError(f"Invalid minor size t={t}")
    if t == 0:
        return ring.one
    if t > min(a.rows, a.cols):
        return ring.zero
    if ring.kind is RingKind.INTEGERS_MOD:
        diagonal = smith_normal_form(a.lift()).diagonal
        return math.gcd(math.prod(diagonal[:t]), ring.modulus) % ring.modulus
    diagonal = smith_normal_form(a).diagonal
    return ring.normalize(ring.product(diagonal[:t]))


@dataclass(frozen=True)
class DeterminantalData:
    det: Optional[RingElement]
    minors: Tuple[RingElement, ...]
    adjugate: Optional[Matrix]


def determinantal_data(a: Matrix, t: Optional[int] = None) -> DeterminantalData:
    """Determinant and adjugate when square, plus all ``t``-minors when ``t`` is given."""
    det = determinant(a) if a.is_square else None
    adj = adjugate(a) if a.is_square else None
    listed = minors(a, t) if t is not None else ()
    return DeterminantalData(det, listed, adj)


# Canonical column spans


def _integer_row_echelon(rows: List[List[int]], width: int) -> List[List[int]]:
    rows = [list(r) for r in rows if any(r)]
    pivot_row = 0
    for c in range(width):
        if not any(rows[i][c] for i in range(pivot_row, len(rows))):
            continue
        while True:
            candidates = [i for i in range(pivot_row, len(rows)) if rows[i][c]]
            best = min(candidates, key=lambda i: abs(rows[i][c]))
            rows[pivot_row], rows[best] = rows[best], rows[pivot_row]
            pivot = rows[pivot_row]
            clean = True
            for i in range(pivot_row + 1, len(rows)):
                if rows[i][c]:
                    q = rows[i][c] // pivot[c]
                    rows[i] = [x - q * y for x, y in zip(rows[i], pivot)]
                    if rows[i][c]:
                        clean = False
            if clean:
                break
        if rows[pivot_row][c] < 0:
            rows[pivot_row] = [-x for x in rows[pivot_row]]
        pivot = rows[pivot_row]
        for i in range(pivot_row):
            q = rows[i][c] // pivot[c]
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], pivot)]
        pivot_row += 1
    return rows[:pivot_row]


def _field_row_echelon(ring: RingDescriptor, rows: List[List[RingElement]],
                       width: int) -> List[List[RingElement]]:
    rows = [list(r) for r in rows if any(v != 0 for v in r)]
    pivot_row = 0
    for c in range(width):
        found = next((i for i in range(pivot_row, len(rows)) if rows[i][c] != 0), None)
        if found is None:
            continue
        rows[pivot_row], rows[found] = rows[found], rows[pivot_row]
        inverse = ring.inverse(rows[pivot_row][c])
        rows[pivot_row] = [ring.mul(inverse, x) for x in rows[pivot_row]]
        pivot = rows[pivot_row]
        for i in range(len(rows)):
            if i != pivot_row and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(rows[i], pivot)]
        pivot_row += 1
    return rows[:pivot_row]


def column_span_form(a: Matrix) -> Matrix:
    """
    Canonical generators of the column span of ``a``.

    Over the integers this is the column Hermite form (positive pivots,
    reduced entries beside them); over fields the reduced column echelon
    form. Over Z/m the Hermite form is taken of the integer lattice
    ``lift(span) + m Z^n`` and then reduced, which is canonical as well.
    """
    ring = a.ring
    if ring.is_field:
        rows = _field_row_echelon(ring, a.transpose().to_rows(), a.rows)
        return Matrix.from_columns(ring, rows, a.rows)
    if ring.kind is RingKind.INTEGERS:
        rows = _integer_row_echelon(a.transpose().to_rows(), a.rows)
        return Matrix.from_columns(ring, rows, a.rows)
    lifted = [[int(v) for v in column] for column in a.columns()]
    lifted += [[ring.modulus if i == k else 0 for i in range(a.rows)] for k in range(a.rows)]
    reduced = []
    for row in _integer_row_echelon(lifted, a.rows):
        column = [x % ring.modulus for x in row]
        if any(column):
            reduced.append(column)
    return Matrix.from_columns(ring, reduced, a.rows)
