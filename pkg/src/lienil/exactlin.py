"""Exact rational linear algebra on small dense matrices.

Everything here is built on ``fractions.Fraction``: no floats, no
tolerances.  Subspaces are represented by their reduced row echelon
basis, which is a canonical form, so two subspaces are equal iff their
``Subspace`` values are equal.  This module is deliberately simple; the
performance-sensitive integer kernels used on large algebras live in
``_intkernel``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floating point input is not allowed; use Fraction or int")
    return Fraction(x)


def vector(entries: Iterable) -> Vector:
    return tuple(_frac(x) for x in entries)


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix over the rationals, stored row-major."""

    entries: tuple[Vector, ...]
    rows: int
    cols: int

    @staticmethod
    def from_rows(rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        data = tuple(vector(r) for r in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("rows have inconsistent lengths")
        else:
            if cols is None:
                raise ValueError("empty matrix needs an explicit column count")
            width = cols
        if cols is not None and data and width != cols:
            raise ValueError("explicit column count does not match rows")
        return Matrix(data, len(data), width)

    @staticmethod
    def identity(n: int) -> "Matrix":
        one, zero = Fraction(1), Fraction(0)
        return Matrix(
            tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)),
            n,
            n,
        )

    @staticmethod
    def zeros(rows: int, cols: int) -> "Matrix":
        zero = Fraction(0)
        return Matrix(tuple(tuple(zero for _ in range(cols)) for _ in range(rows)), rows, cols)

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(
            tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)),
            self.cols,
            self.rows,
        )

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols_of_other = other.transpose().entries
        data = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols_of_other)
            for row in self.entries
        )
        return Matrix(data, self.rows, other.cols)

    def apply(self, v: Sequence) -> Vector:
        """Matrix-vector product self @ v."""
        w = vector(v)
        if len(w) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(a * b for a, b in zip(row, w)) for row in self.entries)

    def is_integer(self) -> bool:
        return all(x.denominator == 1 for row in self.entries for x in row)


def rref(m: Matrix) -> Matrix:
    """Canonical reduced row echelon form with zero rows dropped.

    Pivots are 1, pivot columns strictly increase, and all entries above
    and below a pivot are zero.  The result depends only on the row
    space of ``m``.
    """
    work = [list(r) for r in m.entries]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        pr = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        pv = work[r][c]
        work[r] = [x / pv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    data = tuple(tuple(row) for row in work[:r])
    return Matrix(data, r, m.cols)


def rank(m: Matrix) -> int:
    return rref(m).rows


def pivot_columns(m: Matrix) -> tuple[int, ...]:
    """Pivot columns of rref(m); ``m`` itself need not be reduced."""
    red = rref(m)
    piv = []
    for row in red.entries:
        piv.append(next(j for j, x in enumerate(row) if x != 0))
    return tuple(piv)


@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^n given by its canonical RREF basis."""

    ambient: int
    basis: Matrix

    @staticmethod
    def from_vectors(vectors: Sequence[Sequence], ambient: int) -> "Subspace":
        m = Matrix.from_rows(vectors, cols=ambient)
        if m.cols != ambient:
            raise ValueError("vector length does not match ambient dimension")
        return Subspace(ambient, rref(m))

    @staticmethod
    def zero(ambient: int) -> "Subspace":
        return Subspace(ambient, Matrix((), 0, ambient))

    @staticmethod
    def full(ambient: int) -> "Subspace":
        return Subspace(ambient, Matrix.identity(ambient))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def pivots(self) -> tuple[int, ...]:
        return tuple(
            next(j for j, x in enumerate(row) if x != 0) for row in self.basis.entries
        )

    def contains(self, v: Sequence) -> bool:
        w = list(vector(v))
        if len(w) != self.ambient:
            raise ValueError("vector length does not match ambient dimension")
        for row in self.basis.entries:
            p = next(j for j, x in enumerate(row) if x != 0)
            if w[p] != 0:
                f = w[p]
                w = [x - f * y for x, y in zip(w, row)]
        return all(x == 0 for x in w)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.basis.entries)


def member(s: Subspace, v: Sequence) -> bool:
    return s.contains(v)


def kernel(m: Matrix) -> Subspace:
    """Right null space {v : m @ v = 0} as a canonical subspace."""
    red = rref(m)
    piv = [next(j for j, x in enumerate(row) if x != 0) for row in red.entries]
    free = [j for j in range(m.cols) if j not in piv]
    vecs = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for row, p in zip(red.entries, piv):
            v[p] = -row[f]
        vecs.append(v)
    return Subspace.from_vectors(vecs, m.cols) if vecs else Subspace.zero(m.cols)


def det(m: Matrix) -> Fraction:
    if m.rows != m.cols:
        raise ValueError("determinant needs a square matrix")
    work = [list(r) for r in m.entries]
    n = m.rows
    result = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if work[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            work[c], work[pr] = work[pr], work[c]
            result = -result
        pv = work[c][c]
        result *= pv
        for i in range(c + 1, n):
            if work[i][c] != 0:
                f = work[i][c] / pv
                work[i] = [x - f * y for x, y in zip(work[i], work[c])]
    return result


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("inverse needs a square matrix")
    n = m.rows
    work = [list(r) + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
            for i, r in enumerate(m.entries)]
    for c in range(n):
        pr = next((i for i in range(c, n) if work[i][c] != 0), None)
        if pr is None:
            raise ValueError("matrix is singular")
        work[c], work[pr] = work[pr], work[c]
        pv = work[c][c]
        work[c] = [x / pv for x in work[c]]
        for i in range(n):
            if i != c and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[c])]
    return Matrix.from_rows([row[n:] for row in work])


def random_unimodular(d: int, seed: int, entry_bound: int = 2**10) -> Matrix:
    """Deterministic pseudorandom integer matrix with determinant +-1.

    Built from the identity by a bounded number of elementary row
    operations (swaps, negations, integer shears).  The inverse is
    maintained alongside, and a shear is skipped when it would push an
    entry of either matrix past ``entry_bound``: conjugating by the
    result then keeps all downstream exact arithmetic on small
    integers.
    """
    if d <= 0:
        raise ValueError("dimension must be positive")
    rng = random.Random(seed)
    work = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    inv = [row[:] for row in work]
    steps = 6 * d
    for _ in range(steps):
        op = rng.randrange(3)
        if op == 0 and d >= 2:
            i, j = rng.sample(range(d), 2)
            work[i], work[j] = work[j], work[i]
            for row in inv:
                row[i], row[j] = row[j], row[i]
        elif op == 1:
            i = rng.randrange(d)
            work[i] = [-x for x in work[i]]
            for row in inv:
                row[i] = -row[i]
        elif d >= 2:
            i, j = rng.sample(range(d), 2)
            c = rng.choice([-3, -2, -1, 1, 2, 3])
            candidate = [a + c * b for a, b in zip(work[i], work[j])]
            inv_candidate = [row[j] - c * row[i] for row in inv]
            if (
                max(abs(x) for x in candidate) <= entry_bound
                and max(abs(x) for x in inv_candidate) <= entry_bound
            ):
                work[i] = candidate
                for row, x in zip(inv, inv_candidate):
                    row[j] = x
    return Matrix.from_rows(work)
