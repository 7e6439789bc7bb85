"""Nilpotent Lie algebras given by exact structure constants.

The algebra is basis-agnostic: nothing in this module knows about
roots.  Structure constants are stored sparsely for pairs i < j; the
missing half is implied by antisymmetry.

The lower central series is computed through a generator-level series
that is then certified against the definition, which keeps the cost on
dense inputs near one matrix product per filtration level instead of
one per basis vector:

* N^2 is the row space of the given constant table.
* G lifts a basis of N / N^2 (standard basis vectors at non-pivot
  coordinates), and M_1 = span G, M_{i+1} = [M_i, G].
* In any Lie algebra N^i = M_i + N^{i+1}, so for nilpotent N the
  accumulated tails F_i = M_i + M_{i+1} + ... equal the series exactly.
* The result is certified by checking F_2 = N^2 and [u, e_j] in F_{l+1}
  for every level-l basis vector u and every j.  Both checks pass iff
  F is the true lower central series, so a failure (or a level that
  stalls, or survives past the dimension bound) proves the algebra is
  not nilpotent and raises NotNilpotentError.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _intkernel as ik
from .exactlin import Matrix, Subspace, inverse, kernel, vector

Constants = dict[tuple[int, int], tuple[tuple[int, Fraction], ...]]


class NotNilpotentError(Exception):
    """The given structure constants do not define a nilpotent algebra."""


def _clean_constants(dim: int, constants) -> Constants:
    clean: Constants = {}
    for (i, j), terms in constants.items():
        if not (0 <= i < j < dim):
            raise ValueError(f"bracket key ({i}, {j}) must satisfy 0 <= i < j < dim")
        seen = {}
        for k, val in terms:
            if not (0 <= k < dim):
                raise ValueError(f"bracket output index {k} out of range")
            if isinstance(val, float):
                raise TypeError("floating point input is not allowed; use Fraction or int")
            f = Fraction(val)
            if f:
                if k in seen:
                    raise ValueError(f"duplicate output index {k} in bracket ({i}, {j})")
                seen[k] = f
        if seen:
            clean[(i, j)] = tuple(sorted(seen.items()))
    return clean


@dataclass(frozen=True, eq=False)
class NilpotentAlgebra:
    """dim plus sparse antisymmetric structure constants c[i][j] -> k."""

    dim: int
    constants: Constants

    def __init__(self, dim: int, constants):
        if dim < 1:
            raise ValueError("dimension must be at least 1")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "constants", _clean_constants(dim, constants))
        object.__setattr__(self, "_cache", {})

    def __eq__(self, other):
        return (
            isinstance(other, NilpotentAlgebra)
            and self.dim == other.dim
            and self.constants == other.constants
        )

    def pair_terms(self, i: int, j: int) -> tuple[tuple[int, Fraction], ...]:
        """Terms of [e_i, e_j] for any i != j, antisymmetry applied."""
        if i < j:
            return self.constants.get((i, j), ())
        return tuple((k, -v) for k, v in self.constants.get((j, i), ()))

    def int_tensor(self) -> tuple[np.ndarray, int, int]:
        """Full antisymmetric tensor scaled to integers.

        Returns (T, scale, max_abs) with T[i, j, k] = scale * c[i][j][k].
        """
        cached = self._cache.get("tensor")
        if cached is not None:
            return cached
        n = self.dim
        scale = 1
        for terms in self.constants.values():
            for _, v in terms:
                scale = scale * v.denominator // math.gcd(scale, v.denominator)
        t = np.zeros((n, n, n), dtype=object)
        biggest = 0
        for (i, j), terms in self.constants.items():
            for k, v in terms:
                x = int(v * scale)
                t[i, j, k] = x
                t[j, i, k] = -x
                biggest = max(biggest, abs(x))
        out = (t, scale, biggest)
        self._cache["tensor"] = out
        return out


def bracket(a: NilpotentAlgebra, x, y) -> tuple[Fraction, ...]:
    """[x, y] in coordinates, for coordinate vectors x and y."""
    xv, yv = vector(x), vector(y)
    if len(xv) != a.dim or len(yv) != a.dim:
        raise ValueError("vector length does not match algebra dimension")
    out = [Fraction(0)] * a.dim
    sx = [i for i, v in enumerate(xv) if v]
    sy = [j for j, v in enumerate(yv) if v]
    if len(sx) * len(sy) <= 2 * len(a.constants) + 8:
        for i in sx:
            for j in sy:
                if i == j:
                    continue
                coef = xv[i] * yv[j]
                for k, v in a.pair_terms(i, j):
                    out[k] += coef * v
    else:
        for (i, j), terms in a.constants.items():
            coef = xv[i] * yv[j] - xv[j] * yv[i]
            if coef:
                for k, v in terms:
                    out[k] += coef * v
    return tuple(out)


@dataclass(frozen=True)
class Filtration:
    """Descending chain terms[0] = whole space, ..., terms[-1] = 0."""

    terms: tuple[Subspace, ...]

    @property
    def nilpotency_class(self) -> int:
        return len(self.terms) - 1

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(t.dim for t in self.terms)


def lower_central_series(a: NilpotentAlgebra) -> Filtration:
    """Canonical subspaces N = N^1 >= N^2 = [N, N] >= N^3 = [N^2, N] ...

    terms[i] is N^{i+1}; the last term is zero.  Raises
    NotNilpotentError when the series does not reach zero.

    A fast generator-level series is tried first and certified; when
    any certificate fails (possible for antisymmetric tables that are
    not Lie algebras) the definitional iteration decides instead, so
    the answer is exact for every input.
    """
    fast = _generator_series(a)
    if fast is not None:
        return fast
    return _definitional_series(a)


def _generator_series(a: NilpotentAlgebra) -> Filtration | None:
    """Certified fast path; None means fall back to the definition."""
    n = a.dim
    t, _, tmax = a.int_tensor()
    tflat = t.reshape(n, n * n)

    # N^2 straight from the constant rows.
    e2 = ik.ScaledRref(n)
    if a.constants:
        e2.insert_rows(np.stack([t[i, j] for (i, j) in a.constants]))
    if e2.dim == n:
        raise NotNilpotentError("derived subalgebra is the whole algebra")

    gen_idx = sorted(set(range(n)) - set(e2.pivots))
    # t_gen[b, g*n + c] = t[b, gen_idx[g], c], so u @ t_gen reshaped to
    # (rows * gens, n) lists the brackets [row, generator] batchwise.
    t_gen = t[:, gen_idx, :].reshape(n, len(gen_idx) * n)
    small = tmax < ik._INT64_SAFE
    t_gen64 = t_gen.astype(np.int64) if small else None
    tflat64 = tflat.astype(np.int64) if small else None

    # Generator-level series M_1 = span G, M_{i+1} = [M_i, G].  Always
    # M_i <= N^i, so levels surviving past the dimension bound prove
    # the true series cannot reach zero either.  Each level keeps some
    # spanning row set: the canonical one, or the raw bracket rows when
    # the canonical basis happens to have much larger entries (keeping
    # later products on the accelerated integer path).
    levels = [np.eye(n, dtype=object)[gen_idx]]
    dims = [len(gen_idx)]
    while dims[-1]:
        if len(levels) > n + 1:
            raise NotNilpotentError("lower central series does not terminate")
        u = levels[-1]
        prod = ik.exact_matmul(u, t_gen, ik.max_abs(u), tmax, b64=t_gen64, box=False)
        raw = prod.reshape(u.shape[0] * len(gen_idx), n)
        nxt = ik.rref_from_rows(raw, n)
        can = nxt.basis_matrix()
        fat = ik.max_abs(can)
        rows = raw if fat > 2**32 and ik.max_abs(raw) < fat else can
        levels.append(rows)
        dims.append(nxt.dim)
    levels.pop()  # drop the empty level

    # Accumulate F_i = M_i + M_{i+1} + ... from the deep end.
    acc = ik.ScaledRref(n)
    tail_rrefs: list[ik.ScaledRref] = []
    tail_subspaces: list[Subspace] = []
    for idx in range(len(levels) - 1, 0, -1):  # levels[idx] is M_{idx+1}
        tail_rrefs.append(acc.snapshot())
        if acc.insert_rows(levels[idx]) == 0:
            return None  # a level adds nothing: certification impossible
        tail_subspaces.append(acc.to_subspace())
    tail_rrefs.append(acc.snapshot())
    tail_rrefs.reverse()  # tail_rrefs[i] = F_{i+2}
    tail_subspaces.reverse()  # tail_subspaces[0] = F_2 as subspace

    # Certificate 1: F_2 = N^2.  Every accumulated row is a span of
    # brackets, so F_2 <= N^2 holds unconditionally and equal dimension
    # settles equality.
    if acc.dim != e2.dim:
        return None

    # Certificate 2: [M_l, N] inside F_{l+1} for every level l >= 2.
    # Level 1 needs no sweep: brackets of basis vectors are the
    # constant rows, all inside N^2 = F_2.  Both certificates together
    # force F_l = N^l for all l by a two-sided induction, so the
    # filtration below is the lower central series itself.
    for idx in range(1, len(levels)):
        u = levels[idx]  # M_{idx+1}, so the required tail is F_{idx+2}
        rows = ik.exact_matmul(u, tflat, ik.max_abs(u), tmax, b64=tflat64, box=False)
        if tail_rrefs[idx].residuals(rows.reshape(u.shape[0] * n, n)).any():
            return None

    terms = [Subspace.full(n)] + tail_subspaces + [Subspace.zero(n)]
    return Filtration(tuple(terms))


def _definitional_series(a: NilpotentAlgebra) -> Filtration:
    """N^{i+1} as the literal span of [basis(N^i), e_j] at every step."""
    n = a.dim
    t, _, tmax = a.int_tensor()
    tflat = t.reshape(n, n * n)
    tflat64 = tflat.astype(np.int64) if tmax < ik._INT64_SAFE else None
    terms = [Subspace.full(n)]
    cur = np.eye(n, dtype=object)
    while cur.shape[0]:
        if len(terms) > n + 1:
            raise NotNilpotentError("lower central series does not terminate")
        prod = ik.exact_matmul(cur, tflat, ik.max_abs(cur), tmax, b64=tflat64, box=False)
        nxt = ik.rref_from_rows(prod.reshape(cur.shape[0] * n, n), n)
        if nxt.dim == cur.shape[0]:
            raise NotNilpotentError("lower central series stalls before zero")
        terms.append(nxt.to_subspace())
        cur = nxt.basis_matrix()
    return Filtration(tuple(terms))


@dataclass(frozen=True, eq=False)
class GradedAlgebra:
    """Associated graded pieces of a filtration.

    pieces[i] holds coset representatives spanning a complement of
    terms[i+1] inside terms[i]: the rows of terms[i]'s canonical basis
    whose pivots are not pivots of terms[i+1].
    """

    algebra: NilpotentAlgebra
    filtration: Filtration
    pieces: tuple[Matrix, ...]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(p.rows for p in self.pieces)

    def piece(self, i: int) -> Matrix:
        """Coset representatives for gr^i (1-based degree)."""
        if i < 1:
            raise ValueError("graded degree starts at 1")
        if i > len(self.pieces):
            return Matrix((), 0, self.algebra.dim)
        return self.pieces[i - 1]


def graded(a: NilpotentAlgebra, filtration: Filtration | None = None) -> GradedAlgebra:
    f = filtration if filtration is not None else lower_central_series(a)
    pieces = []
    for i in range(f.nilpotency_class):
        cur, nxt = f.terms[i], f.terms[i + 1]
        nxt_pivots = set(nxt.pivots())
        rows = [row for row, p in zip(cur.basis.entries, cur.pivots()) if p not in nxt_pivots]
        if len(rows) != cur.dim - nxt.dim:
            raise AssertionError("filtration terms are not nested")
        pieces.append(Matrix(tuple(rows), len(rows), a.dim))
    return GradedAlgebra(a, f, tuple(pieces))


@dataclass(frozen=True)
class BilinearPairing:
    """Induced pairing gr^i x gr^j -> gr^{i+j} as an exact tensor.

    tensor[a][b] is the coordinate vector (length dim gr^{i+j}) of
    [u_a, v_b] against the degree-(i+j) coset representatives.
    """

    i: int
    j: int
    source_dims: tuple[int, int]
    target_dim: int
    tensor: tuple[tuple[tuple[Fraction, ...], ...], ...]


def _coords_against(reps: Matrix, tail: Subspace, w) -> tuple[Fraction, ...]:
    """Coordinates of w over the rows of reps, modulo the tail subspace.

    reps and tail.basis rows together form a basis of the filtration
    level containing w, and all their leading columns are distinct, so
    one forward-substitution pass in leading-column order solves the
    system exactly.  Tail coefficients are discarded.
    """
    wv = list(vector(w))
    tagged = [
        (next(c for c, x in enumerate(row) if x), r, row)
        for r, row in enumerate(reps.entries)
    ]
    tagged += [(p, -1, row) for p, row in zip(tail.pivots(), tail.basis.entries)]
    coords = [Fraction(0)] * reps.rows
    for p, r, row in sorted(tagged, key=lambda item: item[0]):
        if wv[p]:
            f = wv[p] / row[p]
            wv = [x - f * y for x, y in zip(wv, row)]
            if r >= 0:
                coords[r] = f
    if any(wv):
        raise AssertionError("bracket left the expected filtration level")
    return tuple(coords)


def graded_pairing(g: GradedAlgebra, i: int, j: int) -> BilinearPairing:
    """The pairing induced by the bracket on graded pieces i and j."""
    if i < 1 or j < 1:
        raise ValueError("graded degrees start at 1")
    a = g.algebra
    cls = g.filtration.nilpotency_class
    u = g.piece(i)
    v = g.piece(j)
    if i + j > cls:
        target = Matrix((), 0, a.dim)
        tail = Subspace.zero(a.dim)
    else:
        target = g.piece(i + j)
        tail = g.filtration.terms[i + j]  # terms[i+j] = N^{i+j+1}
    rows = []
    for x in u.entries:
        row = []
        for y in v.entries:
            w = bracket(a, x, y)
            row.append(_coords_against(target, tail, w))
        rows.append(tuple(row))
    return BilinearPairing(i, j, (u.rows, v.rows), target.rows, tuple(rows))


def right_kernel(p: BilinearPairing) -> Subspace:
    """{w in gr^j : pairing(u, w) = 0 for all u} as a canonical subspace."""
    du, dv = p.source_dims
    if du == 0 or p.target_dim == 0:
        return Subspace.full(dv)
    rows = []
    for a in range(du):
        for c in range(p.target_dim):
            rows.append([p.tensor[a][b][c] for b in range(dv)])
    return kernel(Matrix.from_rows(rows, cols=dv))


def left_kernel(p: BilinearPairing) -> Subspace:
    du, dv = p.source_dims
    if dv == 0 or p.target_dim == 0:
        return Subspace.full(du)
    rows = []
    for b in range(dv):
        for c in range(p.target_dim):
            rows.append([p.tensor[a][b][c] for a in range(du)])
    return kernel(Matrix.from_rows(rows, cols=du))


def change_basis(a: NilpotentAlgebra, m: Matrix) -> NilpotentAlgebra:
    """Structure constants in the basis whose i-th vector is row i of m
    expressed against the old basis."""
    n = a.dim
    if m.rows != n or m.cols != n:
        raise ValueError("change of basis matrix must be dim x dim")
    minv = inverse(m)  # raises ValueError when singular

    def scaled_int(mat: Matrix) -> tuple[np.ndarray, int]:
        s = 1
        for row in mat.entries:
            for x in row:
                s = s * x.denominator // math.gcd(s, x.denominator)
        arr = np.array([[int(x * s) for x in row] for row in mat.entries], dtype=object)
        return arr, s

    mi, ms = scaled_int(m)
    vi, vs = scaled_int(minv)
    t, cs, tmax = a.int_tensor()

    # D[a, b, k] = sum_c T[a, b, c] * Vi[c, k]
    d = ik.exact_matmul(t.reshape(n * n, n), vi, tmax, ik.max_abs(vi)).reshape(n, n, n)
    # X[a, j, k] = sum_b Mi[j, b] * D[a, b, k]
    mmax = ik.max_abs(mi)
    dmax = ik.max_abs(d.reshape(n * n, n))
    x = np.empty((n, n, n), dtype=object)
    for idx in range(n):
        x[idx] = ik.exact_matmul(mi, d[idx], mmax, dmax)
    # W[i, j, k] = sum_a Mi[i, a] * X[a, j, k]
    w = ik.exact_matmul(mi, x.reshape(n, n * n), mmax, ik.max_abs(x.reshape(n, n * n))).reshape(n, n, n)

    denom = cs * ms * ms * vs
    new: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
    nz = np.nonzero(w)
    for i, j, k in zip(*nz):
        if i < j:
            new.setdefault((int(i), int(j)), []).append((int(k), Fraction(int(w[i, j, k]), denom)))
    return NilpotentAlgebra(n, {key: tuple(vals) for key, vals in new.items()})
