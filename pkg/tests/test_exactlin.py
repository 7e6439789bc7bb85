import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lienil.exactlin import (
    Matrix,
    Subspace,
    det,
    inverse,
    kernel,
    member,
    pivot_columns,
    random_unimodular,
    rank,
    rref,
    vector,
)

F = Fraction


def det_by_permutation_expansion(m: Matrix) -> Fraction:
    # Independent oracle: Leibniz formula, fine for d <= 4.
    n = m.rows
    total = F(0)
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = F(1)
        for i in range(n):
            prod *= m.entries[i][perm[i]]
        total += sign * prod
    return total


small_entries = st.integers(min_value=-6, max_value=6)


@st.composite
def small_matrix(draw, max_dim=5):
    r = draw(st.integers(min_value=1, max_value=max_dim))
    c = draw(st.integers(min_value=1, max_value=max_dim))
    rows = draw(
        st.lists(
            st.lists(small_entries, min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
    return Matrix.from_rows(rows)


class TestRref:
    def test_identity_is_fixed(self):
        m = Matrix.identity(4)
        assert rref(m) == m

    def test_dependent_rows_collapse(self):
        # By hand: [[2,4],[1,2]] has row space spanned by (1,2).
        m = Matrix.from_rows([[2, 4], [1, 2]])
        assert rref(m) == Matrix.from_rows([[1, 2]])

    def test_zero_matrix_drops_all_rows(self):
        m = Matrix.zeros(3, 3)
        red = rref(m)
        assert red.rows == 0 and red.cols == 3

    def test_hand_reduced_3x3(self):
        # Worked by hand: rows (1,2,3), (2,4,7), (1,2,4).
        # (2,4,7)-2(1,2,3)=(0,0,1); (1,2,4)-(1,2,3)=(0,0,1); clear above.
        m = Matrix.from_rows([[1, 2, 3], [2, 4, 7], [1, 2, 4]])
        assert rref(m) == Matrix.from_rows([[1, 2, 0], [0, 0, 1]])

    def test_rational_pivot_normalization(self):
        m = Matrix.from_rows([[F(2, 3), F(4, 3)]])
        assert rref(m) == Matrix.from_rows([[1, 2]])

    @settings(max_examples=60, deadline=None)
    @given(small_matrix())
    def test_idempotent(self, m):
        assert rref(rref(m)) == rref(m)

    @settings(max_examples=60, deadline=None)
    @given(small_matrix(max_dim=4), st.integers(min_value=0, max_value=10**6))
    def test_canonical_under_row_operations(self, m, seed):
        # Left-multiplying by an invertible matrix preserves the row
        # space, so the canonical form must not change.
        u = random_unimodular(m.rows, seed)
        assert rref(u @ m) == rref(m)

    @settings(max_examples=60, deadline=None)
    @given(small_matrix())
    def test_pivot_structure(self, m):
        red = rref(m)
        piv = []
        for row in red.entries:
            p = next(j for j, x in enumerate(row) if x != 0)
            assert row[p] == 1
            piv.append(p)
        assert piv == sorted(piv) and len(set(piv)) == len(piv)
        for p, owner in zip(piv, range(red.rows)):
            for i in range(red.rows):
                if i != owner:
                    assert red.entries[i][p] == 0


class TestRankKernel:
    def test_rank_examples(self):
        assert rank(Matrix.identity(5)) == 5
        assert rank(Matrix.zeros(2, 4)) == 0
        assert rank(Matrix.from_rows([[1, 2], [2, 4], [3, 6]])) == 1

    def test_kernel_of_identity_is_zero(self):
        assert kernel(Matrix.identity(3)) == Subspace.zero(3)

    def test_kernel_single_relation(self):
        # x + y = 0 has kernel spanned by (1, -1).
        k = kernel(Matrix.from_rows([[1, 1]]))
        assert k == Subspace.from_vectors([[1, -1]], 2)

    def test_kernel_of_zero_map_is_full(self):
        assert kernel(Matrix.zeros(2, 3)) == Subspace.full(3)

    @settings(max_examples=60, deadline=None)
    @given(small_matrix())
    def test_rank_nullity(self, m):
        assert rank(m) + kernel(m).dim == m.cols

    @settings(max_examples=60, deadline=None)
    @given(small_matrix())
    def test_kernel_vectors_annihilate(self, m):
        k = kernel(m)
        for basis_row in k.basis.entries:
            assert all(x == 0 for x in m.apply(basis_row))


class TestSubspace:
    def test_membership(self):
        s = Subspace.from_vectors([[1, 0, 1], [0, 1, 1]], 3)
        assert s.contains([2, 3, 5])
        assert not s.contains([0, 0, 1])
        assert member(s, [1, 1, 2])

    def test_membership_dimension_mismatch(self):
        s = Subspace.full(3)
        with pytest.raises(ValueError):
            s.contains([1, 2])

    def test_equality_is_canonical(self):
        a = Subspace.from_vectors([[1, 1], [1, -1]], 2)
        b = Subspace.full(2)
        assert a == b

    def test_nested_pivots(self):
        inner = Subspace.from_vectors([[0, 1, 2]], 3)
        outer = Subspace.from_vectors([[0, 1, 2], [1, 0, 0]], 3)
        assert set(inner.pivots()) <= set(outer.pivots())

    @settings(max_examples=40, deadline=None)
    @given(small_matrix(max_dim=4))
    def test_row_space_membership(self, m):
        s = Subspace(m.cols, rref(m))
        for row in m.entries:
            assert s.contains(row)


class TestDetInverse:
    def test_det_against_permutation_expansion(self):
        mats = [
            Matrix.from_rows([[2]]),
            Matrix.from_rows([[1, 2], [3, 4]]),
            Matrix.from_rows([[0, 1, 2], [1, 0, 3], [4, -3, 8]]),
            Matrix.from_rows([[1, 0, 2, -1], [3, 0, 0, 5], [2, 1, 4, -3], [1, 0, 5, 0]]),
        ]
        for m in mats:
            assert det(m) == det_by_permutation_expansion(m)

    def test_singular(self):
        assert det(Matrix.from_rows([[1, 2], [2, 4]])) == 0
        with pytest.raises(ValueError):
            inverse(Matrix.from_rows([[1, 2], [2, 4]]))

    @settings(max_examples=40, deadline=None)
    @given(st.integers(min_value=1, max_value=5), st.integers(min_value=0, max_value=10**6))
    def test_inverse_roundtrip(self, d, seed):
        m = random_unimodular(d, seed)
        assert m @ inverse(m) == Matrix.identity(d)


class TestRandomUnimodular:
    def test_dimension_one(self):
        m = random_unimodular(1, 3)
        assert m.entries[0][0] in (F(1), F(-1))

    def test_deterministic(self):
        assert random_unimodular(6, 42) == random_unimodular(6, 42)
        assert random_unimodular(6, 42) != random_unimodular(6, 43)

    def test_rejects_nonpositive_dimension(self):
        with pytest.raises(ValueError):
            random_unimodular(0, 1)
        with pytest.raises(ValueError):
            random_unimodular(-2, 1)

    def test_integer_entries(self):
        m = random_unimodular(8, 7)
        assert m.is_integer()

    @settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=1, max_value=8), st.integers(min_value=0, max_value=10**9))
    def test_determinant_is_unit(self, d, seed):
        m = random_unimodular(d, seed)
        assert det(m) in (F(1), F(-1))

    def test_determinant_small_cases_vs_oracle(self):
        for d in (2, 3, 4):
            for seed in range(6):
                m = random_unimodular(d, seed)
                assert det_by_permutation_expansion(m) in (F(1), F(-1))


class TestGuards:
    def test_float_rejected(self):
        with pytest.raises(TypeError):
            vector([1.5, 2])
        with pytest.raises(TypeError):
            Matrix.from_rows([[0.1]])

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            Matrix.from_rows([[1, 2], [1]])
        with pytest.raises(ValueError):
            Matrix.identity(2) @ Matrix.identity(3)

    def test_pivot_columns_helper(self):
        m = Matrix.from_rows([[0, 2, 1], [0, 4, 3]])
        assert pivot_columns(m) == (1, 2)
