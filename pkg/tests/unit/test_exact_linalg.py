"""Unit tests for exact linear algebra over GF(p)."""

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from supermagic.lib.exact_linalg import (
    AmbientDimensionError,
    FieldError,
    LinearAlgebraError,
    PrimeField,
    RowReducer,
    Subspace,
    is_prime,
    kernel_basis,
    rank,
    rref,
    solve,
    span,
    spin,
)

PRIMES = st.sampled_from([3, 5, 7, 11, 101])


@st.composite
def matrices(draw, max_rows=7, max_cols=7):
    p = draw(PRIMES)
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    entries = draw(st.lists(st.integers(0, p - 1), min_size=rows * cols, max_size=rows * cols))
    return PrimeField(p), np.asarray(entries, dtype=np.int64).reshape(rows, cols)


class TestPrimeField:
    """Test PrimeField arithmetic."""

    def test_rejects_even_and_composite(self):
        """2, 9 and 1 are not admissible moduli."""
        for p in (1, 2, 9, 15):
            with pytest.raises(FieldError):
                PrimeField(p)

    def test_is_prime(self):
        """is_prime agrees on small numbers."""
        assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]

    def test_half_and_inverse(self):
        """2 * half is 1 and inverses multiply to 1."""
        f = PrimeField(7)
        assert (2 * f.half) % 7 == 1
        assert all((a * f.inv(a)) % 7 == 1 for a in range(1, 7))

    def test_inverse_of_zero(self):
        """0 has no inverse."""
        with pytest.raises(ZeroDivisionError):
            PrimeField(3).inv(0)

    def test_reduce_negative_and_float(self):
        """reduce maps negatives and float results to residues."""
        f = PrimeField(5)
        assert f.reduce([-1, -6, 7]).tolist() == [4, 4, 2]
        assert f.reduce(np.array([4.0, 5.0])).tolist() == [4, 0]

    @given(matrices(), st.integers(0, 2**31))
    @settings(max_examples=50, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
    def test_matmul_matches_object_arithmetic(self, field_and_matrix, seed):
        """The float-accelerated product agrees with Python integer arithmetic."""
        f, a = field_and_matrix
        b = f.random_matrix(np.random.default_rng(seed), (a.shape[1], 3))
        expected = np.mod(np.matmul(a.astype(object), b.astype(object)), f.p).astype(np.int64)
        assert np.array_equal(f.matmul(a, b), expected)

    def test_matmul_with_large_prime(self):
        """Products stay exact for a prime past the float bound."""
        p = 2**31 - 1
        f = PrimeField(p)
        a = np.full((4, 4), p - 1, dtype=np.int64)
        assert np.array_equal(f.matmul(a, a), np.full((4, 4), 4 % p))


class TestRowReduction:
    """Test rref, rank, kernels and solving."""

    def test_rref_of_known_matrix(self):
        """A rank-2 matrix over GF(3)."""
        f = PrimeField(3)
        m = [[1, 2, 0], [2, 1, 0], [0, 0, 1]]
        reduced, r = rref(m, f)
        assert r == 2
        assert reduced.tolist() == [[1, 2, 0], [0, 0, 1], [0, 0, 0]]

    @given(matrices())
    @settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
    def test_rank_nullity(self, field_and_matrix):
        """rank plus kernel dimension is the number of columns."""
        f, m = field_and_matrix
        K = kernel_basis(m, f)
        assert rank(m, f) + K.dim == m.shape[1]
        if K.dim:
            assert not np.any(f.matmul(m, K.basis.T))

    @given(matrices(), st.integers(0, 2**31))
    @settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
    def test_solve_consistent_system(self, field_and_matrix, seed):
        """A right-hand side built from a known solution is solved exactly."""
        f, a = field_and_matrix
        x0 = f.random_matrix(np.random.default_rng(seed), a.shape[1])
        b = f.matmul(a, x0)
        x = solve(a, b, f)
        assert x is not None
        assert np.array_equal(f.matmul(a, x), b)

    def test_solve_inconsistent(self):
        """x = 0 and x = 1 have no common solution."""
        f = PrimeField(5)
        assert solve([[1], [1]], [0, 1], f) is None

    def test_solve_shape_mismatch(self):
        """The right-hand side must match the row count."""
        with pytest.raises(AmbientDimensionError):
            solve([[1, 0]], [1, 2], PrimeField(3))

    def test_incremental_reducer_in_blocks(self):
        """Feeding rows one at a time gives the same basis as feeding them at once."""
        f = PrimeField(7)
        rows = f.random_matrix(np.random.default_rng(1), (12, 9))
        once = RowReducer(9, f)
        once.add(rows)
        stepwise = RowReducer(9, f)
        gained = sum(stepwise.add(row) for row in rows)
        assert gained == once.rank
        assert stepwise.pivots == once.pivots
        assert np.array_equal(stepwise.basis, once.basis)

    def test_reducer_rejects_wrong_width(self):
        """Rows must have ncols entries."""
        with pytest.raises(AmbientDimensionError):
            RowReducer(3, PrimeField(3)).add([1, 2])


class TestSubspace:
    """Test canonical subspaces and their lattice operations."""

    def test_canonical_equality(self):
        """Different spanning sets of one subspace are equal."""
        f = PrimeField(3)
        U = span([[1, 1, 0], [0, 1, 1]], 3, f)
        V = span([[1, 0, 2], [2, 2, 0], [1, 2, 1]], 3, f)
        assert U == V
        assert U.equal(V)

    def test_sum_and_intersection(self):
        """Two coordinate planes in GF(5)^3 meet in a line and span everything."""
        f = PrimeField(5)
        U = span([[1, 0, 0], [0, 1, 0]], 3, f)
        V = span([[0, 1, 0], [0, 0, 1]], 3, f)
        assert U.sum(V) == Subspace.full(3, f)
        meet = U.intersect(V)
        assert meet.dim == 1
        assert meet.contains([0, 3, 0])

    @given(matrices(max_cols=6), st.integers(0, 2**31))
    @settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
    def test_dimension_formula(self, field_and_matrix, seed):
        """dim(U+V) + dim(U∩V) = dim U + dim V."""
        f, m = field_and_matrix
        n = m.shape[1]
        U = Subspace.from_vectors(m, n, f)
        V = Subspace.from_vectors(f.random_matrix(np.random.default_rng(seed), (3, n)), n, f)
        assert U.sum(V).dim + U.intersect(V).dim == U.dim + V.dim
        assert U.intersect(V).is_subspace_of(U)

    def test_coordinates(self):
        """Coordinates recombine to the vector; outside vectors raise."""
        f = PrimeField(7)
        U = span([[1, 2, 3, 4], [0, 1, 1, 1]], 4, f)
        v = f.reduce(3 * U.basis[0] + 5 * U.basis[1])
        assert np.array_equal(f.matmul(U.coordinates(v), U.basis), v)
        with pytest.raises(LinearAlgebraError):
            U.coordinates([0, 0, 0, 1])

    def test_mixed_ambient_dimensions(self):
        """Sum of subspaces of different ambients is rejected."""
        f = PrimeField(3)
        with pytest.raises(AmbientDimensionError):
            Subspace.full(2, f).sum(Subspace.full(3, f))

    def test_mixed_fields(self):
        """Subspaces over different fields do not combine."""
        with pytest.raises(FieldError):
            Subspace.full(2, PrimeField(3)).intersect(Subspace.full(2, PrimeField(5)))

    def test_complement_indices(self):
        """Non-pivot coordinates complement the subspace."""
        U = span([[0, 1, 0, 0]], 4, PrimeField(3))
        assert U.complement_indices == (0, 2, 3)
        assert U.codim == 3

    def test_spin_cyclic_shift(self):
        """The orbit of e0 under a cyclic shift spans the whole space."""
        f = PrimeField(3)
        shift = np.roll(np.eye(4, dtype=np.int64), 1, axis=0)
        seed = span([[1, 0, 0, 0]], 4, f)
        assert spin(seed, shift[None]).dim == 4

    def test_spin_invariant_subspace(self):
        """A subspace stable under the generators does not grow."""
        f = PrimeField(5)
        diag = np.diag([1, 2, 3]).astype(np.int64)
        seed = span([[0, 1, 0]], 3, f)
        assert spin(seed, diag[None]) == seed
