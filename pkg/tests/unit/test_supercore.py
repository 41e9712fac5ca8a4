"""Unit tests for superspaces, superalgebras and their substructures."""

import numpy as np
import pytest

from supermagic.lib.exact_linalg import span
from supermagic.lib.jordan import make_K3
from supermagic.lib.supercore import (
    BilinearForm,
    DegenerateFormError,
    DimensionMismatchError,
    GradedLinearMap,
    NotAnIdealError,
    ParityError,
    SuperAlgebra,
    SuperAlgebraError,
    SuperSpace,
    center,
    derived_subalgebra,
    direct_sum,
    graded_tensor,
    ideal_closure,
    left_mult_operator,
    projection,
    quotient,
    vector_parity,
)
from supermagic.types import AlgebraKind


@pytest.fixture
def heisenberg(field3):
    """[x, y] = z on an even three-dimensional space."""
    table = np.zeros((3, 3, 3), dtype=np.int64)
    table[0, 1, 2] = 1
    table[1, 0, 2] = -1
    space = SuperSpace.build(["x", "y", "z"], [0, 0, 0])
    return SuperAlgebra.from_table("heis", space, table, field3, AlgebraKind.LIE, strict=True)


@pytest.fixture
def K3(field3):
    return make_K3(field3)


class TestSuperSpace:
    """Test labelled superspaces."""

    def test_graded_dim(self):
        """Counts even and odd basis vectors."""
        V = SuperSpace.build(["a", "b", "c"], [0, 1, 1])
        assert V.graded_dim == (1, 2)
        assert V.is_normalized

    def test_even_first_permutation(self):
        """Evens keep their order ahead of the odds."""
        V = SuperSpace.build(["u", "a", "v", "b"], [1, 0, 1, 0])
        assert V.even_first_permutation() == (1, 3, 0, 2)
        assert V.permuted(V.even_first_permutation()).labels == ("a", "b", "u", "v")

    def test_invalid_spaces(self):
        """Mismatched lengths, repeated labels and bad bits are rejected."""
        with pytest.raises(DimensionMismatchError):
            SuperSpace.build(["a"], [0, 1])
        with pytest.raises(SuperAlgebraError):
            SuperSpace.build(["a", "a"], [0, 0])
        with pytest.raises(ParityError):
            SuperSpace.build(["a"], [2])

    def test_unknown_label(self):
        """index raises for a missing label."""
        with pytest.raises(SuperAlgebraError):
            SuperSpace.build(["a"], [0]).index("b")

    def test_vector_parity(self):
        """Homogeneous, zero and mixed vectors."""
        V = SuperSpace.build(["e", "x"], [0, 1])
        assert vector_parity(V, [0, 2]) == 1
        assert vector_parity(V, [0, 0]) == 0
        assert vector_parity(V, [1, 1]) is None


class TestSuperAlgebra:
    """Test construction and products."""

    def test_K3_products(self, K3):
        """xy = e = -yx and e acts by one half on the odd part."""
        f = K3.field
        e, x, y = (K3.basis_vector(i) for i in range(3))
        assert np.array_equal(K3.multiply(x, y), e)
        assert np.array_equal(K3.multiply(y, x), f.neg(e))
        assert np.array_equal(K3.multiply(e, x), f.reduce(f.half * x))
        assert K3.symmetry_defect() is None

    def test_parity_violation(self, field3):
        """An even product landing on an odd vector is rejected."""
        table = np.zeros((2, 2, 2), dtype=np.int64)
        table[0, 0, 1] = 1
        with pytest.raises(ParityError):
            SuperAlgebra.from_table("bad", SuperSpace.build(["e", "x"], [0, 1]), table, field3)

    def test_table_shape(self, field3):
        """The table must be n x n x n."""
        with pytest.raises(DimensionMismatchError):
            SuperAlgebra.from_table("bad", SuperSpace.build(["e"], [0]), np.zeros((2, 2, 2)), field3)

    def test_strict_symmetry(self, field3):
        """A noncommutative table cannot be declared Jordan."""
        table = np.zeros((2, 2, 2), dtype=np.int64)
        table[0, 1, 1] = 1
        with pytest.raises(SuperAlgebraError):
            SuperAlgebra.from_table(
                "bad", SuperSpace.build(["a", "b"], [0, 0]), table, field3, AlgebraKind.JORDAN, strict=True
            )

    def test_from_entries_accumulates(self, field3):
        """Repeated entries add up modulo p."""
        A = SuperAlgebra.from_entries("A", SuperSpace.build(["a"], [0]), [(0, 0, 0, 2), (0, 0, 0, 2)], field3)
        assert A.table[0, 0, 0] == 1
        with pytest.raises(DimensionMismatchError):
            SuperAlgebra.from_entries("A", SuperSpace.build(["a"], [0]), [(0, 0, 1, 1)], field3)

    def test_element_by_labels(self, K3):
        """element sums labelled coefficients."""
        assert K3.element({"x": 1, "y": 4}).tolist() == [0, 1, 1]

    def test_normalized_round_trip(self, field3):
        """Normalizing a mixed basis and permuting back recovers the algebra."""
        table = np.zeros((2, 2, 2), dtype=np.int64)
        table[1, 1, 1] = 1
        table[1, 0, 0] = table[0, 1, 0] = 1
        A = SuperAlgebra.from_table("A", SuperSpace.build(["x", "e"], [1, 0]), table, field3)
        B = A.normalized()
        assert B.labels == ("e", "x")
        assert B.permuted([1, 0]).structurally_equal(A)
        assert B.normalized() is B

    def test_bad_permutation(self, K3):
        """permuted requires a permutation."""
        with pytest.raises(DimensionMismatchError):
            K3.permuted([0, 0, 1])

    def test_left_multiplication_parity(self, K3):
        """Multiplication by an odd element is odd; by a mixed one it is not homogeneous."""
        assert left_mult_operator(K3, K3.element({"x": 1})).parity == 1
        assert left_mult_operator(K3, K3.element({"e": 1, "x": 1})).parity is None

    def test_vector_length(self, K3):
        """Vectors of the wrong length are rejected."""
        with pytest.raises(DimensionMismatchError):
            K3.multiply([1, 0], [1, 0, 0])


class TestForms:
    """Test bilinear forms and graded maps."""

    def test_K3_form(self, K3):
        """The K3 form is regular, even and supersymmetric."""
        form = K3.form
        assert form.is_regular()
        assert form.is_even(K3.space)
        assert form.is_supersymmetric(K3.space)
        assert form(K3.element({"x": 1}), K3.element({"y": 1})) == 1

    def test_degenerate_form(self, field3):
        """require_regular raises on a singular Gram matrix."""
        with pytest.raises(DegenerateFormError):
            BilinearForm(np.array([[1, 1], [1, 1]]), field3).require_regular()

    def test_map_parity_checked(self, field3):
        """An even map may not send an even vector to an odd one."""
        V = SuperSpace.build(["e", "x"], [0, 1])
        with pytest.raises(ParityError):
            GradedLinearMap(V, V, np.array([[0, 0], [1, 0]]), field3)
        odd = GradedLinearMap(V, V, np.array([[0, 1], [1, 0]]), field3, parity=1)
        assert odd.compose(odd).parity == 0
        assert odd.is_injective() and odd.is_surjective()


class TestSubstructures:
    """Test centres, derived algebras, ideals and quotients."""

    def test_heisenberg_center_and_derived(self, heisenberg):
        """Both the centre and the derived algebra are the line through z."""
        z_line = span([[0, 0, 1]], 3, heisenberg.field)
        assert center(heisenberg) == z_line
        assert derived_subalgebra(heisenberg) == z_line

    def test_K3_is_supercommutative(self, K3):
        """The graded centre of a Jordan superalgebra is everything."""
        assert center(K3).dim == 3
        assert derived_subalgebra(K3).dim == 3

    def test_ideal_closure(self, heisenberg):
        """The ideal generated by x contains z."""
        closure = ideal_closure(heisenberg, span([[1, 0, 0]], 3, heisenberg.field))
        assert closure.dim == 2
        assert closure.contains([0, 0, 1])

    def test_quotient_by_center(self, heisenberg):
        """Heisenberg modulo its centre is abelian of dimension 2."""
        Z = center(heisenberg)
        Q = quotient(heisenberg, Z)
        assert Q.graded_dim == (2, 0)
        assert not np.any(Q.table)
        pi = projection(heisenberg, Z, Q)
        assert pi.is_surjective()
        assert pi.rank == 2

    def test_quotient_rejects_non_ideal(self, heisenberg, K3):
        """A subspace that is not an ideal, or not graded, has no quotient."""
        with pytest.raises(NotAnIdealError):
            quotient(heisenberg, span([[1, 0, 0]], 3, heisenberg.field))
        with pytest.raises(NotAnIdealError):
            quotient(K3, span([[1, 1, 0]], 3, K3.field))

    def test_tensor_and_sum(self, K3):
        """K3 ⊗ K3 is a 5|4 Jordan superalgebra; K3 + K3 renames clashing labels."""
        T = graded_tensor(K3, K3)
        assert T.graded_dim == (5, 4)
        assert T.kind == AlgebraKind.JORDAN
        assert T.symmetry_defect() is None
        S = direct_sum(K3, K3)
        assert S.graded_dim == (2, 4)
        assert "K3.x" in S.labels
