"""Unit tests for identity checks and homomorphism checks."""

import numpy as np
import pytest

from supermagic.lib.checks import (
    check_grading,
    check_inner_derivations,
    check_jordan_super,
    check_products_within,
    check_super_jacobi,
    dims_of,
    hom_check,
    resolve_jacobi_mode,
)
from supermagic.lib.config import make_config
from supermagic.lib.exact_linalg import Subspace
from supermagic.lib.jordan import make_K3
from supermagic.lib.supercore import DimensionMismatchError, GradedLinearMap, ParityError, SuperAlgebra, SuperSpace
from supermagic.types import AlgebraKind, CheckStatus, JacobiMode


def _lie(brackets, field, labels=("x", "y", "z")):
    """Antisymmetric algebra on even labels from {(i, j): {k: c}}."""
    n = len(labels)
    table = np.zeros((n, n, n), dtype=np.int64)
    for (i, j), image in brackets.items():
        for k, c in image.items():
            table[i, j, k] = c
            table[j, i, k] = -c
    return SuperAlgebra.from_table("L", SuperSpace.build(labels, [0] * n), table, field, AlgebraKind.LIE)


@pytest.fixture
def heisenberg(field3):
    return _lie({(0, 1): {2: 1}}, field3)


@pytest.fixture
def broken_lie(field3):
    """[x, y] = x, [y, z] = y, [x, z] = z, which is not a Lie algebra."""
    return _lie({(0, 1): {0: 1}, (1, 2): {1: 1}, (0, 2): {2: 1}}, field3)


class TestJacobi:
    """Test the super Jacobi check."""

    def test_exhaustive_pass(self, heisenberg, engine_config):
        """The Heisenberg algebra is Lie."""
        report = check_super_jacobi(heisenberg, JacobiMode.EXHAUSTIVE, config=engine_config)
        assert report.status == CheckStatus.PASS
        assert report.details["mode"] == "exhaustive"
        assert report.seed is None
        assert str(report.dims) == "3|0"

    def test_exhaustive_fail_carries_triple(self, broken_lie, engine_config):
        """A failing triple is reported by label."""
        report = check_super_jacobi(broken_lie, JacobiMode.EXHAUSTIVE, config=engine_config)
        assert report.status == CheckStatus.FAIL
        witness = report.witnesses[0]
        assert witness.kind == "jacobi-triple"
        assert sorted(witness.labels) == ["x", "y", "z"]

    def test_sampled(self, heisenberg, broken_lie, engine_config):
        """Sampling records its seed and sample count and still finds the broken triple."""
        report = check_super_jacobi(heisenberg, JacobiMode.SAMPLED, samples=200, seed=3, config=engine_config)
        assert report.status == CheckStatus.PASS
        assert report.details == {"mode": "sampled", "samples": 200}
        assert report.seed == 3
        broken = check_super_jacobi(broken_lie, JacobiMode.SAMPLED, samples=500, seed=3, config=engine_config)
        assert broken.status == CheckStatus.FAIL

    def test_symmetry_violation(self, field3, engine_config):
        """A non-antisymmetric bracket fails before any triple is examined."""
        table = np.zeros((1, 1, 1), dtype=np.int64)
        table[0, 0, 0] = 1
        A = SuperAlgebra.from_table("sq", SuperSpace.build(["a"], [0]), table, field3, AlgebraKind.LIE)
        assert check_super_jacobi(A, config=engine_config).status == CheckStatus.FAIL

    def test_mode_resolution(self, heisenberg):
        """AUTO is exhaustive up to the limit or when forced, sampled beyond."""
        assert resolve_jacobi_mode(heisenberg, JacobiMode.AUTO, make_config()) == JacobiMode.EXHAUSTIVE
        small_limit = make_config(jacobi_exhaustive_limit=2)
        assert resolve_jacobi_mode(heisenberg, JacobiMode.AUTO, small_limit) == JacobiMode.SAMPLED
        forced = make_config(jacobi_exhaustive_limit=2, force_exhaustive=True)
        assert resolve_jacobi_mode(heisenberg, JacobiMode.AUTO, forced) == JacobiMode.EXHAUSTIVE
        assert resolve_jacobi_mode(heisenberg, JacobiMode.SAMPLED, forced) == JacobiMode.SAMPLED


class TestJordan:
    """Test the Jordan superalgebra check."""

    def test_kaplansky(self, field3):
        """K3 is a Jordan superalgebra with derivation-valued [L_x, L_y]."""
        K3 = make_K3(field3)
        assert check_jordan_super(K3).status == CheckStatus.PASS
        assert check_inner_derivations(K3).status == CheckStatus.PASS
        assert dims_of(K3).odd == 2

    def test_commutative_non_jordan(self, field5):
        """a² = b, ab = ba = a is commutative but [L_b, L_a] ≠ 0."""
        table = np.zeros((2, 2, 2), dtype=np.int64)
        table[0, 0, 1] = 1
        table[0, 1, 0] = table[1, 0, 0] = 1
        A = SuperAlgebra.from_table("A", SuperSpace.build(["a", "b"], [0, 0]), table, field5, AlgebraKind.JORDAN)
        report = check_jordan_super(A)
        assert report.status == CheckStatus.FAIL
        assert report.witnesses[0].kind == "jordan-triple"
        assert check_inner_derivations(A).status == CheckStatus.FAIL


class TestHomCheck:
    """Test the homomorphism check."""

    def test_identity(self, field3):
        """The identity is a bijective homomorphism."""
        K3 = make_K3(field3)
        report = hom_check(GradedLinearMap.identity(K3.space, field3), K3, K3, require_bijective=True)
        assert report.status == CheckStatus.PASS
        assert report.details["bijective"] is True
        assert report.name == "hom:K3->K3"

    def test_zero_map_is_not_bijective(self, field3):
        """The zero map is multiplicative but fails the rank requirement."""
        K3 = make_K3(field3)
        zero = GradedLinearMap(K3.space, K3.space, np.zeros((3, 3), dtype=np.int64), field3)
        assert hom_check(zero, K3, K3).status == CheckStatus.PASS
        report = hom_check(zero, K3, K3, require_bijective=True, name="zero")
        assert report.status == CheckStatus.FAIL
        assert report.witnesses[-1].kind == "rank"
        assert report.name == "zero"

    def test_scaling_is_not_multiplicative(self, field3):
        """x -> 2x breaks e·e = e."""
        K3 = make_K3(field3)
        double = GradedLinearMap(K3.space, K3.space, 2 * np.eye(3, dtype=np.int64), field3)
        report = hom_check(double, K3, K3)
        assert report.status == CheckStatus.FAIL
        assert report.witnesses[0].labels == ["e", "e"]

    def test_modulo_subspace(self, heisenberg, field3):
        """Modulo the centre, doubling the Heisenberg algebra is a homomorphism."""
        double = GradedLinearMap(heisenberg.space, heisenberg.space, 2 * np.eye(3, dtype=np.int64), field3)
        center = Subspace.from_vectors([[0, 0, 1]], 3, field3)
        assert hom_check(double, heisenberg, heisenberg).status == CheckStatus.FAIL
        assert hom_check(double, heisenberg, heisenberg, mod_subspace=center).status == CheckStatus.PASS

    def test_rejects_odd_and_misshapen_maps(self, field3):
        """Homomorphisms are even maps between the right spaces."""
        K3 = make_K3(field3)
        swap = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]])
        odd = GradedLinearMap(K3.space, K3.space, swap, field3, parity=1)
        with pytest.raises(ParityError):
            hom_check(odd, K3, K3)
        small = SuperSpace.build(["e"], [0])
        with pytest.raises(DimensionMismatchError):
            hom_check(GradedLinearMap(small, small, np.eye(1, dtype=np.int64), field3), K3, K3)


class TestGradingAndClosure:
    """Test grading and product containment checks."""

    def test_parity_is_a_grading(self, field3):
        """The Z2-grading of K3 passes; a wrong degree assignment fails."""
        K3 = make_K3(field3)
        assert check_grading(K3, K3.parity, "grading:K3").status == CheckStatus.PASS
        assert check_grading(K3, np.array([1, 1, 1]), "grading:K3").status == CheckStatus.FAIL

    def test_products_within(self, heisenberg, field3):
        """[L, L] lies in the centre but not in zero."""
        full = Subspace.full(3, field3)
        center = Subspace.from_vectors([[0, 0, 1]], 3, field3)
        assert check_products_within(heisenberg, full, full, center, "c").status == CheckStatus.PASS
        report = check_products_within(heisenberg, full, full, Subspace.zero(3, field3), "c")
        assert report.status == CheckStatus.FAIL
        assert report.witnesses[0].kind == "closure"
