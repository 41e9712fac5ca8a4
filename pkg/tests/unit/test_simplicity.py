"""Unit tests for the simplicity test."""

import numpy as np
import pytest

from supermagic.lib.composition import make_hurwitz, make_quaternion
from supermagic.lib.jordan import make_H3, make_K3, make_K9, make_str_pstr
from supermagic.lib.operators import derivations
from supermagic.lib.simplicity import check_simplicity, irreducible_polynomials, is_simple
from supermagic.lib.supercore import SuperAlgebra, SuperAlgebraError, SuperSpace, direct_sum, ideal_closure
from supermagic.types import AlgebraKind, CheckStatus, CompositionName, SimplicityVerdict


@pytest.fixture
def K3(field3):
    return make_K3(field3)


@pytest.fixture
def sl2(field3):
    """Derivations of the split quaternions."""
    return derivations(make_quaternion(field3).algebra).as_lie("sl2")


class TestIrreduciblePolynomials:
    """Test the polynomial pool."""

    def test_count_over_gf3(self, field3):
        """Three linear and three irreducible quadratic monic polynomials."""
        polys = irreducible_polynomials(field3)
        assert len([q for q in polys if len(q) == 2]) == 3
        assert len([q for q in polys if len(q) == 3]) == 3
        assert (1, 0, 1) in polys

    def test_linear_only(self, field5):
        """max_degree=1 keeps the p linear factors."""
        assert len(irreducible_polynomials(field5, max_degree=1)) == 5


class TestIsSimple:
    """Test simplicity verdicts."""

    def test_kaplansky_is_simple(self, K3, engine_config):
        """K3 has no proper graded ideal."""
        result = is_simple(K3, config=engine_config)
        assert result.verdict == SimplicityVerdict.SIMPLE
        assert result.ideal is None

    def test_sl2_is_simple(self, sl2, engine_config):
        """sl2 is simple in characteristic 3."""
        assert is_simple(sl2, config=engine_config).verdict == SimplicityVerdict.SIMPLE

    def test_direct_sum_has_an_ideal(self, K3, engine_config):
        """K3 + K3 is not simple and the witness is a proper ideal."""
        A = direct_sum(K3, K3)
        result = is_simple(A, config=engine_config)
        assert result.verdict == SimplicityVerdict.NOT_SIMPLE
        assert 0 < result.ideal.dim < A.dim
        assert ideal_closure(A, result.ideal) == result.ideal

    def test_zero_product(self, field3):
        """A*A = 0 is reported structurally."""
        A = SuperAlgebra.from_table("null", SuperSpace.build(["a", "b"], [0, 0]), np.zeros((2, 2, 2)), field3)
        result = is_simple(A)
        assert result.verdict == SimplicityVerdict.NOT_SIMPLE
        assert result.reason == "A*A = 0"

    def test_proper_derived_algebra(self, field3):
        """The Heisenberg algebra is caught by its centre."""
        table = np.zeros((3, 3, 3), dtype=np.int64)
        table[0, 1, 2] = 1
        table[1, 0, 2] = -1
        A = SuperAlgebra.from_table("heis", SuperSpace.build(["x", "y", "z"], [0] * 3), table, field3, AlgebraKind.LIE)
        result = is_simple(A)
        assert result.verdict == SimplicityVerdict.NOT_SIMPLE
        assert result.ideal.dim == 1
        assert result.reason == "centre is a proper ideal"

    def test_zero_algebra(self, field3):
        """The zero algebra has no verdict."""
        A = SuperAlgebra.from_table("0", SuperSpace.build([], []), np.zeros((0, 0, 0)), field3)
        with pytest.raises(SuperAlgebraError):
            is_simple(A)

    def test_no_attempts_is_inconclusive(self, K3):
        """Without attempts the test cannot certify anything."""
        result = is_simple(K3, attempts=0)
        assert result.verdict == SimplicityVerdict.INCONCLUSIVE

    def test_seeded_runs_agree(self, K3):
        """The same seed gives the same number of attempts."""
        assert is_simple(K3, seed=11).attempts == is_simple(K3, seed=11).attempts


class TestStructureAlgebraWitness:
    """The central line of str J."""

    def test_witness_is_identity_line(self, field3, engine_config):
        """str H3(k) is not simple and the witness is span{L_1} = k·I."""
        pair = make_str_pstr(make_H3(make_hurwitz(CompositionName.S1, field3)).J)
        result = is_simple(pair.str_algebra, config=engine_config)
        assert result.verdict == SimplicityVerdict.NOT_SIMPLE
        assert result.ideal.dim == 1
        assert result.ideal.equal(pair.center_line)

    def test_kac_structure_algebra_is_simple(self, field3, engine_config):
        """K9 has no unit, so str K9 has no central line."""
        pair = make_str_pstr(make_K9(field3))
        assert pair.center_line is None
        assert is_simple(pair.str_algebra, config=engine_config).verdict == SimplicityVerdict.SIMPLE


class TestCheckSimplicity:
    """Test the simplicity report."""

    def test_expected_verdict(self, K3, engine_config):
        """A matching verdict passes and records the seed."""
        report = check_simplicity(K3, config=engine_config)
        assert report.status == CheckStatus.PASS
        assert report.name == "simple:K3"
        assert report.seed == engine_config.seed
        assert report.details["verdict"] == "simple"

    def test_unexpected_verdict(self, K3, engine_config):
        """A mismatch fails with the ideal as witness."""
        A = direct_sum(K3, K3, "K3+K3")
        report = check_simplicity(A, SimplicityVerdict.SIMPLE, engine_config)
        assert report.status == CheckStatus.FAIL
        assert report.witnesses[0].kind == "ideal"
        assert 0 < report.details["ideal_dim"] < 6
        assert check_simplicity(A, SimplicityVerdict.NOT_SIMPLE, engine_config).status == CheckStatus.PASS
