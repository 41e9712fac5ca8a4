"""Unit tests for Hurwitz and symmetric composition (super)algebras."""

import numpy as np
import pytest

from supermagic.lib.composition import (
    CharacteristicError,
    CompositionError,
    SymmetricComposition,
    cayley_dickson,
    check_composition,
    check_symmetric,
    isotropic_vector,
    make_hurwitz,
    make_para_quaternion,
    make_quaternion,
    make_symmetric,
    para_hurwitz,
)
from supermagic.lib.supercore import BilinearForm, DegenerateFormError, SuperAlgebra
from supermagic.types import SQUARE_ORDER, CheckStatus, CompositionName

GRADED_DIMS = {
    CompositionName.S1: (1, 0),
    CompositionName.S2: (2, 0),
    CompositionName.S4: (4, 0),
    CompositionName.S8: (8, 0),
    CompositionName.S12: (1, 2),
    CompositionName.S42: (4, 2),
}


class TestHurwitz:
    """Test the split Hurwitz (super)algebras."""

    @pytest.mark.parametrize("name", SQUARE_ORDER)
    def test_graded_dims(self, name, field3):
        """Each algebra has its catalog dimension."""
        C = make_hurwitz(name, field3)
        assert C.algebra.graded_dim == GRADED_DIMS[name]

    @pytest.mark.parametrize("name", SQUARE_ORDER)
    def test_composition_axioms(self, name, field3, engine_config):
        """The norm is multiplicative on every Hurwitz algebra of the catalog."""
        report = check_composition(make_hurwitz(name, field3), engine_config)
        assert report.status == CheckStatus.PASS
        assert report.name == f"composition:{make_hurwitz(name, field3).name}"

    @pytest.mark.parametrize("name", [CompositionName.S12, CompositionName.S42])
    def test_superalgebras_need_characteristic_three(self, name, field5):
        """B(1,2) and B(4,2) do not exist over GF(5)."""
        with pytest.raises(CharacteristicError):
            make_hurwitz(name, field5)

    def test_even_algebras_exist_over_gf5(self, field5, engine_config5):
        """The even row of the square survives at p = 5."""
        for name in (CompositionName.S1, CompositionName.S2, CompositionName.S4, CompositionName.S8):
            assert check_composition(make_hurwitz(name, field5), engine_config5).status == CheckStatus.PASS

    def test_unknown_name(self, field3):
        """Only catalog names are accepted."""
        with pytest.raises(CompositionError):
            make_hurwitz("S3", field3)

    def test_involution(self, field3):
        """The standard involution fixes 1 and negates the traceless part."""
        Q = make_quaternion(field3)
        assert np.array_equal(Q.conjugate(Q.unit), Q.unit)
        e0 = Q.algebra.element({"e0": 1})
        assert np.array_equal(Q.conjugate(e0), field3.neg(e0))

    def test_cayley_dickson_needs_even_algebra(self, field3):
        """Doubling B(1,2) is not supported."""
        with pytest.raises(CompositionError):
            cayley_dickson(make_hurwitz(CompositionName.S12, field3), "double")

    def test_isotropic_vectors(self, field3):
        """Split algebras have isotropic vectors; the ground field does not."""
        assert isotropic_vector(make_hurwitz(CompositionName.S2, field3)) is not None
        assert isotropic_vector(make_hurwitz(CompositionName.S8, field3)) is not None
        assert isotropic_vector(make_hurwitz(CompositionName.S1, field3)) is None


class TestSymmetricComposition:
    """Test para-Hurwitz algebras."""

    @pytest.mark.parametrize("name", SQUARE_ORDER)
    def test_symmetric_axioms(self, name, field3, engine_config):
        """Every para-Hurwitz algebra satisfies the symmetric composition identities."""
        S = make_symmetric(name, field3)
        assert S.name == name.value
        assert check_symmetric(S, engine_config).status == CheckStatus.PASS

    def test_para_quaternion(self, field3, engine_config):
        """Qbar is a symmetric composition algebra."""
        assert check_symmetric(make_para_quaternion(field3), engine_config).status == CheckStatus.PASS

    def test_para_product(self, field3):
        """x∙y is the Hurwitz product of the conjugates."""
        C = make_hurwitz(CompositionName.S4, field3)
        S = para_hurwitz(C)
        x = C.algebra.element({"E12": 1})
        y = C.algebra.element({"E21": 1, "E11": 2})
        expected = C.algebra.multiply(C.conjugate(x), C.conjugate(y))
        assert np.array_equal(S.product(x, y), expected)

    def test_broken_table_fails_with_witness(self, field3, engine_config):
        """Changing one structure constant breaks the identities and yields witnesses."""
        S = make_symmetric(CompositionName.S4, field3)
        table = S.table.copy()
        table[0, 0, 0] = (table[0, 0, 0] + 1) % 3
        broken = SuperAlgebra.from_table("broken", S.space, table, field3, S.algebra.kind, S.form)
        report = check_symmetric(SymmetricComposition(broken), engine_config)
        assert report.status == CheckStatus.FAIL
        assert report.witnesses
        assert report.subject == "broken"

    def test_degenerate_form_raises(self, field3, engine_config):
        """A symmetric composition needs a regular norm."""
        S = make_symmetric(CompositionName.S2, field3)
        degenerate = BilinearForm(np.zeros((2, 2), dtype=np.int64), field3)
        algebra = SuperAlgebra.from_table("degenerate", S.space, S.table, field3, S.algebra.kind, degenerate)
        with pytest.raises(DegenerateFormError):
            check_symmetric(SymmetricComposition(algebra), engine_config)
