"""Unit tests for catalog name resolution."""

import pytest

from supermagic.lib import catalog
from supermagic.lib.catalog import UnknownAlgebraError, hurwitz_name
from supermagic.lib.composition import CharacteristicError, SymmetricComposition
from supermagic.lib.config import configure, make_config
from supermagic.lib.jordan import H3Algebra
from supermagic.lib.square import MagicCell
from supermagic.types import AlgebraKind, CompositionName


@pytest.fixture(autouse=True)
def fresh_catalog():
    catalog.clear()
    yield
    catalog.clear()


class TestNames:
    """Test the name grammar."""

    @pytest.mark.parametrize(
        "alias,expected",
        [
            ("k", CompositionName.S1),
            ("kxk", CompositionName.S2),
            ("Mat2", CompositionName.S4),
            ("Cayley", CompositionName.S8),
            ("B12", CompositionName.S12),
            ("B42", CompositionName.S42),
            ("S8", CompositionName.S8),
        ],
    )
    def test_hurwitz_aliases(self, alias, expected):
        """Aliases and S-names both denote Hurwitz algebras."""
        assert hurwitz_name(alias) == expected

    @pytest.mark.parametrize("name", ["", "S3", "H3:", "foo:S1", "g:S1", "C:octonions"])
    def test_unknown(self, name, field3):
        """Malformed names raise UnknownAlgebraError."""
        with pytest.raises(UnknownAlgebraError):
            catalog.entry(name, field3)

    def test_whitespace_is_ignored(self, field3):
        """'g: S1, S1' and 'g:S1,S1' are the same entry."""
        assert catalog.entry("g: S1, S1", field3) is catalog.entry("g:S1,S1", field3)

    def test_pstr_of_non_unital(self, field3):
        """K3 has no identity in str, so pstr K3 is not defined."""
        with pytest.raises(UnknownAlgebraError):
            catalog.entry("pstr:K3", field3)

    def test_non_jordan_rejected(self, field3):
        """inder, str and tkk need a Jordan superalgebra."""
        with pytest.raises(UnknownAlgebraError):
            catalog.entry("inder:S4", field3)


class TestResolve:
    """Test the constructions behind the names."""

    def test_sources(self, field3):
        """Each entry keeps the object its algebra was read off."""
        assert isinstance(catalog.symmetric("S12", field3), SymmetricComposition)
        assert isinstance(catalog.h3("B12", field3), H3Algebra)
        assert isinstance(catalog.cell("S1", "S12", field3), MagicCell)
        assert catalog.triality("S12", field3).graded_dim == (3, 2)

    def test_dims(self, field3):
        """A few names with known graded dimensions."""
        assert catalog.resolve("K3", field3).graded_dim == (1, 2)
        assert catalog.resolve("K9", field3).graded_dim == (5, 4)
        assert catalog.resolve("C:k", field3).graded_dim == (1, 0)
        assert catalog.resolve("Q", field3).graded_dim == (4, 0)
        assert catalog.resolve("der:K3", field3).graded_dim == (3, 2)
        assert catalog.resolve("g:S1,S12", field3).graded_dim == (6, 8)
        assert catalog.resolve("tkk:K3", field3).graded_dim == (6, 8)
        assert catalog.resolve("pstr:H3:S1", field3).graded_dim == (8, 0)

    def test_kinds(self, field3):
        """Derived constructions are Lie superalgebras."""
        assert catalog.resolve("H3:S2", field3).kind == AlgebraKind.JORDAN
        assert catalog.resolve("inder:H3:S2", field3).kind == AlgebraKind.LIE
        assert catalog.resolve("str:K3", field3).kind == AlgebraKind.LIE

    def test_symmetric_rejects_other_kinds(self, field3):
        """K3 is not a symmetric composition."""
        with pytest.raises(UnknownAlgebraError):
            catalog.symmetric("K3", field3)

    def test_characteristic(self, field5):
        """Superalgebras are not built over GF(5)."""
        with pytest.raises(CharacteristicError):
            catalog.resolve("K9", field5)
        with pytest.raises(CharacteristicError):
            catalog.resolve("S12", field5)
        assert catalog.resolve("S8", field5).graded_dim == (8, 0)


class TestCaching:
    """Test that entries are built once per (name, p)."""

    def test_same_object(self, field3):
        """Repeated lookups return the cached entry."""
        assert catalog.resolve("H3:S4", field3) is catalog.resolve("H3:S4", field3)

    def test_per_characteristic(self, field3, field5):
        """The same name over another field is a different entry."""
        assert catalog.resolve("S4", field3) is not catalog.resolve("S4", field5)

    def test_session_field(self):
        """Without an explicit field the session characteristic is used."""
        configure(make_config(p=5, workers=1))
        assert catalog.resolve("S2").field.p == 5
