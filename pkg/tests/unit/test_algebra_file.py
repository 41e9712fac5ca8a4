"""Unit tests for the algebra file format."""

import json

import numpy as np
import pytest

from supermagic.lib import catalog
from supermagic.lib.algebra_file import (
    AlgebraFileError,
    FormatVersionError,
    MalformedEntryError,
    emit,
    parse,
    read_algebra,
    to_file,
)
from supermagic.lib.composition import make_hurwitz
from supermagic.lib.jordan import make_K3
from supermagic.lib.supercore import SuperAlgebra, SuperSpace
from supermagic.types import CompositionName


@pytest.fixture
def K3_document(field3):
    return json.loads(emit(make_K3(field3)))


class TestEmit:
    """Test the canonical file form."""

    def test_layout(self, field3):
        """Header, graded basis and sparse constants of K3."""
        doc = json.loads(emit(make_K3(field3)))
        assert doc["header"] == {"format_version": 1, "p": 3, "name": "K3", "kind": "jordan"}
        assert doc["even_basis"] == ["e"]
        assert doc["odd_basis"] == ["x", "y"]
        assert {"i": 1, "j": 2, "k": 0, "c": 1} in doc["structure"]
        assert {"i": 2, "j": 1, "k": 0, "c": 2} in doc["structure"]
        assert all(entry["c"] != 0 for entry in doc["structure"])
        assert doc["form"] == [[2, 0, 0], [0, 0, 1], [0, 2, 0]]

    def test_normalizes_basis_order(self, field3):
        """An algebra with interleaved parities is written even part first."""
        table = np.zeros((2, 2, 2), dtype=np.int64)
        table[1, 1, 1] = 1
        table[1, 0, 0] = table[0, 1, 0] = 1
        A = SuperAlgebra.from_table("A", SuperSpace.build(["x", "e"], [1, 0]), table, field3)
        document = to_file(A)
        assert document.even_basis == ["e"]
        assert document.odd_basis == ["x"]
        assert parse(emit(A)).structurally_equal(A.normalized())

    def test_hurwitz_unit_and_form(self, field3):
        """The unit and norm of B(1,2) survive a file."""
        C = make_hurwitz(CompositionName.S12, field3).algebra
        B = parse(emit(C))
        assert B.structurally_equal(C)
        assert B.unit.tolist() == [1, 0, 0]
        assert np.array_equal(B.form.gram, C.form.gram)

    @pytest.mark.slow
    def test_e8_cell_labels(self, field3):
        """g(S8, S8) is written with 248 even labels and no odd ones."""
        document = to_file(catalog.resolve("g:S8,S8", field3))
        assert len(document.even_basis) + len(document.odd_basis) == 248
        assert document.odd_basis == []
        assert len(set(document.even_basis)) == 248
        assert document.header.kind == "lie"


class TestParse:
    """Test rejection of malformed files."""

    def test_format_version(self, K3_document):
        """Files from another format version are refused before validation."""
        K3_document["header"]["format_version"] = 2
        with pytest.raises(FormatVersionError):
            parse(json.dumps(K3_document))

    def test_duplicate_entry(self, K3_document):
        """Each (i, j, k) appears at most once."""
        K3_document["structure"].append(dict(K3_document["structure"][0]))
        with pytest.raises(MalformedEntryError, match="twice"):
            parse(json.dumps(K3_document))

    def test_out_of_range(self, K3_document):
        """Indices must address the basis."""
        K3_document["structure"].append({"i": 0, "j": 0, "k": 7, "c": 1})
        with pytest.raises(MalformedEntryError, match="out of range"):
            parse(json.dumps(K3_document))

    @pytest.mark.parametrize("c", [0, 3, 4, -1])
    def test_coefficient_not_canonical(self, K3_document, c):
        """Coefficients are nonzero residues 1..p-1."""
        K3_document["structure"][0]["c"] = c
        with pytest.raises(MalformedEntryError, match="outside 1..2"):
            parse(json.dumps(K3_document))

    @pytest.mark.parametrize("key", ["form", "unit"])
    def test_form_and_unit_not_canonical(self, field3, key):
        """Gram matrix and unit coordinates are residues 0..p-1."""
        doc = json.loads(emit(make_hurwitz(CompositionName.S2, field3).algebra))
        if key == "form":
            doc["form"][0][0] = 5
        else:
            doc["unit"][0] = -1
        with pytest.raises(MalformedEntryError, match=f"{key} has entries outside 0..2"):
            parse(json.dumps(doc))

    def test_parity_violation(self, K3_document):
        """e·e landing on x is not a superalgebra."""
        K3_document["structure"].append({"i": 0, "j": 0, "k": 1, "c": 1})
        with pytest.raises(MalformedEntryError):
            parse(json.dumps(K3_document))

    def test_bad_modulus(self, K3_document):
        """The header names an odd prime."""
        K3_document["header"]["p"] = 9
        with pytest.raises(MalformedEntryError):
            parse(json.dumps(K3_document))

    def test_form_shape(self, K3_document):
        """The Gram matrix is square of the basis size."""
        K3_document["form"] = [[1]]
        with pytest.raises(MalformedEntryError, match="form"):
            parse(json.dumps(K3_document))

    @pytest.mark.parametrize("text", ["not json", "[]", '{"header": 3}', '{"even_basis": ["a"]}'])
    def test_not_an_algebra(self, text):
        """Text that is not an algebra file is malformed."""
        with pytest.raises(MalformedEntryError):
            parse(text)

    def test_negative_index(self, K3_document):
        """Indices are non-negative."""
        K3_document["structure"][0]["i"] = -1
        with pytest.raises(MalformedEntryError):
            parse(json.dumps(K3_document))


class TestReadAlgebra:
    """Test reading from disk."""

    def test_read(self, temp_dir, field3):
        """A written file reads back."""
        path = temp_dir / "K3.json"
        path.write_text(emit(make_K3(field3)), encoding="utf-8")
        assert read_algebra(path).structurally_equal(make_K3(field3))

    def test_missing_file(self, temp_dir):
        """An unreadable path raises AlgebraFileError."""
        with pytest.raises(AlgebraFileError, match="cannot read"):
            read_algebra(temp_dir / "absent.json")
