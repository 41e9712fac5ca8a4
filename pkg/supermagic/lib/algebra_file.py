"""Serialized algebras: a versioned JSON document of sparse structure constants.

The basis is written even part first; an algebra whose basis interleaves parities is permuted by
``SuperSpace.even_first_permutation`` before emission, so ``parse(emit(A))`` equals ``A.normalized()``.
"""

from __future__ import annotations

import json
import logging
from typing import TYPE_CHECKING

import numpy as np
from pydantic import BaseModel, Field, ValidationError

from supermagic.lib.constants import ALGEBRA_FILE_VERSION, SupermagicError
from supermagic.lib.exact_linalg import FieldError, PrimeField
from supermagic.lib.supercore import BilinearForm, SuperAlgebra, SuperAlgebraError, SuperSpace
from supermagic.types import AlgebraKind

if TYPE_CHECKING:
    from pathlib import Path

logger = logging.getLogger(__name__)


class AlgebraFileError(SupermagicError):
    """Base exception for algebra file errors."""


class FormatVersionError(AlgebraFileError):
    """The file was written by an incompatible format version."""


class MalformedEntryError(AlgebraFileError):
    """A structure constant, label list or form is invalid."""


class AlgebraHeader(BaseModel):
    """Identification of a serialized algebra."""

    format_version: int = Field(default=ALGEBRA_FILE_VERSION, description="Version of the file layout")
    p: int = Field(description="Characteristic of the ground field")
    name: str = Field(description="Name of the algebra")
    kind: AlgebraKind = Field(description="Kind tag of the algebra")

    model_config = {"use_enum_values": True}


class StructureConstant(BaseModel):
    """e_i e_j has coefficient c on e_k."""

    i: int = Field(ge=0, description="Left factor")
    j: int = Field(ge=0, description="Right factor")
    k: int = Field(ge=0, description="Output basis vector")
    c: int = Field(description="Nonzero coefficient in 0..p-1")


class AlgebraFile(BaseModel):
    """Canonical file form of a superalgebra."""

    header: AlgebraHeader = Field(description="Format version, field and name")
    even_basis: list[str] = Field(default_factory=list, description="Labels of the even basis vectors")
    odd_basis: list[str] = Field(default_factory=list, description="Labels of the odd basis vectors")
    structure: list[StructureConstant] = Field(default_factory=list, description="Nonzero structure constants")
    form: list[list[int]] | None = Field(default=None, description="Gram matrix of the attached bilinear form")
    unit: list[int] | None = Field(default=None, description="Coordinates of the unit element")

    @property
    def dim(self) -> int:
        return len(self.even_basis) + len(self.odd_basis)


def to_file(A: SuperAlgebra) -> AlgebraFile:
    """The canonical AlgebraFile of ``A`` with its basis normalized even part first."""
    B = A.normalized()
    space = B.space
    return AlgebraFile(
        header=AlgebraHeader(p=B.field.p, name=B.name, kind=B.kind),
        even_basis=[label for label, bit in zip(space.labels, space.parity, strict=True) if bit == 0],
        odd_basis=[label for label, bit in zip(space.labels, space.parity, strict=True) if bit == 1],
        structure=[StructureConstant(i=int(i), j=int(j), k=int(k), c=int(c)) for i, j, k, c in B.entries],
        form=None if B.form is None else B.form.gram.tolist(),
        unit=None if B.unit is None else B.unit.tolist(),
    )


def _canonical(
    values: list[int] | list[list[int]], shape: tuple[int, ...], field: PrimeField, what: str
) -> np.ndarray:
    try:
        m = np.asarray(values, dtype=np.int64)
    except ValueError as e:
        raise MalformedEntryError(f"{what} is not a rectangular array") from e
    if m.shape != shape:
        raise MalformedEntryError(f"{what} has shape {m.shape}, expected {shape}")
    if np.any((m < 0) | (m >= field.p)):
        raise MalformedEntryError(f"{what} has entries outside 0..{field.p - 1}")
    return m


def from_file(document: AlgebraFile) -> SuperAlgebra:
    """Rebuild the algebra described by ``document``.

    Raises:
        FormatVersionError: If the format version is not supported
        MalformedEntryError: If an entry is out of range or repeated, or a value is not in 0..p-1
    """
    header = document.header
    if header.format_version != ALGEBRA_FILE_VERSION:
        raise FormatVersionError(f"format version {header.format_version}, expected {ALGEBRA_FILE_VERSION}")
    try:
        field = PrimeField(header.p)
    except FieldError as e:
        raise MalformedEntryError(str(e)) from e
    n = document.dim
    seen: set[tuple[int, int, int]] = set()
    table = np.zeros((n, n, n), dtype=np.int64)
    for entry in document.structure:
        key = (entry.i, entry.j, entry.k)
        if max(key) >= n:
            raise MalformedEntryError(f"entry {key} out of range for dimension {n}")
        if key in seen:
            raise MalformedEntryError(f"entry {key} listed twice")
        if not 0 < entry.c < field.p:
            raise MalformedEntryError(f"entry {key} has coefficient {entry.c} outside 1..{field.p - 1}")
        seen.add(key)
        table[key] = entry.c
    form = None if document.form is None else BilinearForm(_canonical(document.form, (n, n), field, "form"), field)
    unit = None if document.unit is None else _canonical(document.unit, (n,), field, "unit")
    try:
        parity = [0] * len(document.even_basis) + [1] * len(document.odd_basis)
        space = SuperSpace.build([*document.even_basis, *document.odd_basis], parity)
        return SuperAlgebra.from_table(header.name, space, table, field, AlgebraKind(header.kind), form, unit)
    except SuperAlgebraError as e:
        raise MalformedEntryError(str(e)) from e


def emit(A: SuperAlgebra) -> str:
    """JSON text of the canonical file, keys in declaration order."""
    return to_file(A).model_dump_json(indent=2) + "\n"


def parse(text: str) -> SuperAlgebra:
    """Inverse of ``emit``.

    Raises:
        FormatVersionError: If the format version is not supported
        MalformedEntryError: If the text is not a well-formed algebra file
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedEntryError(f"not JSON: {e}") from e
    header = raw.get("header") if isinstance(raw, dict) else None
    version = header.get("format_version") if isinstance(header, dict) else None
    if version is not None and version != ALGEBRA_FILE_VERSION:
        raise FormatVersionError(f"format version {version}, expected {ALGEBRA_FILE_VERSION}")
    try:
        document = AlgebraFile.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]["msg"]
        raise MalformedEntryError(f"invalid algebra file ({e.error_count()} errors), first: {first}") from e
    algebra = from_file(document)
    logger.info("parsed %s of graded dimension %s", algebra.name, algebra.graded_dim)
    return algebra


def read_algebra(path: Path) -> SuperAlgebra:
    """Parse the algebra file at ``path``.

    Raises:
        AlgebraFileError: If the file cannot be read or parsed
    """
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise AlgebraFileError(f"cannot read {path}: {e}") from e
    return parse(text)
