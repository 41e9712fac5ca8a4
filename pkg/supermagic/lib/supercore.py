"""Superspaces and structure-constant superalgebras over GF(p).

A ``SuperAlgebra`` is stored sparsely as ``(i, j, k, c)`` entries meaning
``basis_i * basis_j = sum_k c * basis_k``; the dense ``(n, n, n)`` table and the operator stacks
derived from it are computed once on first use.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING

import numpy as np

from supermagic.lib.config import resolve_field
from supermagic.lib.constants import SupermagicError
from supermagic.lib.exact_linalg import PrimeField, Subspace, kernel_basis, rank, spin
from supermagic.types import AlgebraKind

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import ArrayLike

logger = logging.getLogger(__name__)


class SuperAlgebraError(SupermagicError):
    """Base exception for superalgebra construction errors."""


class ParityError(SuperAlgebraError):
    """A table entry or a map does not respect the Z2-grading."""


class DimensionMismatchError(SuperAlgebraError):
    """Vector, matrix or table sizes do not match the space."""


class NotAnIdealError(SuperAlgebraError):
    """A subspace passed as an ideal is not a graded two-sided ideal."""


class DegenerateFormError(SuperAlgebraError):
    """A bilinear form required to be regular is degenerate."""


class ClosureError(SuperAlgebraError):
    """A subspace expected to be closed under a product is not."""


def sign_table(parity: np.ndarray) -> np.ndarray:
    """Koszul signs (-1)^{|i||j|} as an int64 matrix of +-1."""
    return 1 - 2 * np.outer(parity, parity).astype(np.int64)


@dataclass(frozen=True, eq=False)
class SuperSpace:
    """Finite labelled basis with a parity bit per basis vector."""

    labels: tuple[str, ...]
    parity: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.labels) != len(self.parity):
            raise DimensionMismatchError(f"{len(self.labels)} labels but {len(self.parity)} parity bits")
        if len(set(self.labels)) != len(self.labels):
            raise SuperAlgebraError("basis labels must be distinct")
        if any(bit not in (0, 1) for bit in self.parity):
            raise ParityError("parity bits must be 0 or 1")

    @classmethod
    def build(cls, labels: Sequence[str], parity: Sequence[int]) -> SuperSpace:
        return cls(tuple(labels), tuple(int(b) for b in parity))

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def even_dim(self) -> int:
        return self.dim - sum(self.parity)

    @property
    def odd_dim(self) -> int:
        return sum(self.parity)

    @property
    def graded_dim(self) -> tuple[int, int]:
        return (self.even_dim, self.odd_dim)

    @cached_property
    def parity_array(self) -> np.ndarray:
        arr = np.asarray(self.parity, dtype=np.int64)
        arr.setflags(write=False)
        return arr

    @cached_property
    def signs(self) -> np.ndarray:
        return sign_table(self.parity_array)

    @property
    def is_normalized(self) -> bool:
        return list(self.parity) == sorted(self.parity)

    def even_first_permutation(self) -> tuple[int, ...]:
        """Old indices listed in normalized order: evens first, each part in original order."""
        evens = [i for i, b in enumerate(self.parity) if b == 0]
        odds = [i for i, b in enumerate(self.parity) if b == 1]
        return tuple(evens + odds)

    def permuted(self, perm: Sequence[int]) -> SuperSpace:
        return SuperSpace(tuple(self.labels[i] for i in perm), tuple(self.parity[i] for i in perm))

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError as e:
            raise SuperAlgebraError(f"no basis element labelled '{label}'") from e

    def same_as(self, other: SuperSpace) -> bool:
        return self.labels == other.labels and self.parity == other.parity


def vector_parity(space: SuperSpace, v: ArrayLike) -> int | None:
    """Parity of a homogeneous vector (0 for the zero vector), None when mixed."""
    support = np.flatnonzero(np.asarray(v))
    if support.size == 0:
        return 0
    bits = set(space.parity_array[support].tolist())
    return bits.pop() if len(bits) == 1 else None


def parity_mask(domain: SuperSpace, codomain: SuperSpace, parity: int) -> np.ndarray:
    """Boolean (codim, dim) mask of matrix entries allowed for a map of the given parity."""
    return (codomain.parity_array[:, None] ^ domain.parity_array[None, :]) == parity


@dataclass(frozen=True, eq=False)
class BilinearForm:
    """Bilinear form given by its Gram matrix."""

    gram: np.ndarray
    field: PrimeField

    def __post_init__(self) -> None:
        g = self.field.reduce(self.gram)
        g.setflags(write=False)
        object.__setattr__(self, "gram", g)

    @property
    def dim(self) -> int:
        return int(self.gram.shape[0])

    def __call__(self, x: ArrayLike, y: ArrayLike) -> int:
        return int(self.field.matmul(self.field.matmul(x, self.gram), y))

    def is_regular(self) -> bool:
        return rank(self.gram, self.field) == self.dim if self.dim else True

    def require_regular(self) -> None:
        if not self.is_regular():
            raise DegenerateFormError("bilinear form is degenerate")

    def is_even(self, space: SuperSpace) -> bool:
        return not np.any(self.gram[~parity_mask(space, space, 0)])

    def is_supersymmetric(self, space: SuperSpace) -> bool:
        expected = self.field.reduce(space.signs * self.gram.T)
        return bool(np.array_equal(self.gram, expected))


@dataclass(frozen=True, eq=False)
class GradedLinearMap:
    """Homogeneous linear map between superspaces; ``matrix[:, i]`` is the image of basis i.

    ``parity`` is None only for maps that are not homogeneous, such as multiplication by a mixed
    element.
    """

    domain: SuperSpace
    codomain: SuperSpace
    matrix: np.ndarray
    field: PrimeField
    parity: int | None = 0

    def __post_init__(self) -> None:
        m = self.field.reduce(self.matrix)
        if m.shape != (self.codomain.dim, self.domain.dim):
            raise DimensionMismatchError(
                f"matrix of shape {m.shape} for a map {self.domain.dim} -> {self.codomain.dim}"
            )
        if self.parity is not None and np.any(m[~parity_mask(self.domain, self.codomain, self.parity)]):
            raise ParityError(f"matrix is not homogeneous of parity {self.parity}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls, space: SuperSpace, field: PrimeField) -> GradedLinearMap:
        return cls(space, space, np.eye(space.dim, dtype=np.int64), field)

    def __call__(self, v: ArrayLike) -> np.ndarray:
        return self.field.matmul(self.matrix, v)

    def compose(self, inner: GradedLinearMap) -> GradedLinearMap:
        """``self`` after ``inner``."""
        if inner.codomain.dim != self.domain.dim:
            raise DimensionMismatchError("maps are not composable")
        parity = None if self.parity is None or inner.parity is None else (self.parity + inner.parity) % 2
        matrix = self.field.matmul(self.matrix, inner.matrix)
        return GradedLinearMap(inner.domain, self.codomain, matrix, self.field, parity)

    @property
    def rank(self) -> int:
        return rank(self.matrix, self.field) if self.matrix.size else 0

    def is_injective(self) -> bool:
        return self.rank == self.domain.dim

    def is_surjective(self) -> bool:
        return self.rank == self.codomain.dim

    def is_zero(self) -> bool:
        return not np.any(self.matrix)


@dataclass(frozen=True, eq=False)
class SuperAlgebra:
    """Superalgebra given by sparse structure constants on a labelled superspace."""

    name: str
    space: SuperSpace
    field: PrimeField
    kind: AlgebraKind
    entries: np.ndarray
    form: BilinearForm | None = None
    unit: np.ndarray | None = None

    @classmethod
    def from_table(
        cls,
        name: str,
        space: SuperSpace,
        table: ArrayLike,
        field: PrimeField | None = None,
        kind: AlgebraKind = AlgebraKind.PLAIN,
        form: BilinearForm | None = None,
        unit: ArrayLike | None = None,
        strict: bool = False,
    ) -> SuperAlgebra:
        """Build from a dense table ``table[i, j, k]``.

        Raises:
            DimensionMismatchError: If the table shape does not match the space
            ParityError: If a nonzero entry violates parity homogeneity
            SuperAlgebraError: If ``strict`` and the (anti)commutativity of the kind fails
        """
        f = resolve_field(field)
        t = f.reduce(table)
        n = space.dim
        if t.shape != (n, n, n):
            raise DimensionMismatchError(f"table of shape {t.shape} for a space of dimension {n}")
        idx = np.argwhere(t)
        par = space.parity_array
        if idx.size:
            bad = par[idx[:, 2]] != (par[idx[:, 0]] ^ par[idx[:, 1]])
            if np.any(bad):
                i, j, k = (int(v) for v in idx[np.flatnonzero(bad)[0]])
                raise ParityError(
                    f"{name}: product {space.labels[i]}*{space.labels[j]} has a component on {space.labels[k]}"
                )
        entries = np.column_stack([idx, t[tuple(idx.T)]]) if idx.size else np.zeros((0, 4), dtype=np.int64)
        unit_vec = None if unit is None else f.reduce(unit)
        algebra = cls(name, space, f, AlgebraKind(kind), entries.astype(np.int64), form, unit_vec)
        algebra.__dict__["table"] = _freeze(t)
        if strict:
            defect = algebra.symmetry_defect()
            if defect is not None:
                i, j = defect
                raise SuperAlgebraError(
                    f"{name}: {AlgebraKind(kind).value} symmetry fails on ({space.labels[i]}, {space.labels[j]})"
                )
        logger.debug("built %s of graded dimension %s with %d nonzero constants", name, space.graded_dim, len(idx))
        return algebra

    @classmethod
    def from_entries(
        cls,
        name: str,
        space: SuperSpace,
        entries: Sequence[tuple[int, int, int, int]],
        field: PrimeField | None = None,
        kind: AlgebraKind = AlgebraKind.PLAIN,
        form: BilinearForm | None = None,
        unit: ArrayLike | None = None,
    ) -> SuperAlgebra:
        f = resolve_field(field)
        n = space.dim
        table = np.zeros((n, n, n), dtype=np.int64)
        for i, j, k, c in entries:
            if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
                raise DimensionMismatchError(f"entry ({i}, {j}, {k}) out of range for dimension {n}")
            table[i, j, k] = (table[i, j, k] + c) % f.p
        return cls.from_table(name, space, table, f, kind, form, unit)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def graded_dim(self) -> tuple[int, int]:
        return self.space.graded_dim

    @property
    def labels(self) -> tuple[str, ...]:
        return self.space.labels

    @property
    def parity(self) -> np.ndarray:
        return self.space.parity_array

    @cached_property
    def table(self) -> np.ndarray:
        n = self.dim
        t = np.zeros((n, n, n), dtype=np.int64)
        if len(self.entries):
            i, j, k, c = self.entries.T
            t[i, j, k] = c
        return _freeze(t)

    @cached_property
    def left_ops(self) -> np.ndarray:
        """Stack of left multiplication matrices: ``left_ops[i][k, j]`` is the e_k-coefficient of e_i e_j."""
        return self.table.transpose(0, 2, 1)

    @cached_property
    def right_ops(self) -> np.ndarray:
        """Stack of right multiplication matrices: ``right_ops[j][k, i]`` is the e_k-coefficient of e_i e_j."""
        return self.table.transpose(1, 2, 0)

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def element(self, coefficients: dict[str, int]) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        for label, c in coefficients.items():
            v[self.space.index(label)] += c
        return self.field.reduce(v)

    def index(self, label: str) -> int:
        return self.space.index(label)

    def multiply(self, x: ArrayLike, y: ArrayLike) -> np.ndarray:
        return multiply(self, x, y)

    def symmetry_defect(self) -> tuple[int, int] | None:
        """First basis pair violating the (anti)commutativity implied by the kind, if any."""
        if self.kind == AlgebraKind.LIE:
            sign = -1
        elif self.kind == AlgebraKind.JORDAN:
            sign = 1
        else:
            return None
        t = self.table
        swapped = (sign * self.space.signs)[:, :, None] * t.transpose(1, 0, 2)
        bad = np.any(self.field.reduce(t - swapped), axis=2)
        if not np.any(bad):
            return None
        i, j = np.argwhere(bad)[0]
        return int(i), int(j)

    def permuted(self, perm: Sequence[int], name: str | None = None) -> SuperAlgebra:
        """Same algebra on the reordered basis ``[basis[perm[0]], basis[perm[1]], ...]``."""
        p = np.asarray(perm, dtype=np.int64)
        if sorted(p.tolist()) != list(range(self.dim)):
            raise DimensionMismatchError("not a permutation of the basis")
        table = self.table[np.ix_(p, p, p)]
        form = None if self.form is None else BilinearForm(self.form.gram[np.ix_(p, p)], self.field)
        unit = None if self.unit is None else self.unit[p]
        return SuperAlgebra.from_table(
            name or self.name, self.space.permuted(perm), table, self.field, self.kind, form, unit
        )

    def normalized(self) -> SuperAlgebra:
        """Same algebra with the even basis elements listed first."""
        if self.space.is_normalized:
            return self
        return self.permuted(self.space.even_first_permutation())

    def renamed(self, name: str) -> SuperAlgebra:
        algebra = SuperAlgebra(name, self.space, self.field, self.kind, self.entries, self.form, self.unit)
        algebra.__dict__["table"] = self.table
        return algebra

    def structurally_equal(self, other: SuperAlgebra) -> bool:
        return (
            self.field == other.field
            and self.kind == other.kind
            and self.space.same_as(other.space)
            and np.array_equal(self.table, other.table)
        )

    def __repr__(self) -> str:
        even, odd = self.graded_dim
        return f"SuperAlgebra({self.name!r}, kind={self.kind.value}, dim={even}|{odd}, p={self.field.p})"


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _check_vector(A: SuperAlgebra, v: ArrayLike) -> np.ndarray:
    arr = A.field.reduce(v)
    if arr.shape != (A.dim,):
        raise DimensionMismatchError(f"vector of shape {arr.shape} in an algebra of dimension {A.dim}")
    return arr


def multiply(A: SuperAlgebra, x: ArrayLike, y: ArrayLike) -> np.ndarray:
    """Bilinear extension of the structure constants."""
    xv = _check_vector(A, x)
    yv = _check_vector(A, y)
    n = A.dim
    partial = A.field.matmul(xv, A.table.reshape(n, n * n)).reshape(n, n)
    return A.field.matmul(yv, partial)


def left_mult_operator(A: SuperAlgebra, x: ArrayLike) -> GradedLinearMap:
    """Matrix of y -> x y."""
    xv = _check_vector(A, x)
    n = A.dim
    matrix = A.field.matmul(xv, A.table.reshape(n, n * n)).reshape(n, n).T
    return GradedLinearMap(A.space, A.space, matrix, A.field, vector_parity(A.space, xv))


def right_mult_operator(A: SuperAlgebra, y: ArrayLike) -> GradedLinearMap:
    """Matrix of z -> z y."""
    yv = _check_vector(A, y)
    n = A.dim
    matrix = A.field.matmul(A.table.transpose(0, 2, 1).reshape(n * n, n), yv).reshape(n, n).T
    return GradedLinearMap(A.space, A.space, matrix, A.field, vector_parity(A.space, yv))


def multiplication_operators(A: SuperAlgebra) -> np.ndarray:
    """All left and right multiplications by basis vectors, shape (2n, n, n)."""
    return np.concatenate([A.left_ops, A.right_ops], axis=0)


def derived_subalgebra(A: SuperAlgebra) -> Subspace:
    n = A.dim
    return Subspace.from_vectors(A.table.reshape(n * n, n), n, A.field)


def center(A: SuperAlgebra) -> Subspace:
    """Graded centre {z : z x = (-1)^{|z||x|} x z for all x}; for Lie superalgebras the usual centre."""
    n = A.dim
    f = A.field
    par = A.parity
    pieces = []
    for parity in (0, 1):
        cols = np.flatnonzero(par == parity)
        if cols.size == 0:
            continue
        signs = 1 - 2 * (parity * par)
        # rows (j, k), columns i: coefficient of z_i in (z e_j - s_j e_j z)_k
        system = A.table[cols] - signs[None, :, None] * A.table[:, cols].transpose(1, 0, 2)
        system = system.transpose(1, 2, 0).reshape(n * n, cols.size)
        sol = kernel_basis(system, f)
        lifted = np.zeros((sol.dim, n), dtype=np.int64)
        lifted[:, cols] = sol.basis
        pieces.append(lifted)
    if not pieces:
        return Subspace.zero(n, f)
    return Subspace.from_vectors(np.vstack(pieces), n, f)


def ideal_closure(A: SuperAlgebra, seed: Subspace) -> Subspace:
    """Smallest two-sided ideal containing ``seed``."""
    if seed.ambient_dim != A.dim:
        raise DimensionMismatchError("seed does not live in the algebra")
    return spin(seed, multiplication_operators(A))


def is_graded_subspace(A: SuperAlgebra, U: Subspace) -> bool:
    if U.dim == 0:
        return True
    evens = U.basis * (A.parity == 0)[None, :]
    return U.contains(evens)


def quotient(A: SuperAlgebra, ideal: Subspace, name: str | None = None) -> SuperAlgebra:
    """Quotient algebra on the complement spanned by the non-pivot coordinates of the ideal.

    Raises:
        NotAnIdealError: If ``ideal`` is not a graded two-sided ideal
    """
    if not is_graded_subspace(A, ideal):
        raise NotAnIdealError(f"subspace of {A.name} is not graded")
    if not ideal_closure(A, ideal).equal(ideal):
        raise NotAnIdealError(f"subspace of {A.name} is not an ideal")
    comp = np.asarray(ideal.complement_indices, dtype=np.int64)
    m = comp.size
    products = A.table[np.ix_(comp, comp)].reshape(m * m, A.dim)
    table = ideal.reduce(products)[:, comp].reshape(m, m, m)
    space = SuperSpace(tuple(A.labels[i] for i in comp), tuple(int(A.parity[i]) for i in comp))
    return SuperAlgebra.from_table(name or f"{A.name}/I", space, table, A.field, A.kind)


def projection(A: SuperAlgebra, ideal: Subspace, Q: SuperAlgebra) -> GradedLinearMap:
    """Canonical projection A -> A/I onto a quotient built by ``quotient``."""
    comp = np.asarray(ideal.complement_indices, dtype=np.int64)
    residues = ideal.reduce(np.eye(A.dim, dtype=np.int64))
    return GradedLinearMap(A.space, Q.space, residues[:, comp].T, A.field)


def direct_sum(A: SuperAlgebra, B: SuperAlgebra, name: str | None = None) -> SuperAlgebra:
    if A.field != B.field:
        raise DimensionMismatchError("algebras over different fields")
    labels_b = list(B.labels)
    if set(A.labels) & set(labels_b):
        labels_b = [f"{B.name}.{label}" for label in labels_b]
    space = SuperSpace(tuple(A.labels) + tuple(labels_b), tuple(A.space.parity) + tuple(B.space.parity))
    n, m = A.dim, B.dim
    table = np.zeros((n + m, n + m, n + m), dtype=np.int64)
    table[:n, :n, :n] = A.table
    table[n:, n:, n:] = B.table
    kind = A.kind if A.kind == B.kind else AlgebraKind.PLAIN
    return SuperAlgebra.from_table(name or f"{A.name}+{B.name}", space, table, A.field, kind)


def graded_tensor(A: SuperAlgebra, B: SuperAlgebra, name: str | None = None) -> SuperAlgebra:
    """(a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd on the basis pairs (a_i, b_j), i-major."""
    if A.field != B.field:
        raise DimensionMismatchError("algebras over different fields")
    f = A.field
    n, m = A.dim, B.dim
    labels = tuple(f"{a}⊗{b}" for a in A.labels for b in B.labels)
    parity = tuple((pa + pb) % 2 for pa in A.space.parity for pb in B.space.parity)
    sign = 1 - 2 * np.outer(B.parity, A.parity)  # indexed (j, k)
    table = np.einsum("ikm,jlr->ijklmr", A.table, B.table) * sign[None, :, :, None, None, None]
    table = f.reduce(table.reshape(n * m, n * m, n * m))
    kind = AlgebraKind.JORDAN if A.kind == B.kind == AlgebraKind.JORDAN else AlgebraKind.PLAIN
    unit = None if A.unit is None or B.unit is None else np.kron(A.unit, B.unit)
    return SuperAlgebra.from_table(name or f"{A.name}⊗{B.name}", SuperSpace(labels, parity), table, f, kind, unit=unit)
