"""Graded subspaces of operator spaces and the homogeneous linear solver behind them.

Operators are flattened row-major, so the entry ``M[r, c]`` is coordinate ``r * cols + c``. A
``GradedSubspace`` keeps its even and odd parts separately; because the two parts live on disjoint
coordinate masks, membership and coordinates reduce to two independent rref lookups.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from supermagic.lib.exact_linalg import PrimeField, RowReducer, Subspace
from supermagic.lib.supercore import (
    ClosureError,
    DimensionMismatchError,
    ParityError,
    SuperAlgebra,
    SuperSpace,
    sign_table,
)
from supermagic.types import AlgebraKind

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable, Iterator, Sequence

    from numpy.typing import ArrayLike

logger = logging.getLogger(__name__)


def operator_mask(row_parity: np.ndarray, col_parity: np.ndarray, parity: int) -> np.ndarray:
    """Entries ``M[r, c]`` allowed in an operator of the given parity."""
    return (np.asarray(row_parity)[:, None] ^ np.asarray(col_parity)[None, :]) == parity


@dataclass(frozen=True, eq=False)
class GradedSubspace:
    """Graded subspace of Hom(V, W) given as an even and an odd rref subspace of flattened matrices."""

    even: Subspace
    odd: Subspace
    row_parity: tuple[int, ...]
    col_parity: tuple[int, ...]

    def __post_init__(self) -> None:
        size = len(self.row_parity) * len(self.col_parity)
        if self.even.ambient_dim != size or self.odd.ambient_dim != size:
            raise DimensionMismatchError("graded pieces do not match the operator shape")

    @classmethod
    def zero(cls, row_parity: Sequence[int], col_parity: Sequence[int], field: PrimeField) -> GradedSubspace:
        size = len(row_parity) * len(col_parity)
        return cls(Subspace.zero(size, field), Subspace.zero(size, field), tuple(row_parity), tuple(col_parity))

    @classmethod
    def from_matrices(
        cls,
        matrices: ArrayLike,
        parities: Sequence[int],
        row_parity: Sequence[int],
        col_parity: Sequence[int],
        field: PrimeField,
    ) -> GradedSubspace:
        """Span of homogeneous matrices.

        Raises:
            ParityError: If a matrix is not homogeneous of its stated parity
        """
        rows, cols = len(row_parity), len(col_parity)
        mats = field.reduce(matrices).reshape(-1, rows, cols)
        par = np.asarray(parities, dtype=np.int64).reshape(-1)
        if par.size != mats.shape[0]:
            raise DimensionMismatchError(f"{mats.shape[0]} matrices but {par.size} parities")
        pieces = []
        for parity in (0, 1):
            chosen = mats[par == parity]
            mask = operator_mask(np.asarray(row_parity), np.asarray(col_parity), parity)
            if chosen.size and np.any(chosen[:, ~mask]):
                raise ParityError(f"a matrix listed with parity {parity} is not homogeneous")
            pieces.append(Subspace.from_vectors(chosen.reshape(-1, rows * cols), rows * cols, field))
        return cls(pieces[0], pieces[1], tuple(row_parity), tuple(col_parity))

    @property
    def field(self) -> PrimeField:
        return self.even.field

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.row_parity), len(self.col_parity))

    @property
    def dim(self) -> int:
        return self.even.dim + self.odd.dim

    @property
    def graded_dim(self) -> tuple[int, int]:
        return (self.even.dim, self.odd.dim)

    @property
    def basis(self) -> np.ndarray:
        return np.vstack([self.even.basis, self.odd.basis])

    @property
    def parities(self) -> np.ndarray:
        return np.asarray([0] * self.even.dim + [1] * self.odd.dim, dtype=np.int64)

    def basis_matrices(self) -> np.ndarray:
        return self.basis.reshape(self.dim, *self.shape)

    def _flatten(self, vectors: ArrayLike) -> np.ndarray:
        arr = self.field.reduce(vectors)
        size = self.shape[0] * self.shape[1]
        if arr.shape[-2:] == self.shape:
            arr = arr.reshape(*arr.shape[:-2], size)
        if arr.shape[-1] != size:
            raise DimensionMismatchError(f"operator of size {arr.shape[-1]} in a space of {size} entries")
        return arr

    def residual(self, vectors: ArrayLike) -> np.ndarray:
        return self.odd.reduce(self.even.reduce(self._flatten(vectors)))

    def contains(self, vectors: ArrayLike) -> bool:
        return not np.any(self.residual(vectors))

    def coordinates(self, vectors: ArrayLike) -> np.ndarray:
        """Coordinates in ``basis`` (even part first) of operators given flat or as matrices.

        Raises:
            ClosureError: If some operator lies outside the subspace
        """
        arr = self._flatten(vectors)
        if np.any(self.residual(arr)):
            raise ClosureError("operator does not lie in the graded subspace")
        return np.concatenate(
            [arr[..., list(self.even.pivots)], arr[..., list(self.odd.pivots)]], axis=-1
        ).astype(np.int64)

    def sum(self, other: GradedSubspace) -> GradedSubspace:
        return GradedSubspace(self.even.sum(other.even), self.odd.sum(other.odd), self.row_parity, self.col_parity)

    def intersect(self, other: GradedSubspace) -> GradedSubspace:
        return GradedSubspace(
            self.even.intersect(other.even), self.odd.intersect(other.odd), self.row_parity, self.col_parity
        )

    def equal(self, other: GradedSubspace) -> bool:
        return self.even.equal(other.even) and self.odd.equal(other.odd)

    def is_subspace_of(self, other: GradedSubspace) -> bool:
        return self.even.is_subspace_of(other.even) and self.odd.is_subspace_of(other.odd)

    def as_lie(self, name: str, labels: Sequence[str] | None = None) -> SuperAlgebra:
        """The Lie superalgebra of this subspace under the graded commutator.

        Raises:
            ClosureError: If the subspace is not closed under the graded commutator
        """
        if self.shape[0] != self.shape[1]:
            raise DimensionMismatchError("only spaces of endomorphisms carry a commutator")
        f = self.field
        m = self.dim
        names = tuple(labels) if labels is not None else tuple(f"{name}[{k}]" for k in range(m))
        space = SuperSpace(names, tuple(int(b) for b in self.parities))
        if m == 0:
            return SuperAlgebra.from_table(name, space, np.zeros((0, 0, 0), dtype=np.int64), f, AlgebraKind.LIE)
        started = time.perf_counter()
        mats = self.basis_matrices()
        products = f.matmul(mats[:, None], mats[None, :])
        signs = sign_table(self.parities)
        brackets = f.reduce(products - signs[:, :, None, None] * products.transpose(1, 0, 2, 3))
        try:
            table = self.coordinates(brackets.reshape(m * m, -1)).reshape(m, m, m)
        except ClosureError as e:
            raise ClosureError(f"{name} is not closed under the graded commutator") from e
        logger.debug("bracket table of %s (dim %d) in %.3fs", name, m, time.perf_counter() - started)
        return SuperAlgebra.from_table(name, space, table, f, AlgebraKind.LIE)


def homogeneous_solutions(
    equations: Callable[[int], Iterable[np.ndarray]],
    row_parity: Sequence[int],
    col_parity: Sequence[int],
    field: PrimeField,
    support: np.ndarray | None = None,
    label: str = "system",
) -> GradedSubspace:
    """Solve a homogeneous system on operators separately for parity 0 and parity 1.

    ``equations(parity)`` yields coefficient blocks over all flattened operator entries; only the
    entries allowed by the parity (and by ``support`` when given) are unknowns.
    """
    rows, cols = len(row_parity), len(col_parity)
    size = rows * cols
    pieces: list[Subspace] = []
    for parity in (0, 1):
        mask = operator_mask(np.asarray(row_parity), np.asarray(col_parity), parity)
        if support is not None:
            mask &= support
        unknowns = np.flatnonzero(mask.reshape(-1))
        if unknowns.size == 0:
            pieces.append(Subspace.zero(size, field))
            continue
        started = time.perf_counter()
        reducer = RowReducer(unknowns.size, field)
        for block in equations(parity):
            reducer.add(block.reshape(-1, size)[:, unknowns])
            if reducer.is_full:
                break
        kernel = reducer.kernel()
        lifted = np.zeros((kernel.shape[0], size), dtype=np.int64)
        lifted[:, unknowns] = kernel
        pieces.append(Subspace.from_vectors(lifted, size, field))
        logger.debug(
            "%s parity %d: %d unknowns, rank %d, %d solutions in %.3fs",
            label,
            parity,
            unknowns.size,
            reducer.rank,
            kernel.shape[0],
            time.perf_counter() - started,
        )
    return GradedSubspace(pieces[0], pieces[1], tuple(row_parity), tuple(col_parity))


def derivation_equations(A: SuperAlgebra, parity: int) -> Iterator[np.ndarray]:
    """Blocks of D(e_i e_j) - D(e_i) e_j - (-1)^{|D||i|} e_i D(e_j) = 0, one block per i.

    Rows are indexed (j, k), unknowns (r, c) stand for D[r, c].
    """
    n = A.dim
    t = A.table
    eye = np.eye(n, dtype=np.int64)
    signs = 1 - 2 * (parity * A.parity)
    idx = np.arange(n)
    by_first = t.transpose(1, 2, 0)
    for i in range(n):
        coef = np.einsum("rk,jc->jkrc", eye, t[i])
        coef[..., i] -= by_first
        coef[idx, :, :, idx] -= signs[i] * t[i].T
        yield A.field.reduce(coef.reshape(n * n, n * n))


def derivations(A: SuperAlgebra) -> GradedSubspace:
    """der(A) as a graded subspace of gl(A)."""
    return homogeneous_solutions(
        lambda parity: derivation_equations(A, parity),
        A.space.parity,
        A.space.parity,
        A.field,
        label=f"der {A.name}",
    )


def graded_commutator(
    x: np.ndarray, px: int, y: np.ndarray, py: int, field: PrimeField
) -> np.ndarray:
    return field.reduce(field.matmul(x, y) - (1 - 2 * (px * py)) * field.matmul(y, x))


def inner_derivation_operators(J: SuperAlgebra) -> tuple[np.ndarray, np.ndarray]:
    """All [L_i, L_j] with their parities, shape (n, n, n, n) and (n, n)."""
    f = J.field
    L = J.left_ops
    products = f.matmul(L[:, None], L[None, :])
    ops = f.reduce(products - J.space.signs[:, :, None, None] * products.transpose(1, 0, 2, 3))
    parities = (J.parity[:, None] + J.parity[None, :]) % 2
    return ops, parities


def inner_derivations(J: SuperAlgebra) -> GradedSubspace:
    """inder J: the span of all graded commutators [L_x, L_y] of basis multiplications."""
    n = J.dim
    ops, parities = inner_derivation_operators(J)
    return GradedSubspace.from_matrices(
        ops.reshape(n * n, n, n), parities.reshape(-1), J.space.parity, J.space.parity, J.field
    )


def left_multiplications(J: SuperAlgebra) -> GradedSubspace:
    """L_J = span of the left multiplications by basis vectors."""
    return GradedSubspace.from_matrices(J.left_ops, J.parity, J.space.parity, J.space.parity, J.field)


def derivation_defect(A: SuperAlgebra, matrix: ArrayLike, parity: int) -> tuple[int, int] | None:
    """First basis pair (i, j) where the matrix fails the graded Leibniz rule, if any."""
    f = A.field
    d = f.reduce(matrix)
    t = A.table
    n = A.dim
    signs = 1 - 2 * (parity * A.parity)
    image_of_product = f.matmul(t.reshape(n * n, n), d.T).reshape(n, n, n)
    image_left = np.einsum("ri,rjk->ijk", d, t)
    image_right = np.einsum("rj,irk->ijk", d, t) * signs[:, None, None]
    bad = np.any(f.reduce(image_of_product - image_left - image_right), axis=2)
    if not np.any(bad):
        return None
    i, j = np.argwhere(bad)[0]
    return int(i), int(j)


def operator_tensor(
    phi: np.ndarray, psi: np.ndarray, psi_parity: int, left_parity: ArrayLike
) -> np.ndarray:
    """Matrix of φ⊗ψ on V⊗W (i-major): (φ⊗ψ)(x⊗y) = (-1)^{|ψ||x|} φ(x)⊗ψ(y)."""
    signs = 1 - 2 * ((psi_parity * np.asarray(left_parity, dtype=np.int64)) % 2)
    return np.kron(np.asarray(phi, dtype=np.int64) * signs[None, :], np.asarray(psi, dtype=np.int64))
