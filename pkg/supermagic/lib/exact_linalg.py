"""Exact linear algebra over prime fields GF(p).

Every vector and matrix is a numpy ``int64`` array of residues in ``0..p-1``. Matrix products are
evaluated in float64 when the largest possible partial sum is exactly representable, which hands the
heavy lifting to BLAS while keeping results exact.

Subspaces are stored by their reduced row-echelon basis, so equality of subspaces is equality of
arrays.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from supermagic.lib.constants import FLOAT_EXACT_BOUND, SupermagicError

if TYPE_CHECKING:
    from collections.abc import Iterable

    from numpy.typing import ArrayLike

logger = logging.getLogger(__name__)

INT64_SAFE_BOUND = 2**62
# Rows reduced per elimination step of the incremental reducer
ROW_CHUNK = 512


class LinearAlgebraError(SupermagicError):
    """Base exception for exact linear algebra errors."""


class AmbientDimensionError(LinearAlgebraError):
    """Operands live in spaces of different dimension."""


class FieldError(LinearAlgebraError):
    """Invalid modulus or mixed moduli."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The prime field GF(p) for an odd prime p."""

    p: int

    def __post_init__(self) -> None:
        if not is_prime(self.p) or self.p == 2:
            raise FieldError(f"p must be an odd prime, got {self.p}")

    @property
    def half(self) -> int:
        return self.inv(2)

    def inv(self, a: int) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse modulo {self.p}")
        return pow(a, -1, self.p)

    def scalar(self, a: int) -> int:
        return int(a) % self.p

    def neg(self, a: ArrayLike) -> np.ndarray:
        return self.reduce(-np.asarray(a, dtype=np.int64))

    def reduce(self, a: ArrayLike) -> np.ndarray:
        arr = np.asarray(a)
        if arr.dtype.kind == "f":
            arr = np.rint(arr).astype(np.int64)
        return np.mod(arr.astype(np.int64, copy=False), self.p)

    def zeros(self, shape: int | tuple[int, ...]) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def matmul(self, a: ArrayLike, b: ArrayLike) -> np.ndarray:
        """Exact product ``a @ b`` reduced modulo p (broadcasts like ``np.matmul``)."""
        x = self.reduce(a)
        y = self.reduce(b)
        k = x.shape[-1] if x.ndim else 1
        bound = max(k, 1) * (self.p - 1) ** 2
        if bound < FLOAT_EXACT_BOUND:
            prod = np.matmul(x.astype(np.float64), y.astype(np.float64))
            return np.mod(np.rint(prod).astype(np.int64), self.p)
        if bound < INT64_SAFE_BOUND:
            return np.mod(np.matmul(x, y), self.p)
        prod = np.matmul(x.astype(object), y.astype(object))
        return np.mod(prod, self.p).astype(np.int64)

    def random_matrix(self, rng: np.random.Generator, shape: int | tuple[int, ...]) -> np.ndarray:
        return rng.integers(0, self.p, size=shape, dtype=np.int64)


def _eliminate(block: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Gauss-Jordan elimination of a dense block; returns the nonzero rref rows and pivots."""
    a = block.copy()
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        pivot_row = r + int(nz[0])
        if pivot_row != r:
            a[[r, pivot_row]] = a[[pivot_row, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


class RowReducer:
    """Incremental reduced row-echelon form of a growing row set.

    Rows are fed in blocks; each block is first reduced against the current basis with a single
    matrix product, then the residual is eliminated on its own and the new pivots are cleared from
    the old basis. Large homogeneous systems never need to be materialized at once.
    """

    def __init__(self, ncols: int, field: PrimeField):
        self.ncols = ncols
        self.field = field
        self.basis = np.zeros((0, ncols), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def is_full(self) -> bool:
        return self.rank == self.ncols

    def residual(self, rows: np.ndarray) -> np.ndarray:
        rows = self.field.reduce(rows)
        if not self.pivots:
            return rows
        return self.field.reduce(rows - self.field.matmul(rows[:, self.pivots], self.basis))

    def add(self, rows: ArrayLike) -> int:
        """Add rows; returns the number of new pivots."""
        arr = np.atleast_2d(self.field.reduce(rows))
        if arr.shape[1] != self.ncols:
            raise AmbientDimensionError(f"expected {self.ncols} columns, got {arr.shape[1]}")
        gained = 0
        for start in range(0, arr.shape[0], ROW_CHUNK):
            if self.is_full:
                break
            block = self.residual(arr[start : start + ROW_CHUNK])
            block = block[np.any(block, axis=1)]
            if block.shape[0] == 0:
                continue
            new_rows, new_pivots = _eliminate(block, self.field.p)
            if self.pivots:
                self.basis = self.field.reduce(
                    self.basis - self.field.matmul(self.basis[:, new_pivots], new_rows)
                )
            merged = self.pivots + new_pivots
            order = np.argsort(merged, kind="stable")
            self.basis = np.vstack([self.basis, new_rows])[order]
            self.pivots = [merged[i] for i in order]
            gained += len(new_pivots)
        return gained

    def kernel(self) -> np.ndarray:
        """Basis (as rows) of the null space of the rows added so far."""
        taken = set(self.pivots)
        free = [c for c in range(self.ncols) if c not in taken]
        kernel = np.zeros((len(free), self.ncols), dtype=np.int64)
        if not free:
            return kernel
        kernel[np.arange(len(free)), free] = 1
        if self.pivots:
            kernel[:, self.pivots] = self.field.neg(self.basis[:, free].T)
        return kernel


def rref(m: ArrayLike, field: PrimeField) -> tuple[np.ndarray, int]:
    """Reduced row-echelon form (same shape, zero rows last) and rank."""
    arr = np.atleast_2d(field.reduce(m))
    rows, cols = arr.shape
    reducer = RowReducer(cols, field)
    if rows:
        reducer.add(arr)
    out = np.zeros((rows, cols), dtype=np.int64)
    out[: reducer.rank] = reducer.basis
    return out, reducer.rank


def rank(m: ArrayLike, field: PrimeField) -> int:
    return rref(m, field)[1]


def kernel_basis(m: ArrayLike, field: PrimeField) -> Subspace:
    """The subspace {v : m v = 0}."""
    arr = np.atleast_2d(field.reduce(m))
    reducer = RowReducer(arr.shape[1], field)
    if arr.shape[0]:
        reducer.add(arr)
    return Subspace.from_vectors(reducer.kernel(), arr.shape[1], field)


def solve(a: ArrayLike, b: ArrayLike, field: PrimeField) -> np.ndarray | None:
    """Some x with ``a x = b``, or None when the system is inconsistent."""
    mat = np.atleast_2d(field.reduce(a))
    rhs = field.reduce(b).reshape(-1)
    if mat.shape[0] != rhs.shape[0]:
        raise AmbientDimensionError(f"matrix has {mat.shape[0]} rows, right-hand side has {rhs.shape[0]}")
    cols = mat.shape[1]
    reducer = RowReducer(cols + 1, field)
    reducer.add(np.hstack([mat, rhs[:, None]]))
    if cols in reducer.pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for row, pivot in zip(reducer.basis, reducer.pivots, strict=True):
        x[pivot] = row[cols]
    return x


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of GF(p)^n held by its canonical reduced row-echelon basis."""

    ambient_dim: int
    basis: np.ndarray
    pivots: tuple[int, ...]
    field: PrimeField

    def __post_init__(self) -> None:
        self.basis.setflags(write=False)

    @property
    def _pivot_array(self) -> np.ndarray:
        return np.asarray(self.pivots, dtype=np.int64)

    @classmethod
    def from_vectors(cls, vectors: ArrayLike, ambient_dim: int, field: PrimeField) -> Subspace:
        if ambient_dim == 0:
            return cls.zero(0, field)
        arr = np.asarray(vectors, dtype=np.int64).reshape(-1, ambient_dim)
        reducer = RowReducer(ambient_dim, field)
        if arr.shape[0]:
            reducer.add(arr)
        return cls(ambient_dim, reducer.basis.copy(), tuple(reducer.pivots), field)

    @classmethod
    def zero(cls, ambient_dim: int, field: PrimeField) -> Subspace:
        return cls(ambient_dim, np.zeros((0, ambient_dim), dtype=np.int64), (), field)

    @classmethod
    def full(cls, ambient_dim: int, field: PrimeField) -> Subspace:
        return cls(ambient_dim, np.eye(ambient_dim, dtype=np.int64), tuple(range(ambient_dim)), field)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    @property
    def complement_indices(self) -> tuple[int, ...]:
        """Non-pivot coordinates; the standard complement of this subspace."""
        taken = set(self.pivots)
        return tuple(i for i in range(self.ambient_dim) if i not in taken)

    def _check(self, other: Subspace) -> None:
        if other.ambient_dim != self.ambient_dim:
            raise AmbientDimensionError(f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}")
        if other.field != self.field:
            raise FieldError(f"moduli differ: {self.field.p} vs {other.field.p}")

    def reduce(self, vectors: ArrayLike) -> np.ndarray:
        """Residue of each row modulo this subspace (zero iff the row is contained)."""
        arr = self.field.reduce(vectors)
        if arr.shape[-1] != self.ambient_dim:
            raise AmbientDimensionError(f"vector of length {arr.shape[-1]} in ambient {self.ambient_dim}")
        if not self.pivots:
            return arr
        return self.field.reduce(arr - self.field.matmul(arr[..., self._pivot_array], self.basis))

    def contains(self, v: ArrayLike) -> bool:
        return not np.any(self.reduce(v))

    def coordinates(self, vectors: ArrayLike) -> np.ndarray:
        """Coordinates in the rref basis; raises LinearAlgebraError for vectors outside."""
        arr = self.field.reduce(vectors)
        if np.any(self.reduce(arr)):
            raise LinearAlgebraError("vector does not lie in the subspace")
        return arr[..., self._pivot_array]

    def sum(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace.from_vectors(np.vstack([self.basis, other.basis]), self.ambient_dim, self.field)

    def intersect(self, other: Subspace) -> Subspace:
        """Intersection, read off the kernel of the stacked system [U; -V]^T."""
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim, self.field)
        stacked = np.vstack([self.basis, self.field.neg(other.basis)]).T
        relations = kernel_basis(stacked, self.field)
        vectors = self.field.matmul(relations.basis[:, : self.dim], self.basis)
        return Subspace.from_vectors(vectors, self.ambient_dim, self.field)

    def equal(self, other: Subspace) -> bool:
        self._check(other)
        return self.pivots == other.pivots and np.array_equal(self.basis, other.basis)

    def is_subspace_of(self, other: Subspace) -> bool:
        self._check(other)
        return other.contains(self.basis) if self.dim else True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.field == other.field
            and self.pivots == other.pivots
            and np.array_equal(self.basis, other.basis)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim}, p={self.field.p})"


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    return u.sum(v)


def intersect(u: Subspace, v: Subspace) -> Subspace:
    return u.intersect(v)


def contains(u: Subspace, v: ArrayLike) -> bool:
    return u.contains(v)


def equal(u: Subspace, v: Subspace) -> bool:
    return u.equal(v)


def span(vectors: Iterable[ArrayLike], ambient_dim: int, field: PrimeField) -> Subspace:
    rows = [np.asarray(v, dtype=np.int64).reshape(-1) for v in vectors]
    if not rows:
        return Subspace.zero(ambient_dim, field)
    return Subspace.from_vectors(np.vstack(rows), ambient_dim, field)


def spin(seed: Subspace, generators: np.ndarray) -> Subspace:
    """Smallest subspace containing ``seed`` and stable under every matrix in ``generators``.

    ``generators`` has shape (g, n, n) and acts on column vectors.
    """
    f = seed.field
    n = seed.ambient_dim
    if generators.shape[0] == 0 or seed.dim == 0:
        return seed
    stacked = np.concatenate(list(f.reduce(generators).transpose(0, 2, 1)), axis=1)
    current = seed
    frontier = seed.basis
    while frontier.shape[0]:
        images = f.matmul(frontier, stacked).reshape(-1, n)
        fresh = current.reduce(images)
        fresh = fresh[np.any(fresh, axis=1)]
        if fresh.shape[0] == 0:
            break
        new = Subspace.from_vectors(fresh, n, f)
        current = current.sum(new)
        frontier = new.basis
        if current.dim == n:
            break
    logger.debug("spun subspace of dim %d up to dim %d", seed.dim, current.dim)
    return current
