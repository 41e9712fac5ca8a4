"""Orthosymplectic superalgebras and triality superalgebras of symmetric composition superalgebras.

A triple (d0, d1, d2) is stored as the block-diagonal operator diag(d0, d1, d2) on S + S + S, so
tri(S) is a graded subspace of gl(3n) and its componentwise bracket is the graded commutator.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING

import numpy as np

from supermagic.lib.checks import dims_of, hom_check
from supermagic.lib.composition import make_quaternion
from supermagic.lib.constants import SUPER_CHARACTERISTIC, SupermagicError
from supermagic.lib.exact_linalg import Subspace, kernel_basis, solve
from supermagic.lib.operators import GradedSubspace, homogeneous_solutions
from supermagic.lib.reports import CheckReport, Witness, stopwatch
from supermagic.lib.supercore import (
    GradedLinearMap,
    ParityError,
    SuperAlgebra,
    SuperSpace,
    vector_parity,
)
from supermagic.types import CheckStatus, CompositionName

if TYPE_CHECKING:
    from collections.abc import Iterator

    from numpy.typing import ArrayLike

    from supermagic.lib.composition import HurwitzSuperalgebra, SymmetricComposition
    from supermagic.lib.exact_linalg import PrimeField

logger = logging.getLogger(__name__)


class TrialityError(SupermagicError):
    """A triple expected to lie in tri(S) does not, or a decomposition is not direct."""


@dataclass(frozen=True, eq=False)
class TrialityElement:
    """Homogeneous triple (d0, d1, d2) of endomorphisms of S; ``d[:, x]`` is the image of basis x."""

    d0: np.ndarray
    d1: np.ndarray
    d2: np.ndarray
    parity: int = 0

    @property
    def components(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (self.d0, self.d1, self.d2)

    @property
    def n(self) -> int:
        return int(self.d0.shape[0])

    def block_matrix(self) -> np.ndarray:
        n = self.n
        m = np.zeros((3 * n, 3 * n), dtype=np.int64)
        for c, d in enumerate(self.components):
            m[c * n : (c + 1) * n, c * n : (c + 1) * n] = d
        return m

    @classmethod
    def from_block_matrix(cls, m: np.ndarray, parity: int = 0) -> TrialityElement:
        n = m.shape[0] // 3
        blocks = [np.asarray(m[c * n : (c + 1) * n, c * n : (c + 1) * n], dtype=np.int64) for c in range(3)]
        return cls(blocks[0], blocks[1], blocks[2], parity)

    def maps(self, space: SuperSpace, field: PrimeField) -> tuple[GradedLinearMap, ...]:
        return tuple(GradedLinearMap(space, space, d, field, self.parity) for d in self.components)

    def is_zero(self) -> bool:
        return not any(np.any(d) for d in self.components)


def block_support(n: int) -> np.ndarray:
    """Entries of diag(d0, d1, d2) that may be nonzero."""
    support = np.zeros((3 * n, 3 * n), dtype=bool)
    for c in range(3):
        support[c * n : (c + 1) * n, c * n : (c + 1) * n] = True
    return support


def _scatter(block: np.ndarray, component: int, n: int) -> np.ndarray:
    """Coefficient rows on one n x n block placed into the flattened 3n x 3n operator."""
    rows = block.shape[0]
    out = np.zeros((rows, 3 * n, 3 * n), dtype=np.int64)
    out[:, component * n : (component + 1) * n, component * n : (component + 1) * n] = block.reshape(rows, n, n)
    return out.reshape(rows, 9 * n * n)


def osp_equations(S: SymmetricComposition, parity: int) -> np.ndarray:
    """Rows (a, b) of b(d e_a, e_b) + (-1)^{|d||a|} b(e_a, d e_b) = 0 over unknowns d[r, s]."""
    n = S.dim
    G = S.gram
    eye = np.eye(n, dtype=np.int64)
    signs = 1 - 2 * (parity * S.parity)
    coef = np.einsum("sa,rb->abrs", eye, G) + signs[:, None, None, None] * np.einsum("ar,sb->abrs", G, eye)
    return S.field.reduce(coef.reshape(n * n, n * n))


def osp(S: SymmetricComposition) -> GradedSubspace:
    """osp(S, b) as a graded subspace of gl(S).

    Raises:
        DegenerateFormError: If the form of S is degenerate
    """
    S.form.require_regular()
    return homogeneous_solutions(
        lambda parity: [osp_equations(S, parity)],
        S.space.parity,
        S.space.parity,
        S.field,
        label=f"osp {S.name}",
    )


def osp_basis(S: SymmetricComposition) -> list[GradedLinearMap]:
    """Homogeneous basis of osp(S, b), even maps first."""
    space = osp(S)
    return [
        GradedLinearMap(S.space, S.space, m, S.field, int(par))
        for m, par in zip(space.basis_matrices(), space.parities, strict=True)
    ]


def triality_equations(S: SymmetricComposition, parity: int) -> np.ndarray:
    """Rows (a, b, k) of d0(x∙y) - d1(x)∙y - (-1)^{|d||x|} x∙d2(y) = 0 on basis x = e_a, y = e_b."""
    n = S.dim
    P = S.table
    eye = np.eye(n, dtype=np.int64)
    signs = 1 - 2 * (parity * S.parity)
    rows = n * n * n
    term0 = np.einsum("rk,abs->abkrs", eye, P).reshape(rows, n * n)
    term1 = -np.einsum("sa,rbk->abkrs", eye, P).reshape(rows, n * n)
    term2 = -(signs[:, None, None, None, None] * np.einsum("sb,ark->abkrs", eye, P)).reshape(rows, n * n)
    return S.field.reduce(_scatter(term0, 0, n) + _scatter(term1, 1, n) + _scatter(term2, 2, n))


def _tri_system(S: SymmetricComposition, parity: int) -> Iterator[np.ndarray]:
    block = osp_equations(S, parity)
    for c in range(3):
        yield _scatter(block, c, S.dim)
    yield triality_equations(S, parity)


@dataclass(frozen=True, eq=False)
class TrialityAlgebra:
    """tri(S): a basis of triples with parities, and the Lie superalgebra they span."""

    S: SymmetricComposition
    space: GradedSubspace
    lie: SuperAlgebra

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def graded_dim(self) -> tuple[int, int]:
        return self.space.graded_dim

    @property
    def parities(self) -> np.ndarray:
        return self.space.parities

    @cached_property
    def elements(self) -> tuple[TrialityElement, ...]:
        return tuple(
            TrialityElement.from_block_matrix(m, int(par))
            for m, par in zip(self.space.basis_matrices(), self.parities, strict=True)
        )

    def coordinates(self, t: TrialityElement) -> np.ndarray:
        """Coordinates of t in the tri(S) basis.

        Raises:
            ClosureError: If t is not in tri(S)
        """
        return self.space.coordinates(t.block_matrix())

    def element(self, coords: ArrayLike) -> TrialityElement:
        c = self.S.field.reduce(coords)
        mats = self.space.basis_matrices()
        if self.dim:
            m = self.S.field.reduce(np.tensordot(c, mats, axes=1))
        else:
            m = np.zeros((3 * self.S.dim,) * 2, dtype=np.int64)
        support = np.flatnonzero(c)
        parity = int(self.parities[support[0]]) if support.size else 0
        return TrialityElement.from_block_matrix(m, parity)


def tri_basis(S: SymmetricComposition) -> TrialityAlgebra:
    """Solve for tri(S) inside osp(S)^3 and attach its bracket."""
    n = S.dim
    S.form.require_regular()
    space = homogeneous_solutions(
        lambda parity: _tri_system(S, parity),
        tuple(S.space.parity) * 3,
        tuple(S.space.parity) * 3,
        S.field,
        support=block_support(n),
        label=f"tri {S.name}",
    )
    lie = space.as_lie(f"tri({S.name})")
    logger.info("tri(%s) has graded dimension %s", S.name, space.graded_dim)
    return TrialityAlgebra(S, space, lie)


def theta(t: TrialityElement) -> TrialityElement:
    """(d0, d1, d2) -> (d2, d0, d1)."""
    return TrialityElement(t.d2, t.d0, t.d1, t.parity)


def theta_power(t: TrialityElement, i: int) -> TrialityElement:
    for _ in range(i % 3):
        t = theta(t)
    return t


def theta_matrices(mats: np.ndarray, i: int = 1) -> np.ndarray:
    """θ^i applied to a stack of block-diagonal operators."""
    n = mats.shape[-1] // 3
    blocks = [np.arange(c * n, (c + 1) * n) for c in range(3)]
    shift = i % 3
    idx = np.concatenate([blocks[(c - shift) % 3] for c in range(3)])
    return mats[..., idx[:, None], idx[None, :]]


def theta_map(T: TrialityAlgebra) -> GradedLinearMap:
    """θ as an even linear endomorphism of tri(S) in its basis."""
    mats = theta_matrices(T.space.basis_matrices())
    coords = T.space.coordinates(mats.reshape(T.dim, -1)) if T.dim else np.zeros((0, 0), dtype=np.int64)
    return GradedLinearMap(T.lie.space, T.lie.space, coords.T, T.S.field)


def _homogeneous_parity(S: SymmetricComposition, v: np.ndarray) -> int:
    parity = vector_parity(S.space, v)
    if parity is None:
        raise ParityError("element is not homogeneous")
    return parity


def sigma_xy(S: SymmetricComposition, x: ArrayLike, y: ArrayLike) -> GradedLinearMap:
    """σ_{x,y}(z) = (-1)^{|y||z|} b(x,z) y - (-1)^{|x|(|y|+|z|)} b(y,z) x."""
    f = S.field
    xv, yv = f.reduce(x), f.reduce(y)
    px, py = _homogeneous_parity(S, xv), _homogeneous_parity(S, yv)
    pz = S.parity
    bx = f.matmul(xv, S.gram)
    by = f.matmul(yv, S.gram)
    sy = 1 - 2 * ((py * pz) % 2)
    sx = 1 - 2 * ((px * (py + pz)) % 2)
    matrix = f.reduce(np.outer(yv, bx * sy) - np.outer(xv, by * sx))
    return GradedLinearMap(S.space, S.space, matrix, f, (px + py) % 2)


def left_para(S: SymmetricComposition, x: np.ndarray) -> np.ndarray:
    """Matrix of l_x: z -> x∙z."""
    return S.field.reduce(np.tensordot(x, S.algebra.left_ops, axes=1))


def right_para(S: SymmetricComposition, x: np.ndarray, px: int) -> np.ndarray:
    """Matrix of r_x: z -> (-1)^{|x||z|} z∙x."""
    signs = 1 - 2 * (px * S.parity)
    return S.field.reduce(np.tensordot(x, S.algebra.right_ops, axes=1) * signs[None, :])


def triality_defect(S: SymmetricComposition, t: TrialityElement) -> str | None:
    """Why t fails to lie in tri(S), or None."""
    f = S.field
    G = S.gram
    P = S.table
    signs = 1 - 2 * (t.parity * S.parity)
    for c, d in enumerate(t.components):
        if np.any(f.reduce(d.T @ G + signs[:, None] * (G @ d))):
            return f"d{c} is not in osp"
    term0 = np.einsum("kr,abr->abk", t.d0, P)
    term1 = np.einsum("ra,rbk->abk", t.d1, P)
    term2 = signs[:, None, None] * np.einsum("rb,ark->abk", t.d2, P)
    bad = np.argwhere(np.any(f.reduce(term0 - term1 - term2), axis=2))
    if bad.size:
        a, b = bad[0]
        return f"triality relation fails on ({S.labels[a]}, {S.labels[b]})"
    return None


def t_xy(S: SymmetricComposition, x: ArrayLike, y: ArrayLike) -> TrialityElement:
    """t_{x,y} = (σ_{x,y}, ½b(x,y)1 - r_x l_y, ½b(x,y)1 - l_x r_y).

    Raises:
        TrialityError: If the triple does not satisfy the triality relation
    """
    f = S.field
    xv, yv = f.reduce(x), f.reduce(y)
    px, py = _homogeneous_parity(S, xv), _homogeneous_parity(S, yv)
    sigma = sigma_xy(S, xv, yv).matrix
    scalar = f.scalar(f.half * S.form(xv, yv)) * np.eye(S.dim, dtype=np.int64)
    lx, ly = left_para(S, xv), left_para(S, yv)
    rx, ry = right_para(S, xv, px), right_para(S, yv, py)
    t = TrialityElement(
        sigma,
        f.reduce(scalar - f.matmul(rx, ly)),
        f.reduce(scalar - f.matmul(lx, ry)),
        (px + py) % 2,
    )
    defect = triality_defect(S, t)
    if defect is not None:
        raise TrialityError(f"t_(x,y) in {S.name}: {defect}")
    return t


def t_elements(S: SymmetricComposition) -> list[TrialityElement]:
    """θ^i(t_{x,y}) for all basis pairs (x, y) and i = 0, 1, 2."""
    out = []
    for a in range(S.dim):
        for b in range(S.dim):
            t = t_xy(S, S.algebra.basis_vector(a), S.algebra.basis_vector(b))
            out += [theta_power(t, i) for i in range(3)]
    return out


def t_span(S: SymmetricComposition, T: TrialityAlgebra | None = None) -> Subspace:
    """Span of all θ^i(t_{x,y}) in the coordinates of tri(S)."""
    T = T or tri_basis(S)
    if T.dim == 0:
        return Subspace.zero(0, S.field)
    coords = np.vstack([T.coordinates(t) for t in t_elements(S)])
    return Subspace.from_vectors(coords, T.dim, S.field)


@dataclass(frozen=True, eq=False)
class QuaternionTriality:
    """tri(Q̄) = ker π0 + ker π1 + ker π2 with the closed-form elements K_j(a), a in Q0."""

    T: TrialityAlgebra
    kernels: tuple[Subspace, Subspace, Subspace]
    elements: tuple[tuple[TrialityElement, ...], ...]
    element_coordinates: np.ndarray

    def decompose(self, t: TrialityElement) -> np.ndarray:
        """Coefficients c[j, a] with t = sum c[j, a] K_j(e_a).

        Raises:
            TrialityError: If t is not in tri(Q̄)
        """
        coords = self.T.coordinates(t)
        x = solve(self.element_coordinates.T, coords, self.T.S.field)
        if x is None:
            raise TrialityError("element is not in the span of the closed-form kernels")
        return x.reshape(3, 3)


def kernel_elements(Q: HurwitzSuperalgebra, j: int, a: int) -> TrialityElement:
    """K_0(a) = (0, -R_a, L_a), K_1(a) = (L_a, 0, -R_a), K_2(a) = (-R_a, L_a, 0) for a = e_a of Q0."""
    f = Q.field
    L = Q.algebra.left_ops[1 + a]
    R = Q.algebra.right_ops[1 + a]
    zero = np.zeros_like(L)
    pattern = [zero, f.neg(R), L]
    shifted = [pattern[(c - j) % 3] for c in range(3)]
    return TrialityElement(shifted[0], shifted[1], shifted[2], 0)


def quaternion_tri_decomposition(
    Qbar: SymmetricComposition,
    Q: HurwitzSuperalgebra | None = None,
    T: TrialityAlgebra | None = None,
) -> QuaternionTriality:
    """Verify tri(Q̄) = ker π0 + ker π1 + ker π2 with the closed forms of the kernels.

    ``Q`` is the quaternion algebra whose opposite has para-Hurwitz algebra ``Qbar``.

    Raises:
        TrialityError: If a closed form is not in tri(Q̄), differs from ker π_j, or the sum is not direct
    """
    f = Qbar.field
    Q = Q or make_quaternion(f)
    T = T or tri_basis(Qbar)
    n = Qbar.dim
    elements = tuple(tuple(kernel_elements(Q, j, a) for a in range(3)) for j in range(3))
    for row in elements:
        for t in row:
            defect = triality_defect(Qbar, t)
            if defect is not None:
                raise TrialityError(f"closed-form kernel element is not in tri(Qbar): {defect}")
    coords = np.array([[T.coordinates(t) for t in row] for row in elements])
    mats = T.space.basis_matrices()
    kernels = []
    for j in range(3):
        projection = mats[:, j * n : (j + 1) * n, j * n : (j + 1) * n].reshape(T.dim, n * n).T
        ker = kernel_basis(projection, f)
        closed = Subspace.from_vectors(coords[j], T.dim, f)
        if not ker.equal(closed) or closed.dim != 3:
            raise TrialityError(f"ker π{j} does not match its closed form")
        kernels.append(closed)
    total = kernels[0].sum(kernels[1]).sum(kernels[2])
    if total.dim != 9 or total.dim != T.dim:
        raise TrialityError(f"kernels span dimension {total.dim} in tri(Qbar) of dimension {T.dim}")
    logger.info("tri(%s) = ker π0 + ker π1 + ker π2 verified", Qbar.name)
    return QuaternionTriality(T, (kernels[0], kernels[1], kernels[2]), elements, coords.reshape(9, T.dim))


def check_t_span(S: SymmetricComposition, T: TrialityAlgebra | None = None) -> CheckReport:
    """The θ^i(t_{x,y}) span tri(S), except for S2 in characteristic 3 where they span a hyperplane."""
    T = T or tri_basis(S)
    expected = 1 if S.name == CompositionName.S2.value and S.field.p == SUPER_CHARACTERISTIC else 0
    with stopwatch() as timings:
        span = t_span(S, T)
    codim = T.dim - span.dim
    witnesses: list[Witness] = []
    if codim != expected:
        witnesses.append(Witness(kind="codimension", detail=f"t-span has codim {codim} in tri, expected {expected}"))
    return CheckReport(
        name=f"t-span:{S.name}",
        status=CheckStatus.FAIL if witnesses else CheckStatus.PASS,
        subject=f"tri({S.name})",
        p=S.field.p,
        dims=dims_of(T.lie),
        witnesses=witnesses,
        details={"span_dim": span.dim, "codim": codim},
        timings=timings,
    )


def check_theta(T: TrialityAlgebra) -> CheckReport:
    """θ is an automorphism of tri(S)."""
    return hom_check(theta_map(T), T.lie, T.lie, require_bijective=True, name=f"theta:{T.S.name}")
