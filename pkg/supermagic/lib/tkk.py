"""The Tits construction T(Q, H) = (Q0 ⊗ H) + der H and the Tits-Kantor-Koecher superalgebra.

Basis order: e0⊗H, e1⊗H, e2⊗H (each in the basis order of H), then the basis of der H.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING

import numpy as np

from supermagic.lib.checks import check_products_within, dims_of
from supermagic.lib.composition import HurwitzSuperalgebra, make_quaternion
from supermagic.lib.constants import SupermagicError
from supermagic.lib.exact_linalg import Subspace
from supermagic.lib.operators import GradedSubspace, derivations, inner_derivation_operators
from supermagic.lib.reports import CheckReport, Witness, stopwatch
from supermagic.lib.supercore import ClosureError, SuperAlgebra, SuperSpace
from supermagic.types import AlgebraKind, CheckStatus

if TYPE_CHECKING:
    from numpy.typing import ArrayLike

    from supermagic.lib.exact_linalg import PrimeField

logger = logging.getLogger(__name__)

# Positions of e0, e1, e2 in the basis [1, e0, e1, e2] of Q
TRACELESS = (1, 2, 3)


class TitsError(SupermagicError):
    """Inner derivations of H do not land in the supplied der H."""


@dataclass(frozen=True, eq=False)
class QuaternionBasis:
    """Q with basis {1, e0, e1, e2} and its traceless part Q0 = span{e0, e1, e2}."""

    C: HurwitzSuperalgebra

    @property
    def algebra(self) -> SuperAlgebra:
        return self.C.algebra

    @property
    def field(self) -> PrimeField:
        return self.C.field

    def b_q(self, x: ArrayLike, y: ArrayLike) -> int:
        """Polar form of the norm."""
        return self.C.form(x, y)

    def norm(self, x: ArrayLike) -> int:
        return self.field.scalar(self.field.half * self.C.form(x, x))

    @cached_property
    def traceless_gram(self) -> np.ndarray:
        idx = list(TRACELESS)
        return self.C.form.gram[np.ix_(idx, idx)]

    @cached_property
    def commutators(self) -> np.ndarray:
        """[e_a, e_b] = sum_c comm[a, b, c] e_c for a, b, c in 0..2."""
        t = self.algebra.table
        idx = list(TRACELESS)
        full = self.field.reduce(t - t.transpose(1, 0, 2))
        return full[np.ix_(idx, idx, idx)]

    def traceless_vector(self, coords: ArrayLike) -> np.ndarray:
        v = np.zeros(4, dtype=np.int64)
        v[list(TRACELESS)] = self.field.reduce(coords)
        return v


def make_split_quaternion(field: PrimeField | None = None) -> QuaternionBasis:
    """Q with e_i² = -1 and e_i e_{i+1} = -e_{i+2}; split when p = 3."""
    return QuaternionBasis(make_quaternion(field))


def check_traceless_lie(Q: QuaternionBasis) -> CheckReport:
    """Q0 is closed under the commutator and [Q0, Q0] = Q0."""
    f = Q.field
    t = Q.algebra.table
    idx = list(TRACELESS)
    witnesses: list[Witness] = []
    with stopwatch() as timings:
        full = f.reduce(t - t.transpose(1, 0, 2))
        leaks = np.argwhere(full[np.ix_(idx, idx, [0])][:, :, 0])
        for a, b in leaks[:5]:
            witnesses.append(Witness(kind="closure", labels=[f"e{a}", f"e{b}"], detail="commutator leaves Q0"))
        derived = Subspace.from_vectors(Q.commutators.reshape(9, 3), 3, f)
        if derived.dim != 3:
            witnesses.append(Witness(kind="derived", detail=f"[Q0, Q0] has dim {derived.dim}"))
    return CheckReport(
        name="traceless-lie:Q",
        status=CheckStatus.FAIL if witnesses else CheckStatus.PASS,
        subject=Q.algebra.name,
        p=f.p,
        witnesses=witnesses,
        details={"norm_e0+e1+e2": Q.norm([0, 1, 1, 1])},
        timings=timings,
    )


@dataclass(frozen=True, eq=False)
class TitsAlgebra:
    """T(Q, H) with the der H basis its derivation block uses."""

    Q: QuaternionBasis
    H: SuperAlgebra
    der: GradedSubspace
    T: SuperAlgebra

    @property
    def name(self) -> str:
        return self.T.name

    @property
    def n(self) -> int:
        return self.H.dim

    @property
    def der_range(self) -> range:
        return range(3 * self.n, self.T.dim)

    def block_index(self, i: int, k: int) -> int:
        return i * self.n + k

    def block_range(self, i: int) -> range:
        return range(i * self.n, (i + 1) * self.n)

    def tensor(self, a: ArrayLike, x: ArrayLike) -> np.ndarray:
        """a⊗x for a in Q0 given in e0, e1, e2 coordinates and x in H."""
        f = self.H.field
        v = np.zeros(self.T.dim, dtype=np.int64)
        v[: 3 * self.n] = np.kron(f.reduce(a), f.reduce(x))
        return f.reduce(v)

    def derivation(self, matrix: ArrayLike) -> np.ndarray:
        """The vector of T for an operator in der H.

        Raises:
            ClosureError: If the operator is not in der H
        """
        v = np.zeros(self.T.dim, dtype=np.int64)
        v[3 * self.n :] = self.der.coordinates(np.asarray(matrix))
        return v

    @cached_property
    def der_subspace(self) -> Subspace:
        return Subspace.from_vectors(np.eye(self.T.dim, dtype=np.int64)[3 * self.n :], self.T.dim, self.H.field)

    @cached_property
    def module_subspace(self) -> Subspace:
        return Subspace.from_vectors(np.eye(self.T.dim, dtype=np.int64)[: 3 * self.n], self.T.dim, self.H.field)


def inner_coordinates(H: SuperAlgebra, der: GradedSubspace) -> np.ndarray:
    """d_{x,y} = [L_x, L_y] for basis pairs in the coordinates of der H, shape (n, n, dim der).

    Raises:
        TitsError: If some [L_x, L_y] is not in ``der``
    """
    n = H.dim
    ops, _ = inner_derivation_operators(H)
    try:
        return der.coordinates(ops.reshape(n * n, n * n)).reshape(n, n, der.dim)
    except ClosureError as e:
        raise TitsError(f"[L_x, L_y] of {H.name} is not a derivation") from e


def make_tits(Q: QuaternionBasis, H: SuperAlgebra, der: GradedSubspace | None = None) -> TitsAlgebra:
    """T(Q, H) with [d, a⊗x] = a⊗d(x) and [a⊗x, b⊗y] = [a, b]⊗xy - 2 b_q(a, b) d_{x,y}.

    Raises:
        TitsError: If the inner derivations of H leave der H
        SuperAlgebraError: If the assembled bracket is not super-anticommutative
    """
    f = H.field
    if Q.field != f:
        raise TitsError("Q and H live over different fields")
    der = der if der is not None else derivations(H)
    n = H.dim
    m = der.dim
    N = 3 * n + m
    dlie = der.as_lie(f"der({H.name})")
    D = der.basis_matrices()
    dpar = der.parities
    hpar = H.parity
    dcoord = inner_coordinates(H, der)

    table = np.zeros((N, N, N), dtype=np.int64)
    body = np.einsum("abc,klr->akblcr", Q.commutators, H.table).reshape(3 * n, 3 * n, 3 * n)
    table[: 3 * n, : 3 * n, : 3 * n] = body
    inner = np.einsum("ab,klm->akblm", -2 * Q.traceless_gram, dcoord).reshape(3 * n, 3 * n, m)
    table[: 3 * n, : 3 * n, 3 * n :] = inner
    signs = 1 - 2 * np.outer(dpar, hpar)  # (m, n)
    for a in range(3):
        blk = slice(a * n, (a + 1) * n)
        # [D_m, a⊗h_k] = sum_r D_m[r, k] a⊗h_r
        table[3 * n :, blk, blk] = D.transpose(0, 2, 1)
        table[blk, 3 * n :, blk] = -(signs[:, :, None] * D.transpose(0, 2, 1)).transpose(1, 0, 2)
    table[3 * n :, 3 * n :, 3 * n :] = dlie.table

    labels = [f"e{a}⊗{h}" for a in range(3) for h in H.labels] + list(dlie.labels)
    parity = [int(b) for b in hpar] * 3 + [int(b) for b in dpar]
    T = SuperAlgebra.from_table(
        f"T(Q,{H.name})",
        SuperSpace.build(labels, parity),
        f.reduce(table),
        f,
        AlgebraKind.LIE,
        strict=True,
    )
    logger.info("built %s of graded dimension %s", T.name, T.graded_dim)
    return TitsAlgebra(Q, H, der, T)


def tkk(J: SuperAlgebra, der: GradedSubspace | None = None) -> TitsAlgebra:
    """Tits-Kantor-Koecher superalgebra of J as T(Q, J) with Q split."""
    return make_tits(make_split_quaternion(J.field), J, der)


def check_tits_structure(A: TitsAlgebra) -> list[CheckReport]:
    """der H is a subalgebra and Q0⊗H a der H-submodule of T(Q, H)."""
    T = A.T
    return [
        check_products_within(T, A.der_subspace, A.der_subspace, A.der_subspace, f"der-subalgebra:{T.name}"),
        check_products_within(T, A.der_subspace, A.module_subspace, A.module_subspace, f"der-module:{T.name}"),
    ]


def check_tits_symmetry(A: TitsAlgebra) -> CheckReport:
    """d_{x,y} = -(-1)^{|x||y|} d_{y,x} on basis pairs, the condition behind super-anticommutativity."""
    H = A.H
    n = H.dim
    f = H.field
    with stopwatch() as timings:
        d = inner_coordinates(H, A.der)
        signs = 1 - 2 * np.outer(H.parity, H.parity)
        bad = np.argwhere(np.any(f.reduce(d + signs[:, :, None] * d.transpose(1, 0, 2)), axis=2))
    witnesses = [
        Witness(kind="inner-symmetry", indices=[int(i), int(j)], labels=[H.labels[i], H.labels[j]])
        for i, j in bad[:5]
    ]
    return CheckReport(
        name=f"tits-symmetry:{A.name}",
        status=CheckStatus.FAIL if witnesses else CheckStatus.PASS,
        subject=A.name,
        p=f.p,
        dims=dims_of(A.T),
        witnesses=witnesses,
        details={"pairs": n * n},
        timings=timings,
    )
