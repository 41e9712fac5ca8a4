"""Jordan superalgebras H3(C), K3 and K9, their derivations and structure superalgebras.

H3(C) uses the basis e0, e1, e2, then ι0(C), ι1(C), ι2(C), each ι-block in the basis order of C.
The ι-products go through the para-Hurwitz product x∙y = x̄ȳ of C.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING

import numpy as np

from supermagic.lib.checks import check_grading, dims_of
from supermagic.lib.composition import (
    HurwitzSuperalgebra,
    SymmetricComposition,
    para_hurwitz,
    require_characteristic_three,
)
from supermagic.lib.config import resolve_field
from supermagic.lib.exact_linalg import Subspace, kernel_basis
from supermagic.lib.operators import (
    GradedSubspace,
    derivations,
    graded_commutator,
    inner_derivations,
    left_multiplications,
    operator_tensor,
)
from supermagic.lib.reports import CheckReport, Witness, stopwatch
from supermagic.lib.supercore import (
    BilinearForm,
    GradedLinearMap,
    ParityError,
    SuperAlgebra,
    SuperSpace,
    derived_subalgebra,
    graded_tensor,
    projection,
    quotient,
)
from supermagic.types import AlgebraKind, CheckStatus

if TYPE_CHECKING:
    from numpy.typing import ArrayLike

    from supermagic.lib.exact_linalg import PrimeField
    from supermagic.lib.triality import TrialityAlgebra, TrialityElement

logger = logging.getLogger(__name__)

# Z2 x Z2 degrees of e_i and of the blocks ι0, ι1, ι2
IOTA_DEGREES = ((1, 0), (0, 1), (1, 1))


@dataclass(frozen=True, eq=False)
class H3Algebra:
    """H3(C) with its para-Hurwitz algebra S and the index layout of its blocks."""

    C: HurwitzSuperalgebra
    S: SymmetricComposition
    J: SuperAlgebra

    @property
    def name(self) -> str:
        return self.J.name

    @property
    def n(self) -> int:
        return self.C.dim

    @property
    def field(self) -> PrimeField:
        return self.J.field

    def iota_range(self, i: int) -> range:
        start = 3 + (i % 3) * self.n
        return range(start, start + self.n)

    def iota_index(self, i: int, k: int) -> int:
        return 3 + (i % 3) * self.n + k

    def iota(self, i: int, a: ArrayLike) -> np.ndarray:
        """The vector ι_i(a) of J."""
        v = np.zeros(self.J.dim, dtype=np.int64)
        v[self.iota_range(i).start : self.iota_range(i).stop] = self.field.reduce(a)
        return v

    def e(self, i: int) -> np.ndarray:
        return self.J.basis_vector(i % 3)

    @cached_property
    def degrees(self) -> np.ndarray:
        degs = [(0, 0)] * 3
        for i in range(3):
            degs += [IOTA_DEGREES[i]] * self.n
        return np.asarray(degs, dtype=np.int64)


def make_H3(C: HurwitzSuperalgebra, name: str | None = None) -> H3Algebra:
    """Hermitian 3x3 matrices over C with the supercommutative product of (α), ι_i(a)."""
    f = C.field
    S = para_hurwitz(C)
    n = C.dim
    N = 3 + 3 * n
    half = f.half
    P = S.table
    G = C.form.gram
    par = C.parity
    table = np.zeros((N, N, N), dtype=np.int64)
    for i in range(3):
        table[i, i, i] = 1
    swap = 1 - 2 * np.outer(par, par)
    for i in range(3):
        rows = np.arange(3 + i * n, 3 + (i + 1) * n)
        nxt = np.arange(3 + ((i + 1) % 3) * n, 3 + ((i + 1) % 3 + 1) * n)
        out = np.arange(3 + ((i + 2) % 3) * n, 3 + ((i + 2) % 3 + 1) * n)
        for j in ((i + 1) % 3, (i + 2) % 3):
            table[j, rows, rows] = half
            table[rows, j, rows] = half
        # ι_i(a) ι_{i+1}(b) = ι_{i+2}(a∙b), the reverse by supercommutativity
        table[np.ix_(rows, nxt, out)] = P
        table[np.ix_(nxt, rows, out)] = (swap[:, :, None] * P).transpose(1, 0, 2)
        # ι_i(a) ι_i(b) = 2 b(a, b)(e_{i+1} + e_{i+2})
        for j in ((i + 1) % 3, (i + 2) % 3):
            table[np.ix_(rows, rows, [j])] = 2 * G[:, :, None]
    labels = ["e0", "e1", "e2"] + [f"ι{i}({label})" for i in range(3) for label in C.algebra.labels]
    parity = [0, 0, 0] + [int(b) for b in par] * 3
    unit = np.zeros(N, dtype=np.int64)
    unit[:3] = 1
    J = SuperAlgebra.from_table(
        name or f"H3({C.name})",
        SuperSpace.build(labels, parity),
        f.reduce(table),
        f,
        AlgebraKind.JORDAN,
        unit=unit,
        strict=True,
    )
    logger.info("built %s of graded dimension %s", J.name, J.graded_dim)
    return H3Algebra(C, S, J)


def make_K3(field: PrimeField | None = None) -> SuperAlgebra:
    """Tiny Kaplansky superalgebra on [e, x, y]: e² = e, ex = xe = ½x, ey = ye = ½y, xy = e = -yx."""
    f = resolve_field(field)
    half = f.half
    table = np.zeros((3, 3, 3), dtype=np.int64)
    table[0, 0, 0] = 1
    for w in (1, 2):
        table[0, w, w] = table[w, 0, w] = half
    table[1, 2, 0] = 1
    table[2, 1, 0] = -1
    gram = np.array([[2, 0, 0], [0, 0, 1], [0, -1, 0]], dtype=np.int64)
    return SuperAlgebra.from_table(
        "K3",
        SuperSpace.build(["e", "x", "y"], [0, 1, 1]),
        f.reduce(table),
        f,
        AlgebraKind.JORDAN,
        form=BilinearForm(gram, f),
        strict=True,
    )


def make_K9(field: PrimeField | None = None) -> SuperAlgebra:
    """K3 ⊗ K3.

    Raises:
        CharacteristicError: If p != 3
    """
    f = resolve_field(field)
    require_characteristic_three(f, "K9")
    K3 = make_K3(f)
    return graded_tensor(K3, K3, "K9")


def D_from_tri(H: H3Algebra, t: TrialityElement) -> GradedLinearMap:
    """D(e_i) = 0 and D(ι_i(a)) = ι_i(d_i(a))."""
    J = H.J
    matrix = np.zeros((J.dim, J.dim), dtype=np.int64)
    for i, d in enumerate(t.components):
        r = H.iota_range(i)
        matrix[r.start : r.stop, r.start : r.stop] = d
    return GradedLinearMap(J.space, J.space, matrix, J.field, t.parity)


def _homogeneous_parity(H: H3Algebra, a: np.ndarray) -> int:
    support = np.flatnonzero(a)
    bits = set(H.C.parity[support].tolist()) if support.size else {0}
    if len(bits) != 1:
        raise ParityError(f"element of {H.C.name} is not homogeneous")
    return bits.pop()


def D_i(H: H3Algebra, i: int, a: ArrayLike) -> GradedLinearMap:
    """D_i(a) = 2[L_{ι_i(a)}, L_{e_{i+1}}]."""
    f = H.field
    av = f.reduce(a)
    pa = _homogeneous_parity(H, av)
    J = H.J
    L_iota = f.reduce(np.tensordot(H.iota(i, av), J.left_ops, axes=1))
    L_e = J.left_ops[(i + 1) % 3]
    matrix = f.reduce(2 * graded_commutator(L_iota, pa, L_e, 0, f))
    return GradedLinearMap(J.space, J.space, matrix, f, pa)


def D_i_closed_form(H: H3Algebra, i: int, a: ArrayLike) -> GradedLinearMap:
    """The action of D_i(a) on the basis read off from the product rules.

    e_i -> 0, e_{i+1} -> ½ι_i(a), e_{i+2} -> -½ι_i(a), ι_{i+1}(b) -> -ι_{i+2}(a∙b),
    ι_{i+2}(b) -> (-1)^{|a||b|} ι_{i+1}(b∙a), ι_i(b) -> 2b(a,b)(-e_{i+1} + e_{i+2}).
    """
    f = H.field
    av = f.reduce(a)
    pa = _homogeneous_parity(H, av)
    J = H.J
    S = H.S
    half = f.half
    i1, i2 = (i + 1) % 3, (i + 2) % 3
    matrix = np.zeros((J.dim, J.dim), dtype=np.int64)
    blk = H.iota_range(i)
    matrix[blk.start : blk.stop, i1] = half * av
    matrix[blk.start : blk.stop, i2] = -half * av
    left = np.tensordot(av, S.table, axes=(0, 0))  # left[b, k]: coefficient of e_k in a∙e_b
    right = np.tensordot(av, S.table, axes=(0, 1))  # right[b, k]: coefficient of e_k in e_b∙a
    blk1, blk2 = H.iota_range(i1), H.iota_range(i2)
    matrix[blk2.start : blk2.stop, blk1.start : blk1.stop] = -left.T
    signs = 1 - 2 * (pa * H.C.parity)
    matrix[blk1.start : blk1.stop, blk2.start : blk2.stop] = right.T * signs[None, :]
    ba = f.matmul(av, H.C.form.gram)
    matrix[i1, blk.start : blk.stop] = -2 * ba
    matrix[i2, blk.start : blk.stop] = 2 * ba
    return GradedLinearMap(J.space, J.space, f.reduce(matrix), f, pa)


def check_D_i_identities(H: H3Algebra) -> CheckReport:
    """Closed form of D_i(a) on basis a, D_i(a) = -2[L_{ι_i(a)}, L_{e_{i+2}}] and [L_{ι_i(a)}, L_{e_i}] = 0."""
    f = H.field
    J = H.J
    witnesses: list[Witness] = []
    with stopwatch() as timings:
        for i in range(3):
            for k in range(H.n):
                a = H.C.algebra.basis_vector(k)
                pa = int(H.C.parity[k])
                D = D_i(H, i, a).matrix
                label = f"ι{i}({H.C.algebra.labels[k]})"
                if not np.array_equal(D, D_i_closed_form(H, i, a).matrix):
                    witnesses.append(Witness(kind="closed-form", labels=[label], detail=f"D_{i} differs"))
                L_iota = f.reduce(np.tensordot(H.iota(i, a), J.left_ops, axes=1))
                other = f.reduce(-2 * graded_commutator(L_iota, pa, J.left_ops[(i + 2) % 3], 0, f))
                if not np.array_equal(D, other):
                    detail = f"D_{i} != -2[L, L_e{(i + 2) % 3}]"
                    witnesses.append(Witness(kind="second-form", labels=[label], detail=detail))
                if np.any(graded_commutator(L_iota, pa, J.left_ops[i], 0, f)):
                    witnesses.append(Witness(kind="commuting", labels=[label], detail=f"[L, L_e{i}] != 0"))
    return CheckReport(
        name=f"D_i:{J.name}",
        status=CheckStatus.FAIL if witnesses else CheckStatus.PASS,
        subject=J.name,
        p=f.p,
        dims=dims_of(J),
        witnesses=witnesses[:5],
        timings=timings,
    )


def check_h3_grading(H: H3Algebra) -> CheckReport:
    """The Z2 x Z2 grading with ι0, ι1, ι2 in degrees (1,0), (0,1), (1,1)."""
    return check_grading(H.J, H.degrees, f"z2z2:{H.J.name}")


@dataclass(frozen=True, eq=False)
class DerivationGrading:
    """der J and its components D_tri(S), D_0(S), D_1(S), D_2(S)."""

    der: GradedSubspace
    components: tuple[GradedSubspace, GradedSubspace, GradedSubspace, GradedSubspace]
    degrees: tuple[tuple[int, int], ...] = ((0, 0), *IOTA_DEGREES)

    @property
    def component_dims(self) -> list[tuple[int, int]]:
        return [c.graded_dim for c in self.components]

    @property
    def total(self) -> GradedSubspace:
        total = self.components[0]
        for c in self.components[1:]:
            total = total.sum(c)
        return total

    @property
    def is_direct(self) -> bool:
        return self.total.dim == sum(c.dim for c in self.components)

    @property
    def equals_der(self) -> bool:
        return self.total.equal(self.der)


def _operator_space(H: H3Algebra, maps: list[GradedLinearMap]) -> GradedSubspace:
    par = H.J.space.parity
    if not maps:
        return GradedSubspace.zero(par, par, H.field)
    return GradedSubspace.from_matrices(
        np.stack([m.matrix for m in maps]), [m.parity or 0 for m in maps], par, par, H.field
    )


def derJ_grading(H: H3Algebra, T: TrialityAlgebra, der: GradedSubspace | None = None) -> DerivationGrading:
    """der J by the solver, next to the spans of D_tri(S) and of each D_i(S)."""
    der = der if der is not None else derivations(H.J)
    tri_part = _operator_space(H, [D_from_tri(H, t) for t in T.elements])
    parts = [
        _operator_space(H, [D_i(H, i, H.C.algebra.basis_vector(k)) for k in range(H.n)]) for i in range(3)
    ]
    grading = DerivationGrading(der, (tri_part, parts[0], parts[1], parts[2]))
    logger.info("der %s = %s with components %s", H.name, der.graded_dim, grading.component_dims)
    return grading


def check_derJ_grading(H: H3Algebra, T: TrialityAlgebra, der: GradedSubspace | None = None) -> CheckReport:
    with stopwatch() as timings:
        grading = derJ_grading(H, T, der)
    witnesses = []
    if not grading.is_direct:
        witnesses.append(Witness(kind="direct-sum", detail=f"components {grading.component_dims} overlap"))
    if not grading.equals_der:
        witnesses.append(
            Witness(kind="span", detail=f"components span {grading.total.graded_dim}, der is {grading.der.graded_dim}")
        )
    return CheckReport(
        name=f"derJ-grading:{H.name}",
        status=CheckStatus.FAIL if witnesses else CheckStatus.PASS,
        subject=H.name,
        p=H.field.p,
        witnesses=witnesses,
        details={
            "der_dims": list(grading.der.graded_dim),
            "component_dims": [list(d) for d in grading.component_dims],
        },
        timings=timings,
    )


def tri_to_derJ_injective(H: H3Algebra, T: TrialityAlgebra, der: GradedSubspace | None = None) -> CheckReport:
    """D is injective on tri(S) and onto (der J)_(0,0) = {d in der J : d(e_i) = 0}."""
    f = H.field
    der = der if der is not None else derivations(H.J)
    with stopwatch() as timings:
        image = _operator_space(H, [D_from_tri(H, t) for t in T.elements])
        mats = der.basis_matrices()
        killing = mats[:, :, :3].reshape(der.dim, -1).T if der.dim else np.zeros((0, 0), dtype=np.int64)
        zero_part = kernel_basis(killing, f).dim if der.dim else 0
    witnesses = []
    if image.dim != T.dim:
        witnesses.append(Witness(kind="kernel", detail=f"image of dim {image.dim} for tri of dim {T.dim}"))
    if not image.is_subspace_of(der):
        witnesses.append(Witness(kind="not-derivation", detail="some D_t is not a derivation"))
    if image.dim != zero_part:
        witnesses.append(Witness(kind="dimension", detail=f"(der J)_(0,0) has dim {zero_part}"))
    return CheckReport(
        name=f"tri-to-derJ:{H.name}",
        status=CheckStatus.FAIL if witnesses else CheckStatus.PASS,
        subject=H.name,
        p=f.p,
        witnesses=witnesses,
        details={"tri_dim": T.dim, "der00_dim": zero_part},
        timings=timings,
    )


def inder_derived(der: GradedSubspace, name: str) -> Subspace:
    """[der J, der J] in the coordinates of the der J basis."""
    lie = der.as_lie(name)
    return derived_subalgebra(lie)


def check_inner_equals(
    J: SuperAlgebra, expected_codim: int, der: GradedSubspace | None = None
) -> CheckReport:
    """inder J sits in der J with the expected codimension; at codimension 1 also [der, der] = inder."""
    f = J.field
    der = der if der is not None else derivations(J)
    with stopwatch() as timings:
        inder = inner_derivations(J)
        witnesses: list[Witness] = []
        if not inder.is_subspace_of(der):
            witnesses.append(Witness(kind="not-derivation", detail="inner derivations leave der J"))
        codim = der.dim - inder.dim
        if codim != expected_codim:
            witnesses.append(Witness(kind="codimension", detail=f"codim {codim}, expected {expected_codim}"))
        elif codim and der.dim:
            derived = inder_derived(der, f"der({J.name})")
            inner_coords = Subspace.from_vectors(der.coordinates(inder.basis), der.dim, f)
            if not derived.equal(inner_coords):
                witnesses.append(Witness(kind="derived", detail="[der J, der J] differs from inder J"))
    return CheckReport(
        name=f"inder:{J.name}",
        status=CheckStatus.FAIL if witnesses else CheckStatus.PASS,
        subject=J.name,
        p=f.p,
        dims=dims_of(J),
        witnesses=witnesses,
        details={"der_dims": list(der.graded_dim), "inder_dims": list(inder.graded_dim)},
        timings=timings,
    )


@dataclass(frozen=True, eq=False)
class StructurePair:
    """str J = der J + L_J inside gl(J) and pstr J = str J / k·I when I lies in str J."""

    J: SuperAlgebra
    der: GradedSubspace
    space: GradedSubspace
    str_algebra: SuperAlgebra
    center_line: Subspace | None
    pstr: SuperAlgebra | None
    projection: GradedLinearMap | None

    @property
    def is_direct(self) -> bool:
        return self.space.dim == self.der.dim + left_multiplications(self.J).dim


def make_str_pstr(J: SuperAlgebra, der: GradedSubspace | None = None) -> StructurePair:
    """Build str J as a Lie superalgebra of operators and, for unital J, its projective quotient.

    Raises:
        ClosureError: If der J + L_J is not closed under the graded commutator
    """
    f = J.field
    der = der if der is not None else derivations(J)
    space = der.sum(left_multiplications(J))
    str_algebra = space.as_lie(f"str({J.name})")
    identity = np.eye(J.dim, dtype=np.int64)
    line = None
    pstr = None
    proj = None
    if space.contains(identity):
        coords = space.coordinates(identity)
        line = Subspace.from_vectors(coords, space.dim, f)
        pstr = quotient(str_algebra, line, f"pstr({J.name})")
        proj = projection(str_algebra, line, pstr)
    logger.info(
        "str %s = %s, pstr = %s", J.name, space.graded_dim, None if pstr is None else pstr.graded_dim
    )
    return StructurePair(J, der, space, str_algebra, line, pstr, proj)


def tensor_derivations(
    A: SuperAlgebra, B: SuperAlgebra, der_A: GradedSubspace, der_B: GradedSubspace
) -> GradedSubspace:
    """(der A ⊗ I) + (I ⊗ der B) inside gl(A ⊗ B)."""
    f = A.field
    mats = []
    parities = []
    eye_A = np.eye(A.dim, dtype=np.int64)
    eye_B = np.eye(B.dim, dtype=np.int64)
    for m, par in zip(der_A.basis_matrices(), der_A.parities, strict=True):
        mats.append(operator_tensor(m, eye_B, 0, A.parity))
        parities.append(int(par))
    for m, par in zip(der_B.basis_matrices(), der_B.parities, strict=True):
        mats.append(operator_tensor(eye_A, m, int(par), A.parity))
        parities.append(int(par))
    par_AB = tuple((pa + pb) % 2 for pa in A.space.parity for pb in B.space.parity)
    if not mats:
        return GradedSubspace.zero(par_AB, par_AB, f)
    return GradedSubspace.from_matrices(np.stack(mats), parities, par_AB, par_AB, f)


def check_tensor_derivations(
    A: SuperAlgebra, B: SuperAlgebra, product: SuperAlgebra, der: GradedSubspace | None = None
) -> CheckReport:
    """der(A ⊗ B) = (der A ⊗ I) ⊕ (I ⊗ der B)."""
    f = product.field
    with stopwatch() as timings:
        der = der if der is not None else derivations(product)
        der_A, der_B = derivations(A), derivations(B)
        ansatz = tensor_derivations(A, B, der_A, der_B)
    witnesses: list[Witness] = []
    if ansatz.dim != der_A.dim + der_B.dim:
        witnesses.append(Witness(kind="direct", detail=f"sum of dim {ansatz.dim} is not direct"))
    if not ansatz.equal(der):
        witnesses.append(Witness(kind="equality", detail=f"der has dims {der.graded_dim}, ansatz {ansatz.graded_dim}"))
    return CheckReport(
        name=f"der-tensor:{product.name}",
        status=CheckStatus.FAIL if witnesses else CheckStatus.PASS,
        subject=product.name,
        p=f.p,
        dims=dims_of(product),
        witnesses=witnesses,
        details={"der_dims": list(der.graded_dim), "ansatz_dims": list(ansatz.graded_dim)},
        timings=timings,
    )


def check_matches_symmetric(J: SuperAlgebra, S: SymmetricComposition) -> CheckReport:
    """J and S have the same graded basis pattern and structure constants, basis by basis."""
    witnesses: list[Witness] = []
    if J.space.parity != S.space.parity:
        witnesses.append(Witness(kind="parity", detail=f"{J.space.parity} against {S.space.parity}"))
    else:
        bad = np.argwhere(J.table != S.table)
        witnesses = [
            Witness(kind="constant", indices=[int(i), int(j), int(k)], labels=[J.labels[i], J.labels[j], J.labels[k]])
            for i, j, k in bad[:5]
        ]
    return CheckReport(
        name=f"matches:{J.name}={S.name}",
        status=CheckStatus.FAIL if witnesses else CheckStatus.PASS,
        subject=J.name,
        p=J.field.p,
        dims=dims_of(J),
        witnesses=witnesses,
        details={"basis": dict(zip(J.labels, S.labels, strict=True)) if J.dim == S.dim else {}},
    )
