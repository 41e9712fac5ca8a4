"""Split Hurwitz (super)algebras, their para-Hurwitz counterparts and the composition axiom checks.

Basis orders are fixed per algebra:

- k: [1]
- k×k: [1, u] with u = (1, -1)
- Mat2: [E11, E12, E21, E22]
- split Cayley: Cayley-Dickson double of Mat2, [E11..E22, E11l..E22l]
- B(1,2): [1, u, v]
- B(4,2): [E11, E12, E21, E22, u, v]
- quaternions: [1, e0, e1, e2] with e_i^2 = -1 and e_i e_{i+1} = -e_{i+2}
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from supermagic.lib.config import EngineConfig, current_config, resolve_field
from supermagic.lib.constants import SUPER_CHARACTERISTIC, SupermagicError
from supermagic.lib.exact_linalg import PrimeField
from supermagic.lib.reports import CheckReport, GradedDims, Timings, Witness, stopwatch
from supermagic.lib.supercore import BilinearForm, DegenerateFormError, SuperAlgebra, SuperSpace
from supermagic.types import AlgebraKind, CheckStatus, CompositionName

if TYPE_CHECKING:
    from numpy.typing import ArrayLike

logger = logging.getLogger(__name__)

MAX_WITNESSES = 5
# Random even elements used for the even-part norm identities
RANDOM_EVEN_ELEMENTS = 8

MATRIX_UNITS = ("E11", "E12", "E21", "E22")

HURWITZ_NAMES: dict[CompositionName, str] = {
    CompositionName.S1: "k",
    CompositionName.S2: "k×k",
    CompositionName.S4: "Mat2",
    CompositionName.S8: "Cayley",
    CompositionName.S12: "B12",
    CompositionName.S42: "B42",
}


class CompositionError(SupermagicError):
    """Base exception for composition algebra construction errors."""


class CharacteristicError(CompositionError):
    """The requested algebra does not exist in the session characteristic."""


@dataclass(frozen=True)
class SymplecticPlane:
    """Two-dimensional space V = span{u, v} with the alternating form <u|v> = pairing."""

    pairing: int = 1

    labels = ("u", "v")

    def gram(self) -> np.ndarray:
        return np.array([[0, self.pairing], [-self.pairing, 0]], dtype=np.int64)

    def involution(self, f: ArrayLike) -> np.ndarray:
        """Symplectic adjoint: <f(a)|b> = <a|f̄(b)>. On a plane this is the adjugate."""
        m = np.asarray(f, dtype=np.int64)
        return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]], dtype=np.int64)

    def rank_one(self, a: int, b: int) -> np.ndarray:
        """Matrix of w -> <w|basis_a> basis_b."""
        m = np.zeros((2, 2), dtype=np.int64)
        m[b, :] = self.gram()[:, a]
        return m


@dataclass(frozen=True, eq=False)
class HurwitzSuperalgebra:
    """Unital composition superalgebra with its norm form and standard involution matrix."""

    algebra: SuperAlgebra
    involution: np.ndarray

    @property
    def name(self) -> str:
        return self.algebra.name

    @property
    def field(self) -> PrimeField:
        return self.algebra.field

    @property
    def form(self) -> BilinearForm:
        assert self.algebra.form is not None
        return self.algebra.form

    @property
    def unit(self) -> np.ndarray:
        assert self.algebra.unit is not None
        return self.algebra.unit

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def parity(self) -> np.ndarray:
        return self.algebra.parity

    def conjugate(self, x: ArrayLike) -> np.ndarray:
        return self.field.matmul(self.involution, self.field.reduce(x))


@dataclass(frozen=True, eq=False)
class SymmetricComposition:
    """Symmetric composition superalgebra; ``parent`` is set for para-Hurwitz algebras."""

    algebra: SuperAlgebra
    parent: HurwitzSuperalgebra | None = None

    @property
    def name(self) -> str:
        return self.algebra.name

    @property
    def field(self) -> PrimeField:
        return self.algebra.field

    @property
    def form(self) -> BilinearForm:
        assert self.algebra.form is not None
        return self.algebra.form

    @property
    def gram(self) -> np.ndarray:
        return self.form.gram

    @property
    def table(self) -> np.ndarray:
        return self.algebra.table

    @property
    def space(self) -> SuperSpace:
        return self.algebra.space

    @property
    def labels(self) -> tuple[str, ...]:
        return self.algebra.labels

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def parity(self) -> np.ndarray:
        return self.algebra.parity

    @property
    def graded_dim(self) -> tuple[int, int]:
        return self.algebra.graded_dim

    def product(self, x: ArrayLike, y: ArrayLike) -> np.ndarray:
        return self.algebra.multiply(x, y)


def _unit_index(r: int, c: int) -> int:
    return 2 * r + c


def _matrix_unit_table() -> np.ndarray:
    """E_ij E_kl = delta_jk E_il."""
    table = np.zeros((4, 4, 4), dtype=np.int64)
    for i, j, k, l in np.ndindex(2, 2, 2, 2):
        if j == k:
            table[_unit_index(i, j), _unit_index(k, l), _unit_index(i, l)] = 1
    return table


def _matrix_unit_gram() -> np.ndarray:
    """Polar form of det: b(x, y) = tr(x) tr(y) - tr(xy)."""
    gram = np.zeros((4, 4), dtype=np.int64)
    for i, j, k, l in np.ndindex(2, 2, 2, 2):
        gram[_unit_index(i, j), _unit_index(k, l)] = int(i == j) * int(k == l) - int(j == k) * int(i == l)
    return gram


def _as_matrix(index: int) -> np.ndarray:
    m = np.zeros((2, 2), dtype=np.int64)
    m[divmod(index, 2)] = 1
    return m


def _flatten(m: np.ndarray) -> np.ndarray:
    return m.reshape(4)


def involution_matrix(A: SuperAlgebra) -> np.ndarray:
    """Matrix of x -> b(x, 1) 1 - x; column i is the conjugate of basis i."""
    assert A.form is not None and A.unit is not None
    f = A.field
    b_with_unit = f.matmul(A.form.gram, A.unit)
    return f.reduce(np.outer(A.unit, b_with_unit) - np.eye(A.dim, dtype=np.int64))


def _hurwitz(
    name: str,
    space: SuperSpace,
    table: np.ndarray,
    gram: np.ndarray,
    unit: np.ndarray,
    field: PrimeField,
) -> HurwitzSuperalgebra:
    form = BilinearForm(gram, field)
    algebra = SuperAlgebra.from_table(name, space, table, field, AlgebraKind.COMPOSITION, form, unit)
    return HurwitzSuperalgebra(algebra, involution_matrix(algebra))


def make_ground_field(field: PrimeField | None = None) -> HurwitzSuperalgebra:
    f = resolve_field(field)
    return _hurwitz(
        "k",
        SuperSpace.build(["1"], [0]),
        np.ones((1, 1, 1), dtype=np.int64),
        np.array([[2]]),
        np.array([1]),
        f,
    )


def make_split_pair(field: PrimeField | None = None) -> HurwitzSuperalgebra:
    """k×k on the basis 1 = (1, 1), u = (1, -1)."""
    f = resolve_field(field)
    table = np.zeros((2, 2, 2), dtype=np.int64)
    table[0, 0, 0] = table[0, 1, 1] = table[1, 0, 1] = table[1, 1, 0] = 1
    return _hurwitz("k×k", SuperSpace.build(["1", "u"], [0, 0]), table, np.diag([2, -2]), np.array([1, 0]), f)


def make_matrix_algebra(field: PrimeField | None = None) -> HurwitzSuperalgebra:
    f = resolve_field(field)
    return _hurwitz(
        "Mat2",
        SuperSpace.build(MATRIX_UNITS, [0] * 4),
        _matrix_unit_table(),
        _matrix_unit_gram(),
        np.array([1, 0, 0, 1]),
        f,
    )


def cayley_dickson(C: HurwitzSuperalgebra, name: str, suffix: str = "l") -> HurwitzSuperalgebra:
    """Double (a, b)(c, d) = (ac + d̄b, da + bc̄) with norm q(a) - q(b).

    Raises:
        CompositionError: If C has odd part
    """
    if C.algebra.space.odd_dim:
        raise CompositionError("Cayley-Dickson doubling is only implemented for algebras")
    f = C.field
    n = C.dim
    T = C.algebra.table
    Cj = C.involution
    table = np.zeros((2 * n, 2 * n, 2 * n), dtype=np.int64)
    table[:n, :n, :n] = T
    table[:n, n:, n:] = T.transpose(1, 0, 2)
    table[n:, :n, n:] = np.einsum("mj,imk->ijk", Cj, T)
    table[n:, n:, :n] = np.einsum("mj,mik->ijk", Cj, T)
    gram = np.zeros((2 * n, 2 * n), dtype=np.int64)
    gram[:n, :n] = C.form.gram
    gram[n:, n:] = -C.form.gram
    labels = list(C.algebra.labels) + [f"{label}{suffix}" for label in C.algebra.labels]
    unit = np.concatenate([C.unit, np.zeros(n, dtype=np.int64)])
    return _hurwitz(name, SuperSpace.build(labels, [0] * (2 * n)), f.reduce(table), gram, unit, f)


def make_split_cayley(field: PrimeField | None = None) -> HurwitzSuperalgebra:
    return cayley_dickson(make_matrix_algebra(field), "Cayley")


def require_characteristic_three(field: PrimeField, name: str) -> None:
    """Raise CharacteristicError unless p = 3."""
    if field.p != SUPER_CHARACTERISTIC:
        raise CharacteristicError(f"{name} exists only in characteristic 3, not {field.p}")


def make_b12(plane: SymplecticPlane | None = None, field: PrimeField | None = None) -> HurwitzSuperalgebra:
    """B(1,2) = k1 + V with uv = <u|v>1, on the basis [1, u, v].

    Raises:
        CharacteristicError: If p != 3
    """
    f = resolve_field(field)
    require_characteristic_three(f, "B(1,2)")
    V = plane or SymplecticPlane()
    omega = V.gram()
    table = np.zeros((3, 3, 3), dtype=np.int64)
    for x in range(3):
        table[0, x, x] = table[x, 0, x] = 1
    table[1:, 1:, 0] = omega
    gram = np.zeros((3, 3), dtype=np.int64)
    gram[0, 0] = 2
    gram[1:, 1:] = omega
    return _hurwitz("B12", SuperSpace.build(["1", *V.labels], [0, 1, 1]), f.reduce(table), gram, np.array([1, 0, 0]), f)


def make_b42(plane: SymplecticPlane | None = None, field: PrimeField | None = None) -> HurwitzSuperalgebra:
    """B(4,2) = End(V) + V on the basis [E11, E12, E21, E22, u, v].

    f·w = f̄(w), w·f = f(w) and u·v is the endomorphism w -> <w|u> v.

    Raises:
        CharacteristicError: If p != 3
    """
    f = resolve_field(field)
    require_characteristic_three(f, "B(4,2)")
    V = plane or SymplecticPlane()
    table = np.zeros((6, 6, 6), dtype=np.int64)
    table[:4, :4, :4] = _matrix_unit_table()
    for e in range(4):
        m = _as_matrix(e)
        adj = V.involution(m)
        for w in range(2):
            table[e, 4 + w, 4:] = adj[:, w]
            table[4 + w, e, 4:] = m[:, w]
    for a in range(2):
        for b in range(2):
            table[4 + a, 4 + b, :4] = _flatten(V.rank_one(a, b))
    gram = np.zeros((6, 6), dtype=np.int64)
    gram[:4, :4] = _matrix_unit_gram()
    gram[4:, 4:] = V.gram()
    space = SuperSpace.build([*MATRIX_UNITS, *V.labels], [0, 0, 0, 0, 1, 1])
    return _hurwitz("B42", space, f.reduce(table), gram, np.array([1, 0, 0, 1, 0, 0]), f)


def make_quaternion(field: PrimeField | None = None) -> HurwitzSuperalgebra:
    """Quaternions on [1, e0, e1, e2]: e_i^2 = -1, e_i e_{i+1} = -e_{i+2} = -e_{i+1} e_i."""
    f = resolve_field(field)
    table = np.zeros((4, 4, 4), dtype=np.int64)
    for x in range(4):
        table[0, x, x] = table[x, 0, x] = 1
    for i in range(3):
        a, b, c = 1 + i, 1 + (i + 1) % 3, 1 + (i + 2) % 3
        table[a, a, 0] = -1
        table[a, b, c] = -1
        table[b, a, c] = 1
    space = SuperSpace.build(["1", "e0", "e1", "e2"], [0] * 4)
    return _hurwitz("Q", space, f.reduce(table), 2 * np.eye(4, dtype=np.int64), np.array([1, 0, 0, 0]), f)


_BUILDERS = {
    CompositionName.S1: lambda field: make_ground_field(field),
    CompositionName.S2: lambda field: make_split_pair(field),
    CompositionName.S4: lambda field: make_matrix_algebra(field),
    CompositionName.S8: lambda field: make_split_cayley(field),
    CompositionName.S12: lambda field: make_b12(field=field),
    CompositionName.S42: lambda field: make_b42(field=field),
}


def make_hurwitz(kind: CompositionName | str, field: PrimeField | None = None) -> HurwitzSuperalgebra:
    """Split Hurwitz (super)algebra whose para-Hurwitz algebra is the symmetric composition ``kind``.

    Raises:
        CharacteristicError: If a superalgebra is requested with p != 3
        CompositionError: If the name is unknown
    """
    try:
        name = CompositionName(kind)
    except ValueError as e:
        raise CompositionError(f"unknown composition algebra '{kind}'") from e
    C = _BUILDERS[name](resolve_field(field))
    logger.info("built Hurwitz algebra %s of graded dimension %s", C.name, C.algebra.graded_dim)
    return C


def standard_involution(C: HurwitzSuperalgebra, x: ArrayLike) -> np.ndarray:
    """x̄ = b(x, 1) 1 - x."""
    return C.conjugate(x)


def opposite(C: HurwitzSuperalgebra, name: str | None = None) -> HurwitzSuperalgebra:
    """Opposite superalgebra x * y = (-1)^{|x||y|} y x."""
    A = C.algebra
    table = A.space.signs[:, :, None] * A.table.transpose(1, 0, 2)
    algebra = SuperAlgebra.from_table(
        name or f"{A.name}op", A.space, table, A.field, AlgebraKind.COMPOSITION, A.form, A.unit
    )
    return HurwitzSuperalgebra(algebra, C.involution)


def para_hurwitz(C: HurwitzSuperalgebra, name: str | None = None) -> SymmetricComposition:
    """Same space and form with x∙y = x̄ȳ."""
    A = C.algebra
    Cj = C.involution
    table = np.einsum("ai,bj,abk->ijk", Cj, Cj, A.table)
    algebra = SuperAlgebra.from_table(
        name or f"para({A.name})", A.space, A.field.reduce(table), A.field, AlgebraKind.COMPOSITION, A.form
    )
    return SymmetricComposition(algebra, C)


def make_symmetric(kind: CompositionName | str, field: PrimeField | None = None) -> SymmetricComposition:
    """The para-Hurwitz algebra S1, S2, S4, S8, S12 or S42."""
    C = make_hurwitz(kind, field)
    return para_hurwitz(C, CompositionName(kind).value)


def make_para_quaternion(field: PrimeField | None = None) -> SymmetricComposition:
    """Q̄ with x∙y = conj(xy), the para-Hurwitz algebra of the opposite of Q."""
    return para_hurwitz(opposite(make_quaternion(field)), "Qbar")


def isotropic_vector(C: HurwitzSuperalgebra | SymmetricComposition) -> np.ndarray | None:
    """A nonzero even vector of norm zero among basis vectors and their two-term combinations."""
    f = C.field
    gram = C.form.gram
    evens = np.flatnonzero(C.algebra.parity == 0)
    for i in evens:
        if gram[i, i] == 0:
            return C.algebra.basis_vector(int(i))
    for i in evens:
        for j in evens:
            if j <= i:
                continue
            for lam in range(1, f.p):
                v = np.zeros(C.algebra.dim, dtype=np.int64)
                v[i], v[j] = 1, lam
                if f.reduce(gram[i, i] + 2 * lam * gram[i, j] + lam * lam * gram[j, j]) == 0:
                    return v
    return None


def _quadruple_witnesses(A: SuperAlgebra) -> list[Witness]:
    """Basis quadruples violating b(xy, zt) + (-1)^{xy+xz+yz} b(zy, xt) = (-1)^{yz} b(x, z) b(y, t)."""
    assert A.form is not None
    f = A.field
    n = A.dim
    G = A.form.gram
    par = A.parity
    flat = A.table.reshape(n * n, n)
    pairing = f.matmul(f.matmul(flat, G), flat.T).reshape(n, n, n, n)
    swapped = pairing.transpose(2, 1, 0, 3)
    pxy = np.outer(par, par)
    sign = 1 - 2 * ((pxy[:, :, None] + pxy[:, None, :] + pxy[None, :, :]) % 2)
    lhs = pairing + sign[..., None] * swapped
    rhs = (1 - 2 * pxy)[None, :, :, None] * np.einsum("xz,yt->xyzt", G, G)
    bad = np.argwhere(f.reduce(lhs - rhs))
    return [_labelled(A, "composition-quadruple", q) for q in bad[:MAX_WITNESSES]]


def _labelled(A: SuperAlgebra, kind: str, indices: ArrayLike, detail: str = "") -> Witness:
    idx = [int(i) for i in np.asarray(indices).reshape(-1)]
    return Witness(kind=kind, indices=idx, labels=[A.labels[i] for i in idx], detail=detail)


def _even_witnesses(A: SuperAlgebra, config: EngineConfig) -> list[Witness]:
    """q(xy) = q(x) q(y) and b(xy, xz) = q(x) b(y, z) = b(yx, zx) for even x, y."""
    assert A.form is not None
    f = A.field
    G = A.form.gram
    evens = np.flatnonzero(A.parity == 0)
    rng = np.random.default_rng(config.seed)
    samples = [A.basis_vector(int(i)) for i in evens]
    for _ in range(RANDOM_EVEN_ELEMENTS):
        v = np.zeros(A.dim, dtype=np.int64)
        v[evens] = f.random_matrix(rng, evens.size)
        samples.append(v)
    half = f.half
    witnesses: list[Witness] = []
    for x in samples:
        qx = f.scalar(half * int(f.matmul(f.matmul(x, G), x)))
        L = f.reduce(np.tensordot(x, A.left_ops, axes=1))
        R = f.reduce(np.tensordot(x, A.right_ops, axes=1))
        expected = f.reduce(qx * G)
        for op, side in ((L, "left"), (R, "right")):
            if np.any(f.reduce(f.matmul(f.matmul(op.T, G), op) - expected)):
                detail = f"b({side} multiplication) is not q(x) b on x = {x.tolist()}"
                witnesses.append(Witness(kind="norm-even", detail=detail))
                break
        for y in samples[: evens.size]:
            xy = A.multiply(x, y)
            qy = half * int(f.matmul(f.matmul(y, G), y))
            if f.scalar(half * int(f.matmul(f.matmul(xy, G), xy)) - qx * qy):
                witnesses.append(Witness(kind="norm-multiplicative", detail=f"x = {x.tolist()}, y = {y.tolist()}"))
                break
        if len(witnesses) >= MAX_WITNESSES:
            break
    return witnesses


def _associativity_witnesses(A: SuperAlgebra) -> list[Witness]:
    """Basis triples violating b(x∙y, z) = b(x, y∙z)."""
    assert A.form is not None
    f = A.field
    G = A.form.gram
    lhs = np.einsum("xyk,kz->xyz", A.table, G)
    rhs = np.einsum("xk,yzk->xyz", G, A.table)
    bad = np.argwhere(f.reduce(lhs - rhs))
    return [_labelled(A, "form-associativity", t) for t in bad[:MAX_WITNESSES]]


def _report(name: str, A: SuperAlgebra, witnesses: list[Witness], timings: Timings, seed: int | None) -> CheckReport:
    even, odd = A.graded_dim
    status = CheckStatus.FAIL if witnesses else CheckStatus.PASS
    logger.info("%s: %s", name, status.value)
    return CheckReport(
        name=name,
        status=status,
        subject=A.name,
        p=A.field.p,
        dims=GradedDims(even=even, odd=odd),
        witnesses=witnesses,
        seed=seed,
        timings=timings,
    )


def _require_regular(A: SuperAlgebra) -> None:
    if A.form is None:
        raise DegenerateFormError(f"{A.name} carries no bilinear form")
    A.form.require_regular()


def check_composition(C: HurwitzSuperalgebra | SymmetricComposition, config: EngineConfig | None = None) -> CheckReport:
    """Composition axioms on all basis quadruples, plus the even-part norm identities.

    Raises:
        DegenerateFormError: If the norm is degenerate
    """
    cfg = config or current_config()
    A = C.algebra
    _require_regular(A)
    with stopwatch() as timings:
        witnesses = _quadruple_witnesses(A)
        witnesses += _even_witnesses(A, cfg)
    return _report(f"composition:{A.name}", A, witnesses, timings, cfg.seed)


def check_symmetric(S: SymmetricComposition, config: EngineConfig | None = None) -> CheckReport:
    """Composition axioms plus associativity of the form.

    Raises:
        DegenerateFormError: If the norm is degenerate
    """
    cfg = config or current_config()
    A = S.algebra
    _require_regular(A)
    with stopwatch() as timings:
        witnesses = _quadruple_witnesses(A)
        witnesses += _even_witnesses(A, cfg)
        witnesses += _associativity_witnesses(A)
    return _report(f"symmetric:{A.name}", A, witnesses, timings, cfg.seed)
