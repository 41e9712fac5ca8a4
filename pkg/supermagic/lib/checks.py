"""Identity checkers: super Jacobi, the Jordan superidentity, homomorphisms and closure.

Violations are report data. Every failing report names the basis triple or pair where the identity
breaks.
"""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

import numpy as np

from supermagic.lib.config import EngineConfig, current_config
from supermagic.lib.exact_linalg import Subspace, rank
from supermagic.lib.operators import inner_derivation_operators
from supermagic.lib.reports import CheckReport, GradedDims, Witness, stopwatch
from supermagic.lib.supercore import DimensionMismatchError, GradedLinearMap, ParityError, SuperAlgebra
from supermagic.types import CheckStatus, JacobiMode

if TYPE_CHECKING:
    from collections.abc import Sequence

logger = logging.getLogger(__name__)

MAX_WITNESSES = 5
SAMPLE_CHUNK = 20_000
HOM_CHUNK = 32


def dims_of(A: SuperAlgebra) -> GradedDims:
    even, odd = A.graded_dim
    return GradedDims(even=even, odd=odd)


def _witness(A: SuperAlgebra, kind: str, indices: Sequence[int], detail: str = "") -> Witness:
    idx = [int(i) for i in indices]
    return Witness(kind=kind, indices=idx, labels=[A.labels[i] for i in idx], detail=detail)


def _status(witnesses: list[Witness]) -> CheckStatus:
    return CheckStatus.FAIL if witnesses else CheckStatus.PASS


def symmetry_witnesses(A: SuperAlgebra, sign: int) -> list[Witness]:
    """Pairs violating x y = sign (-1)^{|x||y|} y x."""
    t = A.table
    swapped = (sign * A.space.signs)[:, :, None] * t.transpose(1, 0, 2)
    bad = np.argwhere(np.any(A.field.reduce(t - swapped), axis=2))
    kind = "anticommutativity" if sign < 0 else "supercommutativity"
    return [_witness(A, kind, pair) for pair in bad[:MAX_WITNESSES]]


def _jacobi_exhaustive(A: SuperAlgebra) -> list[Witness]:
    n = A.dim
    p = A.field.p
    t = A.table.astype(np.float64)
    flat = t.reshape(n * n, n)
    signs = A.space.signs.astype(np.float64)
    for i in range(n):
        # [e_i,[e_j,e_k]], [e_j,[e_k,e_i]], [e_k,[e_i,e_j]] indexed (j, k)
        outer_i = (flat @ t[i]).reshape(n, n, n)
        outer_j = np.matmul(t[:, i, :][None], t)
        outer_k = np.matmul(t[i][None], t).transpose(1, 0, 2)
        total = (
            signs[i][None, :, None] * np.mod(outer_i, p)
            + signs[:, i][:, None, None] * np.mod(outer_j, p)
            + signs.T[:, :, None] * np.mod(outer_k, p)
        )
        bad = np.argwhere(np.any(np.mod(total, p) != 0, axis=2))
        if bad.size:
            return [_witness(A, "jacobi-triple", (i, int(j), int(k))) for j, k in bad[:MAX_WITNESSES]]
    return []


def _nested_brackets(t: np.ndarray, outer: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """[e_outer, [e_a, e_b]] for index arrays, grouped by the outer index."""
    inner = t[a, b, :]
    out = np.empty_like(inner)
    order = np.argsort(outer, kind="stable")
    values, starts = np.unique(outer[order], return_index=True)
    ends = np.append(starts[1:], order.size)
    for value, start, end in zip(values, starts, ends, strict=True):
        rows = order[start:end]
        out[rows] = inner[rows] @ t[value]
    return out


def _jacobi_sampled(A: SuperAlgebra, samples: int, seed: int) -> list[Witness]:
    n = A.dim
    p = A.field.p
    t = A.table.astype(np.float64)
    signs = A.space.signs
    rng = np.random.default_rng(seed)
    remaining = samples
    while remaining > 0:
        size = min(SAMPLE_CHUNK, remaining)
        remaining -= size
        triples = rng.integers(0, n, size=(size, 3))
        i, j, k = triples.T
        total = (
            signs[i, k][:, None] * np.mod(_nested_brackets(t, i, j, k), p)
            + signs[j, i][:, None] * np.mod(_nested_brackets(t, j, k, i), p)
            + signs[k, j][:, None] * np.mod(_nested_brackets(t, k, i, j), p)
        )
        bad = np.flatnonzero(np.any(np.mod(total, p) != 0, axis=1))
        if bad.size:
            return [_witness(A, "jacobi-triple", triples[r]) for r in bad[:MAX_WITNESSES]]
    return []


def resolve_jacobi_mode(A: SuperAlgebra, mode: JacobiMode, config: EngineConfig) -> JacobiMode:
    if mode != JacobiMode.AUTO:
        return mode
    if config.force_exhaustive or A.dim <= config.jacobi_exhaustive_limit:
        return JacobiMode.EXHAUSTIVE
    return JacobiMode.SAMPLED


def check_super_jacobi(
    A: SuperAlgebra,
    mode: JacobiMode = JacobiMode.AUTO,
    samples: int | None = None,
    seed: int | None = None,
    config: EngineConfig | None = None,
) -> CheckReport:
    """Graded Jacobi identity on basis triples, exhaustively or on random triples."""
    cfg = config or current_config()
    resolved = resolve_jacobi_mode(A, JacobiMode(mode), cfg)
    n_samples = samples if samples is not None else cfg.jacobi_samples
    used_seed = seed if seed is not None else cfg.seed
    with stopwatch() as timings:
        witnesses = symmetry_witnesses(A, -1)
        if resolved == JacobiMode.EXHAUSTIVE:
            witnesses += _jacobi_exhaustive(A)
        else:
            witnesses += _jacobi_sampled(A, n_samples, used_seed)
    details: dict[str, object] = {"mode": resolved.value}
    if resolved == JacobiMode.SAMPLED:
        details["samples"] = n_samples
    logger.info("jacobi %s on %s (%s): %s", resolved.value, A.name, A.graded_dim, "fail" if witnesses else "pass")
    return CheckReport(
        name=f"jacobi:{A.name}",
        status=_status(witnesses),
        subject=A.name,
        p=A.field.p,
        dims=dims_of(A),
        witnesses=witnesses,
        details=details,
        seed=used_seed if resolved == JacobiMode.SAMPLED else None,
        timings=timings,
    )


def _jordan_witnesses(A: SuperAlgebra) -> list[Witness]:
    n = A.dim
    p = A.field.p
    par = A.parity
    signs = A.space.signs.astype(np.float64)
    L = A.left_ops.astype(np.float64)
    # LP[x, y] = L_{x y}
    LP = np.mod(np.tensordot(A.table.astype(np.float64), L, axes=(2, 0)), p)
    for x in range(n):
        pxy = (par[x] + par) % 2
        sign1 = (1 - 2 * np.outer(pxy, par)).astype(np.float64)
        c1 = np.matmul(LP[x][:, None], L[None, :]) - sign1[:, :, None, None] * np.matmul(L[None, :], LP[x][:, None])
        pyz = (par[:, None] + par[None, :]) % 2
        sign2 = (1 - 2 * pyz * par[x]).astype(np.float64)
        c2 = np.matmul(LP, L[x]) - sign2[:, :, None, None] * np.matmul(L[x], LP)
        B = LP[:, x]
        pzx = (par + par[x]) % 2
        sign3 = (1 - 2 * np.outer(par, pzx)).astype(np.float64)
        c3 = np.matmul(B[None, :], L[:, None]) - sign3[:, :, None, None] * np.matmul(L[:, None], B[None, :])
        total = (
            signs[x][None, :, None, None] * np.mod(c1, p)
            + signs[:, x][:, None, None, None] * np.mod(c2, p)
            + signs.T[:, :, None, None] * np.mod(c3, p)
        )
        bad = np.argwhere(np.any(np.mod(total, p) != 0, axis=(2, 3)))
        if bad.size:
            return [_witness(A, "jordan-triple", (x, int(y), int(z))) for y, z in bad[:MAX_WITNESSES]]
    return []


def check_jordan_super(A: SuperAlgebra) -> CheckReport:
    """Supercommutativity and the linearized operator Jordan identity on basis triples."""
    with stopwatch() as timings:
        witnesses = symmetry_witnesses(A, 1)
        witnesses += _jordan_witnesses(A)
    logger.info("jordan identity on %s: %s", A.name, "fail" if witnesses else "pass")
    return CheckReport(
        name=f"jordan:{A.name}",
        status=_status(witnesses),
        subject=A.name,
        p=A.field.p,
        dims=dims_of(A),
        witnesses=witnesses,
        timings=timings,
    )


def hom_check(
    f: GradedLinearMap,
    A: SuperAlgebra,
    B: SuperAlgebra,
    mod_subspace: Subspace | None = None,
    require_bijective: bool = False,
    name: str | None = None,
) -> CheckReport:
    """Check f(x y) - f(x) f(y) in ``mod_subspace`` on all basis pairs and report bijectivity.

    Raises:
        DimensionMismatchError: If the map does not go from A to B
        ParityError: If the map is not even
    """
    if f.matrix.shape != (B.dim, A.dim):
        raise DimensionMismatchError(f"map of shape {f.matrix.shape} between algebras of dims {A.dim} and {B.dim}")
    if f.parity != 0:
        raise ParityError("homomorphisms of superalgebras are even maps")
    if mod_subspace is not None and mod_subspace.ambient_dim != B.dim:
        raise DimensionMismatchError("modulus subspace does not live in the codomain")
    fld = A.field
    nA, nB = A.dim, B.dim
    F = f.matrix
    witnesses: list[Witness] = []
    with stopwatch() as timings:
        images = fld.matmul(A.table.reshape(nA * nA, nA), F.T).reshape(nA, nA, nB)
        partial = fld.matmul(F.T, B.table.reshape(nB, nB * nB)).reshape(nA, nB, nB)
        for start in range(0, nA, HOM_CHUNK):
            stop = min(start + HOM_CHUNK, nA)
            products = fld.matmul(F.T[None], partial[start:stop])
            diff = fld.reduce(images[start:stop] - products)
            if mod_subspace is not None and mod_subspace.dim:
                diff = mod_subspace.reduce(diff.reshape(-1, nB)).reshape(diff.shape)
            bad = np.argwhere(np.any(diff, axis=2))
            for i, j in bad[: MAX_WITNESSES - len(witnesses)]:
                witnesses.append(_witness(A, "hom-pair", (start + int(i), int(j))))
            if len(witnesses) >= MAX_WITNESSES:
                break

        if mod_subspace is None or mod_subspace.dim == 0:
            image_rank = f.rank
            mod_dim = 0
        else:
            image_rank = rank(np.vstack([F.T, mod_subspace.basis]), fld)
            mod_dim = mod_subspace.dim
        injective = image_rank - mod_dim == nA
        surjective = image_rank == nB
        if require_bijective and not (injective and surjective):
            witnesses.append(
                Witness(kind="rank", detail=f"image rank {image_rank - mod_dim} for dims {nA} -> {nB - mod_dim}")
            )
    logger.info("hom check %s -> %s: %d witnesses", A.name, B.name, len(witnesses))
    return CheckReport(
        name=name or f"hom:{A.name}->{B.name}",
        status=_status(witnesses),
        subject=f"{A.name} -> {B.name}",
        p=fld.p,
        dims=dims_of(A),
        witnesses=witnesses,
        details={
            "injective": bool(injective),
            "surjective": bool(surjective),
            "bijective": bool(injective and surjective),
            "codomain_dims": str(dims_of(B)),
            "modulo_dim": mod_dim,
        },
        timings=timings,
    )


def product_defect(A: SuperAlgebra, X: Subspace, Y: Subspace, Z: Subspace) -> tuple[int, int] | None:
    """First pair of basis rows (a, b) of X and Y whose product leaves Z, if any."""
    if X.dim == 0 or Y.dim == 0:
        return None
    n = A.dim
    fld = A.field
    left = fld.matmul(X.basis, A.table.reshape(n, n * n)).reshape(X.dim, n, n)
    products = fld.matmul(Y.basis[None], left)
    bad = np.argwhere(np.any(Z.reduce(products.reshape(-1, n)).reshape(products.shape), axis=2))
    if bad.size == 0:
        return None
    return int(bad[0][0]), int(bad[0][1])


def check_products_within(
    A: SuperAlgebra, X: Subspace, Y: Subspace, Z: Subspace, name: str
) -> CheckReport:
    """Check X Y is contained in Z."""
    with stopwatch() as timings:
        defect = product_defect(A, X, Y, Z)
    witnesses = []
    if defect is not None:
        witnesses.append(Witness(kind="closure", indices=list(defect), detail="basis rows of the two factors"))
    return CheckReport(
        name=name, status=_status(witnesses), subject=A.name, p=A.field.p, witnesses=witnesses, timings=timings
    )


def derivation_defects(A: SuperAlgebra, operators: np.ndarray, parities: Sequence[int]) -> list[tuple[int, int, int]]:
    """(operator, i, j) triples where an operator fails the graded Leibniz rule."""
    n = A.dim
    p = A.field.p
    ops = A.field.reduce(operators).astype(np.float64)
    t = A.table.astype(np.float64)
    par = np.asarray(parities, dtype=np.int64)
    found: list[tuple[int, int, int]] = []
    for start in range(0, ops.shape[0], HOM_CHUNK):
        D = ops[start : start + HOM_CHUNK]
        signs = (1 - 2 * np.outer(par[start : start + HOM_CHUNK], A.parity)).astype(np.float64)
        image_of_product = np.matmul(t.reshape(n * n, n)[None], D.transpose(0, 2, 1)).reshape(-1, n, n, n)
        image_left = np.matmul(D.transpose(0, 2, 1), t.reshape(n, n * n)).reshape(-1, n, n, n)
        image_right = np.matmul(D.transpose(0, 2, 1)[:, None], t[None]) * signs[:, :, None, None]
        total = np.mod(image_of_product, p) - np.mod(image_left, p) - np.mod(image_right, p)
        bad = np.argwhere(np.any(np.mod(total, p) != 0, axis=3))
        found += [(start + int(m), int(i), int(j)) for m, i, j in bad[: MAX_WITNESSES - len(found)]]
        if len(found) >= MAX_WITNESSES:
            break
    return found


def check_inner_derivations(J: SuperAlgebra) -> CheckReport:
    """Every [L_x, L_y] on basis pairs satisfies the derivation condition directly."""
    n = J.dim
    with stopwatch() as timings:
        ops, parities = inner_derivation_operators(J)
        defects = derivation_defects(J, ops.reshape(n * n, n, n), parities.reshape(-1))
    witnesses = [
        _witness(J, "inner-derivation", (m // n, m % n, i, j), detail="[L_x, L_y] fails Leibniz on (e_i, e_j)")
        for m, i, j in defects
    ]
    return CheckReport(
        name=f"inner-derivations:{J.name}",
        status=_status(witnesses),
        subject=J.name,
        p=J.field.p,
        dims=dims_of(J),
        witnesses=witnesses,
        timings=timings,
    )


def check_grading(A: SuperAlgebra, degrees: np.ndarray, name: str) -> CheckReport:
    """Every nonzero constant e_i e_j -> e_k has deg(k) = deg(i) + deg(j) in (Z2)^r."""
    deg = np.asarray(degrees, dtype=np.int64).reshape(A.dim, -1)
    with stopwatch() as timings:
        idx = np.argwhere(A.table)
        expected = (deg[idx[:, 0]] + deg[idx[:, 1]]) % 2
        bad = np.flatnonzero(np.any(expected != deg[idx[:, 2]], axis=1))
    witnesses = [
        _witness(A, "grading", idx[k], detail="product leaves the expected graded component")
        for k in bad[:MAX_WITNESSES]
    ]
    return CheckReport(
        name=name,
        status=_status(witnesses),
        subject=A.name,
        p=A.field.p,
        dims=dims_of(A),
        witnesses=witnesses,
        timings=timings,
    )
