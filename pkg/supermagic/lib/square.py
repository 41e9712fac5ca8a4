"""The Lie superalgebras g(S, S') of the Supermagic Square.

Basis order of g(S, S'): the tri(S) basis, the tri(S') basis, then ι0(S⊗S'), ι1(S⊗S'), ι2(S⊗S'),
each ι-block in lexicographic (basis of S) x (basis of S') order.
"""

from __future__ import annotations

import logging
import re
import time
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from supermagic.lib.checks import check_grading, check_products_within, check_super_jacobi, hom_check
from supermagic.lib.composition import SymmetricComposition, make_symmetric
from supermagic.lib.config import EngineConfig, current_config, resolve_field
from supermagic.lib.constants import SupermagicError
from supermagic.lib.exact_linalg import Subspace
from supermagic.lib.reports import CheckReport, GradedDims, SquareCell, SquareTable, Witness
from supermagic.lib.supercore import GradedLinearMap, SuperAlgebra, SuperSpace
from supermagic.lib.triality import TrialityAlgebra, t_xy, theta_power, tri_basis
from supermagic.types import SQUARE_ORDER, AlgebraKind, CheckStatus, CompositionName, JacobiMode

if TYPE_CHECKING:
    from collections.abc import Sequence

    from supermagic.lib.exact_linalg import PrimeField

logger = logging.getLogger(__name__)

CELL_PATTERN = re.compile(r"^\s*(S\d+)\s*[xX×]\s*(S\d+)\s*$")

# Z2 x Z2 degree of each block: tri blocks, then ι0, ι1, ι2
BLOCK_DEGREES = ((0, 0), (1, 0), (0, 1), (1, 1))

_S = CompositionName
# Graded dimensions (even, odd) of the upper triangle in characteristic 3
EXPECTED_DIMS: dict[tuple[CompositionName, CompositionName], tuple[int, int]] = {
    (_S.S1, _S.S1): (3, 0),
    (_S.S1, _S.S2): (8, 0),
    (_S.S1, _S.S4): (21, 0),
    (_S.S1, _S.S8): (52, 0),
    (_S.S1, _S.S12): (6, 8),
    (_S.S1, _S.S42): (21, 14),
    (_S.S2, _S.S2): (16, 0),
    (_S.S2, _S.S4): (35, 0),
    (_S.S2, _S.S8): (78, 0),
    (_S.S2, _S.S12): (11, 14),
    (_S.S2, _S.S42): (35, 20),
    (_S.S4, _S.S4): (66, 0),
    (_S.S4, _S.S8): (133, 0),
    (_S.S4, _S.S12): (24, 26),
    (_S.S4, _S.S42): (66, 32),
    (_S.S8, _S.S8): (248, 0),
    (_S.S8, _S.S12): (55, 50),
    (_S.S8, _S.S42): (133, 56),
    (_S.S12, _S.S12): (21, 16),
    (_S.S12, _S.S42): (36, 40),
    (_S.S42, _S.S42): (78, 64),
}


class SquareError(SupermagicError):
    """Base exception for Supermagic Square construction errors."""


class SignConsistencyError(SquareError):
    """Assembled brackets violate super-anticommutativity."""


@dataclass(frozen=True, eq=False)
class MagicCell:
    """g(S, S') with its two triality algebras and the index ranges of its blocks."""

    S: SymmetricComposition
    S_prime: SymmetricComposition
    tri: TrialityAlgebra
    tri_prime: TrialityAlgebra
    g: SuperAlgebra

    @property
    def name(self) -> str:
        return self.g.name

    @property
    def tri_range(self) -> range:
        return range(0, self.tri.dim)

    @property
    def tri_prime_range(self) -> range:
        return range(self.tri.dim, self.tri.dim + self.tri_prime.dim)

    def iota_range(self, i: int) -> range:
        block = self.S.dim * self.S_prime.dim
        start = self.tri.dim + self.tri_prime.dim + i * block
        return range(start, start + block)

    def iota_index(self, i: int, a: int, b: int) -> int:
        """Index of ι_i(e_a ⊗ e'_b)."""
        return self.iota_range(i).start + a * self.S_prime.dim + b

    @property
    def blocks(self) -> dict[str, range]:
        return {
            "tri": self.tri_range,
            "tri'": self.tri_prime_range,
            **{f"iota{i}": self.iota_range(i) for i in range(3)},
        }

    def degree(self, index: int) -> tuple[int, int]:
        for i in range(3):
            if index in self.iota_range(i):
                return BLOCK_DEGREES[i + 1]
        return BLOCK_DEGREES[0]


def _tensor_parity(S: SymmetricComposition, S_prime: SymmetricComposition) -> np.ndarray:
    return ((S.parity[:, None] + S_prime.parity[None, :]) % 2).reshape(-1)


def _t_coordinates(T: TrialityAlgebra) -> np.ndarray:
    """coords[i, a, c] of θ^i(t_{e_a, e_c}) in the tri basis."""
    S = T.S
    n = S.dim
    coords = np.zeros((3, n, n, T.dim), dtype=np.int64)
    if T.dim == 0:
        return coords
    for a in range(n):
        for c in range(n):
            t = t_xy(S, S.algebra.basis_vector(a), S.algebra.basis_vector(c))
            for i in range(3):
                coords[i, a, c] = T.coordinates(theta_power(t, i))
    return coords


def _set_with_reverse(
    table: np.ndarray,
    rows: np.ndarray,
    cols: np.ndarray,
    out: np.ndarray,
    block: np.ndarray,
    signs: np.ndarray,
) -> None:
    """table[X, Y] = block and table[Y, X] = -(-1)^{|X||Y|} block."""
    table[np.ix_(rows, cols, out)] = block
    table[np.ix_(cols, rows, out)] = -(signs[:, :, None] * block).transpose(1, 0, 2)


def build_g(
    S: SymmetricComposition,
    S_prime: SymmetricComposition,
    tri: TrialityAlgebra | None = None,
    tri_prime: TrialityAlgebra | None = None,
) -> MagicCell:
    """Assemble the structure constants of g(S, S').

    Raises:
        SquareError: If S and S' live over different fields
        SignConsistencyError: If the assembled table is not super-anticommutative
    """
    if S.field != S_prime.field:
        raise SquareError("S and S' live over different fields")
    started = time.perf_counter()
    f = S.field
    T = tri or tri_basis(S)
    Tp = tri_prime or tri_basis(S_prime)
    m, mp = T.dim, Tp.dim
    n, nprime = S.dim, S_prime.dim
    nn = n * nprime
    N = m + mp + 3 * nn
    par_S, par_Sp = S.parity, S_prime.parity
    iota_par = _tensor_parity(S, S_prime)
    parity = np.concatenate([T.parities, Tp.parities, np.tile(iota_par, 3)]).astype(np.int64)
    sign = 1 - 2 * np.outer(parity, parity)

    tri_idx = np.arange(0, m)
    trip_idx = np.arange(m, m + mp)
    iota_idx = [np.arange(m + mp + i * nn, m + mp + (i + 1) * nn) for i in range(3)]

    table = np.zeros((N, N, N), dtype=np.int64)
    table[np.ix_(tri_idx, tri_idx, tri_idx)] = T.lie.table
    table[np.ix_(trip_idx, trip_idx, trip_idx)] = Tp.lie.table

    eye_p = np.eye(nprime, dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    mats = T.space.basis_matrices()
    mats_p = Tp.space.basis_matrices()
    for i in range(3):
        rows = iota_idx[i]
        if m:
            d_i = mats[:, i * n : (i + 1) * n, i * n : (i + 1) * n]
            block = np.einsum("kra,bc->kabrc", d_i, eye_p).reshape(m, nn, nn)
            _set_with_reverse(table, tri_idx, rows, rows, block, sign[np.ix_(tri_idx, rows)])
        if mp:
            dp_i = mats_p[:, i * nprime : (i + 1) * nprime, i * nprime : (i + 1) * nprime]
            koszul = 1 - 2 * np.outer(Tp.parities, par_S)
            block = np.einsum("ac,ka,krb->kabcr", eye, koszul, dp_i).reshape(mp, nn, nn)
            _set_with_reverse(table, trip_idx, rows, rows, block, sign[np.ix_(trip_idx, rows)])

    # [ι_i(x⊗x'), ι_{i+1}(y⊗y')] = (-1)^{x'y} ι_{i+2}((x∙y)⊗(x'∙y'))
    cross_sign = 1 - 2 * np.outer(par_Sp, par_S)
    cross = np.einsum("ace,bdf,bc->abcdef", S.table, S_prime.table, cross_sign).reshape(nn, nn, nn)
    for i in range(3):
        rows, cols, out = iota_idx[i], iota_idx[(i + 1) % 3], iota_idx[(i + 2) % 3]
        _set_with_reverse(table, rows, cols, out, cross, sign[np.ix_(rows, cols)])

    # [ι_i(x⊗x'), ι_i(y⊗y')] for all ordered pairs; anticommutativity is checked below
    tc = _t_coordinates(T)
    tcp = _t_coordinates(Tp)
    pa, pb = par_S[:, None, None, None], par_Sp[None, :, None, None]
    pc, pd = par_S[None, None, :, None], par_Sp[None, None, None, :]
    sign_tri = 1 - 2 * ((pa * pb + pa * pd + pc * pd) % 2)
    sign_trip = 1 - 2 * ((pc * pb) % 2)
    sign_trip = np.broadcast_to(sign_trip, (n, nprime, n, nprime))
    for i in range(3):
        rows = iota_idx[i]
        if m:
            block = np.einsum("abcd,bd,acm->abcdm", sign_tri, S_prime.gram, tc[i]).reshape(nn, nn, m)
            table[np.ix_(rows, rows, tri_idx)] = block
        if mp:
            block = np.einsum("abcd,ac,bdm->abcdm", sign_trip, S.gram, tcp[i]).reshape(nn, nn, mp)
            table[np.ix_(rows, rows, trip_idx)] = block

    labels = (
        [f"tri[{k}]" for k in range(m)]
        + [f"tri'[{k}]" for k in range(mp)]
        + [f"ι{i}({a}⊗{b})" for i in range(3) for a in S.labels for b in S_prime.labels]
    )
    name = f"g({S.name},{S_prime.name})"
    g = SuperAlgebra.from_table(name, SuperSpace.build(labels, parity), f.reduce(table), f, AlgebraKind.LIE)
    defect = g.symmetry_defect()
    if defect is not None:
        x, y = defect
        raise SignConsistencyError(f"{name}: [{labels[x]}, {labels[y]}] is not super-anticommutative")
    logger.info("built %s of graded dimension %s in %.2fs", name, g.graded_dim, time.perf_counter() - started)
    return MagicCell(S, S_prime, T, Tp, g)


def parse_cells(selection: str | Sequence[str]) -> list[tuple[CompositionName, CompositionName]]:
    """'all' or a list like 'S1xS1,S4xS12' as pairs in Supermagic Square order.

    Raises:
        SquareError: If a token is malformed or names an unknown algebra
    """
    if isinstance(selection, str):
        if selection.strip().lower() == "all":
            n = len(SQUARE_ORDER)
            return [(SQUARE_ORDER[r], SQUARE_ORDER[c]) for r in range(n) for c in range(r, n)]
        tokens = [t for t in selection.split(",") if t.strip()]
    else:
        tokens = list(selection)
    cells = []
    for token in tokens:
        match = CELL_PATTERN.match(token)
        if match is None:
            raise SquareError(f"cell '{token}' is not of the form S4xS12")
        try:
            cells.append((CompositionName(match.group(1)), CompositionName(match.group(2))))
        except ValueError as e:
            raise SquareError(f"unknown composition algebra in cell '{token}'") from e
    return cells


def square_table(
    cells: Sequence[tuple[CompositionName, CompositionName]],
    field: PrimeField | None = None,
    check: JacobiMode | None = None,
    config: EngineConfig | None = None,
) -> tuple[SquareTable, list[CheckReport]]:
    """Build the selected cells and report their graded dimensions, optionally with a Jacobi check."""
    f = resolve_field(field)
    cfg = config or current_config()
    compositions: dict[CompositionName, SymmetricComposition] = {}
    trialities: dict[CompositionName, TrialityAlgebra] = {}

    def get(name: CompositionName) -> tuple[SymmetricComposition, TrialityAlgebra]:
        if name not in compositions:
            compositions[name] = make_symmetric(name, f)
            trialities[name] = tri_basis(compositions[name])
        return compositions[name], trialities[name]

    rows: list[SquareCell] = []
    reports: list[CheckReport] = []
    for row, col in cells:
        S, T = get(row)
        Sp, Tp = get(col)
        cell = build_g(S, Sp, T, Tp)
        even, odd = cell.g.graded_dim
        jacobi = None
        if check is not None:
            report = check_super_jacobi(cell.g, check, config=cfg)
            reports.append(report)
            jacobi = CheckStatus(report.status)
        rows.append(SquareCell(row=row.value, col=col.value, dims=GradedDims(even=even, odd=odd), jacobi=jacobi))
    return SquareTable(p=f.p, cells=rows), reports


def build_swap_map(cell: MagicCell, swapped: MagicCell) -> GradedLinearMap:
    """g(S, S') -> g(S', S): tri blocks exchanged, ι_i(x⊗x') -> (-1)^{|x||x'|} ι_i(x'⊗x)."""
    m, mp = cell.tri.dim, cell.tri_prime.dim
    N = cell.g.dim
    matrix = np.zeros((N, N), dtype=np.int64)
    matrix[mp + np.arange(m), np.arange(m)] = 1
    matrix[np.arange(mp), m + np.arange(mp)] = 1
    for i in range(3):
        for a in range(cell.S.dim):
            for b in range(cell.S_prime.dim):
                sign = 1 - 2 * int(cell.S.parity[a] * cell.S_prime.parity[b])
                matrix[swapped.iota_index(i, b, a), cell.iota_index(i, a, b)] = sign
    return GradedLinearMap(cell.g.space, swapped.g.space, matrix, cell.g.field)


def check_z2z2_grading(cell: MagicCell) -> CheckReport:
    """[g_a, g_b] lies in g_{a+b} for the Z2 x Z2 degrees of the blocks."""
    degrees = np.array([cell.degree(k) for k in range(cell.g.dim)], dtype=np.int64)
    return check_grading(cell.g, degrees, f"z2z2:{cell.g.name}")


def even_part(cell: MagicCell) -> SuperAlgebra:
    """The even part of g as a Lie algebra on the even basis vectors."""
    g = cell.g
    evens = np.flatnonzero(g.parity == 0)
    space = SuperSpace.build([g.labels[k] for k in evens], [0] * evens.size)
    return SuperAlgebra.from_table(f"{g.name}_0", space, g.table[np.ix_(evens, evens, evens)], g.field, AlgebraKind.LIE)


def check_even_odd(cell: MagicCell, config: EngineConfig | None = None) -> list[CheckReport]:
    """The even part is a Lie subalgebra and the odd part a module over it."""
    g = cell.g
    f = g.field
    evens = np.flatnonzero(g.parity == 0)
    odds = np.flatnonzero(g.parity == 1)
    eye = np.eye(g.dim, dtype=np.int64)
    E = Subspace.from_vectors(eye[evens], g.dim, f)
    O = Subspace.from_vectors(eye[odds], g.dim, f)
    reports = [
        check_products_within(g, E, E, E, f"even-closure:{g.name}"),
        check_products_within(g, E, O, O, f"odd-module:{g.name}"),
        check_super_jacobi(even_part(cell), config=config).renamed(f"even-jacobi:{g.name}"),
    ]
    return reports


def expected_dims(row: CompositionName, col: CompositionName) -> tuple[int, int]:
    key = (row, col) if (row, col) in EXPECTED_DIMS else (col, row)
    return EXPECTED_DIMS[key]


def check_square_dims(table: SquareTable) -> CheckReport:
    """Every computed cell has the graded dimension of the characteristic 3 table."""
    witnesses: list[Witness] = []
    for cell in table.cells:
        want = expected_dims(CompositionName(cell.row), CompositionName(cell.col))
        got = (cell.dims.even, cell.dims.odd)
        if got != want:
            detail = f"{got[0]}|{got[1]}, expected {want[0]}|{want[1]}"
            witnesses.append(Witness(kind="dims", labels=[cell.row, cell.col], detail=detail))
    return CheckReport(
        name="square-dims",
        status=CheckStatus.FAIL if witnesses else CheckStatus.PASS,
        subject="Supermagic Square",
        p=table.p,
        witnesses=witnesses,
        details={"cells": len(table.cells)},
    )


def check_swap(cell: MagicCell, swapped: MagicCell) -> CheckReport:
    """g(S, S') and g(S', S) are isomorphic through the block swap."""
    return hom_check(
        build_swap_map(cell, swapped), cell.g, swapped.g, require_bijective=True, name=f"swap:{cell.g.name}"
    )
