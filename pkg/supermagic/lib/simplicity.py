"""Simplicity of a superalgebra as irreducibility of its multiplication module.

Graded ideals of A are exactly the submodules of A under the left and right multiplications and
the parity operator. Irreducibility is decided with a Meataxe-style test: pick a random element X
of the operator algebra and a monic irreducible polynomial f. When the nullity of f(X) equals deg f,
spinning one kernel vector of f(X) and one kernel vector of its transpose settles the question.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import TYPE_CHECKING

import numpy as np

from supermagic.lib.config import EngineConfig, current_config
from supermagic.lib.exact_linalg import PrimeField, RowReducer, Subspace, kernel_basis, spin
from supermagic.lib.reports import CheckReport, Witness, stopwatch
from supermagic.lib.supercore import SuperAlgebra, SuperAlgebraError, center, derived_subalgebra
from supermagic.types import AlgebraKind, CheckStatus, SimplicityVerdict

if TYPE_CHECKING:
    from collections.abc import Sequence

logger = logging.getLogger(__name__)

# Random products of two generators mixed into each candidate element
PRODUCT_TERMS = 3
# Polynomials tried per random element
POLYNOMIALS_PER_ATTEMPT = 8


@dataclass(frozen=True)
class SimplicityResult:
    """Verdict of the simplicity test, with a proper nonzero ideal when one was found."""

    verdict: SimplicityVerdict
    ideal: Subspace | None = None
    attempts: int = 0
    reason: str = ""


def irreducible_polynomials(field: PrimeField, max_degree: int = 2) -> list[tuple[int, ...]]:
    """Monic irreducible polynomials of degree <= 2, as coefficient tuples from the constant term up.

    ``(c0, c1, 1)`` stands for x^2 + c1 x + c0.
    """
    p = field.p
    polys: list[tuple[int, ...]] = [((-a) % p, 1) for a in range(p)]
    if max_degree >= 2:
        for c0, c1 in product(range(p), repeat=2):
            if all((x * x + c1 * x + c0) % p for x in range(p)):
                polys.append((c0, c1, 1))
    return polys


def _evaluate(poly: Sequence[int], X: np.ndarray, field: PrimeField) -> np.ndarray:
    n = X.shape[0]
    result = np.zeros((n, n), dtype=np.int64)
    power = np.eye(n, dtype=np.int64)
    for c in poly:
        result = field.reduce(result + c * power)
        power = field.matmul(power, X)
    return result


def module_generators(A: SuperAlgebra) -> np.ndarray:
    """Operators whose common invariant subspaces are the graded ideals of A."""
    parity_op = A.field.reduce(np.diag(1 - 2 * A.parity))[None]
    if A.kind == AlgebraKind.LIE:
        return np.concatenate([A.left_ops, parity_op], axis=0)
    return np.concatenate([A.left_ops, A.right_ops, parity_op], axis=0)


def _random_element(generators: np.ndarray, field: PrimeField, rng: np.random.Generator) -> np.ndarray:
    g = generators.shape[0]
    coeffs = field.random_matrix(rng, g)
    X = field.reduce(np.tensordot(coeffs, generators, axes=1))
    for _ in range(PRODUCT_TERMS):
        a, b = rng.integers(0, g, size=2)
        c = int(rng.integers(1, field.p))
        X = field.reduce(X + c * field.matmul(generators[a], generators[b]))
    return X


def _nullspace(matrix: np.ndarray, field: PrimeField) -> np.ndarray:
    reducer = RowReducer(matrix.shape[1], field)
    reducer.add(matrix)
    return reducer.kernel()


def _structural_witness(A: SuperAlgebra) -> SimplicityResult | None:
    n = A.dim
    derived = derived_subalgebra(A)
    if derived.dim == 0:
        ideal = Subspace.from_vectors(A.basis_vector(0), n, A.field) if n > 1 else derived
        return SimplicityResult(SimplicityVerdict.NOT_SIMPLE, ideal, 0, "A*A = 0")
    # centre before the derived algebra: str J yields span{L_1}
    if A.kind == AlgebraKind.LIE:
        z = center(A)
        if 0 < z.dim < n:
            return SimplicityResult(SimplicityVerdict.NOT_SIMPLE, z, 0, "centre is a proper ideal")
    if derived.dim < n:
        return SimplicityResult(SimplicityVerdict.NOT_SIMPLE, derived, 0, "derived algebra is a proper ideal")
    return None


def is_simple(
    A: SuperAlgebra,
    attempts: int | None = None,
    seed: int | None = None,
    config: EngineConfig | None = None,
) -> SimplicityResult:
    """Decide whether A has no proper nonzero graded ideal and A*A != 0.

    Raises:
        SuperAlgebraError: If A is the zero algebra
    """
    if A.dim == 0:
        raise SuperAlgebraError("the zero algebra is neither simple nor not simple")
    cfg = config or current_config()
    bound = attempts if attempts is not None else cfg.simplicity_attempts
    rng = np.random.default_rng(seed if seed is not None else cfg.seed)
    structural = _structural_witness(A)
    if structural is not None:
        logger.info("%s is not simple: %s", A.name, structural.reason)
        return structural

    f = A.field
    n = A.dim
    generators = module_generators(A)
    transposed = generators.transpose(0, 2, 1)
    polys = irreducible_polynomials(f)
    for attempt in range(1, bound + 1):
        X = _random_element(generators, f, rng)
        order = rng.permutation(len(polys))[:POLYNOMIALS_PER_ATTEMPT]
        for idx in order:
            poly = polys[idx]
            theta = _evaluate(poly, X, f)
            kernel = _nullspace(theta, f)
            if kernel.shape[0] == 0:
                continue
            sub = spin(Subspace.from_vectors(kernel[0], n, f), generators)
            if sub.dim < n:
                logger.info("%s is not simple: submodule of dim %d (attempt %d)", A.name, sub.dim, attempt)
                return SimplicityResult(SimplicityVerdict.NOT_SIMPLE, sub, attempt, "spun submodule")
            if kernel.shape[0] != len(poly) - 1:
                continue
            dual_kernel = _nullspace(theta.T, f)
            dual = spin(Subspace.from_vectors(dual_kernel[0], n, f), transposed)
            if dual.dim < n:
                ideal = kernel_basis(dual.basis, f)
                logger.info("%s is not simple: annihilator of dim %d (attempt %d)", A.name, ideal.dim, attempt)
                return SimplicityResult(SimplicityVerdict.NOT_SIMPLE, ideal, attempt, "annihilator of a dual submodule")
            logger.info("%s is simple (attempt %d)", A.name, attempt)
            return SimplicityResult(SimplicityVerdict.SIMPLE, None, attempt, "irreducibility certified")
    logger.warning("simplicity of %s undecided after %d attempts", A.name, bound)
    return SimplicityResult(SimplicityVerdict.INCONCLUSIVE, None, bound, "attempt bound reached")


def check_simplicity(
    A: SuperAlgebra,
    expected: SimplicityVerdict = SimplicityVerdict.SIMPLE,
    config: EngineConfig | None = None,
) -> CheckReport:
    """Run ``is_simple`` and compare the verdict with ``expected``."""
    cfg = config or current_config()
    with stopwatch() as timings:
        result = is_simple(A, config=cfg)
    witnesses: list[Witness] = []
    details: dict[str, object] = {
        "verdict": result.verdict.value,
        "expected": expected.value,
        "attempts": result.attempts,
        "reason": result.reason,
    }
    if result.ideal is not None:
        details["ideal_dim"] = result.ideal.dim
        details["ideal_basis"] = result.ideal.basis.tolist()
    if result.verdict == SimplicityVerdict.INCONCLUSIVE:
        status = CheckStatus.INCONCLUSIVE
    elif result.verdict == expected:
        status = CheckStatus.PASS
    else:
        status = CheckStatus.FAIL
        detail = f"expected {expected.value}, got {result.verdict.value}"
        if result.ideal is not None:
            detail += f" with an ideal of dim {result.ideal.dim}"
        witnesses.append(Witness(kind="ideal" if result.ideal is not None else "verdict", detail=detail))
    return CheckReport(
        name=f"simple:{A.name}",
        status=status,
        subject=A.name,
        p=A.field.p,
        witnesses=witnesses,
        details=details,
        seed=cfg.seed,
        timings=timings,
    )
