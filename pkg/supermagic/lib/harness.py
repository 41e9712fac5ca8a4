"""Reproducibility harness: every check of the suite, fanned out over worker threads.

Jobs are independent; numpy releases the GIL inside the matrix products, so ``asyncio.to_thread``
under a semaphore of ``config.workers`` gives real parallelism. Reports are sorted by name, so the
result does not depend on completion order.
"""

from __future__ import annotations

import asyncio
import logging
import threading
import time
from dataclasses import dataclass
from typing import TYPE_CHECKING

import psutil

from supermagic.lib import catalog
from supermagic.lib.checks import check_inner_derivations, check_jordan_super, check_super_jacobi
from supermagic.lib.composition import CharacteristicError, check_composition, check_symmetric
from supermagic.lib.config import EngineConfig, current_config, session
from supermagic.lib.constants import SUPER_CHARACTERISTIC
from supermagic.lib.isomaps import verify_theorem
from supermagic.lib.jordan import (
    check_D_i_identities,
    check_derJ_grading,
    check_h3_grading,
    check_inner_equals,
    check_matches_symmetric,
    check_tensor_derivations,
    tri_to_derJ_injective,
)
from supermagic.lib.reports import (
    CheckReport,
    GradedDims,
    RunReport,
    SquareCell,
    SquareTable,
    Witness,
    overall_status,
)
from supermagic.lib.simplicity import check_simplicity
from supermagic.lib.square import check_even_odd, check_square_dims, check_swap, check_z2z2_grading
from supermagic.lib.tkk import check_tits_structure, check_tits_symmetry, check_traceless_lie, make_split_quaternion
from supermagic.lib.triality import check_t_span, check_theta
from supermagic.types import SQUARE_ORDER, CheckStatus, CompositionName, IsomorphismName, SimplicityVerdict

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

logger = logging.getLogger(__name__)

SKIPPED_BY_CHARACTERISTIC = "skipped-by-characteristic"

THEOREM_CASES: dict[IsomorphismName, tuple[CompositionName | None, ...]] = {
    IsomorphismName.PHI1: (
        CompositionName.S2,
        CompositionName.S4,
        CompositionName.S8,
        CompositionName.S12,
        CompositionName.S42,
    ),
    IsomorphismName.PHI2: (CompositionName.S12, CompositionName.S42, CompositionName.S4, CompositionName.S8),
    IsomorphismName.PHI3: (CompositionName.S12, CompositionName.S42, CompositionName.S8),
    IsomorphismName.PSI: (None,),
    IsomorphismName.PSI_RESTRICTED: (None,),
}

SWAP_CELLS = (
    (CompositionName.S1, CompositionName.S2),
    (CompositionName.S1, CompositionName.S12),
    (CompositionName.S4, CompositionName.S12),
)


@dataclass(frozen=True)
class Job:
    """A named unit of work producing check reports."""

    name: str
    run: Callable[[], list[CheckReport]]


class _PeakRss:
    """Largest resident set size seen between samples."""

    def __init__(self) -> None:
        self._process = psutil.Process()
        self._lock = threading.Lock()
        self.peak_bytes = self._process.memory_info().rss

    def sample(self) -> None:
        rss = self._process.memory_info().rss
        with self._lock:
            self.peak_bytes = max(self.peak_bytes, rss)

    @property
    def peak_mb(self) -> float:
        return self.peak_bytes / (1024 * 1024)


def _composition_job(name: CompositionName, config: EngineConfig) -> list[CheckReport]:
    C = catalog.entry(f"C:{name.value}").source
    return [check_composition(C, config), check_symmetric(catalog.symmetric(name.value), config)]


def _quaternion_job(config: EngineConfig) -> list[CheckReport]:
    Q = make_split_quaternion()
    return [check_composition(Q.C, config), check_traceless_lie(Q)]


def _triality_job(name: CompositionName) -> list[CheckReport]:
    T = catalog.triality(name.value)
    return [check_t_span(T.S, T), check_theta(T)]


def _cell_job(row: CompositionName, col: CompositionName, config: EngineConfig) -> list[CheckReport]:
    cell = catalog.cell(row.value, col.value)
    even, odd = cell.g.graded_dim
    dims = SquareCell(row=row.value, col=col.value, dims=GradedDims(even=even, odd=odd))
    table = SquareTable(p=cell.g.field.p, cells=[dims])
    return [
        check_square_dims(table).renamed(f"dims:{cell.g.name}"),
        check_super_jacobi(cell.g, config=config),
        check_z2z2_grading(cell),
        *check_even_odd(cell, config),
    ]


def _swap_job(row: CompositionName, col: CompositionName) -> list[CheckReport]:
    return [check_swap(catalog.cell(row.value, col.value), catalog.cell(col.value, row.value))]


def _jordan_job(name: CompositionName, config: EngineConfig) -> list[CheckReport]:
    H = catalog.h3(name.value)
    T = catalog.triality(name.value)
    der = catalog.derivation_space(f"H3:{name.value}")
    char3 = H.field.p == SUPER_CHARACTERISTIC
    split_pair = name == CompositionName.S2 and char3
    der_algebra = catalog.resolve(f"der:H3:{name.value}")
    verdict = SimplicityVerdict.NOT_SIMPLE if split_pair else SimplicityVerdict.SIMPLE
    return [
        check_jordan_super(H.J),
        check_h3_grading(H),
        check_inner_derivations(H.J),
        check_D_i_identities(H),
        check_derJ_grading(H, T, der),
        tri_to_derJ_injective(H, T, der),
        check_inner_equals(H.J, 1 if split_pair else 0, der),
        check_simplicity(der_algebra, verdict, config),
        check_simplicity(catalog.resolve(f"str:H3:{name.value}"), SimplicityVerdict.NOT_SIMPLE, config),
    ]


def _kaplansky_job(config: EngineConfig) -> list[CheckReport]:
    K3 = catalog.resolve("K3")
    reports = [check_jordan_super(K3), check_inner_derivations(K3)]
    tits = catalog.entry("tkk:K3").source
    reports += [*check_tits_structure(tits), check_tits_symmetry(tits), check_super_jacobi(tits.T, config=config)]
    return reports


def _kac_job(config: EngineConfig) -> list[CheckReport]:
    K9 = catalog.resolve("K9")
    K3 = catalog.resolve("K3")
    reports = [
        check_jordan_super(K9),
        check_inner_derivations(K9),
        check_tensor_derivations(K3, K3, K9, catalog.derivation_space("K9")),
        check_matches_symmetric(K3, catalog.symmetric("S12")),
        check_simplicity(K9, SimplicityVerdict.SIMPLE, config),
        check_simplicity(catalog.resolve("str:K9"), SimplicityVerdict.SIMPLE, config),
    ]
    tits = catalog.entry("tkk:K9").source
    reports += [*check_tits_structure(tits), check_tits_symmetry(tits), check_super_jacobi(tits.T, config=config)]
    return reports


def _theorem_job(theorem: IsomorphismName, S: CompositionName | None) -> list[CheckReport]:
    return verify_theorem(theorem, S)


def suite(config: EngineConfig) -> list[Job]:
    """Every job of the reproducibility run."""
    jobs = [Job(f"composition:{s.value}", lambda s=s: _composition_job(s, config)) for s in SQUARE_ORDER]
    jobs.append(Job("composition:Q", lambda: _quaternion_job(config)))
    jobs += [Job(f"tri:{s.value}", lambda s=s: _triality_job(s)) for s in SQUARE_ORDER]
    n = len(SQUARE_ORDER)
    for r in range(n):
        for c in range(r, n):
            row, col = SQUARE_ORDER[r], SQUARE_ORDER[c]
            jobs.append(Job(f"cell:{row.value}x{col.value}", lambda row=row, col=col: _cell_job(row, col, config)))
    jobs += [Job(f"swap:{a.value}x{b.value}", lambda a=a, b=b: _swap_job(a, b)) for a, b in SWAP_CELLS]
    jobs += [Job(f"jordan:H3:{s.value}", lambda s=s: _jordan_job(s, config)) for s in SQUARE_ORDER]
    jobs.append(Job("jordan:K3", lambda: _kaplansky_job(config)))
    jobs.append(Job("jordan:K9", lambda: _kac_job(config)))
    jobs.append(Job("simple:g(S1,S1)", lambda: [check_simplicity(catalog.resolve("g:S1,S1"), config=config)]))
    for theorem, cases in THEOREM_CASES.items():
        for S in cases:
            label = theorem.value if S is None else f"{theorem.value}:{S.value}"
            jobs.append(Job(f"theorem:{label}", lambda t=theorem, S=S: _theorem_job(t, S)))
    return jobs


def _execute(job: Job, config: EngineConfig, rss: _PeakRss) -> list[CheckReport]:
    started = time.perf_counter()
    try:
        reports = job.run()
    except CharacteristicError as e:
        if config.p == SUPER_CHARACTERISTIC:
            raise
        logger.info("%s skipped at p=%d: %s", job.name, config.p, e)
        reports = [
            CheckReport(
                name=job.name,
                status=CheckStatus.SKIPPED,
                p=config.p,
                details={"skipped": SKIPPED_BY_CHARACTERISTIC, "reason": str(e)},
            )
        ]
    except Exception as e:
        logger.exception("%s raised", job.name)
        reports = [
            CheckReport(
                name=job.name,
                status=CheckStatus.FAIL,
                p=config.p,
                witnesses=[Witness(kind="error", detail=f"{type(e).__name__}: {e}")],
            )
        ]
    rss.sample()
    logger.debug("%s finished in %.2fs", job.name, time.perf_counter() - started)
    return reports


async def run_jobs(jobs: Sequence[Job], config: EngineConfig, rss: _PeakRss | None = None) -> list[CheckReport]:
    """Run ``jobs`` on worker threads, at most ``config.workers`` at a time, and sort the reports by name."""
    monitor = rss or _PeakRss()
    semaphore = asyncio.Semaphore(max(1, config.workers))

    async def run_one(job: Job) -> list[CheckReport]:
        async with semaphore:
            return await asyncio.to_thread(_execute, job, config, monitor)

    batches = await asyncio.gather(*(run_one(job) for job in jobs))
    return sorted((r for batch in batches for r in batch), key=lambda r: r.name)


async def run_all_async(config: EngineConfig | None = None, only: Sequence[str] | None = None) -> RunReport:
    """Async implementation of ``run_all``."""
    cfg = config or current_config()
    with session(cfg):
        jobs = suite(cfg)
        if only:
            jobs = [job for job in jobs if any(job.name.startswith(prefix) for prefix in only)]
        logger.info("running %d jobs on %d workers at p=%d", len(jobs), cfg.workers, cfg.p)
        started = time.perf_counter()
        rss = _PeakRss()
        reports = await run_jobs(jobs, cfg, rss)
        duration = time.perf_counter() - started
    return RunReport(
        config=cfg,
        checks=reports,
        status=overall_status(reports),
        duration_seconds=duration,
        peak_rss_mb=rss.peak_mb,
    )


def run_all(config: EngineConfig | None = None, only: Sequence[str] | None = None) -> RunReport:
    """Run the whole suite (or the jobs whose names start with one of ``only``) under ``config``."""
    return asyncio.run(run_all_async(config, only))
