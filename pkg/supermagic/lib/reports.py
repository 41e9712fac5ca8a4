"""Machine-readable reports for checks and harness runs."""

from __future__ import annotations

import time
from contextlib import contextmanager
from datetime import datetime
from typing import TYPE_CHECKING, Any

from pydantic import BaseModel, Field, model_validator

from supermagic.lib.config import EngineConfig
from supermagic.types import CheckStatus

if TYPE_CHECKING:
    from collections.abc import Iterator


class GradedDims(BaseModel):
    """Graded dimension (even|odd)."""

    even: int = Field(description="Dimension of the even part")
    odd: int = Field(default=0, description="Dimension of the odd part")

    @property
    def total(self) -> int:
        return self.even + self.odd

    def __str__(self) -> str:
        return f"{self.even}|{self.odd}"


class Witness(BaseModel):
    """Evidence attached to a failed (or non-simple) verdict."""

    kind: str = Field(description="What the witness certifies, e.g. 'jacobi-triple' or 'ideal'")
    indices: list[int] = Field(default_factory=list, description="Basis indices involved")
    labels: list[str] = Field(default_factory=list, description="Basis labels involved")
    detail: str = Field(default="", description="Human-readable detail")


class Timings(BaseModel):
    """Wall and CPU time of a check."""

    wall_ms: float = Field(default=0.0, description="Wall clock time in milliseconds")
    cpu_ms: float = Field(default=0.0, description="CPU time in milliseconds")


# Statuses that do not make a run fail
SETTLED = (CheckStatus.PASS, CheckStatus.SKIPPED)


class CheckReport(BaseModel):
    """Result of a single check."""

    name: str = Field(description="Check name")
    status: CheckStatus = Field(description="Outcome")
    subject: str = Field(default="", description="Algebra or map the check is about")
    p: int = Field(description="Characteristic of the ground field")
    dims: GradedDims | None = Field(default=None, description="Graded dimension of the subject")
    witnesses: list[Witness] = Field(default_factory=list, description="Violations or ideal witnesses")
    details: dict[str, Any] = Field(default_factory=dict, description="Additional check-specific data")
    seed: int | None = Field(default=None, description="Seed of randomized checks")
    timings: Timings = Field(default_factory=Timings, description="Measured timings")

    model_config = {"use_enum_values": True}

    @model_validator(mode="after")
    def _failures_carry_witness(self) -> CheckReport:
        if self.status == CheckStatus.FAIL and not self.witnesses:
            raise ValueError(f"failed check '{self.name}' must carry a witness")
        return self

    @property
    def passed(self) -> bool:
        return self.status == CheckStatus.PASS

    def renamed(self, name: str) -> CheckReport:
        return self.model_copy(update={"name": name})


class SquareCell(BaseModel):
    """One cell of the Supermagic Square table."""

    row: str = Field(description="Symmetric composition indexing the row")
    col: str = Field(description="Symmetric composition indexing the column")
    dims: GradedDims = Field(description="Graded dimension of g(row, col)")
    jacobi: CheckStatus | None = Field(default=None, description="Jacobi verdict when a check was requested")

    model_config = {"use_enum_values": True}


class SquareTable(BaseModel):
    """Selected cells of the Supermagic Square."""

    p: int = Field(description="Characteristic of the ground field")
    cells: list[SquareCell] = Field(default_factory=list, description="Cells in row-major upper-triangle order")


class RunReport(BaseModel):
    """Aggregated result of a harness run."""

    timestamp: datetime = Field(default_factory=datetime.now, description="Start of the run")
    config: EngineConfig = Field(description="Configuration used")
    checks: list[CheckReport] = Field(default_factory=list, description="Check reports sorted by name")
    status: CheckStatus = Field(description="Overall status")
    duration_seconds: float = Field(default=0.0, description="Total execution time")
    peak_rss_mb: float = Field(default=0.0, description="Peak resident set size in megabytes")

    model_config = {"use_enum_values": True}

    @property
    def failures(self) -> list[CheckReport]:
        return [c for c in self.checks if c.status not in SETTLED]


def overall_status(reports: list[CheckReport]) -> CheckStatus:
    """FAIL beats INCONCLUSIVE beats PASS; skipped checks do not count."""
    statuses = {r.status for r in reports}
    if CheckStatus.FAIL in statuses:
        return CheckStatus.FAIL
    if CheckStatus.INCONCLUSIVE in statuses:
        return CheckStatus.INCONCLUSIVE
    return CheckStatus.PASS


@contextmanager
def stopwatch() -> Iterator[Timings]:
    """Measure wall and CPU time of the enclosed block into the yielded Timings."""
    timings = Timings()
    wall = time.perf_counter()
    cpu = time.process_time()
    try:
        yield timings
    finally:
        timings.wall_ms = (time.perf_counter() - wall) * 1000
        timings.cpu_ms = (time.process_time() - cpu) * 1000
