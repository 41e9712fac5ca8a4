"""Integration tests for the reproducibility harness."""

import pytest

from supermagic.lib import catalog
from supermagic.lib.composition import CharacteristicError
from supermagic.lib.config import current_config, make_config
from supermagic.lib.harness import SKIPPED_BY_CHARACTERISTIC, Job, run_all, run_all_async, run_jobs, suite
from supermagic.lib.reports import CheckReport
from supermagic.lib.square import SquareError
from supermagic.types import CheckStatus


@pytest.fixture(autouse=True)
def fresh_catalog():
    catalog.clear()
    yield
    catalog.clear()


def _report(name: str) -> list[CheckReport]:
    return [CheckReport(name=name, status=CheckStatus.PASS, p=3)]


class TestSuite:
    """Test the job list."""

    def test_job_names_are_unique(self, engine_config):
        """Every job has its own name."""
        names = [job.name for job in suite(engine_config)]
        assert len(names) == len(set(names))

    def test_covers_the_square(self, engine_config):
        """All 21 cells and every theorem have a job."""
        names = [job.name for job in suite(engine_config)]
        assert sum(name.startswith("cell:") for name in names) == 21
        assert "cell:S8xS8" in names
        assert "theorem:psi" in names
        assert "theorem:phi3:S12" in names
        assert "jordan:K9" in names


class TestRunJobs:
    """Test concurrent execution."""

    async def test_sorted_by_name(self, engine_config):
        """Reports come back sorted whatever the completion order."""
        jobs = [Job("b", lambda: _report("b")), Job("a", lambda: _report("a")), Job("c", lambda: _report("c"))]
        reports = await run_jobs(jobs, engine_config.model_copy(update={"workers": 3}))
        assert [r.name for r in reports] == ["a", "b", "c"]

    async def test_errors_become_failures(self, engine_config):
        """A library error inside a job is reported, not raised."""

        def broken() -> list[CheckReport]:
            raise SquareError("no such cell")

        reports = await run_jobs([Job("broken", broken)], engine_config)
        assert reports[0].status == CheckStatus.FAIL
        assert reports[0].witnesses[0].kind == "error"
        assert "SquareError" in reports[0].witnesses[0].detail

    async def test_unexpected_errors_do_not_abort_the_run(self, engine_config):
        """Any exception in one job becomes a FAIL; the other jobs still report."""

        def crashes() -> list[CheckReport]:
            raise ValueError("operands could not be broadcast")

        jobs = [Job("a", lambda: _report("a")), Job("crash", crashes), Job("z", lambda: _report("z"))]
        reports = await run_jobs(jobs, engine_config)
        assert [r.name for r in reports] == ["a", "crash", "z"]
        assert reports[1].status == CheckStatus.FAIL
        assert reports[1].witnesses[0].kind == "error"
        assert reports[1].witnesses[0].detail.startswith("ValueError")
        assert reports[0].passed
        assert reports[2].passed

    async def test_characteristic_errors_skip_away_from_three(self, engine_config, engine_config5):
        """Superalgebra jobs are skipped at p = 5 and fatal at p = 3."""

        def needs_three() -> list[CheckReport]:
            raise CharacteristicError("B(1,2) exists only in characteristic 3")

        reports = await run_jobs([Job("needs-three", needs_three)], engine_config5)
        assert reports[0].status == CheckStatus.SKIPPED
        assert reports[0].witnesses == []
        assert reports[0].details["skipped"] == SKIPPED_BY_CHARACTERISTIC
        with pytest.raises(CharacteristicError):
            await run_jobs([Job("needs-three", needs_three)], engine_config)


class TestRunAll:
    """Test whole runs restricted with prefixes."""

    def test_compositions(self, engine_config):
        """The composition jobs pass at p = 3."""
        run = run_all(engine_config, only=["composition:"])
        assert run.status == CheckStatus.PASS
        assert {r.name for r in run.checks} >= {"composition:k", "symmetric:S12", "traceless-lie:Q"}
        assert run.config.p == 3
        assert run.peak_rss_mb > 0

    def test_small_cells_and_theorems(self, engine_config):
        """A few cells, a swap and the restricted Ψ pass together."""
        run = run_all(engine_config, only=["cell:S1xS1", "cell:S1xS12", "swap:S1xS12", "theorem:psi-restricted"])
        assert run.status == CheckStatus.PASS
        assert "jacobi:g(S1,S12)" in {r.name for r in run.checks}

    def test_p5_skips_superalgebras(self, engine_config5):
        """At p = 5 the superalgebra jobs are skipped and the rest passes."""
        run = run_all(engine_config5, only=["composition:S12", "composition:S8", "jordan:K9", "theorem:psi"])
        assert run.status == CheckStatus.PASS
        skipped = {r.name for r in run.checks if r.status == CheckStatus.SKIPPED}
        assert all(r.details["skipped"] == SKIPPED_BY_CHARACTERISTIC for r in run.checks if r.name in skipped)
        assert run.failures == []
        assert skipped == {"composition:S12", "jordan:K9", "theorem:psi", "theorem:psi-restricted"}
        assert "composition:Cayley" in {r.name for r in run.checks}

    async def test_session_is_restored(self, engine_config5):
        """The run installs its configuration only for its own duration."""
        before = current_config()
        run = await run_all_async(engine_config5, only=["tri:S1"])
        assert run.status == CheckStatus.PASS
        assert current_config() == before

    def test_empty_selection(self):
        """An unmatched prefix runs nothing and passes."""
        run = run_all(make_config(workers=1), only=["nothing-matches"])
        assert run.checks == []
        assert run.status == CheckStatus.PASS

    @pytest.mark.slow
    def test_default_run_passes(self):
        """The whole suite with the default configuration passes at p = 3."""
        run = run_all(make_config(p=3, seed=0))
        assert run.status == CheckStatus.PASS
        assert run.failures == []
        names = {r.name for r in run.checks}
        assert "simple:str(K9)" in names
        assert "jacobi:g(S8,S8)" in names
