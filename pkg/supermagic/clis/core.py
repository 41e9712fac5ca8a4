"""CLI interface for supermagic."""

import asyncio
from collections.abc import Iterator
from contextlib import contextmanager
from importlib import metadata
from pathlib import Path
from typing import Annotated

import typer
import yaml

from supermagic import __version__
from supermagic.clis.utils import (
    _supports_color,
    configure_logging,
    exit_code,
    print_error,
    print_info,
    print_report,
    print_success,
    print_warning,
)
from supermagic.lib import catalog
from supermagic.lib.checks import check_inner_derivations, check_jordan_super, check_super_jacobi
from supermagic.lib.composition import HurwitzSuperalgebra, SymmetricComposition, check_composition, check_symmetric
from supermagic.lib.config import ConfigManager, EngineConfig, configure, current_config, make_config
from supermagic.lib.constants import (
    DEFAULT_CONFIG_PATH,
    DEFAULT_P,
    DEFAULT_SEED,
    SUPER_CHARACTERISTIC,
    WORKERS_ENV_VAR,
    SupermagicError,
)
from supermagic.lib.harness import run_all_async
from supermagic.lib.isomaps import verify_theorem
from supermagic.lib.output_formatter import OutputFormatter
from supermagic.lib.reports import CheckReport
from supermagic.lib.simplicity import is_simple
from supermagic.lib.square import parse_cells, square_table
from supermagic.lib.supercore import center, derived_subalgebra
from supermagic.lib.tkk import check_tits_structure, check_tits_symmetry
from supermagic.types import SQUARE_ORDER, AlgebraKind, CompositionName, IsomorphismName, JacobiMode, OutputFormat

USAGE_ERROR = 2

CHECK_MODES: dict[str, JacobiMode | None] = {
    "none": None,
    "jacobi": JacobiMode.AUTO,
    "jacobi:exhaustive": JacobiMode.EXHAUSTIVE,
    "jacobi:sampled": JacobiMode.SAMPLED,
}

ANALYSES = ("center", "derived", "simple", "derivations")

app = typer.Typer(
    help="supermagic - exact GF(p) engine for the Supermagic Square and its Jordan superalgebras.",
    rich_markup_mode="markdown" if _supports_color() else None,
    pretty_exceptions_enable=_supports_color(),
    no_args_is_help=True,
)
square_app = typer.Typer(help="Build cells of the Supermagic Square.", no_args_is_help=True)
check_app = typer.Typer(help="Check the defining identities of catalog algebras.", no_args_is_help=True)
config_app = typer.Typer(help="Save, show and list named engine configurations.", no_args_is_help=True)
app.add_typer(square_app, name="square")
app.add_typer(check_app, name="check")
app.add_typer(config_app, name="config")

ConfigPathOption = Annotated[Path, typer.Option("--config-path", help="Configuration directory path")]


@contextmanager
def usage_errors() -> Iterator[None]:
    """Report library errors (unknown names, wrong characteristic, bad files) and exit with code 2."""
    try:
        yield
    except SupermagicError as e:
        print_error(str(e))
        raise typer.Exit(USAGE_ERROR) from e


def _finish(reports: list[CheckReport]) -> None:
    for report in reports:
        print_report(report)
    raise typer.Exit(exit_code(reports))


def _parse_check(value: str) -> JacobiMode | None:
    key = value.strip().lower()
    if key not in CHECK_MODES:
        raise typer.BadParameter(f"expected one of {', '.join(CHECK_MODES)}", param_hint="--check")
    return CHECK_MODES[key]


def default_axiom_names(p: int) -> list[str]:
    """Every composition and Jordan algebra of the catalog that exists in characteristic p."""
    names = [s.value for s in SQUARE_ORDER if p == SUPER_CHARACTERISTIC or not s.is_super]
    names += ["Q", "K3"]
    if p == SUPER_CHARACTERISTIC:
        names.append("K9")
    return names


def axiom_reports(name: str, config: EngineConfig) -> list[CheckReport]:
    """The defining identities that apply to the catalog algebra ``name``."""
    entry = catalog.entry(name)
    source = entry.source
    if isinstance(source, SymmetricComposition):
        return [check_composition(source, config), check_symmetric(source, config)]
    if isinstance(source, HurwitzSuperalgebra):
        return [check_composition(source, config)]
    A = entry.algebra
    if A.kind == AlgebraKind.JORDAN:
        return [check_jordan_super(A), check_inner_derivations(A)]
    if A.kind == AlgebraKind.LIE:
        return [check_super_jacobi(A, config=config)]
    print_warning(f"No axioms to check for {name}")
    return []


@square_app.command("build")
def square_build(
    cells: Annotated[str, typer.Option("--cells", "-c", help="'all' or a list like S1xS1,S4xS12")] = "all",
    check: Annotated[
        str, typer.Option("--check", help="none, jacobi, jacobi:exhaustive or jacobi:sampled")
    ] = "none",
    out: Annotated[
        Path | None, typer.Option("--out", "-o", help="Write the table to FILE (.md, .json or .csv)")
    ] = None,
) -> None:
    """Build the selected cells and print their graded dimensions."""
    mode = _parse_check(check)
    config = current_config()
    with usage_errors():
        selection = parse_cells(cells)
        print_info(f"Building {len(selection)} cell(s) over GF({config.p})...")
        table, reports = square_table(selection, check=mode, config=config)
        formatter = OutputFormatter()
        if out is not None:
            path = formatter.save_to_file(table, out)
            print_success(f"Table written to {path}")
        else:
            typer.echo(formatter.square_markdown(table), nl=False)
    _finish(reports)


@check_app.command("axioms")
def check_axioms(
    algebra: Annotated[
        list[str] | None, typer.Option("--algebra", "-a", help="Catalog name; repeat for several (default: all)")
    ] = None,
) -> None:
    """Check composition, symmetric composition, Jordan or Jacobi identities, as applicable."""
    config = current_config()
    names = algebra or default_axiom_names(config.p)
    reports: list[CheckReport] = []
    with usage_errors():
        for name in names:
            reports += axiom_reports(name, config)
    _finish(reports)


@app.command()
def verify(
    theorem: Annotated[IsomorphismName, typer.Option("--theorem", "-t", help="Isomorphism to verify")],
    composition: Annotated[
        CompositionName | None, typer.Option("--S", "-S", help="Symmetric composition argument (default S12)")
    ] = None,
) -> None:
    """Build an explicit isomorphism and check that it is a bijective homomorphism."""
    print_info(f"Verifying {theorem.value}...")
    with usage_errors():
        reports = verify_theorem(theorem, composition)
    _finish(reports)


@app.command()
def analyze(
    algebra: Annotated[str, typer.Option("--algebra", "-a", help="Catalog name, e.g. g:S1,S12 or der:H3:B12")],
    ops: Annotated[str, typer.Option("--ops", help="Comma-separated: center, derived, simple, derivations")] = (
        "center,derived,simple"
    ),
) -> None:
    """Report the center, derived algebra, simplicity verdict and derivations of an algebra."""
    requested = [op.strip() for op in ops.split(",") if op.strip()]
    unknown = [op for op in requested if op not in ANALYSES]
    if unknown:
        raise typer.BadParameter(f"unknown analysis {', '.join(unknown)}", param_hint="--ops")
    config = current_config()
    with usage_errors():
        A = catalog.resolve(algebra)
        even, odd = A.graded_dim
        print_info(f"{A.name}: {A.kind.value} superalgebra of dimension {even}|{odd} over GF({A.field.p})")
        for op in requested:
            if op == "center":
                print_info(f"center: dim {center(A).dim}")
            elif op == "derived":
                derived = derived_subalgebra(A)
                print_info(f"derived algebra: dim {derived.dim}, codim {derived.codim}")
            elif op == "simple":
                result = is_simple(A, config=config)
                ideal = "" if result.ideal is None else f", ideal of dim {result.ideal.dim}"
                message = f"simplicity: {result.verdict.value} after {result.attempts} attempt(s){ideal}"
                if result.reason:
                    message += f" ({result.reason})"
                print_info(message)
            else:
                der = catalog.derivation_space(algebra)
                d_even, d_odd = der.graded_dim
                print_info(f"derivations: dim {d_even}|{d_odd}")


@app.command()
def export(
    algebra: Annotated[str, typer.Option("--algebra", "-a", help="Catalog name")],
    output_format: Annotated[OutputFormat, typer.Option("--format", "-f", help="Output format")] = OutputFormat.JSON,
    out: Annotated[Path | None, typer.Option("--out", "-o", help="Write to FILE instead of stdout")] = None,
) -> None:
    """Export an algebra: json is the algebra file, md and csv the structure table."""
    formatter = OutputFormatter()
    with usage_errors():
        A = catalog.resolve(algebra)
        if out is None:
            typer.echo(formatter.format(A, output_format), nl=False)
            return
        path = formatter.save_to_file(A, out, output_format)
    print_success(f"{A.name} written to {path}")


@app.command("tkk")
def tkk_command(
    jordan: Annotated[str, typer.Option("--jordan", "-j", help="K3, K9 or H3:<C>")] = "K3",
    out: Annotated[Path | None, typer.Option("--out", "-o", help="Also export the algebra to FILE")] = None,
) -> None:
    """Build the Tits-Kantor-Koecher superalgebra of a Jordan superalgebra and check it."""
    config = current_config()
    with usage_errors():
        tits = catalog.entry(f"tkk:{jordan}").source
        even, odd = tits.T.graded_dim
        print_info(f"{tits.name}: dimension {even}|{odd}")
        reports = [*check_tits_structure(tits), check_tits_symmetry(tits), check_super_jacobi(tits.T, config=config)]
        if out is not None:
            path = OutputFormatter().save_to_file(tits.T, out)
            print_success(f"{tits.name} written to {path}")
    _finish(reports)


@app.command("run-all")
def run_all_command(
    config_name: Annotated[
        str | None, typer.Option("--config", help="Named configuration to run (default: the global options)")
    ] = None,
    config_path: ConfigPathOption = DEFAULT_CONFIG_PATH,
    only: Annotated[
        list[str] | None, typer.Option("--only", help="Run only jobs whose name starts with PREFIX; repeatable")
    ] = None,
    out: Annotated[Path | None, typer.Option("--out", "-o", help="Write the run report to FILE")] = None,
) -> None:
    """Run the reproducibility suite."""
    with usage_errors():
        config = ConfigManager(config_path).load_config(config_name) if config_name else current_config()
        print_info(f"Running the suite over GF({config.p}) with seed {config.seed} on {config.workers} worker(s)...")
        report = asyncio.run(run_all_async(config, only))
        for check in report.checks:
            print_report(check)
        print_info(
            f"{len(report.checks)} checks, {len(report.failures)} not passing, "
            f"{report.duration_seconds:.1f}s, peak RSS {report.peak_rss_mb:.0f} MB"
        )
        if out is not None:
            path = OutputFormatter().save_to_file(report, out)
            print_success(f"Run report written to {path}")
    raise typer.Exit(exit_code(report.checks))


@config_app.command("save")
def config_save(
    name: Annotated[str, typer.Argument(help="Configuration name")],
    config_path: ConfigPathOption = DEFAULT_CONFIG_PATH,
) -> None:
    """Save the configuration given by the global options."""
    with usage_errors():
        path = ConfigManager(config_path).save_config(current_config(), name)
    print_success(f"Configuration saved to: {path}")


@config_app.command("show")
def config_show(
    name: Annotated[str | None, typer.Argument(help="Configuration name (default: the global options)")] = None,
    config_path: ConfigPathOption = DEFAULT_CONFIG_PATH,
) -> None:
    """Print a configuration as YAML."""
    with usage_errors():
        config = ConfigManager(config_path).load_config(name) if name else current_config()
    typer.echo(yaml.safe_dump(config.model_dump(mode="json"), default_flow_style=False, sort_keys=True), nl=False)


@config_app.command("list")
def config_list(config_path: ConfigPathOption = DEFAULT_CONFIG_PATH) -> None:
    """List saved configurations."""
    names = ConfigManager(config_path).list_configs()
    if not names:
        print_warning("No configurations found")
        return
    print_info("Available configurations:")
    for name in names:
        typer.echo(f"  {name}")


def version_callback(value: bool) -> None:
    """Show version and exit."""
    if value:
        try:
            version = metadata.version("supermagic")
        except metadata.PackageNotFoundError:
            version = __version__
        typer.echo(f"supermagic version {version}")
        raise typer.Exit


@app.callback()
def main(
    p: Annotated[int, typer.Option("--p", help="Odd prime characteristic")] = DEFAULT_P,
    seed: Annotated[int, typer.Option("--seed", help="Seed for sampled and randomized checks")] = DEFAULT_SEED,
    exhaustive: Annotated[bool, typer.Option("--exhaustive", help="Check Jacobi exhaustively at every size")] = False,
    workers: Annotated[
        int | None, typer.Option("--workers", envvar=WORKERS_ENV_VAR, help="Concurrent checks in run-all")
    ] = None,
    verbose: Annotated[bool, typer.Option("--verbose", "-v", help="Log at DEBUG level")] = False,
    version: Annotated[
        bool, typer.Option("--version", callback=version_callback, is_eager=True, help="Show version and exit")
    ] = False,
) -> None:
    """supermagic - exact GF(p) engine for the Supermagic Square and its Jordan superalgebras."""
    configure_logging(verbose)
    overrides: dict[str, object] = {"p": p, "seed": seed, "force_exhaustive": exhaustive}
    if workers is not None:
        overrides["workers"] = workers
    with usage_errors():
        configure(make_config(**overrides))
