import logging
import os
import sys

import typer
from colorama import Fore, Style, init

from supermagic.lib.reports import SETTLED, CheckReport
from supermagic.types import CheckStatus

# Initialize colorama for cross-platform colored output
init(autoreset=True)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def _supports_color() -> bool:
    """Check if the terminal supports color output."""
    # Check for NO_COLOR environment variable (standard)
    if os.environ.get("NO_COLOR"):
        return False

    # Check for FORCE_COLOR environment variable
    if os.environ.get("FORCE_COLOR"):
        return True

    # Check if running in CI environment
    if os.environ.get("CI") or os.environ.get("GITHUB_ACTIONS"):
        return False

    # Check if stdout is a TTY
    if not sys.stdout.isatty():
        return False

    # Check TERM environment variable
    term = os.environ.get("TERM", "")
    return term not in ("dumb", "")


def configure_logging(verbose: bool) -> None:
    """Send library logs to stderr, at DEBUG with --verbose and WARNING otherwise."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING, format=LOG_FORMAT, stream=sys.stderr, force=True
    )


def _echo(tag: str, colour: str, message: str) -> None:
    text = f"[{tag}] {message}"
    typer.echo(f"{colour}{text}{Style.RESET_ALL}" if _supports_color() else text)


def print_success(message: str) -> None:
    """Print a success message in green."""
    _echo("SUCCESS", Fore.GREEN, message)


def print_warning(message: str) -> None:
    """Print a warning message in yellow."""
    _echo("WARNING", Fore.YELLOW, message)


def print_error(message: str) -> None:
    """Print an error message in red."""
    _echo("ERROR", Fore.RED, message)


def print_info(message: str) -> None:
    _echo("INFO", Fore.BLUE, message)


def print_report(report: CheckReport) -> None:
    """One status line per report, with the first witness of a failure."""
    dims = f" [{report.dims}]" if report.dims is not None else ""
    line = f"{report.name}{dims}: {report.status}"
    if report.status == CheckStatus.PASS:
        print_success(line)
    elif report.status == CheckStatus.SKIPPED:
        print_warning(f"{line} ({report.details.get('skipped', 'skipped')})")
    elif report.status == CheckStatus.INCONCLUSIVE:
        print_warning(line)
    else:
        witness = report.witnesses[0]
        labels = " ".join(witness.labels)
        print_error(f"{line}: {witness.kind} {labels} {witness.detail}".rstrip())


def exit_code(reports: list[CheckReport]) -> int:
    """0 when every report passed or was skipped, 1 otherwise."""
    return 0 if all(r.status in SETTLED for r in reports) else 1
