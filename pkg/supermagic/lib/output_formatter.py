"""Render reports, square tables and algebras as JSON, CSV or Markdown, and write them to disk."""

from __future__ import annotations

import csv
import json
import logging
from io import StringIO
from pathlib import Path
from typing import Any

from pydantic import BaseModel

from supermagic.lib.algebra_file import emit
from supermagic.lib.constants import SupermagicError
from supermagic.lib.reports import CheckReport, RunReport, SquareTable
from supermagic.lib.supercore import SuperAlgebra
from supermagic.types import SQUARE_ORDER, CheckStatus, OutputFormat

logger = logging.getLogger(__name__)

SUFFIXES = {OutputFormat.JSON: ".json", OutputFormat.CSV: ".csv", OutputFormat.MARKDOWN: ".md"}


class OutputFormatterError(SupermagicError):
    """Base exception for output formatter errors."""


class FormatConversionError(OutputFormatterError):
    """Raised when format conversion fails."""


class FileWriteError(OutputFormatterError):
    """Raised when file writing fails."""


def _md(text: str) -> str:
    """Escape pipes inside a Markdown table cell."""
    return text.replace("|", "\\|")


def format_for_path(path: Path, default: OutputFormat = OutputFormat.JSON) -> OutputFormat:
    """Output format implied by the suffix of ``path``."""
    for fmt, suffix in SUFFIXES.items():
        if path.suffix == suffix:
            return fmt
    return default


def structure_rows(A: SuperAlgebra) -> list[dict[str, Any]]:
    """One row per nonzero structure constant, in the order of ``A.entries``."""
    labels = A.labels
    return [
        {
            "i": int(i),
            "j": int(j),
            "k": int(k),
            "c": int(c),
            "left": labels[i],
            "right": labels[j],
            "output": labels[k],
        }
        for i, j, k, c in A.entries
    ]


class OutputFormatter:
    """Formatter for reports, tables and algebras."""

    def __init__(self, max_retries: int = 3) -> None:
        """Initialize output formatter.

        Args:
            max_retries: Maximum number of retries for file operations
        """
        self.max_retries = max_retries

    def format_to_json(self, data: Any, pretty: bool = True) -> str:
        """Format data to JSON string.

        Args:
            data: Data to format (dict, list, pydantic model or SuperAlgebra)
            pretty: Whether to use pretty printing with indentation

        Returns:
            JSON formatted string

        Raises:
            FormatConversionError: If JSON conversion fails
        """
        if isinstance(data, SuperAlgebra):
            return emit(data)
        try:
            data = self._to_plain(data)
            if pretty:
                return json.dumps(data, indent=2, ensure_ascii=False, default=str) + "\n"
            return json.dumps(data, ensure_ascii=False, default=str)
        except (TypeError, ValueError) as e:
            raise FormatConversionError(f"Failed to convert to JSON: {e}") from e

    def format_to_csv(self, data: Any, headers: list[str] | None = None) -> str:
        """Format data to CSV string.

        Args:
            data: Data to format (dict, list of dicts, pydantic model or SuperAlgebra)
            headers: Optional custom headers for CSV

        Returns:
            CSV formatted string

        Raises:
            FormatConversionError: If CSV conversion fails
        """
        try:
            if isinstance(data, SuperAlgebra):
                rows = structure_rows(data)
            else:
                data = self._to_plain(data)
                if isinstance(data, dict):
                    rows = self._flatten_for_csv(data)
                elif isinstance(data, list):
                    rows = [self._flatten_dict(r) if isinstance(r, dict) else {"value": r} for r in data]
                else:
                    rows = [{"value": str(data)}]

            if not rows:
                return ""

            output = StringIO()
            if headers is None:
                headers = list(rows[0].keys())
                for row in rows[1:]:
                    headers.extend(k for k in row if k not in headers)

            writer = csv.DictWriter(output, fieldnames=headers, extrasaction="ignore", lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
            return output.getvalue()

        except (TypeError, ValueError, csv.Error) as e:
            raise FormatConversionError(f"Failed to convert to CSV: {e}") from e

    def format_to_markdown(self, data: Any) -> str:
        """Markdown rendering of a square table, a run, a report list or an algebra.

        Raises:
            FormatConversionError: If there is no Markdown rendering for the data
        """
        if isinstance(data, SquareTable):
            return self.square_markdown(data)
        if isinstance(data, RunReport):
            header = f"# Run p={data.config.p} seed={data.config.seed}: {data.status}\n\n"
            return header + self.reports_markdown(data.checks)
        if isinstance(data, CheckReport):
            return self.reports_markdown([data])
        if isinstance(data, list) and all(isinstance(r, CheckReport) for r in data):
            return self.reports_markdown(data)
        if isinstance(data, SuperAlgebra):
            return self.algebra_markdown(data)
        raise FormatConversionError(f"No Markdown rendering for {type(data).__name__}")

    def square_markdown(self, table: SquareTable) -> str:
        """The Supermagic Square in its usual layout, entries above the diagonal only."""
        filled = {(c.row, c.col): c for c in table.cells}
        names = [s.value for s in SQUARE_ORDER]
        lines = [
            "| " + " | ".join(["", *names]) + " |",
            "|" + "---|" * (len(names) + 1),
        ]
        for r, row in enumerate(names):
            entries = []
            for c, col in enumerate(names):
                cell = filled.get((row, col))
                if c < r or cell is None:
                    entries.append("")
                    continue
                text = _md(str(cell.dims))
                if cell.jacobi is not None and cell.jacobi != CheckStatus.PASS:
                    text += f" ({cell.jacobi})"
                entries.append(text)
            lines.append("| " + " | ".join([row, *entries]) + " |")
        return "\n".join(lines) + "\n"

    def reports_markdown(self, reports: list[CheckReport]) -> str:
        lines = ["| check | status | subject | dims | witness |", "|---|---|---|---|---|"]
        for r in reports:
            witness = ""
            if r.witnesses:
                w = r.witnesses[0]
                witness = _md(f"{w.kind} {' '.join(w.labels)} {w.detail}".strip())
            dims = "" if r.dims is None else _md(str(r.dims))
            lines.append(f"| {r.name} | {r.status} | {r.subject} | {dims} | {witness} |")
        return "\n".join(lines) + "\n"

    def algebra_markdown(self, A: SuperAlgebra) -> str:
        even, odd = A.graded_dim
        lines = [
            f"# {A.name}",
            "",
            f"kind {A.kind.value}, p = {A.field.p}, dimension {even}|{odd}",
            "",
            "| left | right | output | coefficient |",
            "|---|---|---|---|",
        ]
        lines.extend(f"| {r['left']} | {r['right']} | {r['output']} | {r['c']} |" for r in structure_rows(A))
        return "\n".join(lines) + "\n"

    def format(self, data: Any, format_type: OutputFormat) -> str:
        """Format ``data`` in ``format_type``.

        Raises:
            FormatConversionError: If formatting fails
        """
        if format_type == OutputFormat.JSON:
            return self.format_to_json(data)
        if format_type == OutputFormat.CSV:
            return self.format_to_csv(data)
        if format_type == OutputFormat.MARKDOWN:
            return self.format_to_markdown(data)
        raise FormatConversionError(f"Unsupported format: {format_type}")

    def _to_plain(self, data: Any) -> Any:
        if isinstance(data, BaseModel):
            return data.model_dump(mode="json")
        if isinstance(data, list):
            return [self._to_plain(item) for item in data]
        if isinstance(data, Path):
            return str(data)
        return data

    def _flatten_for_csv(self, data: dict[str, Any]) -> list[dict[str, Any]]:
        """Flatten a run (one row per check) or a square table (one row per cell)."""
        for key in ("checks", "cells"):
            if isinstance(data.get(key), list):
                base = {k: v for k, v in data.items() if k != key and not isinstance(v, dict | list)}
                rows = [{**base, **self._flatten_dict(item)} for item in data[key]]
                return rows or [base]
        return [self._flatten_dict(data)]

    def _flatten_dict(self, d: dict[str, Any], parent_key: str = "", sep: str = "_") -> dict[str, Any]:
        """Recursively flatten a nested dictionary.

        Args:
            d: Dictionary to flatten
            parent_key: Parent key for nested items
            sep: Separator for concatenated keys

        Returns:
            Flattened dictionary
        """
        items: list[tuple[str, Any]] = []
        for k, v in d.items():
            new_key = f"{parent_key}{sep}{k}" if parent_key else k
            if isinstance(v, dict):
                items.extend(self._flatten_dict(v, new_key, sep=sep).items())
            elif isinstance(v, list):
                items.append((new_key, json.dumps(v, ensure_ascii=False, default=str)))
            else:
                items.append((new_key, v))
        return dict(items)

    def save_to_file(self, data: Any, file_path: Path, format_type: OutputFormat | None = None) -> Path:
        """Save formatted data to file with retry logic.

        Args:
            data: Data to save
            file_path: Path to output file; its suffix selects the format when none is given
            format_type: Output format type

        Returns:
            The path written

        Raises:
            FileWriteError: If file writing fails after retries
        """
        fmt = format_type or format_for_path(file_path)
        content = self.format(data, fmt)
        file_path = file_path.with_suffix(SUFFIXES[fmt])
        try:
            file_path.parent.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise FileWriteError(f"Cannot create {file_path.parent}: {e}") from e

        last_error: OSError | None = None
        for attempt in range(self.max_retries):
            try:
                file_path.write_text(content, encoding="utf-8")
                logger.info("wrote %s", file_path)
                return file_path
            except OSError as e:
                last_error = e
                if attempt < self.max_retries - 1:
                    temp_path = file_path.with_suffix(f".tmp{attempt}")
                    try:
                        temp_path.write_text(content, encoding="utf-8")
                        temp_path.replace(file_path)
                        return file_path
                    except OSError:
                        continue

        raise FileWriteError(f"Failed to write file after {self.max_retries} attempts: {last_error}") from last_error
