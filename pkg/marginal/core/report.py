"""
Rendering of command results.

A :class:`Report` collects a primary result, echoed inputs, tables and
check outcomes in insertion order; :func:`emit_report` renders it either
for people (tables via :xref:`pandas` and :xref:`tabulate`) or as
``key: value`` lines behind ``--porcelain``.  Rendering is a pure function of
the report, so identical inputs give byte-identical output.

"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, TextIO, Tuple

import pandas as pd

from . import cfg
from .configuration import Configuration
from .base import Generic
from .rational import format_decimal, format_rational
from .utils import Console

PASS, FAIL = "PASS", "FAIL"


@dataclass(frozen=True)
class CheckOutcome:
    """Outcome of one property check: ``passed`` of ``total`` cases held."""

    name: str
    passed: int
    total: int
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    @property
    def status(self) -> str:
        return PASS if self.ok else FAIL


class Report(Generic):
    """Results of one command.

    Args:
        command (str):
            Name of the command the report belongs to.

    """

    def __init__(self, command: str):
        super().__init__()
        self.command = command
        self.value: Optional[Any] = None
        self.fields: List[Tuple[str, Any, bool]] = []
        self.tables: List[Tuple[str, pd.DataFrame]] = []
        self.checks: List[CheckOutcome] = []
        self.text: Optional[str] = None

    def result(self, value: Any) -> Report:
        """Sets the primary result."""
        self.value = value
        return self

    def add(self, key: str, value: Any, echo: bool = False) -> Report:
        """Adds a ``key: value`` field; ``echo`` also shows it outside porcelain."""
        self.fields.append((key, value, echo))
        return self

    def table(self, name: str, rows: Sequence[Dict[str, Any]]) -> Report:
        self.tables.append((name, pd.DataFrame(list(rows))))
        return self

    def check(self, outcome: CheckOutcome) -> Report:
        self.checks.append(outcome)
        return self

    def body(self, text: str) -> Report:
        """Verbatim text (e.g. a serialized circuit) written after the fields."""
        self.text = text
        return self

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __str__(self):
        return f"marginal.Report(command='{self.command}')"


def render_value(value: Any, decimal: bool = False, places: int = 12) -> str:
    """Exact ``a/b`` text, or a decimal rendering when ``decimal`` is set."""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (Fraction, int)):
        value = Fraction(value)
        return format_decimal(value, places) if decimal else format_rational(value)
    if isinstance(value, (list, tuple)):
        return ",".join(render_value(v, decimal, places) for v in value)
    if value is None:
        return "none"
    return str(value)


def render(
    report: Report,
    porcelain: bool = False,
    decimal: bool = False,
    output: Optional[cfg.Output] = None,
) -> str:
    """Renders ``report`` as text ending in a newline (empty if nothing to say)."""
    output = output or Configuration().output
    places = output.decimal_places

    def fmt(v: Any) -> str:
        return render_value(v, decimal=decimal, places=places)

    lines: List[str] = []
    if porcelain:
        lines.append(f"command: {report.command}")
        for key, value, _ in report.fields:
            lines.append(f"{key}: {render_value(value)}")
            if decimal and isinstance(value, (Fraction, int)) and not isinstance(value, bool):
                lines.append(f"{key}-decimal: {fmt(value)}")
        if report.value is not None:
            lines.append(f"result: {render_value(report.value)}")
            if decimal and isinstance(report.value, (Fraction, int)):
                lines.append(f"result-decimal: {fmt(report.value)}")
        for name, frame in report.tables:
            for row in frame.to_dict(orient="records"):
                key, *rest = row.values()
                lines.append(f"{name}[{render_value(key)}]: {' '.join(fmt(v) for v in rest)}")
        for c in report.checks:
            lines.append(f"{c.name}: {c.status} {c.passed}/{c.total}")
    else:
        for key, value, echo in report.fields:
            if echo:
                lines.append(f"{key}: {fmt(value)}")
        if report.value is not None:
            lines.append(fmt(report.value))
        for name, frame in report.tables:
            shown = frame.apply(lambda col: col.map(fmt))
            lines.append(shown.to_markdown(index=False, tablefmt=output.tablefmt))
        for c in report.checks:
            detail = f"  {c.detail}" if c.detail and not c.ok else ""
            lines.append(f"{c.status} {c.name} ({c.passed}/{c.total}){detail}")
    if report.text:
        lines.append(report.text.rstrip("\n"))
    return "\n".join(lines) + "\n" if lines else ""


def emit_report(
    report: Report,
    porcelain: bool = False,
    decimal: bool = False,
    output: Optional[cfg.Output] = None,
    stream: Optional[TextIO] = None,
    silence: bool = False,
) -> str:
    """Renders ``report`` and writes it to ``stream`` (stdout by default).

    Returns (str):
        The rendered text.

    """
    text = render(report, porcelain=porcelain, decimal=decimal, output=output)
    if text:
        Console(silence=silence, stream=stream).p(text.rstrip("\n"))
    return text
