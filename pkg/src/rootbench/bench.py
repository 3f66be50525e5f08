"""Run corpus cells and suites, and render the results as table, CSV or JSON."""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .corpus import CORPUS_VERSION, list_functions, lookup
from .diagnostics import Label, RateEstimate, classify_outcome, estimate_order
from .errors import NoUsableSteps, RootbenchError
from .solver import Method, SolverConfig, SolverOutcome, Status, solve

log = logging.getLogger(__name__)

DEFAULT_METHODS = (Method.SECANT, Method.NEWTON, Method.THREE_POINT)
ALL_METHODS = DEFAULT_METHODS + (Method.MULLER,)

CSV_HEADER = ("function", "starts", "method", "status", "iterations", "root", "geo_mean", "final_alpha")
FORMATS = ("table", "csv", "json")


@dataclass(frozen=True)
class ReportRow:
    function: str
    starts: tuple[float, ...]
    method: str
    status: str
    iterations: int | str
    root: Optional[float] = None
    geometric_mean: Optional[float] = None
    final_alpha: Optional[float] = None
    detail: Optional[str] = None

    @property
    def converged(self) -> bool:
        return self.status == Label.CONVERGED.value


@dataclass(frozen=True)
class SuiteReport:
    rows: tuple[ReportRow, ...]
    config: SolverConfig = field(default_factory=SolverConfig)
    corpus_version: str = CORPUS_VERSION
    version: str = __version__

    def row(self, function: str, starts: Sequence[float], method: Method | str) -> ReportRow:
        method = Method.parse(method) if isinstance(method, str) else method
        for r in self.rows:
            if r.function == function and r.starts == tuple(starts) and r.method == method.value:
                return r
        raise KeyError((function, tuple(starts), method.value))


def run_cell(
    function_id: str,
    method: Method | str,
    starts: Sequence[float],
    config: SolverConfig | None = None,
    seed_third: bool = False,
) -> tuple[SolverOutcome, Optional[RateEstimate], Label]:
    """Solve one (function, method, starts) cell and analyse its trace.

    The order estimate is taken against the reference root nearest the final
    iterate for converged runs, or nearest the middle start otherwise; it is
    ``None`` when no step pair is usable.
    """
    config = config or SolverConfig()
    fn = lookup(function_id)
    method = Method.parse(method) if isinstance(method, str) else method
    outcome = solve(method, fn, starts, config, df=fn.df, seed_third=seed_third)

    if outcome.status is Status.CONVERGED:
        anchor = outcome.root
    else:
        used = outcome.trace.starts
        anchor = sorted(used)[len(used) // 2]
    reference = fn.nearest_root(anchor)
    try:
        estimate = estimate_order(outcome.trace, reference)
    except (NoUsableSteps, ValueError):
        estimate = None

    label = classify_outcome(outcome.trace, outcome, config)
    if label is Label.OSCILLATES and outcome.status is Status.MAX_ITERATIONS:
        outcome = replace(outcome, status=Status.OSCILLATING)
    return outcome, estimate, label


def report_row(
    function_id: str,
    method: Method,
    starts: Sequence[float],
    config: SolverConfig,
    seed_third: bool = False,
) -> ReportRow:
    """One report row; solver errors become a ``Fails`` row instead of raising."""
    try:
        outcome, estimate, label = run_cell(function_id, method, starts, config, seed_third)
    except RootbenchError as exc:
        log.warning("cell %s/%s/%s failed: %s", function_id, method.value, starts, exc)
        return ReportRow(
            function=function_id,
            starts=tuple(starts),
            method=method.value,
            status=Label.FAILS.value,
            iterations=Label.FAILS.value,
            detail=str(exc),
        )
    starts = outcome.trace.starts if seed_third else starts
    if label is not Label.CONVERGED:
        return ReportRow(
            function=function_id,
            starts=tuple(starts),
            method=method.value,
            status=label.value,
            iterations=label.value,
            detail=outcome.failure_detail,
        )
    return ReportRow(
        function=function_id,
        starts=tuple(starts),
        method=method.value,
        status=label.value,
        iterations=outcome.iterations,
        root=outcome.root,
        geometric_mean=estimate.geometric_mean if estimate else None,
        final_alpha=estimate.final_alpha if estimate else None,
    )


def run_suite(
    table: str | int = "all",
    methods: Sequence[Method | str] = DEFAULT_METHODS,
    config: SolverConfig | None = None,
) -> SuiteReport:
    config = config or SolverConfig()
    methods = [Method.parse(m) if isinstance(m, str) else m for m in methods]
    # Fixed column order regardless of how the caller listed the methods.
    methods = [m for m in ALL_METHODS if m in methods]
    functions = list_functions(None if str(table) == "all" else table)
    rows = [
        report_row(fn.id, method, start_set.starts, config)
        for fn in functions
        for start_set in fn.start_sets
        for method in methods
    ]
    return SuiteReport(rows=tuple(rows), config=config)


# -- rendering -------------------------------------------------------------


def _fmt(value: Optional[float], digits: int = 15) -> str:
    return "" if value is None else format(value, f".{digits}g")


def _starts_text(starts: Sequence[float]) -> str:
    return ",".join(repr(float(s)) for s in starts)


def _csv_fields(row: ReportRow) -> list[str]:
    return [
        row.function,
        _starts_text(row.starts),
        row.method,
        row.status,
        str(row.iterations) if row.converged else "",
        _fmt(row.root),
        _fmt(row.geometric_mean),
        _fmt(row.final_alpha),
    ]


def _render_csv(report: SuiteReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in report.rows:
        writer.writerow(_csv_fields(row))
    return buffer.getvalue()


def _render_json(report: SuiteReport) -> str:
    document = {
        "version": report.version,
        "corpus_version": report.corpus_version,
        "config": asdict(report.config),
        "rows": [
            {
                "function": row.function,
                "starts": list(row.starts),
                "method": row.method,
                "status": row.status,
                "iterations": row.iterations,
                "root": row.root,
                "geometric_mean": row.geometric_mean,
                "final_alpha": row.final_alpha,
                "detail": row.detail,
            }
            for row in report.rows
        ],
    }
    return json.dumps(document, indent=2) + "\n"


def _render_table(report: SuiteReport) -> str:
    header = list(CSV_HEADER)
    body = []
    for row in report.rows:
        fields = _csv_fields(row)
        fields[1] = fields[1].replace(",", ", ")
        if not row.converged:
            fields[4] = "-"
        for i in (5, 6, 7):
            if fields[i]:
                fields[i] = format(float(fields[i]), ".10g")
        body.append(fields)
    widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in [header] + body]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def render_report(report: SuiteReport, fmt: str = "table") -> bytes:
    """Serialize a report as an aligned text grid, RFC-4180 CSV, or JSON."""
    if fmt == "csv":
        text = _render_csv(report)
    elif fmt == "json":
        text = _render_json(report)
    elif fmt == "table":
        text = _render_table(report)
    else:
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
    return text.encode("utf-8")


def trace_csv(outcome: SolverOutcome) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(("k", "x", "y"))
    for k, point in outcome.trace.steps:
        writer.writerow((k, format(point.x, ".17g"), format(point.y, ".17g")))
    return buffer.getvalue()


def dump_trace(
    function_id: str,
    method: Method | str,
    starts: Sequence[float],
    config: SolverConfig | None,
    path: str | Path,
    seed_third: bool = False,
) -> SolverOutcome:
    """Run one cell and write its ``k,x,y`` trace to ``path``; returns the outcome."""
    outcome, _, _ = run_cell(function_id, method, starts, config, seed_third=seed_third)
    path = Path(path)
    try:
        path.write_text(trace_csv(outcome), encoding="utf-8")
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write trace to {path}: {exc.strerror}") from exc
    return outcome
