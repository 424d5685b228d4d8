from __future__ import annotations

import csv
import logging
import math
from enum import Enum
from pathlib import Path
from typing import Iterable

from stiff_spectra.verification.sweep import ConvergenceReport, IndexSeries

logger = logging.getLogger(__name__)

CSV_HEADER = ("m", "n", "eps", "lambda_eps", "lambda_hat", "residual", "slope", "gamma_target")
FLOAT_FORMAT = ".12e"


class ReportFormat(Enum):
    CSV = "csv"
    PLOTDATA = "plotdata"
    SUMMARY = "summary"


def fmt(value: float | None) -> str:
    if value is None or not math.isfinite(value):
        return "nan"
    return format(value, FLOAT_FORMAT)


def _csv(report: ConvergenceReport, out_dir: Path) -> list[Path]:
    path = out_dir / "sweep.csv"
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for s in report.series:
            slope = None if s.fit is None else s.fit.slope
            for eps, lam, hat, r in zip(s.eps, s.lambda_eps, s.lambda_hat, s.residuals):
                writer.writerow(
                    [fmt(report.config.m), s.n, fmt(eps), fmt(lam), fmt(hat), fmt(r), fmt(slope), fmt(s.gamma)]
                )
    return [path]


def _plotdata(report: ConvergenceReport, out_dir: Path) -> list[Path]:
    """One file per index: columns log ε, log r (points with r > 0)."""
    paths = []
    for s in report.series:
        path = out_dir / f"plot_n{s.n}.dat"
        with path.open("w", encoding="utf-8") as f:
            f.write(f"# m={fmt(report.config.m)} n={s.n} gamma={fmt(s.gamma)}\n")
            f.write("# log_eps log_residual\n")
            for eps, r in zip(s.eps, s.residuals):
                if r > 0:
                    f.write(f"{fmt(math.log(eps))} {fmt(math.log(r))}\n")
        paths.append(path)
    return paths


def _summary_rows(series: Iterable[IndexSeries]) -> list[list[str]]:
    rows = []
    for s in series:
        p = s.prediction
        rows.append(
            [
                str(s.n),
                f"{p.lambda0:.8g}",
                f"{p.lambda_prime:.6g}",
                str(p.multiplicity),
                p.label.value + (" (rate-only)" if s.rate_only else ""),
                f"{s.gamma:.3g}",
                "-" if s.fit is None else f"{s.fit.slope:.3f} [{s.fit.slope_low:.3f}, {s.fit.slope_high:.3f}]",
                "-" if s.fit is None else f"{s.fit.r_squared:.4f}",
                "-" if s.leading_fit is None else f"{s.leading_fit.slope:.3f}",
                s.status.value + ("" if s.gated else " (not gated)"),
            ]
        )
    return rows


def render_summary(report: ConvergenceReport) -> str:
    e = report.exponents
    header = ["n", "lambda0", "lambda_prime", "tau", "formula", "gamma", "slope [95%]", "r2", "leading", "status"]
    rows = [header, *_summary_rows(report.series)]
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    lines = [
        f"m = {report.config.m:g} ({report.regime.value}); alpha = {e.alpha:g}, beta = {e.beta:g}, gamma = {e.gamma:g}",
        f"eps = {', '.join(f'{x:g}' for x in report.config.eps_list)}",
        "",
    ]
    for row in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    lines.append("")
    lines.append(f"overall: {report.status.value}")
    return "\n".join(lines) + "\n"


def _summary(report: ConvergenceReport, out_dir: Path) -> list[Path]:
    path = out_dir / "summary.txt"
    path.write_text(render_summary(report), encoding="utf-8")
    return [path]


_WRITERS = {ReportFormat.CSV: _csv, ReportFormat.PLOTDATA: _plotdata, ReportFormat.SUMMARY: _summary}


def emit_report(report: ConvergenceReport, format: ReportFormat | str, out_dir: str | Path) -> list[Path]:
    """
    Write one report format into out_dir (created if missing). IO errors propagate.

    Returns:
        written paths
    """
    format = ReportFormat(format)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = _WRITERS[format](report, out)
    logger.info("Wrote %s report: %s", format.value, ", ".join(p.name for p in paths))
    return paths


def emit_all(report: ConvergenceReport, out_dir: str | Path) -> list[Path]:
    return [p for f in ReportFormat for p in emit_report(report, f, out_dir)]
