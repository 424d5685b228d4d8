from __future__ import annotations

import csv
import logging
from pathlib import Path

from stiff_spectra.cusp.study import CuspStudyReport
from stiff_spectra.verification.report import fmt

logger = logging.getLogger(__name__)

PROFILE_HEADER = ("profile", "x1", "value")
FIT_HEADER = ("fit", "model", "exponent", "intercept", "r_squared", "n_points")


def render_cusp_summary(report: CuspStudyReport) -> str:
    c = report.config
    header = ["check", "status", "value", "target"]
    rows = [header, *([x.name, x.status.value, f"{x.value:.6g}", x.target] for x in report.checks)]
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    lines = [
        f"kissing disks R0 = {c.r0:g}, R1 = {c.r1:g}; delta_trunc = {c.delta_trunc:g}, h = {c.h:g}",
        f"lam = {c.lam:g}, c0 = {c.c0:g}; Dirichlet lambda_1 = {report.eigenvalues[0]:.8g} "
        f"(delta/2: {report.eigenvalues[1]:.8g})",
        "",
    ]
    for row in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    lines.append("")
    lines.append(f"overall: {report.status.value}")
    return "\n".join(lines) + "\n"


def write_cusp_report(report: CuspStudyReport, out_dir: str | Path) -> list[Path]:
    """
    cusp_profiles.csv, cusp_fits.csv and cusp_summary.txt in out_dir
    (created if missing). The divergence integrals are written as the
    profile "divergence" with x1 = δ.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    profiles = out / "cusp_profiles.csv"
    with profiles.open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(PROFILE_HEADER)
        for name, profile in report.profiles.items():
            for x1, value in zip(profile.x1.tolist(), profile.values.tolist()):
                writer.writerow([name, fmt(x1), fmt(value)])
        for delta, integral in zip(report.divergence.deltas, report.divergence.integrals):
            writer.writerow(["divergence", fmt(delta), fmt(integral)])

    fits = out / "cusp_fits.csv"
    with fits.open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(FIT_HEADER)
        for name, fit in report.fits.items():
            writer.writerow([name, fit.model.value, fmt(fit.exponent), fmt(fit.intercept), fmt(fit.r_squared), fit.n_points])
        writer.writerow(
            ["divergence", "Power", fmt(report.divergence.exponent), "nan", fmt(report.divergence.r_squared), len(report.divergence.deltas)]
        )

    summary = out / "cusp_summary.txt"
    summary.write_text(render_cusp_summary(report), encoding="utf-8")
    paths = [profiles, fits, summary]
    logger.info("Wrote cusp report: %s", ", ".join(p.name for p in paths))
    return paths
