from pathlib import Path

import pytest

from stiff_spectra.verification.report import (
    CSV_HEADER,
    ReportFormat,
    emit_all,
    emit_report,
    fmt,
    render_summary,
)
from stiff_spectra.verification.sweep import ConvergenceReport


@pytest.mark.module
@pytest.mark.verification
class TestFmt:
    """fmt. 観点: 正常系（固定精度、非有限は nan）"""

    def test_values(self) -> None:
        assert fmt(1.0) == "1.000000000000e+00"
        assert fmt(None) == "nan"
        assert fmt(float("inf")) == "nan"


@pytest.mark.module
@pytest.mark.verification
class TestEmitReport:
    """emit_report / emit_all. 観点: 正常系"""

    def test_csv_rows(self, synthetic_report: ConvergenceReport, temp_work_dir: Path) -> None:
        """3 index × 4 ε の行とヘッダ"""
        (path,) = emit_report(synthetic_report, ReportFormat.CSV, temp_work_dir)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == ",".join(CSV_HEADER)
        assert len(lines) == 1 + 3 * 4
        assert lines[1].startswith("2.500000000000e-01,1,1.000000000000e-01,")

    def test_plotdata_skips_zero_residuals(self, synthetic_report: ConvergenceReport, temp_work_dir: Path) -> None:
        paths = emit_report(synthetic_report, "plotdata", temp_work_dir)
        assert [p.name for p in paths] == ["plot_n1.dat", "plot_n2.dat", "plot_n3.dat"]
        rigid = paths[0].read_text(encoding="utf-8").splitlines()
        assert len(rigid) == 2
        assert len(paths[1].read_text(encoding="utf-8").splitlines()) == 2 + 4

    def test_emit_all_creates_directory(self, synthetic_report: ConvergenceReport, temp_work_dir: Path) -> None:
        out = temp_work_dir / "nested" / "out"
        names = sorted(p.name for p in emit_all(synthetic_report, out))
        assert names == ["plot_n1.dat", "plot_n2.dat", "plot_n3.dat", "summary.txt", "sweep.csv"]

    def test_unknown_format(self, synthetic_report: ConvergenceReport, temp_work_dir: Path) -> None:
        with pytest.raises(ValueError):
            emit_report(synthetic_report, "html", temp_work_dir)


@pytest.mark.module
@pytest.mark.verification
class TestRenderSummary:
    """render_summary. 観点: 正常系"""

    def test_contains_regime_and_status(self, synthetic_report: ConvergenceReport) -> None:
        text = render_summary(synthetic_report)
        assert text.startswith("m = 0.25 (MSmall); alpha = 0, beta = 0.5, gamma = 0.75\n")
        assert "eps = 0.1, 0.05, 0.025, 0.0125" in text
        assert text.endswith("overall: PASS\n")
