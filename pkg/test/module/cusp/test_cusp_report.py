import csv
from pathlib import Path

import pytest

from stiff_spectra.cusp.decay import DecayFit, DecayModel, DivergenceCheck
from stiff_spectra.cusp.profile import CuspProfile
from stiff_spectra.cusp.report import render_cusp_summary, write_cusp_report
from stiff_spectra.cusp.study import CuspCheck, CuspStudyConfig, CuspStudyReport
from stiff_spectra.verification.sweep import Status


def _report(status: Status = Status.PASS) -> CuspStudyReport:
    return CuspStudyReport(
        config=CuspStudyConfig(),
        checks=[
            CuspCheck("neumann_power_decay", Status.PASS, 4.02, "[3.5, 4.5], r2 >= 0.98"),
            CuspCheck("divergence_exponent", status, 3.0004, "3 +/- 0.05"),
        ],
        profiles={"neumann_midline": CuspProfile(x1=[0.125, 0.0625], values=[2.0e-4, 1.25e-5])},
        fits={"neumann_midline": DecayFit(DecayModel.POWER, 4.0, -0.2, 1.0, 2)},
        divergence=DivergenceCheck(deltas=[0.05, 0.025], integrals=[21264.0, 170640.0], exponent=3.0, r_squared=1.0),
        eigenvalues=(7.25, 7.2501),
    )


@pytest.mark.module
@pytest.mark.cusp
class TestCuspStudyReport_Status:
    """CuspStudyReport.status. 観点: 正常系"""

    def test_pass(self) -> None:
        assert _report().status is Status.PASS
        assert _report().passed

    def test_any_fail(self) -> None:
        assert _report(Status.FAIL).status is Status.FAIL

    def test_skip_is_not_failure(self) -> None:
        assert _report(Status.SKIP).passed


@pytest.mark.module
@pytest.mark.cusp
class TestRenderCuspSummary:
    """render_cusp_summary. 観点: 正常系"""

    def test_table(self) -> None:
        text = render_cusp_summary(_report(Status.FAIL))
        lines = text.splitlines()
        assert lines[0] == "kissing disks R0 = 0.5, R1 = 1; delta_trunc = 0.02, h = 0.05"
        assert lines[1] == "lam = 1, c0 = 1; Dirichlet lambda_1 = 7.25 (delta/2: 7.2501)"
        assert lines[3].split() == ["check", "status", "value", "target"]
        assert lines[5].split()[:3] == ["divergence_exponent", "FAIL", "3.0004"]
        assert lines[-1] == "overall: FAIL"


@pytest.mark.module
@pytest.mark.cusp
class TestWriteCuspReport:
    """write_cusp_report. 観点: 正常系"""

    def test_files(self, temp_work_dir: Path) -> None:
        out = temp_work_dir / "cusp"
        paths = write_cusp_report(_report(), out)
        assert [p.name for p in paths] == ["cusp_profiles.csv", "cusp_fits.csv", "cusp_summary.txt"]
        assert all(p.exists() for p in paths)

    def test_profiles_csv(self, temp_work_dir: Path) -> None:
        """プロファイルの後に divergence（x1 = δ）が続く"""
        write_cusp_report(_report(), temp_work_dir)
        with (temp_work_dir / "cusp_profiles.csv").open(encoding="utf-8") as f:
            rows = list(csv.reader(f))
        assert rows[0] == ["profile", "x1", "value"]
        assert rows[1] == ["neumann_midline", "1.250000000000e-01", "2.000000000000e-04"]
        assert [r[0] for r in rows[1:]] == ["neumann_midline"] * 2 + ["divergence"] * 2
        assert rows[-1][1:] == ["2.500000000000e-02", "1.706400000000e+05"]

    def test_fits_csv(self, temp_work_dir: Path) -> None:
        write_cusp_report(_report(), temp_work_dir)
        with (temp_work_dir / "cusp_fits.csv").open(encoding="utf-8") as f:
            rows = list(csv.reader(f))
        assert rows[0] == ["fit", "model", "exponent", "intercept", "r_squared", "n_points"]
        assert rows[1][:3] == ["neumann_midline", "Power", "4.000000000000e+00"]
        assert rows[2] == ["divergence", "Power", "3.000000000000e+00", "nan", "1.000000000000e+00", "2"]

    def test_deterministic(self, temp_work_dir: Path) -> None:
        first = [p.read_bytes() for p in write_cusp_report(_report(), temp_work_dir / "a")]
        second = [p.read_bytes() for p in write_cusp_report(_report(), temp_work_dir / "b")]
        assert first == second
