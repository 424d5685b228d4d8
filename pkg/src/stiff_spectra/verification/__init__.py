from stiff_spectra.util.cluster import cluster_eigenvalues

from .config import SweepConfig
from .rates import RateFit, fit_correction, fit_rate, richardson
from .report import ReportFormat, emit_all, emit_report, render_summary
from .store import SweepCatalog, sweep_id
from .sweep import ConvergenceReport, IndexSeries, Status, match_predictions, run_sweep

__all__ = [
    "ConvergenceReport",
    "IndexSeries",
    "RateFit",
    "ReportFormat",
    "Status",
    "SweepCatalog",
    "SweepConfig",
    "cluster_eigenvalues",
    "emit_all",
    "emit_report",
    "fit_correction",
    "fit_rate",
    "match_predictions",
    "render_summary",
    "richardson",
    "run_sweep",
    "sweep_id",
]
